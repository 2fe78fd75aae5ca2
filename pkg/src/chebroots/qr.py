"""Dense real nonsymmetric eigenvalue solver.

Balancing, Householder reduction to upper Hessenberg form, and a Francis
double-shift QR iteration with deflation.  Eigenvalues only -- no Schur
vectors -- which lets every similarity update stay inside the active
diagonal block.  Self-contained on purpose: the companion matrices this
package produces are small (order <= a few hundred) and tame, and keeping
the solver in-tree makes the whole pipeline auditable end to end.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["balance_matrix", "hessenberg_reduce", "hessenberg_eigenvalues", "dense_eigenvalues"]

_EPS = float(np.finfo(np.float64).eps)


def balance_matrix(a: np.ndarray) -> np.ndarray:
    """Diagonal similarity scaling that roughly equalizes row/column norms.

    Parlett-Reinsch balancing with radix-2 scale factors (exact in binary
    floating point, so eigenvalues are not perturbed).  A no-op for already
    well-scaled matrices; protects the QR iteration when one row dwarfs the
    rest, e.g. a companion matrix with a tiny leading coefficient.
    """
    h = np.array(a, dtype=float)
    n = h.shape[0]
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            r = np.sum(np.abs(h[i, :])) - abs(h[i, i])
            c = np.sum(np.abs(h[:, i])) - abs(h[i, i])
            if r == 0.0 or c == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s and f != 1.0:
                done = False
                h[i, :] *= 1.0 / f
                h[:, i] *= f
    return h


def hessenberg_reduce(a: np.ndarray) -> np.ndarray:
    """Reduce a square real matrix to upper Hessenberg form.

    Householder similarity transforms, column by column.  Returns a new
    matrix; the input is not modified.
    """
    h = np.array(a, dtype=float)
    n = h.shape[0]
    for k in range(n - 2):
        col = h[k + 1:, k]
        scale = np.sum(np.abs(col))
        if scale == 0.0:
            continue
        v = col / scale
        norm = math.sqrt(float(v @ v))
        alpha = -math.copysign(norm, v[0])
        v = v.copy()
        v[0] -= alpha
        vtv = float(v @ v)
        if vtv == 0.0:
            continue
        w = 2.0 / vtv
        h[k + 1:, k:] -= np.outer(w * v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= np.outer(h[:, k + 1:] @ v, w * v)
        h[k + 1, k] = alpha * scale
        h[k + 2:, k] = 0.0
    return h


def _eig2x2(a: float, b: float, c: float, d: float) -> tuple[complex, complex]:
    """Eigenvalues of the 2x2 real matrix [[a, b], [c, d]].

    Complex eigenvalues come out as an exact conjugate pair; the real case
    uses the product form for the smaller root to avoid cancellation.
    """
    mean = 0.5 * (a + d)
    p = 0.5 * (a - d)
    disc = p * p + b * c
    if disc >= 0.0:
        r = math.sqrt(disc)
        z = mean + r if mean >= 0.0 else mean - r
        if z == 0.0:
            return complex(0.0), complex(0.0)
        return complex(z), complex((a * d - b * c) / z)
    r = math.sqrt(-disc)
    return complex(mean, r), complex(mean, -r)


def hessenberg_eigenvalues(h: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """All eigenvalues of an upper Hessenberg matrix by Francis QR steps.

    Implicit double-shift bulge chasing with deflation whenever a
    subdiagonal entry satisfies |h[i+1,i]| <= eps * (|h[i,i]| + |h[i+1,i+1]|).
    An ad hoc shift replaces the trailing-2x2 shift every tenth sweep on a
    stuck block.  ``max_sweeps`` caps the total number of QR sweeps; if the
    cap is hit, the eigenvalues of everything not yet deflated are read off
    the diagonal and flagged unconverged rather than failing silently.

    Returns
    -------
    (eigenvalues, converged) : (ndarray of complex, ndarray of bool)
        One entry per matrix row, in deflation order.
    """
    n = h.shape[0]
    h = np.array(h, dtype=float)
    eig = np.zeros(n, dtype=complex)
    converged = np.ones(n, dtype=bool)
    total = 0
    hi = n - 1
    block_iters = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = h[0, 0]
            break
        # scan for a deflation point above hi
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if abs(h[lo, lo - 1]) <= _EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = h[hi, hi]
            hi -= 1
            block_iters = 0
            continue
        if lo == hi - 1:
            eig[lo], eig[hi] = _eig2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            hi -= 2
            block_iters = 0
            continue
        if total >= max_sweeps:
            for i in range(hi + 1):
                eig[i] = h[i, i]
                converged[i] = False
            return eig, converged
        total += 1
        block_iters += 1
        # double shift from the trailing 2x2: sum and product of its eigenvalues
        m = hi - 1
        s_tr = h[m, m] + h[hi, hi]
        s_det = h[m, m] * h[hi, hi] - h[m, hi] * h[hi, m]
        if block_iters % 10 == 0:
            # stuck block: ad hoc real double shift breaks shift cycles
            bulk = abs(h[hi, m]) + abs(h[m, m - 1])
            shift = h[hi, hi] + 0.75 * bulk
            s_tr = 2.0 * shift
            s_det = shift * shift
        # first column of (H - s1)(H - s2): the bulge seed
        x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - s_tr * h[lo, lo] + s_det
        y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - s_tr)
        z = h[lo + 2, lo + 1] * h[lo + 1, lo]
        for k in range(lo, hi):
            last = k == hi - 1
            vec = np.array([x, y] if last else [x, y, z])
            scale = np.sum(np.abs(vec))
            if scale != 0.0:
                vec /= scale
                norm = math.sqrt(float(vec @ vec))
                alpha = -math.copysign(norm, vec[0])
                v = vec.copy()
                v[0] -= alpha
                vtv = float(v @ v)
                if vtv > 0.0:
                    w = 2.0 / vtv
                    rows = slice(k, k + len(v))
                    c0 = lo if k == lo else k - 1
                    seg = h[rows, c0:hi + 1]
                    seg -= np.outer(w * v, v @ seg)
                    r_hi = min(k + len(v) + 1, hi)
                    seg = h[lo:r_hi + 1, rows]
                    seg -= np.outer(seg @ v, w * v)
                    if k > lo:
                        h[k + 1, k - 1] = 0.0
                        if not last:
                            h[k + 2, k - 1] = 0.0
            if k < hi - 1:
                x = h[k + 1, k]
                y = h[k + 2, k]
                z = h[k + 3, k] if k + 3 <= hi else 0.0
    return eig, converged


def dense_eigenvalues(a: np.ndarray, max_sweeps: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of a dense square real matrix.

    Pipeline: balance -> Hessenberg reduction -> shifted QR.  ``max_sweeps``
    defaults to 30 per matrix row.

    Raises
    ------
    ValueError
        If the matrix is not square or contains a non-finite entry.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0, dtype=complex), np.zeros(0, dtype=bool)
    if max_sweeps is None:
        max_sweeps = 30 * n
    if n == 1:
        return np.array([complex(a[0, 0])]), np.array([True])
    h = hessenberg_reduce(balance_matrix(a))
    return hessenberg_eigenvalues(h, max_sweeps)
