"""Chebyshev interpolation core: nodes, the discrete transform, evaluation,
differentiation, and the affine maps between an interval [a, b] and the
standard interval [-1, 1].

A :class:`ChebyshevSeries` is the polynomial proxy used throughout the
package: an ordered list of first-kind Chebyshev coefficients attached to
an :class:`Interval`.  Everything here is a pure function over immutable
values, so series and intervals can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Interval",
    "ChebyshevSeries",
    "DecayProfile",
    "NonFiniteSampleError",
    "standard_nodes",
    "to_standard",
    "from_standard",
    "transform",
    "evaluate",
    "differentiate",
    "chop_series",
    "coefficient_decay",
]


class NonFiniteSampleError(ValueError):
    """A function sample was NaN or infinite at an interpolation node."""

    def __init__(self, index: int, node: float, value: float):
        self.index = index
        self.node = node
        self.value = value
        super().__init__(
            f"sample {index} at node x={node!r} is non-finite ({value!r})"
        )


@dataclass(frozen=True)
class Interval:
    """A finite real interval [a, b] with a strictly below b.

    Owns the affine change of variables between [a, b] and the standard
    interval [-1, 1]; see :func:`to_standard` and :func:`from_standard`.
    """

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class ChebyshevSeries:
    """A finite series sum_j coeffs[j] * T_j on an interval.

    ``coeffs[j]`` multiplies the degree-j first-kind Chebyshev polynomial of
    the standard coordinate.  The series is immutable; all operations return
    new series.  A nonzero leading coefficient is *not* enforced here --
    callers that need one (the companion matrix does) chop first with
    :func:`chop_series`.
    """

    interval: Interval
    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) == 0:
            raise ValueError("series needs at least one coefficient")
        for j, c in enumerate(coeffs):
            if not math.isfinite(c):
                raise ValueError(f"series coefficient {j} is non-finite ({c!r})")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def to_standard(interval: Interval, x: float) -> float:
    """Map x from [a, b] to the standard coordinate, a -> -1 and b -> +1.

    The map is affine everywhere, so points outside the interval are mapped
    outside [-1, 1] rather than rejected.
    """
    return (2.0 * x - (interval.a + interval.b)) / (interval.b - interval.a)


def from_standard(interval: Interval, t: float) -> float:
    """Map a standard coordinate t back to the interval, -1 -> a and +1 -> b."""
    return 0.5 * (interval.a + interval.b + (interval.b - interval.a) * t)


def standard_nodes(n: int) -> np.ndarray:
    """Roots of the degree-n first-kind Chebyshev polynomial, descending.

    These are cos(pi*(2k-1)/(2n)) for k = 1..n, all strictly inside (-1, 1).
    Computed in the equivalent sine form so the grid is exactly symmetric
    about 0 (odd n gets an exact middle zero).

    Parameters
    ----------
    n : int
        Number of nodes, at least 1.

    Returns
    -------
    nodes : ndarray of shape (n,)
        Strictly decreasing node coordinates in (-1, 1).
    """
    if n < 1:
        raise ValueError("node count must be >= 1")
    k = np.arange(1, n + 1)
    return np.sin(np.pi * (n - 2 * k + 1) / (2.0 * n))


def transform(samples, interval: Interval) -> ChebyshevSeries:
    """Discrete Chebyshev transform of function samples taken at the nodes.

    ``samples[k]`` must be the function value at
    ``from_standard(interval, standard_nodes(n)[k])`` where ``n`` is the
    sample count.  The returned n-coefficient series interpolates the
    samples exactly at those nodes (up to roundoff):

        coeffs[0] = (1/n) * sum_k samples[k]
        coeffs[j] = (2/n) * sum_k samples[k] * cos(j*pi*(2k-1)/(2n))

    The basis values use the closed cosine form rather than the three-term
    recurrence so the discrete orthogonality of the grid holds to machine
    precision.

    Parameters
    ----------
    samples : array_like of shape (n,)
        Function values at the mapped nodes, in node order.
    interval : Interval
        Interval the samples were taken on.

    Returns
    -------
    series : ChebyshevSeries
        Interpolating series with n coefficients (degree n - 1).

    Raises
    ------
    ValueError
        If the sample vector is empty.
    NonFiniteSampleError
        If any sample is NaN or infinite; the error names the node.
    """
    y = np.asarray(samples, dtype=float)
    if y.ndim != 1 or y.size == 0:
        raise ValueError("transform needs a non-empty 1-D sample vector")
    n = y.size
    bad = np.flatnonzero(~np.isfinite(y))
    if bad.size:
        idx = int(bad[0])
        node = from_standard(interval, float(standard_nodes(n)[idx]))
        raise NonFiniteSampleError(idx, node, float(y[idx]))
    k = np.arange(1, n + 1)
    j = np.arange(n)
    basis = np.cos(np.outer(j, np.pi * (2 * k - 1) / (2.0 * n)))
    coeffs = (2.0 / n) * (basis @ y)
    coeffs[0] *= 0.5
    return ChebyshevSeries(interval, tuple(float(c) for c in coeffs))


def evaluate(series: ChebyshevSeries, x: float) -> float:
    """Evaluate the series at x using the Clenshaw recurrence.

    x is mapped to the standard coordinate first.  Points outside the
    interval are evaluated by polynomial extrapolation; that is permitted
    (the recurrence does not need arccos) but accuracy decays quickly away
    from the interval.
    """
    t = to_standard(series.interval, x)
    c = series.coeffs
    b1 = 0.0
    b2 = 0.0
    two_t = 2.0 * t
    for jj in range(len(c) - 1, 0, -1):
        b1, b2 = c[jj] + two_t * b1 - b2, b1
    return c[0] + t * b1 - b2


def differentiate(series: ChebyshevSeries) -> ChebyshevSeries:
    """Series of the derivative df/dx on the same interval.

    Uses the backward recurrence d[j-1] = d[j+1] + 2*j*coeffs[j] (with the
    final d[0] halved) and then scales by the chain-rule factor 2/(b - a).
    The degree drops by one; differentiating a constant yields the zero
    series.
    """
    c = series.coeffs
    n = len(c) - 1
    if n == 0:
        return ChebyshevSeries(series.interval, (0.0,))
    d = [0.0] * (n + 2)
    for jj in range(n, 0, -1):
        d[jj - 1] = d[jj + 1] + 2.0 * jj * c[jj]
    d[0] *= 0.5
    scale = 2.0 / series.interval.width
    return ChebyshevSeries(series.interval, tuple(v * scale for v in d[:n]))


def chop_series(series: ChebyshevSeries, rel_tol: float = 1e-13) -> ChebyshevSeries:
    """Drop trailing coefficients with |coeff| <= rel_tol * max|coeff|.

    Restores a nonzero leading coefficient whenever any coefficient clears
    the threshold, which the companion matrix requires.  Always keeps at
    least one coefficient, so an all-zero series chops to the single
    coefficient 0.
    """
    if rel_tol < 0:
        raise ValueError("chop tolerance must be >= 0")
    c = series.coeffs
    cut = rel_tol * max(abs(v) for v in c)
    keep = len(c)
    while keep > 1 and abs(c[keep - 1]) <= cut:
        keep -= 1
    if keep == len(c):
        return series
    return ChebyshevSeries(series.interval, c[:keep])


@dataclass(frozen=True)
class DecayProfile:
    """Coefficient magnitudes |coeffs[j]| plus a fitted algebraic decay rate.

    ``slope`` is the least-squares slope of log|coeffs[j]| against log j over
    the significant nonzero tail, or ``None`` when the series terminates in
    an exactly-zero tail (the representation is exact, so no algebraic rate
    applies) or too few nonzero coefficients remain to fit one.
    """

    magnitudes: tuple[float, ...]
    slope: float | None

    def entries(self) -> tuple[tuple[int, float], ...]:
        """(j, |coeffs[j]|) pairs, in index order."""
        return tuple(enumerate(self.magnitudes))


def coefficient_decay(series: ChebyshevSeries, zero_tol: float = 1e-14) -> DecayProfile:
    """Diagnostic decay profile of the series coefficients.

    Trailing coefficients at or below ``zero_tol * max|coeff|`` count as an
    exactly-zero tail.  If two or more such trailing coefficients were
    dropped, or fewer than two nonzero points remain, the representation is
    reported as exact (``slope=None``) instead of fitting a rate.  The fit
    itself regresses log|coeffs[j]| on log j for j >= 1, skipping
    roundoff-level interior coefficients (parity zeros and the like).

    This is a diagnostic only; nothing in the pipeline gates on it.
    """
    c = series.coeffs
    if len(c) < 4:
        raise ValueError("need at least 4 coefficients to fit a decay rate")
    mags = tuple(abs(v) for v in c)
    cut = zero_tol * max(mags)
    keep = len(mags)
    while keep > 1 and mags[keep - 1] <= cut:
        keep -= 1
    points = [(jj, m) for jj, m in enumerate(mags[:keep]) if jj >= 1 and m > cut]
    tail_dropped = len(mags) - keep
    if tail_dropped >= 2 or len(points) < 2:
        return DecayProfile(mags, None)
    lj = np.log([p[0] for p in points])
    lm = np.log([p[1] for p in points])
    lj_c = lj - lj.mean()
    slope = float((lj_c @ (lm - lm.mean())) / (lj_c @ lj_c))
    return DecayProfile(mags, slope)
