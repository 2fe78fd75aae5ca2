"""End-to-end global rootfinder.

Pipeline: sample the function at mapped Chebyshev nodes, build the series
proxy (fixed or adaptive degree), chop it, take companion-matrix
eigenvalues, filter them to the near-real near-interval box, map back to
the interval, Newton-polish, reject leftovers by residual, deduplicate and
sort.  The result is a :class:`RootReport` carrying the roots plus every
eigenvalue candidate with its fate, so dropped candidates stay auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .chebyshev import (
    ChebyshevSeries,
    DecayProfile,
    Interval,
    chop_series,
    coefficient_decay,
    differentiate,
    evaluate,
    from_standard,
    standard_nodes,
    transform,
)
from .companion import Spectrum, series_spectrum

__all__ = [
    "RejectionReason",
    "RootCandidate",
    "RootConfig",
    "RootReport",
    "PolishResult",
    "find_roots",
    "filter_candidates",
    "newton_polish",
    "adaptive_degree",
    "residual_reject",
    "dedupe_and_sort",
]

_EPS = float(np.finfo(np.float64).eps)

# Automatic residual acceptance: |f(x)| <= factor*eps*max(1,|x|)*|p'(x)|,
# i.e. the remaining Newton step from x sits below the rounding floor.  No
# absolute floor: a flat stretch of f below any fixed floor would otherwise
# turn proxy noise crossings into accepted roots.
_AUTO_RESIDUAL_FACTOR = 1000.0

# Half-width (relative to max(1, |x|)) of the bracket used to certify that f
# actually changes sign across an accepted root in automatic mode.  Far above
# the polished root error, far below any resolvable root separation.
_SIGN_STEP_FACTOR = math.sqrt(float(np.finfo(np.float64).eps))

# Newton iterates may wander this fraction of the interval width outside
# [a, b] before the run counts as diverged.
_NEWTON_ESCAPE_FRACTION = 0.1

_MIN_DERIVATIVE = 1e-300


class RejectionReason(str, Enum):
    NONE = "none"
    IMAG_TOO_LARGE = "imag_too_large"
    OUTSIDE_BOX = "outside_box"
    RESIDUAL_TOO_LARGE = "residual_too_large"
    NEWTON_DIVERGED = "newton_diverged"
    DUPLICATE = "duplicate"


@dataclass(frozen=True)
class RootCandidate:
    """One companion-matrix eigenvalue and what the pipeline did with it.

    ``standard_coord`` is the eigenvalue in the standard coordinate.
    ``mapped_coord`` is the (possibly polished, clamped) location on the
    interval, present only for accepted candidates.  ``residual`` is |f| at
    the final location, or None if the candidate was rejected before f was
    ever evaluated there.
    """

    standard_coord: complex
    mapped_coord: float | None
    accepted: bool
    rejection_reason: RejectionReason
    residual: float | None
    polish_iterations: int


@dataclass(frozen=True)
class RootConfig:
    """Tunable knobs for :func:`find_roots`.

    ``degree=None`` selects the adaptive proxy degree; a fixed degree means
    that many sample nodes (so the proxy polynomial has degree - 1 before
    chopping).  ``residual_tol=None`` selects the automatic per-candidate
    threshold; see :func:`residual_reject`.
    """

    degree: int | None = None
    imag_tol: float = 1e-8
    box_tol: float = 1e-6
    chop_tol: float = 1e-13
    adaptive_tol: float = 1e-12
    max_adaptive_degree: int = 128
    polish: bool = True
    polish_max_iter: int = 12
    residual_tol: float | None = None
    dedupe_tol: float = 1e-9

    def __post_init__(self):
        if self.degree is not None and self.degree < 2:
            raise ValueError("fixed degree must be >= 2")
        for name in ("imag_tol", "box_tol", "chop_tol", "adaptive_tol", "dedupe_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.residual_tol is not None and not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive (or None for automatic)")
        if self.max_adaptive_degree < 2:
            raise ValueError("max_adaptive_degree must be >= 2")
        if self.polish_max_iter < 1:
            raise ValueError("polish_max_iter must be >= 1")


@dataclass(frozen=True)
class RootReport:
    """Outcome of one :func:`find_roots` run.

    ``roots`` are the accepted locations, strictly increasing.  ``candidates``
    lists every eigenvalue of the proxy's companion matrix with its
    acceptance status.  ``degree_used`` is the number of sample nodes of the
    final proxy; ``proxy_converged`` is False only when the adaptive degree
    loop hit its cap without the coefficient tail decaying.
    """

    roots: tuple[float, ...]
    candidates: tuple[RootCandidate, ...]
    degree_used: int
    coefficient_decay: DecayProfile
    function_evaluations: int
    proxy_converged: bool


@dataclass(frozen=True)
class PolishResult:
    """Outcome of a Newton polish run.

    ``x`` is the best iterate seen, judged by |f|; ``residual`` is |f(x)|.
    ``converged`` means the stopping rule fired before the iteration cap
    (correction below the rounding floor, or no further reduction in the
    correction).  ``diverged`` means the run was abandoned: derivative
    underflow, a non-finite value, or an iterate escaping the widened
    interval.  ``final_correction`` is the last Newton correction computed,
    NaN if the run never got that far.
    """

    x: float
    iterations: int
    converged: bool
    diverged: bool
    residual: float
    final_correction: float


class _CountingFunction:
    """Wrap a callable, counting evaluations and coercing results to float."""

    __slots__ = ("func", "count")

    def __init__(self, func):
        self.func = func
        self.count = 0

    def __call__(self, x):
        self.count += 1
        return float(self.func(x))


def _as_interval(interval) -> Interval:
    if isinstance(interval, Interval):
        return interval
    a, b = interval
    return Interval(float(a), float(b))


def _sample_at_nodes(f, interval: Interval, n: int) -> list[float]:
    """f at the degree-n Chebyshev nodes mapped onto the interval, node order."""
    return [f(from_standard(interval, float(t))) for t in standard_nodes(n)]


def _adaptive_raw(f, interval: Interval, config: RootConfig) -> tuple[ChebyshevSeries, bool]:
    cap = config.max_adaptive_degree
    n = min(16, cap)
    while True:
        raw = transform(_sample_at_nodes(f, interval, n), interval)
        mags = [abs(c) for c in raw.coeffs]
        cut = config.adaptive_tol * max(mags)
        tail = mags[-min(8, max(1, len(mags) - 1)):]
        if all(m <= cut for m in tail):
            return raw, True
        if n >= cap:
            return raw, False
        n = min(2 * n, cap)


def adaptive_degree(f, interval, config: RootConfig | None = None) -> tuple[ChebyshevSeries, bool]:
    """Build a chopped proxy series with automatically chosen degree.

    Doubles the node count through 16, 32, 64, ... up to
    ``config.max_adaptive_degree`` and accepts the first stage whose trailing
    8 coefficients are all below ``adaptive_tol * max|coeff|``.  Returns the
    chopped series and a flag that is False when the cap was reached without
    the tail decaying (the series is still returned and usable).
    """
    interval = _as_interval(interval)
    if config is None:
        config = RootConfig()
    raw, converged = _adaptive_raw(f, interval, config)
    return chop_series(raw, config.chop_tol), converged


def newton_polish(f, df, x0: float, interval, max_iter: int) -> PolishResult:
    """Refine a candidate root of f with Newton's iteration.

    Stops as soon as further iterations produce no reduction in the
    correction, or the correction falls below 4*eps*max(1, |x|), or
    ``max_iter`` is reached.  The returned location is the iterate with the
    smallest |f| seen (including the starting point), so polishing never
    increases the residual.  Runs are abandoned as diverged -- never raised
    -- when the derivative underflows, a value goes non-finite, or an
    iterate leaves the interval widened by 10% of its width on each side.
    """
    interval = _as_interval(interval)
    escape = _NEWTON_ESCAPE_FRACTION * interval.width
    lo = interval.a - escape
    hi = interval.b + escape
    x = float(x0)
    fx = float(f(x))
    corr = math.nan
    if not math.isfinite(fx):
        return PolishResult(x, 0, False, True, abs(fx), corr)
    best_x, best_f = x, abs(fx)
    prev_corr = None
    converged = False
    diverged = False
    iterations = 0
    for it in range(1, max_iter + 1):
        iterations = it
        dfx = float(df(x))
        if not math.isfinite(dfx) or abs(dfx) < _MIN_DERIVATIVE:
            diverged = True
            break
        corr = -fx / dfx
        if not math.isfinite(corr):
            diverged = True
            break
        if abs(corr) <= 4.0 * _EPS * max(1.0, abs(x)):
            x_next = x + corr
            f_next = float(f(x_next))
            if math.isfinite(f_next) and abs(f_next) < best_f:
                best_x, best_f = x_next, abs(f_next)
            converged = True
            break
        if prev_corr is not None and abs(corr) >= abs(prev_corr):
            converged = True
            break
        x_next = x + corr
        if x_next < lo or x_next > hi:
            diverged = True
            break
        f_next = float(f(x_next))
        if not math.isfinite(f_next):
            diverged = True
            break
        x, fx = x_next, f_next
        if abs(fx) < best_f:
            best_x, best_f = x, abs(fx)
        prev_corr = corr
    return PolishResult(best_x, iterations, converged, diverged, best_f, corr)


def filter_candidates(spectrum: Spectrum, config: RootConfig | None = None) -> tuple[RootCandidate, ...]:
    """Turn every eigenvalue into a candidate, accepted iff it sits in the box.

    Accepted means |imag| <= imag_tol and |real| <= 1 + box_tol.  The
    imaginary-part test runs first, so a candidate failing both reports
    ``imag_too_large``.  Mapped coordinates are filled in later by the
    pipeline (the spectrum does not know the interval).
    """
    if config is None:
        config = RootConfig()
    out = []
    for z in spectrum.values:
        if abs(z.imag) > config.imag_tol:
            reason = RejectionReason.IMAG_TOO_LARGE
        elif abs(z.real) > 1.0 + config.box_tol:
            reason = RejectionReason.OUTSIDE_BOX
        else:
            reason = RejectionReason.NONE
        out.append(
            RootCandidate(
                standard_coord=complex(z),
                mapped_coord=None,
                accepted=reason is RejectionReason.NONE,
                rejection_reason=reason,
                residual=None,
                polish_iterations=0,
            )
        )
    return tuple(out)


def residual_reject(candidates, f, config: RootConfig, *, tolerances=None):
    """Flip accepted candidates with too-large |f| to ``residual_too_large``.

    With an explicit ``config.residual_tol`` every accepted candidate is held
    to that absolute threshold.  In automatic mode (``residual_tol=None``)
    the thresholds depend on the proxy, so :func:`find_roots` passes them in
    via ``tolerances`` (one entry per candidate, None meaning "keep"); called
    standalone in automatic mode, this only fills in missing residuals and
    rejects nothing.  Rejections are sticky: candidates already rejected
    pass through unchanged.
    """
    if tolerances is None:
        tolerances = [config.residual_tol] * len(candidates)
    out = []
    for cand, tol in zip(candidates, tolerances):
        if not cand.accepted:
            out.append(cand)
            continue
        residual = cand.residual
        if residual is None:
            residual = abs(float(f(cand.mapped_coord)))
        if tol is not None and residual > tol:
            out.append(
                replace(
                    cand,
                    accepted=False,
                    rejection_reason=RejectionReason.RESIDUAL_TOO_LARGE,
                    mapped_coord=None,
                    residual=residual,
                )
            )
        else:
            out.append(replace(cand, residual=residual))
    return tuple(out)


def _reject_uncertified_crossings(candidates, f, interval: Interval):
    """Reject accepted candidates where f provably does not change sign.

    Evaluates f a sign-bracket step either side of each accepted root; both
    values strictly on the same side of zero means the candidate is a
    crossing of the proxy's truncation error, not of f (f may dip far below
    any residual threshold without ever crossing, e.g. a Gaussian tail).
    Candidates within a bracket step of an interval endpoint are left alone;
    there is no room to straddle them.  Tangential (even-order) roots fail
    this test by nature, which matches their documented handling elsewhere
    in the pipeline.
    """
    out = []
    for cand in candidates:
        if not cand.accepted:
            out.append(cand)
            continue
        x = cand.mapped_coord
        h = _SIGN_STEP_FACTOR * max(1.0, abs(x))
        lo_pt = x - h
        hi_pt = x + h
        if lo_pt < interval.a or hi_pt > interval.b:
            out.append(cand)
            continue
        f_lo = float(f(lo_pt))
        f_hi = float(f(hi_pt))
        crosses = (f_lo < 0.0 < f_hi) or (f_hi < 0.0 < f_lo) or f_lo == 0.0 or f_hi == 0.0
        if crosses:
            out.append(cand)
        else:
            out.append(
                replace(
                    cand,
                    accepted=False,
                    rejection_reason=RejectionReason.RESIDUAL_TOO_LARGE,
                    mapped_coord=None,
                )
            )
    return tuple(out)


def _dedupe_candidates(candidates, interval: Interval, config: RootConfig):
    """Merge accepted candidates closer than dedupe_tol * width.

    Keeps the smaller-residual member of a cluster (ties keep the leftmost);
    the losers flip to rejected with reason ``duplicate``.  Returns the
    sorted root list and the updated candidate tuple.
    """
    radius = config.dedupe_tol * interval.width
    order = sorted(
        (i for i, c in enumerate(candidates) if c.accepted),
        key=lambda i: (candidates[i].mapped_coord, i),
    )
    out = list(candidates)

    def residual_of(cand):
        return cand.residual if cand.residual is not None else math.inf

    kept: list[int] = []
    for i in order:
        cand = out[i]
        if kept:
            j = kept[-1]
            prev = out[j]
            if cand.mapped_coord - prev.mapped_coord < radius:
                loser, winner = (j, i) if residual_of(cand) < residual_of(prev) else (i, j)
                out[loser] = replace(
                    out[loser],
                    accepted=False,
                    rejection_reason=RejectionReason.DUPLICATE,
                    mapped_coord=None,
                )
                kept[-1] = winner
                continue
        kept.append(i)
    roots = sorted(out[i].mapped_coord for i in kept)
    return roots, tuple(out)


def dedupe_and_sort(candidates, interval, config: RootConfig | None = None) -> list[float]:
    """Sorted accepted root locations with near-duplicates merged."""
    if config is None:
        config = RootConfig()
    roots, _ = _dedupe_candidates(tuple(candidates), _as_interval(interval), config)
    return roots


def _build_proxy(f, interval: Interval, config: RootConfig):
    if config.degree is None:
        raw, converged = _adaptive_raw(f, interval, config)
    else:
        raw = transform(_sample_at_nodes(f, interval, config.degree), interval)
        converged = True
    return raw, chop_series(raw, config.chop_tol), converged


def _decay_profile(series: ChebyshevSeries) -> DecayProfile:
    if len(series.coeffs) >= 4:
        return coefficient_decay(series)
    return DecayProfile(tuple(abs(c) for c in series.coeffs), None)


def find_roots(f, interval, config: RootConfig | None = None, df=None) -> RootReport:
    """All real roots of f on the interval by Chebyshev proxy rootfinding.

    Parameters
    ----------
    f : callable
        Real-valued function of one real variable; must be finite at the
        sample nodes.
    interval : Interval or (a, b) pair
        Search interval.
    config : RootConfig, optional
        Pipeline settings; defaults select the adaptive proxy degree with
        polishing on.
    df : callable, optional
        Derivative of f for Newton polishing.  When omitted, the
        differentiated proxy series is used instead.

    Returns
    -------
    report : RootReport
        Accepted roots (strictly increasing, clamped to the interval),
        every candidate with its fate, and run diagnostics.

    Raises
    ------
    NonFiniteSampleError
        If f is NaN or infinite at a sample node (the error names it).
    """
    interval = _as_interval(interval)
    if config is None:
        config = RootConfig()
    counter = _CountingFunction(f)
    raw, chopped, proxy_converged = _build_proxy(counter, interval, config)
    spectrum = series_spectrum(chopped)
    candidates = filter_candidates(spectrum, config)
    dseries = differentiate(chopped)
    newton_df = df if df is not None else (lambda x: evaluate(dseries, x))
    slack = config.box_tol * interval.width / 2.0

    staged: list[RootCandidate] = []
    tolerances: list[float | None] = []
    for cand in candidates:
        if not cand.accepted:
            staged.append(cand)
            tolerances.append(None)
            continue
        # eigenvalues admitted by the box tolerance can map a hair outside
        # [a, b]; start the polish inside so f is only probed where defined
        x0 = min(max(from_standard(interval, cand.standard_coord.real), interval.a), interval.b)
        iters = 0
        residual = None
        x = x0
        if config.polish:
            pol = newton_polish(counter, newton_df, x0, interval, config.polish_max_iter)
            iters = pol.iterations
            if pol.diverged or pol.x < interval.a - slack or pol.x > interval.b + slack:
                staged.append(
                    replace(
                        cand,
                        accepted=False,
                        rejection_reason=RejectionReason.NEWTON_DIVERGED,
                        residual=pol.residual if math.isfinite(pol.residual) else None,
                        polish_iterations=iters,
                    )
                )
                tolerances.append(None)
                continue
            x = pol.x
            residual = pol.residual
        clamped = min(max(x, interval.a), interval.b)
        if residual is None or clamped != x:
            residual = abs(counter(clamped))
        staged.append(replace(cand, mapped_coord=clamped, residual=residual, polish_iterations=iters))
        if config.residual_tol is not None:
            tolerances.append(config.residual_tol)
        elif config.polish:
            # backward-error test: is |f| at the rounding floor a Newton step sees?
            tolerances.append(
                _AUTO_RESIDUAL_FACTOR
                * _EPS
                * max(1.0, abs(clamped))
                * abs(evaluate(dseries, clamped))
            )
        else:
            # unpolished candidates are reported as the proxy's roots as-is
            tolerances.append(None)
    checked = residual_reject(staged, counter, config, tolerances=tolerances)
    if config.residual_tol is None and config.polish:
        checked = _reject_uncertified_crossings(checked, counter, interval)
    roots, final = _dedupe_candidates(checked, interval, config)
    return RootReport(
        roots=tuple(roots),
        candidates=final,
        degree_used=len(raw.coeffs),
        coefficient_decay=_decay_profile(raw),
        function_evaluations=counter.count,
        proxy_converged=proxy_converged,
    )
