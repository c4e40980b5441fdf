"""Convergence bounds for Ritz values: extremal and shifted-and-squared interior.

Extremal bound (target rank j from the top, Krylov dimension n >= j):

    lambda_j - theta_j  <=  (lambda_j - lambda_N) * (K_j tan(angle_j))^2
                            / T_{n-j}(gamma_j)^2

with gamma_j = 1 + 2 mu_j^2, mu_j = sqrt((lambda_j - lambda_{j+1}) /
(lambda_{j+1} - lambda_N)), K_j the product removing the ranks above the
target (a-priori from eigenvalues, a-posteriori from Ritz values), and
tan^2(angle_j) the start-vector weight below the target over the weight on it.
The asymptotic form replaces the Chebyshev factor by 4 e^{-4 (n-j) mu_j}.

Interior bound: form A' = -(A - Lambda)^2, whose top ranks are the eigenvalues
of A nearest the shift.  The extremal machinery on A' gives eps'_Lambda at
inner dimension n, and the error of the Ritz value of A nearest the target
from the *ambient* space K(A, v, 2n) is at most eps'_Lambda / (2 nu) with
nu = |lambda_alpha - Lambda|.  All bound arithmetic is in log space; values
below 1e-300 clamp to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chebyshev import cheb_log_abs
from .errors import (
    DegenerateGapError,
    DimensionMismatchError,
    ShiftAtTargetError,
    OrderingAssumptionError,
)
from .operators import OverlapProfile, Spectrum

__all__ = [
    "KpsIngredients",
    "ShiftedSpectrum",
    "InteriorBoundResult",
    "BoundCurve",
    "ShiftChoice",
    "kps_ingredients",
    "kps_bound",
    "kps_bound_lower_end",
    "shift_spectrum",
    "interior_bound",
    "mu_ratio",
    "bound_curve",
    "optimize_shift",
    "FAMILIES",
]

FAMILIES = (
    "extremal-exact",
    "extremal-asymptotic",
    "interior-exact",
    "interior-asymptotic",
)

_REL_DEGENERATE = 1e-12
_LOG_UNDERFLOW = float(np.log(1e-300))
_LOG_OVERFLOW = float(np.log(1e300))


def _from_log(log_value: float) -> float:
    """exp with the documented underflow clamp (and inf on overflow)."""
    if log_value == -np.inf or log_value < _LOG_UNDERFLOW:
        return 0.0
    if log_value > _LOG_OVERFLOW:
        return float(np.inf)
    return float(np.exp(log_value))


def _degenerate(hi: float, lo: float) -> bool:
    """True when the gap hi - lo (hi >= lo) is zero to 1e-12 relative."""
    return (hi - lo) <= _REL_DEGENERATE * max(abs(hi), abs(lo))


@dataclass(frozen=True)
class KpsIngredients:
    """Everything the extremal bound formula needs for one target rank."""

    j: int
    gamma_at_lambda_j: float
    mu: float
    k_factor: float
    log_k_factor: float
    tan_angle: float
    span: float


def kps_ingredients(
    spectrum: Spectrum,
    overlaps: OverlapProfile,
    j: int,
    ritz_prefix=None,
    allow_flat_gap: bool = False,
) -> KpsIngredients:
    """Assemble gamma_j, mu_j, K_j, tan(angle_j) for target rank j (1-based).

    K_j is a-priori (eigenvalue product) when ritz_prefix is None, a-posteriori
    (Ritz-value product) otherwise.  allow_flat_gap permits a degenerate gap
    directly below the target (mu = 0, non-decaying bound) for the force path
    of interior_bound.
    """
    vals = spectrum.values
    N = spectrum.dim
    if overlaps.dim != N:
        raise DimensionMismatchError(
            f"overlap profile dimension {overlaps.dim} does not match spectrum dimension {N}"
        )
    if not 1 <= j <= N:
        raise ValueError(f"target rank must be in 1..{N}, got {j}")
    if j == N:
        raise ValueError("extremal bound needs a gap below the target (j < N)")
    lam_j = float(vals[j - 1])
    lam_next = float(vals[j])
    lam_bot = float(vals[-1])
    flat = _degenerate(lam_j, lam_next)
    if flat and not allow_flat_gap:
        raise DegenerateGapError(
            f"degenerate gap below target rank {j}: the bound would not decay"
        )
    if j < N - 1 and _degenerate(lam_next, lam_bot):
        raise DegenerateGapError(
            "degenerate tail: the eigenvalue below the target coincides with the smallest one"
        )
    mags = overlaps.magnitudes
    w_j = float(mags[j - 1]) ** 2
    if w_j == 0.0:
        raise ValueError(f"start vector has zero overlap with eigenvector {j}")
    tan_sq = float(np.sum(mags[j:] ** 2)) / w_j
    if flat:
        mu, gamma = 0.0, 1.0
    elif j == N - 1:
        # only lambda_N lies below the target: the Chebyshev interval shrinks
        # to a point and the bound collapses to its n = j value, then zero
        mu, gamma = float(np.inf), float(np.inf)
    else:
        mu = float(np.sqrt((lam_j - lam_next) / (lam_next - lam_bot)))
        gamma = 1.0 + 2.0 * mu * mu
    if ritz_prefix is None:
        above = vals[: j - 1]
        if j > 1 and _degenerate(float(above[-1]), lam_j):
            raise DegenerateGapError(
                f"target rank {j} is degenerate with an eigenvalue above it"
            )
        log_k = float(np.sum(np.log(above - lam_bot) - np.log(above - lam_j)))
    else:
        prefix = np.atleast_1d(np.asarray(ritz_prefix, dtype=float))
        if prefix.size < j - 1:
            raise ValueError(
                f"ritz_prefix needs at least {j - 1} values for target rank {j}"
            )
        theta = prefix[: j - 1]
        if np.any(theta == lam_j) or np.any(theta == lam_bot):
            raise DegenerateGapError(
                "a Ritz value coincides exactly with the target or bottom eigenvalue"
            )
        log_k = float(np.sum(np.log(np.abs(theta - lam_bot)) - np.log(np.abs(theta - lam_j))))
    return KpsIngredients(
        j=j,
        gamma_at_lambda_j=gamma,
        mu=mu,
        k_factor=_from_log(log_k),
        log_k_factor=log_k,
        tan_angle=float(np.sqrt(tan_sq)),
        span=lam_j - lam_bot,
    )


def _log_core(ing: KpsIngredients) -> float:
    """log of span * (K tan)^2, or -inf when the start vector is the eigenvector."""
    if ing.tan_angle == 0.0:
        return -np.inf
    return float(np.log(ing.span) + 2.0 * (ing.log_k_factor + np.log(ing.tan_angle)))


def _log_kps_bound(ing: KpsIngredients, n: int, form: str) -> float:
    if form not in ("exact", "asymptotic"):
        raise ValueError(f"unknown bound form {form!r}")
    if n < ing.j:
        raise ValueError(f"Krylov dimension {n} below target rank {ing.j}")
    core = _log_core(ing)
    if core == -np.inf:
        return -np.inf
    k = n - ing.j
    if form == "exact":
        return core - 2.0 * cheb_log_abs(k, ing.gamma_at_lambda_j)
    decay = 0.0 if k == 0 else 4.0 * k * ing.mu
    return float(np.log(4.0)) + core - decay


def kps_bound(ing: KpsIngredients, n: int, form: str = "exact") -> float:
    """Evaluate the extremal bound at Krylov dimension n (n >= j)."""
    return _from_log(_log_kps_bound(ing, n, form))


def kps_bound_lower_end(
    spectrum: Spectrum,
    overlaps: OverlapProfile,
    j_from_bottom: int,
    n: int,
    form: str = "exact",
    ritz_prefix=None,
) -> float:
    """Extremal bound for the j-th smallest eigenvalue: run the top bound on -A.

    A ritz_prefix, if given, must already be in the reflected convention
    (negated Ritz values of A, sorted descending).
    """
    refl = Spectrum(-spectrum.values[::-1])
    refl_overlaps = OverlapProfile(overlaps.magnitudes[::-1])
    ing = kps_ingredients(refl, refl_overlaps, j_from_bottom, ritz_prefix=ritz_prefix)
    return kps_bound(ing, n, form)


@dataclass(frozen=True)
class ShiftedSpectrum:
    """Spectrum of A' = -(A - Lambda)^2 with the permutation back to A order.

    values[i] == -(original[perm[i]] - shift)^2 exactly as floats; ties in the
    stable descending sort keep ascending original index.
    """

    shift: float
    values: np.ndarray
    perm: np.ndarray
    overlaps_permuted: OverlapProfile


def shift_spectrum(spectrum: Spectrum, overlaps: OverlapProfile, shift: float) -> ShiftedSpectrum:
    """Shift and square: eigenvalues nearest the shift move to the top of A'."""
    if overlaps.dim != spectrum.dim:
        raise DimensionMismatchError(
            f"overlap profile dimension {overlaps.dim} does not match spectrum dimension {spectrum.dim}"
        )
    shift = float(shift)
    if not np.isfinite(shift):
        raise ValueError("shift must be finite")
    primed = -((spectrum.values - shift) ** 2)
    order = np.argsort(-primed, kind="stable")
    values = primed[order]
    values.flags.writeable = False
    return ShiftedSpectrum(
        shift=shift,
        values=values,
        perm=order,
        overlaps_permuted=OverlapProfile(overlaps.magnitudes[order]),
    )


def _collapse_groups(values: np.ndarray, mags: np.ndarray):
    """Merge exactly-degenerate (1e-12 relative) runs of primed eigenvalues.

    A degenerate eigenspace of A' is never split by a Krylov space: the start
    vector meets it through a single combined eigenvector, whose overlap is the
    root-sum-square of the members'.  Returns (collapsed values, collapsed
    magnitudes, rank_of) with rank_of mapping raw positions to group indices.
    """
    groups: list[list[int]] = [[0]]
    for i in range(1, values.size):
        if _degenerate(float(values[groups[-1][0]]), float(values[i])):
            groups[-1].append(i)
        else:
            groups.append([i])
    cvals = np.array([values[g[0]] for g in groups])
    cmags = np.array([float(np.sqrt(np.sum(mags[g] ** 2))) for g in groups])
    rank_of = np.empty(values.size, dtype=int)
    for gi, g in enumerate(groups):
        rank_of[g] = gi
    return cvals, cmags, rank_of, groups


@dataclass(frozen=True)
class InteriorBoundResult:
    """eps'_Lambda and the transferred error bound for one interior target.

    j is the rank of the target in the shifted spectrum (first member of its
    group when degenerate); j_effective is the rank actually used by the bound
    formula after any collapse.  The bound holds for the Ritz value of A
    nearest lambda_alpha from the ambient space of dimension 2 * inner_dim.
    """

    alpha: int
    j: int
    j_effective: int
    nu: float
    log_epsilon: float
    bound: float
    inner_dim: int
    ambient_dim: int
    mode: str

    @property
    def epsilon(self) -> float:
        return _from_log(self.log_epsilon)


def _interior_setup(spectrum, overlaps, alpha, shift, degenerate, ritz_prefix_primed):
    """Shared plumbing: shift, locate the target, honor the degeneracy policy."""
    if degenerate not in ("error", "collapse", "force"):
        raise ValueError(f"unknown degenerate policy {degenerate!r}")
    N = spectrum.dim
    if not 1 <= alpha <= N:
        raise ValueError(f"target index must be in 1..{N}, got {alpha}")
    lam_a = float(spectrum.values[alpha - 1])
    nu = abs(lam_a - float(shift))
    if nu == 0.0:
        raise ShiftAtTargetError(f"shift {shift} coincides with target eigenvalue {alpha}")
    ss = shift_spectrum(spectrum, overlaps, shift)
    pos = int(np.nonzero(ss.perm == alpha - 1)[0][0])
    if degenerate == "collapse":
        cvals, cmags, rank_of, groups = _collapse_groups(ss.values, ss.overlaps_permuted.magnitudes)
        g = rank_of[pos]
        j_eff = int(g) + 1
        j_report = int(groups[g][0]) + 1
        ing = kps_ingredients(
            Spectrum(cvals), OverlapProfile(cmags), j_eff, ritz_prefix=ritz_prefix_primed
        )
    else:
        if pos > 0 and _degenerate(float(ss.values[pos - 1]), float(ss.values[pos])):
            raise DegenerateGapError(
                "target lies inside a degenerate group of the shifted spectrum"
            )
        if degenerate == "error":
            if pos < N - 1 and _degenerate(float(ss.values[pos]), float(ss.values[pos + 1])):
                raise DegenerateGapError(
                    "degenerate gap in the shifted spectrum directly below the target"
                )
        j_eff = pos + 1
        j_report = pos + 1
        ing = kps_ingredients(
            Spectrum(ss.values),
            ss.overlaps_permuted,
            j_eff,
            ritz_prefix=ritz_prefix_primed,
            allow_flat_gap=(degenerate == "force"),
        )
    return ing, nu, j_report, j_eff, ss


def interior_bound(
    spectrum: Spectrum,
    overlaps: OverlapProfile,
    alpha: int,
    shift: float,
    inner_dim: int,
    form: str = "exact",
    ritz_prefix_primed=None,
    degenerate: str = "error",
) -> InteriorBoundResult:
    """Bound |lambda_alpha - theta| from the ambient space K(A, v, 2*inner_dim).

    Runs the extremal machinery on the shifted-and-squared spectrum to get
    eps'_Lambda, then divides by 2 nu.  ritz_prefix_primed (Ritz values of A',
    descending) switches the K' factor to a-posteriori.  The degenerate policy
    handles coincidences in the shifted spectrum: "error" raises, "collapse"
    merges exactly-degenerate groups, "force" accepts a flat gap below the
    target (exact form only; the bound stops decaying).
    """
    if degenerate == "force" and form != "exact":
        raise ValueError("force policy supports only the exact form")
    ing, nu, j_report, j_eff, _ = _interior_setup(
        spectrum, overlaps, alpha, shift, degenerate, ritz_prefix_primed
    )
    log_eps = _log_kps_bound(ing, inner_dim, form)
    return InteriorBoundResult(
        alpha=alpha,
        j=j_report,
        j_effective=j_eff,
        nu=nu,
        log_epsilon=log_eps,
        bound=_from_log(log_eps - np.log(2.0 * nu)),
        inner_dim=inner_dim,
        ambient_dim=2 * inner_dim,
        mode="a-posteriori" if ritz_prefix_primed is not None else "a-priori",
    )


def mu_ratio(spectrum: Spectrum, alpha: int, shift: float) -> tuple[float, float, float]:
    """(mu_prime, mu, ratio) with the closed form

        ratio = sqrt((2L - lambda_a - lambda_{a+1}) / (2L - lambda_{a+1} - lambda_N)).

    Exact identity (not an approximation) whenever the shifted spectrum keeps
    lambda_{alpha+1} directly below the target and lambda_N at the bottom.
    """
    vals = spectrum.values
    N = spectrum.dim
    if not 1 <= alpha <= N - 1:
        raise ValueError(f"target index must have a neighbour below: 1..{N - 1}, got {alpha}")
    shift = float(shift)
    ss = shift_spectrum(spectrum, OverlapProfile(np.ones(N)), shift)
    pos = int(np.nonzero(ss.perm == alpha - 1)[0][0])
    if pos >= N - 1:
        raise OrderingAssumptionError(
            "shifted-spectrum ordering assumption broken: target has no rank below it"
        )
    expected_next = -((float(vals[alpha]) - shift) ** 2)
    expected_bot = -((float(vals[-1]) - shift) ** 2)
    if float(ss.values[pos + 1]) != expected_next or float(ss.values[-1]) != expected_bot:
        raise OrderingAssumptionError(
            "shifted-spectrum ordering assumption broken: the ranks below the target "
            "are not the images of the eigenvalues below it"
        )
    lam_a = float(vals[alpha - 1])
    lam_next = float(vals[alpha])
    lam_bot = float(vals[-1])
    if _degenerate(lam_a, lam_next) or _degenerate(lam_next, lam_bot):
        raise DegenerateGapError("degenerate gap leaves the convergence exponent undefined")
    g_hi = float(ss.values[pos] - ss.values[pos + 1])
    g_lo = float(ss.values[pos + 1] - ss.values[-1])
    if g_hi <= 0.0 or g_lo <= 0.0 or _degenerate(float(ss.values[pos]), float(ss.values[pos + 1])):
        raise DegenerateGapError("degenerate gap in the shifted spectrum at the target")
    mu_prime = float(np.sqrt(g_hi / g_lo))
    mu = float(np.sqrt((lam_a - lam_next) / (lam_next - lam_bot)))
    num = 2.0 * shift - lam_a - lam_next
    den = 2.0 * shift - lam_next - lam_bot
    if num <= 0.0 or den <= 0.0:
        raise OrderingAssumptionError(
            "shifted-spectrum ordering assumption broken: closed form loses positivity"
        )
    return mu_prime, mu, float(np.sqrt(num / den))


@dataclass(frozen=True)
class BoundCurve:
    """One bound family evaluated over a range of ambient Krylov dimensions.

    Interior families carry points only at even ambient dimensions; dimensions
    before the bound's starting rank carry inf.
    """

    family: str
    target_index: int
    shift: float | None
    points: list = field(default_factory=list)
    side: str = "top"


def bound_curve(
    spectrum: Spectrum,
    overlaps: OverlapProfile,
    alpha: int,
    family: str,
    shift: float | None = None,
    dims=None,
    side: str = "top",
    degenerate: str = "collapse",
) -> BoundCurve:
    """Evaluate one bound family against ambient Krylov dimension.

    Extremal families take the target as rank alpha from the chosen side;
    interior families need a shift and report the inner bound at ambient 2n.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown bound family {family!r}")
    if side not in ("top", "bottom"):
        raise ValueError(f"unknown side {side!r}")
    if dims is None:
        dims = range(1, spectrum.dim + 1)
    form = "exact" if family.endswith("exact") else "asymptotic"
    points: list[tuple[int, float]] = []
    if family.startswith("extremal"):
        if side == "top":
            ing = kps_ingredients(spectrum, overlaps, alpha)
        else:
            refl = Spectrum(-spectrum.values[::-1])
            refl_overlaps = OverlapProfile(overlaps.magnitudes[::-1])
            ing = kps_ingredients(refl, refl_overlaps, spectrum.dim + 1 - alpha)
        for a in dims:
            if a < ing.j:
                points.append((int(a), float(np.inf)))
            else:
                points.append((int(a), _from_log(_log_kps_bound(ing, int(a), form))))
        return BoundCurve(family=family, target_index=alpha, shift=None, points=points, side=side)
    if shift is None:
        raise ValueError("interior families need a shift")
    ing, nu, _, j_eff, _ = _interior_setup(spectrum, overlaps, alpha, shift, degenerate, None)
    log_2nu = float(np.log(2.0 * nu))
    for a in dims:
        if a % 2 != 0:
            continue
        m = a // 2
        if m < j_eff:
            points.append((int(a), float(np.inf)))
        else:
            points.append((int(a), _from_log(_log_kps_bound(ing, m, form) - log_2nu)))
    return BoundCurve(family=family, target_index=alpha, shift=float(shift), points=points)


@dataclass(frozen=True)
class ShiftChoice:
    """Winner of the shift search plus the evaluated candidate field.

    shift is +-inf when the plain extremal bound (the infinite-shift limit)
    wins.  candidates holds (shift, kind, ambient_dim-or-None, reference bound)
    for every candidate that could be evaluated, sorted by merit.
    """

    alpha: int
    shift: float
    kind: str
    inner_dim: int | None
    ambient_dim: int | None
    converged: bool
    curve: BoundCurve
    candidates: list


def _crossing_from_ingredients(ing: KpsIngredients, log_target: float):
    """Smallest n with the exact bound <= the log-space target, by closed form."""
    core = _log_core(ing)
    if core == -np.inf:
        return ing.j
    need = 0.5 * (core - log_target)
    if need <= 0.0:
        return ing.j
    t1 = float(np.arccosh(ing.gamma_at_lambda_j))
    if t1 == 0.0:
        return None
    if np.isinf(t1):
        return ing.j + 1
    k_hi = int(np.ceil((need + np.log(2.0)) / t1))
    for k in (k_hi - 1, k_hi):
        if k >= 0 and cheb_log_abs(k, ing.gamma_at_lambda_j) >= need:
            return ing.j + k
    return ing.j + k_hi


def optimize_shift(
    spectrum: Spectrum,
    overlaps: OverlapProfile,
    alpha: int,
    target_error: float,
    n_cap: int,
) -> ShiftChoice:
    """Pick the shift reaching the target bound at the smallest ambient dimension.

    Candidates are the pairwise midpoints of the spectrum (where two shifted
    eigenvalues become degenerate) both exactly (degenerate groups collapsed)
    and perturbed by +-1e-9 * span, plus the infinite-shift pseudo-candidates
    realized as the plain extremal bound on A and on -A.  Comparison is in
    ambient (matvec) dimensions; ties break by smaller bound, then smaller
    |shift|.  If nothing reaches the target within n_cap the best-effort
    candidate is returned with converged=False.
    """
    if not target_error > 0.0:
        raise ValueError("target error must be positive")
    if n_cap < 1:
        raise ValueError("dimension cap must be at least 1")
    N = spectrum.dim
    if not 1 <= alpha <= N:
        raise ValueError(f"target index must be in 1..{N}, got {alpha}")
    span = spectrum.span
    if span <= 0.0:
        raise DegenerateGapError("spectrum has zero span; no shift can help")
    log_target = float(np.log(target_error))
    vals = spectrum.values
    mids = np.unique(
        np.array([(vals[i] + vals[k]) / 2.0 for i in range(N) for k in range(i + 1, N)])
    )
    pert = 1e-9 * span
    candidates: list[tuple[float, str]] = []
    for mid in mids:
        candidates.append((float(mid), "collapse"))
        candidates.append((float(mid) - pert, "error"))
        candidates.append((float(mid) + pert, "error"))
    evaluated = []
    for shift, policy in candidates:
        try:
            ing, nu, _, j_eff, _ = _interior_setup(spectrum, overlaps, alpha, shift, policy, None)
        except (DegenerateGapError, ShiftAtTargetError, ValueError):
            continue
        log_adj = log_target + float(np.log(2.0 * nu))
        m_cross = _crossing_from_ingredients(ing, log_adj)
        ambient = 2 * m_cross if m_cross is not None else None
        if ambient is not None and ambient <= n_cap:
            at = _from_log(_log_kps_bound(ing, m_cross, "exact") - np.log(2.0 * nu))
            evaluated.append((shift, "interior", ambient, m_cross, at, True))
        else:
            m_best = n_cap // 2
            if m_best >= j_eff:
                at = _from_log(_log_kps_bound(ing, m_best, "exact") - np.log(2.0 * nu))
                evaluated.append((shift, "interior", None, m_best, at, False))
    for kind, sign in (("extremal-top", np.inf), ("extremal-bottom", -np.inf)):
        try:
            if kind == "extremal-top":
                ing = kps_ingredients(spectrum, overlaps, alpha)
            else:
                ing = kps_ingredients(
                    Spectrum(-vals[::-1]), OverlapProfile(overlaps.magnitudes[::-1]), N + 1 - alpha
                )
        except (DegenerateGapError, ValueError):
            continue
        n_cross = _crossing_from_ingredients(ing, log_target)
        if n_cross is not None and n_cross <= n_cap:
            evaluated.append(
                (float(sign), kind, n_cross, n_cross, kps_bound(ing, n_cross, "exact"), True)
            )
        elif n_cap >= ing.j:
            evaluated.append(
                (float(sign), kind, None, n_cap, kps_bound(ing, n_cap, "exact"), False)
            )
    if not evaluated:
        raise DegenerateGapError("no admissible shift candidate for this target")

    def merit(entry):
        shift, _, ambient, _, at, converged = entry
        return (
            0 if converged else 1,
            ambient if ambient is not None else np.inf,
            at,
            abs(shift),
            shift,
        )

    evaluated.sort(key=merit)
    shift, kind, ambient, inner, at, converged = evaluated[0]
    if kind == "interior":
        curve = bound_curve(
            spectrum, overlaps, alpha, "interior-exact", shift=shift,
            dims=range(1, n_cap + 1), degenerate="collapse",
        )
        inner_dim = inner
    else:
        curve = bound_curve(
            spectrum, overlaps, alpha, "extremal-exact",
            dims=range(1, n_cap + 1), side="top" if kind == "extremal-top" else "bottom",
        )
        inner_dim = None
    summary = [(s, k, a, b) for s, k, a, _, b, _ in evaluated]
    return ShiftChoice(
        alpha=alpha,
        shift=shift,
        kind=kind,
        inner_dim=inner_dim,
        ambient_dim=ambient,
        converged=converged,
        curve=curve,
        candidates=summary,
    )
