"""Acceptance suite: one test per headline claim, one printed verdict line each.

Every test prints "[criterion N] PASS/FAIL: ..." before asserting, so a run of
``pytest`` (the package configures -s) always shows the full scoreboard.
"""

import time
from math import comb

import numpy as np
from numpy.random import default_rng

from ritz_bounds import (
    DegenerateGapError,
    DiagonalOperator,
    OverlapProfile,
    RitzBoundsError,
    Spectrum,
    bound_curve,
    cheb_eval,
    cheb_log_growth,
    equal_overlap_start,
    figure1_spectrum,
    interior_bound,
    kps_bound,
    kps_ingredients,
    mu_ratio,
    optimize_shift,
    ritz_sweep,
    shift_spectrum,
    tridiagonal_eigenvalues,
    tridiagonal_eigenvalues_bisect,
)

SLACK = 1e-8  # relative slack on every bound-vs-error comparison


def verdict(num, ok, detail):
    print(f"\n[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def random_spectrum(rng, n):
    """Random descending spectrum with minimum gap well above 1e-3 * span."""
    gaps = rng.uniform(0.5 / n, 2.0 / n, size=n - 1)
    top = rng.uniform(-1.0, 1.0)
    return Spectrum(top - np.concatenate([[0.0], np.cumsum(gaps)]))


def random_overlaps(rng, n):
    return OverlapProfile(rng.uniform(0.05, 1.0, size=n))


def covered(gap, bound):
    return gap <= bound * (1.0 + SLACK) + 1e-12


def first_crossing(curve, level):
    return next((n for n, b in curve.points if b <= level), None)


def test_criterion_1_extremal_bound_validity():
    """>= 200 random spectra: 0 <= lambda_j - theta_j <= exact bound, j <= 5."""
    t0 = time.time()
    rng = default_rng(20250823)
    spectra = 0
    checks = 0
    ok = True
    detail = ""
    for _ in range(200):
        n = int(rng.integers(8, 33))
        sp = random_spectrum(rng, n)
        ov = random_overlaps(rng, n)
        sweep = ritz_sweep(DiagonalOperator(sp), ov.magnitudes, n)
        spectra += 1
        for j in range(1, min(5, n - 1) + 1):
            for rs in sweep:
                if rs.dimension < j:
                    continue
                gap = sp.values[j - 1] - rs.values[j - 1]
                if gap < -1e-10 * sp.norm:
                    ok, detail = False, f"interlacing broken at n={n} j={j}"
                    break
                prefix = rs.values[: j - 1] if j > 1 else None
                ing = kps_ingredients(sp, ov, j, ritz_prefix=prefix)
                if not covered(gap, kps_bound(ing, rs.dimension)):
                    ok = False
                    detail = f"bound violated at n={n} j={j} m={rs.dimension}"
                    break
                checks += 1
            if not ok:
                break
        if not ok:
            break
    elapsed = time.time() - t0
    if ok:
        ok = elapsed < 30.0
        detail = (
            f"{spectra} spectra, {checks} (j, n) pairs covered by the a-posteriori "
            f"exact bound, {elapsed:.1f} s"
        )
    assert verdict(1, ok, detail)


def test_criterion_2_interior_bound_validity():
    """Same sampling + 5 admissible shifts each: the full transfer chain holds."""
    t0 = time.time()
    rng = default_rng(20250823)
    checks = 0
    ok = True
    detail = ""
    for _ in range(200):
        n = int(rng.integers(8, 33))
        sp = random_spectrum(rng, n)
        ov = random_overlaps(rng, n)
        span = sp.span
        sweep_a = ritz_sweep(DiagonalOperator(sp), ov.magnitudes, n)
        alpha = int(rng.integers(1, n // 2 + 1))
        lam_a = sp.values[alpha - 1]
        tol = 1e-10 * sp.norm
        found = 0
        tries = 0
        while found < 5 and tries < 500:
            tries += 1
            shift = rng.uniform(lam_a + 0.05 * span, sp.top + 0.75 * span)
            if abs(lam_a - shift) < 1e-3 * span:
                continue
            ss = shift_spectrum(sp, ov, shift)
            # admissible: the target and every rank above keep their order
            if not np.array_equal(ss.perm[: alpha + 1], np.arange(alpha + 1)):
                continue
            try:
                interior_bound(sp, ov, alpha, shift, alpha)
            except (RitzBoundsError, ValueError):
                continue
            found += 1
            sweep_p = ritz_sweep(
                DiagonalOperator(Spectrum(ss.values)), ss.overlaps_permuted.magnitudes, n // 2
            )
            for inner in sorted({alpha, min(alpha + 1, n // 2), min(alpha + 3, n // 2), n // 2}):
                theta_p = sweep_p[inner - 1].values[alpha - 1]
                if theta_p >= 0.0:
                    ok, detail = False, f"inner Ritz value not negative at n={n}"
                    break
                bar = shift - np.sqrt(-theta_p)
                prefix = sweep_p[inner - 1].values[: alpha - 1] if alpha > 1 else None
                r = interior_bound(
                    sp, ov, alpha, shift, inner, ritz_prefix_primed=prefix
                )
                theta = sweep_a[min(2 * inner, n) - 1].values[alpha - 1]
                if not (bar <= theta + tol and theta <= lam_a + tol):
                    ok, detail = False, f"chain ordering broken at n={n} alpha={alpha}"
                    break
                if not covered(lam_a - bar, r.bound):
                    ok, detail = False, f"bar bound violated at n={n} alpha={alpha}"
                    break
                checks += 1
            if not ok:
                break
        if ok and found < 5:
            ok, detail = False, f"could not find 5 admissible shifts (n={n}, alpha={alpha})"
        if not ok:
            break
    elapsed = time.time() - t0
    if ok:
        ok = elapsed < 60.0
        detail = (
            f"200 spectra x 5 admissible shifts, {checks} chain checks "
            f"(bar theta <= ambient theta <= lambda, error <= eps'/(2 nu)), {elapsed:.1f} s"
        )
    assert verdict(2, ok, detail)


def test_criterion_3_interior_beats_extremal_on_benchmark():
    """Benchmark spectrum: shifted bounds cross 1e-8 first for ranks 23-25,
    the plain bound stays ahead for rank 1."""
    sp = figure1_spectrum()
    ov = equal_overlap_start(sp.dim)
    level = 1e-8
    dims = range(1, 151)  # past the spectrum size: these are bound evaluations
    ok = True
    parts = []
    for alpha in (23, 24, 25):
        inner_c = first_crossing(
            bound_curve(sp, ov, alpha, "interior-exact", shift=0.45, dims=dims), level
        )
        extremal_c = first_crossing(
            bound_curve(sp, ov, alpha, "extremal-exact", dims=dims), level
        )
        parts.append(f"rank {alpha}: interior {inner_c} < extremal {extremal_c}")
        if not (inner_c is not None and extremal_c is not None and inner_c < extremal_c):
            ok = False
    choice = optimize_shift(sp, ov, 1, level, 64)
    top_ok = choice.kind == "extremal-top" and choice.converged
    for s, kind, ambient, _ in choice.candidates:
        if kind == "interior" and ambient is not None and ambient < choice.ambient_dim:
            top_ok = False
    parts.append(f"rank 1: extremal at {choice.ambient_dim} <= every interior candidate")
    ok = ok and top_ok
    assert verdict(3, ok, "; ".join(parts))


def test_criterion_4_equidistant_pair_curves_coincide():
    sp = figure1_spectrum()
    ov = equal_overlap_start(sp.dim)
    dims = range(1, 93)
    worst = 0.0
    for family in ("interior-exact", "interior-asymptotic"):
        c24 = dict(bound_curve(sp, ov, 24, family, shift=0.45, dims=dims).points)
        c25 = dict(bound_curve(sp, ov, 25, family, shift=0.45, dims=dims).points)
        assert c24.keys() == c25.keys()
        for n in c24:
            a, b = c24[n], c25[n]
            if np.isinf(a) and np.isinf(b):
                continue
            denom = max(abs(a), abs(b), 1e-300)
            worst = max(worst, abs(a - b) / denom)
    ok = worst < 1e-12
    assert verdict(
        4, ok, f"rank 24/25 curves pointwise equal, worst relative gap {worst:.2e}"
    )


def test_criterion_5_exhaustion_recovers_spectrum():
    sp = figure1_spectrum()
    sweep = ritz_sweep(DiagonalOperator(sp), equal_overlap_start(sp.dim).magnitudes, sp.dim)
    final = sweep[-1]
    assert final.dimension == sp.dim
    worst = float(np.max(np.abs(final.values - sp.values)))
    ok = worst <= 1e-8 * sp.norm
    assert verdict(
        5, ok, f"full-dimension Ritz values match all 46 eigenvalues to {worst:.2e}"
    )


def cheb_binomial_sum(n, x):
    """Independent closed form used only as a cross-check here."""
    total = 0.0
    for j in range(n // 2 + 1):
        for l in range(j + 1):
            total += comb(n, 2 * j) * comb(j, l) * (-1) ** (j + l) * x ** (n - 2 * (j - l))
    return total


def test_criterion_6_chebyshev_suite():
    t0 = time.time()
    ok = True
    detail = ""
    xs = np.linspace(-1.0, 1.0, 2001)
    for n in range(51):
        if max(abs(cheb_eval(n, float(x))) for x in xs) > 1.0 + 1e-12:
            ok, detail = False, f"|T_{n}| exceeds 1 on [-1, 1]"
            break
    if ok:
        for t in np.linspace(0.0, np.pi, 257):
            for n in range(0, 51, 7):
                if abs(cheb_eval(n, float(np.cos(t))) - np.cos(n * t)) > 1e-12:
                    ok, detail = False, f"cos identity broken at n={n}"
                    break
            if not ok:
                break
    if ok:
        for n in range(31):
            for x in np.linspace(1.0001, 4.0, 120):
                if 0.5 * np.exp(cheb_log_growth(n, float(x))) > cheb_eval(n, float(x)) * (
                    1 + 1e-13
                ):
                    ok, detail = False, f"half-exponential lower bound fails at n={n}"
                    break
            if not ok:
                break
    if ok:
        worst = 0.0
        for n in range(11):
            for x in np.linspace(-1.5, 1.5, 121):
                a = cheb_binomial_sum(n, float(x))
                b = cheb_eval(n, float(x))
                worst = max(worst, abs(a - b) / max(1.0, abs(b)))
        if worst > 1e-9:
            ok, detail = False, f"binomial-sum mismatch {worst:.2e}"
    elapsed = time.time() - t0
    if ok:
        ok = elapsed < 5.0
        detail = (
            "boundedness, cosine identity, half-exponential growth, binomial sum "
            f"(worst {worst:.2e}), {elapsed:.2f} s"
        )
    assert verdict(6, ok, detail)


def test_criterion_7_mu_ratio_identity():
    rng = default_rng(777)
    done = 0
    tries = 0
    worst = 0.0
    ok = True
    while done < 100 and tries < 5000:
        tries += 1
        n = int(rng.integers(4, 33))
        sp = random_spectrum(rng, n)
        alpha = int(rng.integers(1, n))
        shift = rng.uniform(sp.values[alpha - 1] + 1e-3 * sp.span, sp.top + 2.0 * sp.span)
        try:
            mu_p, mu, ratio = mu_ratio(sp, alpha, shift)
        except (RitzBoundsError, ValueError):
            continue  # precondition not met; resample
        worst = max(worst, abs(ratio - mu_p / mu) / (mu_p / mu))
        done += 1
    ok = done == 100 and worst < 1e-12
    sp = random_spectrum(default_rng(5), 12)
    _, _, limit_ratio = mu_ratio(sp, 5, sp.top + 1e6 * sp.span)
    ok = ok and limit_ratio > 0.99
    assert verdict(
        7,
        ok,
        f"{done} admissible pairs, closed form vs direct gaps worst {worst:.2e}; "
        f"far-shift ratio {limit_ratio:.6f}",
    )


def test_criterion_8_oracle_equivalence():
    rng = default_rng(2024)
    ok = True
    parts = []
    # QL vs Sturm bisection
    worst = 0.0
    for _ in range(300):
        m = int(rng.integers(1, 7))
        d = rng.normal(size=m)
        e = rng.normal(size=m - 1)
        scale = max(1.0, float(np.max(np.abs(d))) + (float(np.max(np.abs(e))) if m > 1 else 0.0))
        diff = np.max(
            np.abs(tridiagonal_eigenvalues(d, e) - tridiagonal_eigenvalues_bisect(d, e))
        )
        worst = max(worst, diff / scale)
    parts.append(f"QL vs Sturm worst {worst:.1e}")
    ok = ok and worst < 1e-11
    # two-step sweep vs an explicit 2x2 projection
    worst2 = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 9))
        vals = np.sort(rng.normal(size=n) * 2.0)[::-1] + np.arange(n)[::-1] * 1e-6
        sp = Spectrum(vals)
        v = rng.uniform(0.1, 1.0, size=n)
        two = ritz_sweep(DiagonalOperator(sp), v, 2)[1].values
        A = np.diag(sp.values)
        Q, _ = np.linalg.qr(np.column_stack([v, A @ v]))
        brute = np.sort(np.linalg.eigvalsh(Q.T @ A @ Q))[::-1]
        worst2 = max(worst2, float(np.max(np.abs(two - brute))) / max(1.0, sp.norm))
    parts.append(f"n=2 sweep vs 2x2 projection worst {worst2:.1e}")
    ok = ok and worst2 < 1e-12
    # shift optimizer vs a dense grid
    sp = Spectrum(np.array([2.0, 1.0, -1.0, -2.0]))
    ov = OverlapProfile(np.ones(4))
    dims = list(range(1, 65))
    for alpha in (1, 2, 3):
        choice = optimize_shift(sp, ov, alpha, 1e-6, 64)
        grid_best = None
        for shift in np.arange(-3.0, 3.0 + 1e-12, 1e-3):
            try:
                curve = bound_curve(
                    sp, ov, alpha, "interior-exact", shift=float(shift),
                    dims=dims, degenerate="collapse",
                )
            except (RitzBoundsError, ValueError):
                continue
            hit = first_crossing(curve, 1e-6)
            if hit is not None and (grid_best is None or hit < grid_best):
                grid_best = hit
        # the optimizer sees every grid candidate's bound family and more, so
        # its winner must be within one ambient step (= 2) of the grid optimum
        step_ok = (
            choice.converged
            and grid_best is not None
            and choice.ambient_dim <= grid_best + 2
        )
        parts.append(
            f"alpha={alpha}: optimizer {choice.ambient_dim} ({choice.kind}) vs grid {grid_best}"
        )
        ok = ok and step_ok
    assert verdict(8, ok, "; ".join(parts))


def test_criterion_9_near_degenerate_plateau():
    sp = figure1_spectrum()
    sweep = ritz_sweep(DiagonalOperator(sp), equal_overlap_start(sp.dim).magnitudes, sp.dim)
    lam_bot = sp.values[-1]  # -13.2, twinned with -13.1
    errs = []
    for rs in sweep:
        theta = rs.values[np.argmin(np.abs(rs.values - lam_bot))]
        errs.append(abs(float(theta) - lam_bot))
    witness = None
    for i in range(len(errs) - 3):
        window = errs[i : i + 3]
        if min(window) <= 0.0 or max(window) / min(window) > 10.0:
            continue
        for k in range(i + 3, len(errs)):
            if errs[k] < 1e-2 * errs[i]:
                witness = (i + 1, k + 1)
                break
        if witness:
            break
    ok = witness is not None
    if ok:
        n1, n2 = witness
        detail = (
            f"error flat within factor 10 over n={n1}..{n1 + 2} "
            f"({errs[n1 - 1]:.2e}..{errs[n1 + 1]:.2e}), then drops 100x by n={n2} "
            f"({errs[n2 - 1]:.2e})"
        )
    else:
        detail = "no plateau-then-drop pattern found up to n=46"
    assert verdict(9, ok, detail)
