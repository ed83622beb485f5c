"""End-to-end acceptance suite.

Each test exercises one external guarantee of the package and registers a
PASS/FAIL line through the `criterion` fixture; run `pytest tests/test_acceptance.py`
to get the full checklist in the terminal summary.
"""

import math
import time
from dataclasses import replace
from functools import lru_cache

import numpy as np
import pytest

from mirrorharvest.appendix import StaticProbeSpec, p_free_3p1, p_image_3p1, p_rate_limit, p_static_1p1
from mirrorharvest.correlators import (
    CorrelatorRequest,
    Event,
    Regulators,
    a_free,
    a_mirror,
    reflect,
    wightman_free,
    wightman_mirror,
)
from mirrorharvest.detectors import DetectorSpec
from mirrorharvest.entanglement import (
    assemble_density_matrix,
    concurrence,
    default_quad_spec,
    local_term,
)
from mirrorharvest.quadrature import QuadSpec
from mirrorharvest.specfun import lambert_w0
from mirrorharvest.sweep import Scenario, evaluate_point
from mirrorharvest.trajectories import MirrorTrajectory

FAST = QuadSpec(rel_tol=1e-10, abs_tol=1e-14)


# -- special functions --------------------------------------------------------


def _oracle_w0(x: float) -> float:
    # Independent implementation: bracket by bisection, polish with Halley
    # steps on w e^w - x = 0.
    lo, hi = (0.0, max(1.0, math.log(x + 1.0) + 1.0)) if x >= 0 else (-1.0, 0.0)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)
    for _ in range(8):
        ew = math.exp(w)
        f = w * ew - x
        fp = ew * (w + 1.0)
        fpp = ew * (w + 2.0)
        w -= f / (fp - 0.5 * f * fpp / fp)
    return w


def test_lambert_w_inverse_identity(criterion):
    x = np.geomspace(1e-8, 1e6, 10_000)
    w = lambert_w0(x)
    rel = np.abs(w * np.exp(w) - x) / x
    criterion(
        "lambert-w inverse identity rel 1e-13 on 1e4-point log grid",
        bool(np.max(rel) < 1e-13),
        f"worst rel {np.max(rel):.2e}",
    )


def test_lambert_w_matches_independent_oracle(criterion):
    err = abs(lambert_w0(1.0) - _oracle_w0(1.0))
    ref = abs(_oracle_w0(1.0) - 0.5671432904)
    criterion(
        "lambert-w W(1) vs independent Halley oracle abs 1e-9",
        err < 1e-9 and ref < 1e-9,
        f"W(1)={lambert_w0(1.0):.12f} oracle diff {err:.2e}",
    )


# -- trajectories --------------------------------------------------------------


def test_ray_tracing_reflection_identity(criterion):
    ts = np.linspace(-20.0, 20.0, 200)
    worst = 0.0
    for traj in (
        MirrorTrajectory.static(),
        MirrorTrajectory.carlitz_willey(0.5),
        MirrorTrajectory.black_hole_collapse(0.25, 0.0),
    ):
        z = traj.mirror_position(ts)
        resid = np.abs(traj.ray_trace(ts - z) - (ts + z))
        worst = max(worst, float(np.max(resid)))
    criterion(
        "reflection identity p(t - z) = t + z abs 1e-10, three mirrors, t in [-20,20]",
        worst < 1e-10,
        f"worst abs {worst:.2e}",
    )


# -- correlators ---------------------------------------------------------------


def test_static_mirror_image_decomposition(criterion):
    rng = np.random.default_rng(7)
    st = MirrorTrajectory.static()
    worst = 0.0
    for lam in (1e-6, 1e-10):
        for _ in range(100):
            t1, t2 = rng.uniform(-5.0, 5.0, 2)
            x1, x2 = rng.uniform(0.05, 6.0, 2)
            a, b = Event(t1, x1), Event(t2, x2)
            reg = Regulators(epsilon=1e-3, lambda_ir=lam)
            img = wightman_free(a, b, reg) - wightman_free(a, reflect(b), reg)
            worst = max(worst, abs(wightman_mirror(st, a, b, 1e-3) - img))
    criterion(
        "static mirror = free minus image, 100 random pairs x 2 IR cutoffs, abs 1e-12",
        worst < 1e-12,
        f"worst abs {worst:.2e}",
    )


def _fd_pairs(rng, traj, n, margin=0.2):
    # Random event pairs a safe distance from every light cone (direct and
    # ray-traced) so the finite-difference stencil stays on one branch.
    out = []
    while len(out) < n:
        t1, t2 = rng.uniform(-4.0, 4.0, 2)
        x1, x2 = rng.uniform(0.3, 6.0, 2)
        a, b = Event(t1, x1), Event(t2, x2)
        du, dv = (t1 - x1) - (t2 - x2), (t1 + x1) - (t2 + x2)
        seps = [abs(du), abs(dv)]
        if traj is not None:
            pu1, pu2 = traj.ray_trace(t1 - x1), traj.ray_trace(t2 - x2)
            seps += [abs(pu1 - (t2 + x2)), abs((t1 + x1) - pu2)]
        if min(seps) > margin:
            out.append((a, b))
    return out


def test_derivative_correlators_match_finite_differences(criterion):
    rng = np.random.default_rng(11)
    eps, h = 1e-3, 1e-4
    reg = Regulators(epsilon=eps, lambda_ir=1e-8)
    backgrounds = {
        "free": None,
        "static": MirrorTrajectory.static(),
        "carlitz_willey": MirrorTrajectory.carlitz_willey(0.5),
        "black_hole_collapse": MirrorTrajectory.black_hole_collapse(0.25, 0.0),
    }
    worst = 0.0
    for name, traj in backgrounds.items():
        for a, b in _fd_pairs(rng, traj, 50):
            if traj is None:
                wf = lambda dta, dtb: wightman_free(Event(a.t + dta, a.x), Event(b.t + dtb, b.x), reg)
                exact = a_free(a, b, eps)
            else:
                wf = lambda dta, dtb: wightman_mirror(traj, Event(a.t + dta, a.x), Event(b.t + dtb, b.x), eps)
                exact = a_mirror(traj, a, b, eps)
            fd = (wf(h, h) - wf(h, -h) - wf(-h, h) + wf(-h, -h)) / (4.0 * h * h)
            worst = max(worst, abs(fd - exact) / max(abs(exact), 1e-8))
    criterion(
        "derivative correlators vs mixed finite differences rel 1e-4, 50 pairs x 4 backgrounds",
        worst < 1e-4,
        f"worst rel {worst:.2e}",
    )


# -- single-detector oracle equivalence ----------------------------------------


def test_local_term_matches_reduced_oracle(criterion):
    st = MirrorTrajectory.static()
    req = CorrelatorRequest("linear", st)
    reg = Regulators(epsilon=1e-4, eps_schedule=(1e-4,))
    quad = replace(default_quad_spec(rel_tol=1e-8), window=7.0)
    oracle_quad = replace(FAST, window=7.0)
    t0 = time.time()
    worst = 0.0
    for omega in (0.5, 1.0, 2.0):
        for d in (0.5, 1.0, 5.0, 20.0):
            p2d = local_term(DetectorSpec(omega, 0.0, d), req, reg, quad)
            p1d = p_static_1p1(StaticProbeSpec(omega=omega, d=d, eps=1e-4), oracle_quad)
            worst = max(worst, abs(p2d - p1d) / abs(p1d))
    elapsed = time.time() - t0
    criterion(
        "2D local term vs reduced static-mirror oracle rel 1e-6 on 3x4 grid in under 2 min",
        worst < 1e-6 and elapsed < 120.0,
        f"worst rel {worst:.2e}, {elapsed:.1f}s",
    )


def test_wide_window_rate_limit(criterion):
    rate = p_static_1p1(StaticProbeSpec(omega=-1.0, sigma=50.0, d=1.0, eps=1e-4), FAST) / 50.0
    limit = math.sqrt(math.pi) * (1.0 - math.cos(2.0))
    ok_deexcite = abs(rate - limit) < 0.05 * limit
    narrow = p_static_1p1(StaticProbeSpec(omega=1.0, sigma=1.0, d=1.0, eps=1e-4), FAST)
    wide = p_static_1p1(StaticProbeSpec(omega=1.0, sigma=50.0, d=1.0, eps=1e-4), FAST) / 50.0
    ok_excite = wide < 0.1 * narrow
    criterion(
        "sigma=50 de-excitation rate within 5% of sqrt(pi)(1-cos 2); excitation rate collapses",
        ok_deexcite and ok_excite,
        f"rate {rate:.4f} vs limit {limit:.4f}; excitation ratio {wide / narrow:.2e}",
    )


def test_image_term_negligible_far_from_plane(criterion):
    img = p_image_3p1(StaticProbeSpec(omega=1.0, sigma=1.0, d=100.0), FAST)
    free = p_free_3p1(StaticProbeSpec(omega=1.0, sigma=1.0), FAST)
    criterion(
        "(3+1)D image term below 1% of free space at d = 100 sigma",
        abs(img) < 1e-2 * free,
        f"|image/free| {abs(img) / free:.2e}",
    )


def test_probability_keeps_growing_with_distance(criterion):
    # Linear coupling in (1+1)D: no saturation with mirror distance.
    p10 = p_static_1p1(StaticProbeSpec(omega=1.0, d=10.0), FAST)
    p100 = p_static_1p1(StaticProbeSpec(omega=1.0, d=100.0), FAST)
    # Derivative coupling: saturates to the free-space value from above.
    st = MirrorTrajectory.static()
    reg = Regulators(epsilon=1e-3, eps_schedule=(1e-3,))
    quad = default_quad_spec(rel_tol=1e-8)
    d50 = local_term(DetectorSpec(1.0, 0.0, 50.0), CorrelatorRequest("derivative", st), reg, quad)
    d100 = local_term(DetectorSpec(1.0, 0.0, 100.0), CorrelatorRequest("derivative", st), reg, quad)
    dfree = local_term(DetectorSpec(1.0, 0.0, 0.0), CorrelatorRequest("derivative", None), reg, quad)
    sat = abs(d100 - d50) / d100
    criterion(
        "(1+1)D distance growth: linear P grows to d = 100 sigma, derivative P saturates above free",
        p100 > p10 and sat < 0.05 and d50 > dfree and d100 > dfree,
        f"linear P(100)/P(10) {p100 / p10:.3f}; derivative drift {sat:.2e}, free excess {d100 / dfree - 1.0:.2e}",
    )


# -- IR cutoff sensitivity ------------------------------------------------------


@lru_cache(maxsize=None)
def _free_space_rows():
    rows = {}
    for lam in (1e-3, 1e-9):
        s = Scenario(
            trajectory="free", coupling="linear", omega=1.0, sigma=1.0,
            delta_x=1.0, lambda_ir=lam, rel_tol=1e-7,
        )
        rows[lam] = evaluate_point(s)
    return rows


@pytest.mark.xfail(
    strict=True,
    reason=(
        "The free-space (1+1)D massless two-point function keeps an additive"
        " log(lambda) zero-mode term whose contributions to |X| and to"
        " sqrt(P_A P_B) do not cancel (X retains an IR-independent imaginary"
        " part), so the free-space concurrence drifts by ~2e-2 between"
        " lambda = 1e-3 and 1e-9. The drift is the physics of the IR zero"
        " mode, not a numerical artifact; see the companion test, which pins"
        " it to the closed-form log(lambda) dependence."
    ),
)
def test_free_concurrence_ir_cutoff_independent(criterion):
    rows = _free_space_rows()
    drift = abs(rows[1e-3]["concurrence"] - rows[1e-9]["concurrence"])
    criterion(
        "free-space concurrence IR-cutoff independent to 1e-6 (known failure: IR zero mode)",
        drift < 1e-6,
        f"measured drift {drift:.3e}",
    )


def test_ir_drift_matches_zero_mode_prediction(criterion):
    # The cutoff enters the pulled-back correlator only through an additive
    # -(2 log lambda)/(4 pi): P picks up -dlog(lambda) sigma^2 e^{-omega^2
    # sigma^2} and X the same amount with opposite sign, which fully accounts
    # for the concurrence drift seen in the companion red test.
    rows = _free_space_rows()
    dln = math.log(1e-3 / 1e-9)
    pred = dln * math.exp(-1.0)
    d_p = rows[1e-3]["P_A"] - rows[1e-9]["P_A"]
    d_x = complex(
        rows[1e-3]["Re_X"] - rows[1e-9]["Re_X"],
        rows[1e-3]["Im_X"] - rows[1e-9]["Im_X"],
    )
    drift = abs(rows[1e-3]["concurrence"] - rows[1e-9]["concurrence"])
    ok = (
        abs(d_p + pred) < 1e-4 * pred
        and abs(d_x - pred) < 1e-4 * pred
        and drift > 1e-3
    )
    criterion(
        "free-space IR drift equals closed-form log(lambda) zero-mode shift",
        ok,
        f"dP {d_p:.6f} vs {-pred:.6f}; dX {d_x:.6f} vs {pred:.6f}; C drift {drift:.3e}",
    )


# -- figure-level behavior -------------------------------------------------------


def test_static_mirror_enables_harvesting_at_wide_gap(criterion):
    free = Scenario(
        trajectory="free", coupling="linear", omega=1.0, sigma=1.0,
        delta_x=3.0, epsilon=1e-4, rel_tol=1e-5,
    )
    c_free = evaluate_point(free)["concurrence"]
    base = replace(free, trajectory="static")
    grid = (0.02, 0.1, 0.3, 1.0, 2.0, 4.0, 10.0)
    cs = [evaluate_point(base.with_variable("d_A", d))["concurrence"] for d in grid]
    peak = max(cs)
    i_peak = cs.index(peak)
    ok = (
        c_free == 0.0
        and peak > 0.0
        and 0 < i_peak < len(grid) - 1  # interior maximum
        and cs[0] < cs[1] < peak  # decays toward the mirror
        and cs[0] < 0.1 * peak
        and cs[-1] == 0.0  # dies off far away at this gap
    )
    criterion(
        "static mirror: free concurrence 0 at gap 3 sigma, mirror curve has interior peak and vanishes at the mirror",
        ok,
        f"C_free={c_free:.3f}, peak {peak:.4f} at d={grid[i_peak]}, C(0.02)={cs[0]:.4f}",
    )


def test_accelerating_mirror_entanglement_strip(criterion):
    def curve(t_c):
        base = Scenario(
            trajectory="carlitz_willey", kappa=0.5, coupling="linear", omega=1.0,
            sigma=1.0, t_a=t_c, t_b=t_c, delta_x=2.0, epsilon=1e-4, rel_tol=1e-5,
        )
        return {d: evaluate_point(base.with_variable("d_A", d))["concurrence"] for d in (0.2, 0.6, 2.0, 4.0)}

    free = Scenario(
        trajectory="free", coupling="linear", omega=1.0, sigma=1.0,
        delta_x=2.0, epsilon=1e-4, rel_tol=1e-5,
    )
    c_free = evaluate_point(free)["concurrence"]
    early, late = curve(-20.0), curve(20.0)
    ok_early = early[0.2] == 0.0 and early[0.6] == 0.0 and early[2.0] > 0.0 and early[4.0] > 0.0
    ok_late = late[0.2] == 0.0 and all(c < c_free for c in late.values())
    criterion(
        "radiating mirror: dead strip next to mirror, harvesting beyond; late curve everywhere below free",
        ok_early and ok_late,
        f"early {sorted(early.items())}; late {sorted(late.items())}; free {c_free:.4f}",
    )


def test_death_zone_is_local_noise_not_lost_correlation(criterion):
    base = Scenario(
        trajectory="carlitz_willey", kappa=0.5, coupling="linear", omega=1.0,
        sigma=1.0, t_a=-1.0, t_b=-1.0, delta_x=3.0, epsilon=1e-4, rel_tol=1e-5,
    )
    rows = {d: evaluate_point(base.with_variable("d_A", d)) for d in (1.0, 2.0, 5.0, 8.0)}
    inside = all(
        rows[d]["abs_X"] < rows[d]["sqrt_PAPB"] and rows[d]["concurrence"] == 0.0
        for d in (5.0, 8.0)
    )
    outside = all(
        rows[d]["abs_X"] > rows[d]["sqrt_PAPB"] and rows[d]["concurrence"] > 0.0
        for d in (1.0, 2.0)
    )
    criterion(
        "death zone driven by |X| < sqrt(P_A P_B); curves cross where concurrence turns on",
        inside and outside,
        "; ".join(f"d={d}: |X|={rows[d]['abs_X']:.3f} vs {rows[d]['sqrt_PAPB']:.3f}" for d in (1.0, 5.0)),
    )


# -- density-matrix sanity --------------------------------------------------------


def test_density_matrix_sanity(criterion):
    row = evaluate_point(
        Scenario(trajectory="static", coupling="linear", omega=1.0, sigma=1.0,
                 x_a=1.0, delta_x=1.0, epsilon=1e-4, rel_tol=1e-6)
    )
    p_a, p_b = row["P_A"], row["P_B"]
    x = complex(row["Re_X"], row["Im_X"])
    rho = assemble_density_matrix(p_a, p_b, x)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    tr = complex(np.trace(rho))
    s = 0.37
    homog = abs(concurrence(s**2 * p_a, s**2 * p_b, s**2 * x) - s**2 * concurrence(p_a, p_b, x))
    ok = (
        p_a > -1e-10
        and p_b > -1e-10
        and herm == 0.0
        and abs(tr - 1.0) < 1e-12
        and homog < 1e-12
    )
    criterion(
        "density matrix: nonnegative P, Hermitian rho, unit trace, concurrence scale-covariant",
        ok,
        f"P_A={p_a:.4f}, herm {herm:.1e}, trace dev {abs(tr - 1.0):.1e}, homogeneity dev {homog:.1e}",
    )
