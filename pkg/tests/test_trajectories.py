"""Mirror trajectory unit tests.

Reference values were computed with mpmath at 30 significant digits from the
closed forms: CW z(t) = -t - W(e^{-2 kappa t})/kappa, p(u) = -e^{-kappa u}/kappa;
BHC z(t) = v_H - t - W(2 e^{2 kappa (v_H - t)})/(2 kappa),
p(u) = v_H - W(e^{-kappa (u - v_H)})/kappa.
"""

import numpy as np
import pytest

from mirrorharvest.trajectories import (
    BLACK_HOLE_COLLAPSE,
    CARLITZ_WILLEY,
    STATIC,
    MirrorTrajectory,
)

CW = MirrorTrajectory.carlitz_willey(0.5)
BHC = MirrorTrajectory.black_hole_collapse(0.25, v_horizon=0.0)
ST = MirrorTrajectory.static()
ALL = (ST, CW, BHC)


def test_constructor_validation():
    with pytest.raises(ValueError):
        MirrorTrajectory("spirals")
    with pytest.raises(ValueError):
        MirrorTrajectory(CARLITZ_WILLEY, kappa=0.0)
    with pytest.raises(ValueError):
        MirrorTrajectory(BLACK_HOLE_COLLAPSE, kappa=-1.0)
    assert MirrorTrajectory(STATIC).kind == STATIC


@pytest.mark.parametrize("traj", ALL, ids=[t.kind for t in ALL])
def test_reflection_identity(traj):
    # The ray hitting the mirror at time t arrives along u = t - z(t) and
    # leaves along v = t + z(t): p(t - z(t)) = t + z(t).
    t = np.linspace(-20.0, 20.0, 200)
    z = traj.mirror_position(t)
    assert np.max(np.abs(traj.ray_trace(t - z) - (t + z))) < 1e-10


def test_static_maps():
    u = np.linspace(-5.0, 5.0, 11)
    assert np.array_equal(ST.ray_trace(u), u)
    assert np.array_equal(ST.ray_trace_deriv(u), np.ones_like(u))
    assert ST.mirror_position(3.0) == 0.0
    assert ST.mirror_velocity(3.0) == 0.0
    assert ST.ray_trace_inverse(2.5) == 2.5


def test_cw_reference_values():
    assert CW.mirror_position(0.0) == pytest.approx(-1.1342865808195677, rel=1e-14)
    assert CW.mirror_position(3.0) == pytest.approx(-3.094956982049731, rel=1e-14)
    assert CW.mirror_velocity(0.0) == pytest.approx(-0.27620748673022156, rel=1e-13)
    assert CW.ray_trace(2.0) == pytest.approx(-0.73575888234288464, rel=1e-14)
    assert CW.ray_trace_deriv(2.0) == pytest.approx(0.36787944117144232, rel=1e-14)


def test_bhc_reference_values():
    assert BHC.mirror_position(0.0) == pytest.approx(-1.705211004027451, rel=1e-13)
    assert BHC.mirror_position(1.0) == pytest.approx(-2.2795585113635385, rel=1e-13)
    assert BHC.mirror_velocity(1.0) == pytest.approx(-0.60983818189859407, rel=1e-13)
    assert BHC.ray_trace(-1.0) == pytest.approx(-2.6487803258580494, rel=1e-13)
    assert BHC.ray_trace_deriv(-1.0) == pytest.approx(0.39838589877252631, rel=1e-13)


@pytest.mark.parametrize("traj", ALL, ids=[t.kind for t in ALL])
def test_inverse_roundtrip(traj):
    u = np.linspace(-15.0, 15.0, 101)
    back = traj.ray_trace_inverse(traj.ray_trace(u))
    assert np.max(np.abs(back - u)) < 1e-9


def test_inverse_range_errors():
    with pytest.raises(ValueError):
        CW.ray_trace_inverse(0.5)  # CW range is (-inf, 0)
    with pytest.raises(ValueError):
        BHC.ray_trace_inverse(0.0)  # BHC range is (-inf, v_horizon)
    shifted = MirrorTrajectory.black_hole_collapse(0.25, v_horizon=2.0)
    assert np.isfinite(shifted.ray_trace_inverse(1.9))


@pytest.mark.parametrize("traj", ALL, ids=[t.kind for t in ALL])
def test_diff_matches_direct_subtraction(traj):
    rng = np.random.default_rng(7)
    u = rng.uniform(-8.0, 8.0, 200)
    up = rng.uniform(-8.0, 8.0, 200)
    direct = traj.ray_trace(u) - traj.ray_trace(up)
    assert np.allclose(traj.ray_trace_diff(u, up), direct, rtol=1e-12, atol=1e-300)


def test_cw_diff_near_diagonal_no_cancellation():
    # At u ~ 60/kappa the two exponentials agree to ~30 digits; the sinh
    # form must still resolve their difference.
    u, up = 120.0, 120.0 + 1e-13
    got = CW.ray_trace_diff(u, up)
    expected = -CW.ray_trace_deriv(120.0) * (u - up)  # -p'(u) du to first order
    assert got == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("traj", ALL, ids=[t.kind for t in ALL])
def test_deriv_matches_finite_difference(traj):
    u = np.linspace(-10.0, 10.0, 41)
    h = 1e-6
    fd = (traj.ray_trace(u + h) - traj.ray_trace(u - h)) / (2.0 * h)
    assert np.allclose(traj.ray_trace_deriv(u), fd, rtol=1e-8)


@pytest.mark.parametrize("traj", ALL, ids=[t.kind for t in ALL])
def test_kinematics_bounds(traj):
    t = np.linspace(-30.0, 30.0, 401)
    v = traj.mirror_velocity(t)
    assert np.all(v > -1.0) and np.all(v < 1.0)
    assert np.all(traj.ray_trace_deriv(t) > 0.0)


def test_cw_horizon():
    # The CW future horizon sits at v = 0: p(u) < 0 always, -> 0 as u -> inf.
    assert CW.ray_trace(40.0) < 0.0
    assert abs(CW.ray_trace(40.0)) < 1e-8


def test_bhc_static_past():
    # Far in the past the BHC mirror is asymptotically static; the approach
    # is only ~ 1/(kappa |t|), so check the trend and a coarse bound.
    assert abs(BHC.mirror_velocity(-200.0)) < 0.02
    assert abs(BHC.mirror_velocity(-2000.0)) < abs(BHC.mirror_velocity(-200.0)) / 5.0
    assert BHC.ray_trace_deriv(-2000.0) == pytest.approx(1.0, abs=0.01)


def test_scalar_vs_array_consistency():
    for traj in ALL:
        arr = traj.ray_trace(np.array([1.5]))
        assert traj.ray_trace(1.5) == pytest.approx(float(arr[0]), rel=0, abs=0)
        assert isinstance(traj.ray_trace(1.5), float)
