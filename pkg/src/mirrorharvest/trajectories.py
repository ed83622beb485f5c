"""Mirror worldlines and their ray-tracing functions.

Three trajectories are supported: a static mirror at the origin, the
Carlitz-Willey (CW) mirror, and the black-hole-collapse (BHC) mirror. Each
provides the ray-tracing map p(u) sending an outgoing null coordinate
u = t - x to the ingoing null coordinate v = t + x of the reflected ray,
together with p'(u), the position z(t) and the velocity dz/dt.

Conventions: all times/lengths are in units of the detector switching width;
kappa is the acceleration parameter (inverse length). The field lives on the
right of the mirror (x > z(t)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import lambert_w0_exp

__all__ = ["MirrorTrajectory", "STATIC", "CARLITZ_WILLEY", "BLACK_HOLE_COLLAPSE"]

STATIC = "static"
CARLITZ_WILLEY = "carlitz_willey"
BLACK_HOLE_COLLAPSE = "black_hole_collapse"

# exp() overflow guard for the CW exponentials; |exponent| beyond this is
# clipped (values at the clip are ~1e304, far outside any physical window).
_EXP_CAP = 700.0


def _exp(y):
    return np.exp(np.clip(y, -_EXP_CAP, _EXP_CAP))


def _like(value, template):
    """Return a float if `template` was scalar, else the array unchanged."""
    return float(value) if np.isscalar(template) or np.ndim(template) == 0 else value


@dataclass(frozen=True)
class MirrorTrajectory:
    """Immutable mirror worldline descriptor.

    kind: one of "static", "carlitz_willey", "black_hole_collapse".
    kappa: acceleration parameter (> 0 for the two accelerating kinds).
    v_horizon: ingoing null coordinate of the future horizon (BHC only;
        the CW horizon is fixed at v = 0 by the choice of integration
        constant in z(t)).
    """

    kind: str
    kappa: float = 0.0
    v_horizon: float = 0.0

    def __post_init__(self):
        if self.kind not in (STATIC, CARLITZ_WILLEY, BLACK_HOLE_COLLAPSE):
            raise ValueError(f"unknown trajectory kind {self.kind!r}")
        if self.kind != STATIC and not self.kappa > 0.0:
            raise ValueError("kappa must be > 0 for accelerating mirrors")

    # -- constructors ------------------------------------------------------

    @classmethod
    def static(cls) -> "MirrorTrajectory":
        return cls(STATIC)

    @classmethod
    def carlitz_willey(cls, kappa: float) -> "MirrorTrajectory":
        return cls(CARLITZ_WILLEY, kappa=kappa)

    @classmethod
    def black_hole_collapse(cls, kappa: float, v_horizon: float = 0.0) -> "MirrorTrajectory":
        return cls(BLACK_HOLE_COLLAPSE, kappa=kappa, v_horizon=v_horizon)

    # -- ray tracing -------------------------------------------------------

    def ray_trace(self, u):
        """p(u): image of the outgoing null ray u under mirror reflection."""
        k = self.kappa
        u_arr = np.asarray(u, dtype=float)
        if self.kind == STATIC:
            return _like(u_arr + 0.0, u)
        if self.kind == CARLITZ_WILLEY:
            return _like(-(1.0 / k) * _exp(-k * u_arr), u)
        w = lambert_w0_exp(-k * (u_arr - self.v_horizon))
        return _like(self.v_horizon - w / k, u)

    def ray_trace_deriv(self, u):
        """p'(u) > 0, the derivative of the ray-tracing map."""
        k = self.kappa
        u_arr = np.asarray(u, dtype=float)
        if self.kind == STATIC:
            return _like(np.ones_like(u_arr), u)
        if self.kind == CARLITZ_WILLEY:
            return _like(_exp(-k * u_arr), u)
        w = lambert_w0_exp(-k * (u_arr - self.v_horizon))
        return _like(w / (1.0 + w), u)

    def ray_trace_diff(self, u, uprime):
        """p(u) - p(u'), evaluated without catastrophic cancellation.

        For CW the naive difference of two exponentials loses all precision
        near the diagonal once |kappa*u| is large; the exact rewriting
        (2/k) e^{-k(u+u')/2} sinh(k(u-u')/2) is used instead. For the other
        kinds direct subtraction is stable.
        """
        k = self.kappa
        if self.kind == STATIC:
            return np.asarray(u, dtype=float) - np.asarray(uprime, dtype=float)
        if self.kind == CARLITZ_WILLEY:
            ua = np.asarray(u, dtype=float)
            ub = np.asarray(uprime, dtype=float)
            arg = np.clip(k * (ua - ub) / 2.0, -_EXP_CAP, _EXP_CAP)
            return (2.0 / k) * _exp(-k * (ua + ub) / 2.0) * np.sinh(arg)
        return self.ray_trace(u) - self.ray_trace(uprime)

    def ray_trace_inverse(self, w):
        """u such that p(u) = w; raises ValueError outside the range of p."""
        k = self.kappa
        w_arr = np.asarray(w, dtype=float)
        if self.kind == STATIC:
            return _like(w_arr + 0.0, w)
        if self.kind == CARLITZ_WILLEY:
            if np.any(w_arr >= 0.0):
                raise ValueError("CW ray tracer has range (-inf, 0)")
            return _like(-np.log(-k * w_arr) / k, w)
        if np.any(w_arr >= self.v_horizon):
            raise ValueError("BHC ray tracer has range (-inf, v_horizon)")
        wstar = k * (self.v_horizon - w_arr)
        return _like(self.v_horizon - (np.log(wstar) + wstar) / k, w)

    # -- worldline ---------------------------------------------------------

    def mirror_position(self, t):
        """z(t), the mirror's spatial coordinate at Minkowski time t."""
        k = self.kappa
        t_arr = np.asarray(t, dtype=float)
        if self.kind == STATIC:
            out = np.zeros_like(t_arr)
            return float(out) if np.isscalar(t) else out
        if self.kind == CARLITZ_WILLEY:
            # Integration constant fixed so the future horizon is v = 0.
            out = -t_arr - lambert_w0_exp(-2.0 * k * t_arr) / k
            return float(out) if np.isscalar(t) else out
        w = lambert_w0_exp(np.log(2.0) + 2.0 * k * (self.v_horizon - t_arr))
        out = self.v_horizon - t_arr - w / (2.0 * k)
        return float(out) if np.isscalar(t) else out

    def mirror_velocity(self, t):
        """dz/dt, strictly inside (-1, 1)."""
        k = self.kappa
        t_arr = np.asarray(t, dtype=float)
        if self.kind == STATIC:
            out = np.zeros_like(t_arr)
            return float(out) if np.isscalar(t) else out
        if self.kind == CARLITZ_WILLEY:
            w = lambert_w0_exp(-2.0 * k * t_arr)
            out = 2.0 * w / (w + 1.0) - 1.0
            return float(out) if np.isscalar(t) else out
        w = lambert_w0_exp(np.log(2.0) + 2.0 * k * (self.v_horizon - t_arr))
        out = w / (w + 1.0) - 1.0
        return float(out) if np.isscalar(t) else out
