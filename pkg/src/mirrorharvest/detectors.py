"""Detector specifications, Gaussian switching, and P/X integrands.

Both detectors are static in the quantization frame, so detector proper time
equals coordinate time and the switching function is

    chi_j(t) = exp[-(t - t_j)^2 / (2 sigma^2)]

All reported quantities are per coupling^2 (the coupling constant is set to
1; every leading-order quantity scales with its square, so this only fixes
the overall normalization).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .correlators import (
    DERIVATIVE,
    LINEAR,
    CorrelatorRequest,
    Event,
    Regulators,
    a_free,
    a_mirror_scaled_eps,
    wightman_free,
    wightman_mirror_scaled_eps,
)

__all__ = ["DetectorSpec", "DetectorPair", "switching", "p_integrand", "x_integrand"]


@dataclass(frozen=True)
class DetectorSpec:
    """A static two-level detector: gap omega, switching peak t_center,
    position x_pos, switching width sigma (the global unit)."""

    omega: float
    t_center: float
    x_pos: float
    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class DetectorPair:
    """Two identical detectors (same gap and width) at different places/times."""

    a: DetectorSpec
    b: DetectorSpec

    def __post_init__(self):
        if self.a.omega != self.b.omega:
            raise ValueError("detectors must share the energy gap")
        if self.a.sigma != self.b.sigma:
            raise ValueError("detectors must share the switching width")

    @property
    def delta_x(self) -> float:
        return self.b.x_pos - self.a.x_pos


def switching(spec: DetectorSpec, t):
    """Gaussian switching profile, peak value 1 at t_center."""
    arg = (np.asarray(t, dtype=float) - spec.t_center) / spec.sigma
    out = np.exp(-0.5 * arg**2)
    return float(out) if np.isscalar(t) else out


def _kernel(req: CorrelatorRequest, reg: Regulators, eps: float):
    """Correlator K(a, b) selected by coupling and background.

    Mirror backgrounds use the Jacobian-scaled regulator variants: the
    p(u) - p(u') argument collapses like p'(u) near a horizon, so its eps is
    rescaled to keep the smoothing width fixed in detector time.
    """
    if req.coupling == LINEAR:
        if req.is_free:
            reg_eff = Regulators(epsilon=eps, lambda_ir=reg.lambda_ir)
            return lambda a, b: wightman_free(a, b, reg_eff)
        traj = req.background
        return lambda a, b: wightman_mirror_scaled_eps(traj, a, b, eps)
    if req.is_free:
        return lambda a, b: a_free(a, b, eps)
    traj = req.background
    return lambda a, b: a_mirror_scaled_eps(traj, a, b, eps)


def p_integrand(spec: DetectorSpec, req: CorrelatorRequest, reg: Regulators, t, tp, eps: Optional[float] = None):
    """Integrand of the local term P_j (per coupling^2):

        chi(t) chi(t') e^{-i omega (t - t')} K(x_j(t), x_j(t'))
    """
    eps = reg.epsilon if eps is None else eps
    kern = _kernel(req, reg, eps)
    ev = Event(np.asarray(t, dtype=float), spec.x_pos)
    evp = Event(np.asarray(tp, dtype=float), spec.x_pos)
    phase = np.exp(-1j * spec.omega * (ev.t - evp.t))
    return switching(spec, ev.t) * switching(spec, evp.t) * phase * kern(ev, evp)


def x_integrand(
    pair: DetectorPair,
    req: CorrelatorRequest,
    reg: Regulators,
    t,
    tp,
    ordering: str,
    eps: Optional[float] = None,
):
    """Integrand of the nonlocal term X, one time-ordering branch at a time:

        chi_A(t) chi_B(t') e^{-i omega (t + t')} K(...)

    ordering "AB" evaluates K(x_A(t), x_B(t')) (the t' > t branch);
    ordering "BA" evaluates K(x_B(t'), x_A(t)) (the t > t' branch).
    The overall minus sign of X is applied at assembly, not here.
    """
    if ordering not in ("AB", "BA"):
        raise ValueError("ordering must be 'AB' or 'BA'")
    eps = reg.epsilon if eps is None else eps
    kern = _kernel(req, reg, eps)
    ta = np.asarray(t, dtype=float)
    tb = np.asarray(tp, dtype=float)
    ev_a = Event(ta, pair.a.x_pos)
    ev_b = Event(tb, pair.b.x_pos)
    corr = kern(ev_a, ev_b) if ordering == "AB" else kern(ev_b, ev_a)
    phase = np.exp(-1j * pair.a.omega * (ta + tb))
    return switching(pair.a, ta) * switching(pair.b, tb) * phase * corr


def inner_breakpoints(req: CorrelatorRequest, x_outer: float, x_inner: float, t: float) -> List[float]:
    """Known singular t' locations of the correlator K((t, x_outer), (., x_inner)).

    Used as initial panel boundaries for the inner integral so the adaptive
    refinement starts aligned with the light-cone and ray-traced light-cone
    crossings.
    """
    pts = [t - x_outer + x_inner, t + x_outer - x_inner]
    traj = req.background
    if traj is not None:
        u = t - x_outer
        v = t + x_outer
        # p(u) - v' = 0  ->  t' = p(u) - x_inner
        pts.append(float(traj.ray_trace(u)) - x_inner)
        # v - p(u') = 0  ->  t' = p^{-1}(v) + x_inner, when v is in range(p)
        try:
            pts.append(float(traj.ray_trace_inverse(v)) + x_inner)
        except ValueError:
            pass
    return [p for p in pts if np.isfinite(p)]
