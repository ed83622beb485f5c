"""Local and nonlocal detector terms, concurrence, and negativity.

The two-detector state at leading order in the coupling is determined by
three numbers: the excitation probabilities P_A, P_B and the nonlocal
correlation X,

    P_j = int dt dt' chi_j(t) chi_j(t') e^{-i omega (t - t')} W(x_j(t), x_j(t'))
    X   = -int dt dt' chi_A(t) chi_B(t') e^{-i omega (t + t')}
              [ Theta(t'-t) W(x_A(t), x_B(t')) + Theta(t-t') W(x_B(t'), x_A(t)) ]

from which concurrence C = 2 max{0, |X| - sqrt(P_A P_B)} and negativity
N = max{0, sqrt(|X|^2 - ((P_A-P_B)/2)^2) - (P_A+P_B)/2}.

When the regulator carries an epsilon schedule, the full integral is
computed at each epsilon and Richardson-extrapolated to epsilon -> 0; the
integrals are smooth in epsilon even though pointwise correlator values are
not, so extrapolation belongs at this level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .correlators import CorrelatorRequest, Regulators
from .detectors import DetectorPair, DetectorSpec, inner_breakpoints, p_integrand, x_integrand
from .quadrature import QuadSpec, extrapolate_to_zero, integrate_2d, integrate_2d_triangle

__all__ = [
    "HarvestResult",
    "ImaginaryResidueError",
    "NegativeProbabilityError",
    "default_quad_spec",
    "local_term",
    "nonlocal_term",
    "concurrence",
    "negativity",
    "assemble_density_matrix",
    "harvest",
]


class ImaginaryResidueError(ValueError):
    """A probability integral came out with a non-negligible imaginary part."""


class NegativeProbabilityError(ValueError):
    """A probability integral came out negative beyond tolerance."""


def default_quad_spec(rel_tol: float = 1e-7, abs_tol: float = 1e-12) -> QuadSpec:
    """QuadSpec tuned for the production pipeline.

    The deep max_depth lets the adaptive mesh grade all the way into
    epsilon-width light-cone features (epsilon can be as small as 1e-13 in
    late-time mirror scenarios); panels stop subdividing as soon as their
    local error allowance is met, so the depth cap is only a safety bound.
    """
    return QuadSpec(rel_tol=rel_tol, abs_tol=abs_tol, max_depth=48)


@dataclass(frozen=True)
class HarvestResult:
    """P_A, P_B, X and the entanglement measures, with error estimates and
    warning flags."""

    p_a: float
    p_b: float
    x_nonlocal: complex
    concurrence: float
    negativity: float
    err: Dict[str, float] = field(default_factory=dict)
    flags: Tuple[str, ...] = ()


def _local_raw(spec: DetectorSpec, req: CorrelatorRequest, reg: Regulators, quad: QuadSpec):
    """2D integral for P_j at each scheduled epsilon, extrapolated."""
    w = quad.window * spec.sigma
    box = (spec.t_center - w, spec.t_center + w, spec.t_center - w, spec.t_center + w)
    x = spec.x_pos

    vals, errs, flags = [], [], []
    for eps in reg.schedule():
        f2 = lambda t, tp: p_integrand(spec, req, reg, t, tp, eps=eps)
        res = integrate_2d(f2, box, quad, inner_breaks=lambda t: inner_breakpoints(req, x, x, t))
        vals.append(res.value)
        errs.append(res.err_estimate)
        if not res.converged:
            flags.append(f"quad_not_converged_eps={eps:g}")
    value, extrap_err = extrapolate_to_zero(reg.schedule(), vals)
    return value, max(errs) + extrap_err, flags


def local_term(spec: DetectorSpec, req: CorrelatorRequest, reg: Regulators, quad: QuadSpec) -> float:
    value, _, _ = _local_term_full(spec, req, reg, quad)
    return value


def _local_term_full(spec, req, reg, quad):
    value, err, flags = _local_raw(spec, req, reg, quad)
    im_tol = max(10.0 * quad.abs_tol, 10.0 * err)
    if abs(value.imag) > im_tol:
        raise ImaginaryResidueError(
            f"local term imaginary residue {value.imag:.3e} exceeds {im_tol:.3e}"
        )
    p = value.real
    neg_tol = max(quad.abs_tol, 10.0 * err)
    if p < -neg_tol:
        raise NegativeProbabilityError(f"local term {p:.3e} below -{neg_tol:.3e}")
    if p < 0.0:
        flags = flags + ["negative_probability_clamped"]
        p = 0.0
    return p, err, flags


def nonlocal_term(pair: DetectorPair, req: CorrelatorRequest, reg: Regulators, quad: QuadSpec) -> complex:
    value, _, _ = _nonlocal_term_full(pair, req, reg, quad)
    return value


def _nonlocal_term_full(pair, req, reg, quad):
    sigma = pair.a.sigma
    lo = min(pair.a.t_center, pair.b.t_center) - quad.window * sigma
    hi = max(pair.a.t_center, pair.b.t_center) + quad.window * sigma
    box = (lo, hi, lo, hi)
    x_a, x_b = pair.a.x_pos, pair.b.x_pos
    breaks = lambda t: inner_breakpoints(req, x_a, x_b, t)

    vals, errs, flags = [], [], []
    for eps in reg.schedule():
        f_ab = lambda t, tp: x_integrand(pair, req, reg, t, tp, "AB", eps=eps)
        f_ba = lambda t, tp: x_integrand(pair, req, reg, t, tp, "BA", eps=eps)
        # Theta(t'-t) pairs the AB correlator with the t' > t triangle.
        upper = integrate_2d_triangle(f_ab, box, lower=False, spec=quad, inner_breaks=breaks)
        lower = integrate_2d_triangle(f_ba, box, lower=True, spec=quad, inner_breaks=breaks)
        vals.append(-(upper.value + lower.value))
        errs.append(upper.err_estimate + lower.err_estimate)
        if not (upper.converged and lower.converged):
            flags.append(f"quad_not_converged_eps={eps:g}")
    value, extrap_err = extrapolate_to_zero(reg.schedule(), vals)
    return value, max(errs) + extrap_err, flags


def concurrence(p_a: float, p_b: float, x: complex) -> float:
    """C = 2 max{0, |X| - sqrt(P_A P_B)}, leading perturbative order."""
    if p_a < 0.0 or p_b < 0.0:
        raise ValueError("probabilities must be non-negative")
    return 2.0 * max(0.0, abs(x) - np.sqrt(p_a * p_b))


def negativity(p_a: float, p_b: float, x: complex) -> float:
    """N = max{0, sqrt(|X|^2 - ((P_A-P_B)/2)^2) - (P_A+P_B)/2}.

    When |X|^2 < ((P_A-P_B)/2)^2 the root is imaginary and the state has a
    positive partial transpose at this order; N is 0 there.
    """
    if p_a < 0.0 or p_b < 0.0:
        raise ValueError("probabilities must be non-negative")
    disc = abs(x) ** 2 - 0.25 * (p_a - p_b) ** 2
    if disc <= 0.0:
        return 0.0
    return max(0.0, np.sqrt(disc) - 0.5 * (p_a + p_b))


def assemble_density_matrix(p_a: float, p_b: float, x: complex) -> np.ndarray:
    """Leading-order two-detector density matrix in the {gg, ge, eg, ee} basis.

    The ee/gg coherence is not computed at this order and is set to 0; the
    trace is exactly 1 by construction.
    """
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 - p_a - p_b
    rho[1, 1] = p_b
    rho[2, 2] = p_a
    rho[1, 2] = x
    rho[2, 1] = np.conj(x)
    return rho


def _mirror_crossing(req: CorrelatorRequest, pair: DetectorPair, quad: QuadSpec) -> bool:
    """True when the mirror enters the detectors' switching windows."""
    traj = req.background
    if traj is None:
        return False
    sigma = pair.a.sigma
    lo = min(pair.a.t_center, pair.b.t_center) - quad.window * sigma
    hi = max(pair.a.t_center, pair.b.t_center) + quad.window * sigma
    ts = np.linspace(lo, hi, 201)
    return bool(np.any(traj.mirror_position(ts) > min(pair.a.x_pos, pair.b.x_pos)))


def harvest(pair: DetectorPair, req: CorrelatorRequest, reg: Regulators, quad: QuadSpec) -> HarvestResult:
    """Compute P_A, P_B, X, concurrence and negativity for one scenario."""
    flags: List[str] = []
    if _mirror_crossing(req, pair, quad):
        flags.append("mirror_in_switching_window")

    p_a, err_a, fl_a = _local_term_full(pair.a, req, reg, quad)
    p_b, err_b, fl_b = _local_term_full(pair.b, req, reg, quad)
    x, err_x, fl_x = _nonlocal_term_full(pair, req, reg, quad)
    flags += [f"p_a:{f}" for f in fl_a] + [f"p_b:{f}" for f in fl_b] + [f"x:{f}" for f in fl_x]

    return HarvestResult(
        p_a=p_a,
        p_b=p_b,
        x_nonlocal=x,
        concurrence=concurrence(p_a, p_b, x),
        negativity=negativity(p_a, p_b, x),
        err={"p_a": err_a, "p_b": err_b, "x": err_x},
        flags=tuple(flags),
    )
