"""Entanglement harvesting by Unruh-DeWitt detectors near moving mirrors.

Two static two-level detectors with Gaussian switching couple to a massless
scalar field in (1+1)D Minkowski space, optionally bounded by a perfectly
reflecting mirror on a static, Carlitz-Willey, or black-hole-collapse
worldline. The package computes the leading-order excitation probabilities
P_A, P_B, the nonlocal term X, and the resulting concurrence and negativity,
plus semi-analytic static-boundary reductions used as cross-checks.
"""

from .appendix import (
    StaticProbeSpec,
    p_free_1p1,
    p_free_3p1,
    p_image_3p1,
    p_rate_limit,
    p_static_1p1,
)
from .correlators import (
    DERIVATIVE,
    LINEAR,
    CorrelatorRequest,
    Event,
    Regulators,
    a_free,
    a_mirror,
    in_field_region,
    reflect,
    wightman_free,
    wightman_halfspace_3p1,
    wightman_mirror,
)
from .detectors import DetectorPair, DetectorSpec, p_integrand, switching, x_integrand
from .entanglement import (
    HarvestResult,
    ImaginaryResidueError,
    NegativeProbabilityError,
    assemble_density_matrix,
    concurrence,
    default_quad_spec,
    harvest,
    local_term,
    negativity,
    nonlocal_term,
)
from .quadrature import QuadResult, QuadSpec, integrate_1d, integrate_2d, integrate_2d_triangle
from .specfun import lambert_w0, lambert_w0_exp, log_ieps
from .sweep import Scenario, SweepSpec, emit, run_sweep
from .trajectories import MirrorTrajectory

__version__ = "0.1.0"

__all__ = [
    "CorrelatorRequest",
    "DERIVATIVE",
    "DetectorPair",
    "DetectorSpec",
    "Event",
    "HarvestResult",
    "ImaginaryResidueError",
    "LINEAR",
    "MirrorTrajectory",
    "NegativeProbabilityError",
    "QuadResult",
    "QuadSpec",
    "Regulators",
    "Scenario",
    "StaticProbeSpec",
    "SweepSpec",
    "a_free",
    "a_mirror",
    "assemble_density_matrix",
    "concurrence",
    "default_quad_spec",
    "emit",
    "harvest",
    "in_field_region",
    "integrate_1d",
    "integrate_2d",
    "integrate_2d_triangle",
    "lambert_w0",
    "lambert_w0_exp",
    "local_term",
    "log_ieps",
    "negativity",
    "nonlocal_term",
    "p_free_1p1",
    "p_free_3p1",
    "p_image_3p1",
    "p_integrand",
    "p_rate_limit",
    "p_static_1p1",
    "reflect",
    "run_sweep",
    "switching",
    "wightman_free",
    "wightman_halfspace_3p1",
    "wightman_mirror",
    "x_integrand",
]
