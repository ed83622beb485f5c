"""Two-point field correlators in (1+1)D, with and without a mirror.

Linear coupling uses the massless scalar Wightman function, which in free
space needs an infrared cutoff Lambda:

    W_f(x, x') = -(1/4pi) [2 log(Lambda) + log(eps + i du) + log(eps + i dv)]

with null coordinates u = t - x, v = t + x. A perfectly reflecting mirror on
the worldline x = z(t) replaces the left-moving argument u by the ray-traced
p(u) and subtracts the two cross terms, which removes the Lambda dependence:

    W(x, x') = -(1/4pi) [ log(eps + i (p(u) - p(u')))  + log(eps + i dv)
                        - log(eps + i (p(u) - v'))     - log(eps + i (v - p(u'))) ]

The single log of the product/quotient form is deliberately split into a
signed sum of principal logs: the principal branch of a quotient is not the
difference of principal logs, and the sum form matches the static image
decomposition term by term.

Derivative coupling uses the mixed double time derivative of the above,
which exchanges the logs for double poles (the naive single-pole form fails
the finite-difference consistency check against the log correlators):

    A_f(x, x') = -(1/4pi) [ 1/(du - i eps)^2 + 1/(dv - i eps)^2 ]

All correlators are vectorized: Event fields may be scalars or equal-shaped
arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from .specfun import log_ieps
from .trajectories import MirrorTrajectory

__all__ = [
    "Event",
    "Regulators",
    "CorrelatorRequest",
    "LINEAR",
    "DERIVATIVE",
    "wightman_free",
    "wightman_mirror",
    "a_free",
    "a_mirror",
    "wightman_halfspace_3p1",
    "reflect",
    "in_field_region",
]

_INV_4PI = 1.0 / (4.0 * np.pi)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class Event:
    """Spacetime point(s) (t, x); u = t - x and v = t + x on demand."""

    t: ArrayLike
    x: ArrayLike

    @property
    def u(self) -> ArrayLike:
        return self.t - self.x

    @property
    def v(self) -> ArrayLike:
        return self.t + self.x


@dataclass(frozen=True)
class Regulators:
    """UV smoothing epsilon, IR cutoff lambda_ir (free space only), and an
    optional strictly decreasing epsilon schedule for extrapolation."""

    epsilon: float = 1e-4
    lambda_ir: float = 1e-12
    eps_schedule: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if not self.lambda_ir > 0.0:
            raise ValueError("lambda_ir must be positive")
        sched = tuple(float(e) for e in self.eps_schedule)
        object.__setattr__(self, "eps_schedule", sched)
        if sched:
            if any(e <= 0.0 for e in sched):
                raise ValueError("eps_schedule entries must be positive")
            if any(b >= a for a, b in zip(sched, sched[1:])):
                raise ValueError("eps_schedule must be strictly decreasing")

    def schedule(self) -> Tuple[float, ...]:
        return self.eps_schedule if self.eps_schedule else (self.epsilon,)


LINEAR = "linear"
DERIVATIVE = "derivative"


@dataclass(frozen=True)
class CorrelatorRequest:
    """Which correlator to use: coupling type plus background.

    background is None for free space or a MirrorTrajectory. Only the
    free-space linear combination reads Regulators.lambda_ir.
    """

    coupling: str = LINEAR
    background: Union[MirrorTrajectory, None] = None

    def __post_init__(self):
        if self.coupling not in (LINEAR, DERIVATIVE):
            raise ValueError(f"unknown coupling {self.coupling!r}")
        if self.background is not None and not isinstance(self.background, MirrorTrajectory):
            raise TypeError("background must be None or a MirrorTrajectory")

    @property
    def is_free(self) -> bool:
        return self.background is None


def reflect(ev: Event) -> Event:
    """Parity image of an event through the plane x = 0."""
    return Event(ev.t, -ev.x)


def in_field_region(traj: MirrorTrajectory, ev: Event):
    """True where the event lies on or to the right of the mirror."""
    return ev.x >= traj.mirror_position(ev.t)


def wightman_free(a: Event, b: Event, reg: Regulators):
    """Free-space Wightman function, IR-regulated by reg.lambda_ir."""
    du = a.u - b.u
    dv = a.v - b.v
    eps = reg.epsilon
    return -_INV_4PI * (2.0 * np.log(reg.lambda_ir) + log_ieps(du, eps) + log_ieps(dv, eps))


def wightman_mirror(traj: MirrorTrajectory, a: Event, b: Event, eps: float):
    """Wightman function with a perfectly reflecting mirror; no IR cutoff."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    dp = traj.ray_trace_diff(a.u, b.u)
    dv = a.v - b.v
    pu = traj.ray_trace(a.u)
    pup = traj.ray_trace(b.u)
    return -_INV_4PI * (
        log_ieps(dp, eps)
        + log_ieps(dv, eps)
        - log_ieps(pu - b.v, eps)
        - log_ieps(a.v - pup, eps)
    )


def a_free(a: Event, b: Event, eps: float):
    """Derivative-coupling correlator d_t d_t' of the free Wightman function."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    du = a.u - b.u
    dv = a.v - b.v
    return -_INV_4PI * (1.0 / (du - 1j * eps) ** 2 + 1.0 / (dv - 1j * eps) ** 2)


def a_mirror(traj: MirrorTrajectory, a: Event, b: Event, eps: float):
    """Derivative-coupling correlator in the presence of the mirror."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    dpu = traj.ray_trace_deriv(a.u)
    dpup = traj.ray_trace_deriv(b.u)
    dp = traj.ray_trace_diff(a.u, b.u)
    dv = a.v - b.v
    pu = traj.ray_trace(a.u)
    pup = traj.ray_trace(b.u)
    ieps = 1j * eps
    return -_INV_4PI * (
        dpu * dpup / (dp - ieps) ** 2
        + 1.0 / (dv - ieps) ** 2
        - dpup / (a.v - pup - ieps) ** 2
        - dpu / (pu - b.v - ieps) ** 2
    )


def a_mirror_scaled_eps(traj: MirrorTrajectory, a: Event, b: Event, eps: float):
    """a_mirror with the regulator of the p(u) - p(u') term scaled by the
    local ray-trace Jacobian.

    Near a horizon the whole range of p(u) - p(u') collapses like p'(u), so a
    fixed eps would dominate (and effectively erase) that term; multiplying
    its eps by sqrt(p'(u) p'(u')) keeps the smoothing scale fixed in detector
    time. The other three arguments span the full switching window, where the
    plain eps is already negligible. The scaling is symmetric in (a, b), so
    Hermiticity is preserved, and every term has the same eps -> 0 limit as
    the literal form. Intended for the integration pipeline; pointwise
    callers should use a_mirror.
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    dpu = traj.ray_trace_deriv(a.u)
    dpup = traj.ray_trace_deriv(b.u)
    dp = traj.ray_trace_diff(a.u, b.u)
    dv = a.v - b.v
    pu = traj.ray_trace(a.u)
    pup = traj.ray_trace(b.u)
    ieps = 1j * eps
    return -_INV_4PI * (
        dpu * dpup / (dp - ieps * np.sqrt(dpu * dpup)) ** 2
        + 1.0 / (dv - ieps) ** 2
        - dpup / (a.v - pup - ieps) ** 2
        - dpu / (pu - b.v - ieps) ** 2
    )


def wightman_mirror_scaled_eps(traj: MirrorTrajectory, a: Event, b: Event, eps: float):
    """wightman_mirror with the same Jacobian-scaled p(u) - p(u') regulator
    as a_mirror_scaled_eps, for use in the integration pipeline."""
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    dpu = traj.ray_trace_deriv(a.u)
    dpup = traj.ray_trace_deriv(b.u)
    dp = traj.ray_trace_diff(a.u, b.u)
    dv = a.v - b.v
    pu = traj.ray_trace(a.u)
    pup = traj.ray_trace(b.u)
    return -_INV_4PI * (
        log_ieps(dp, eps * np.sqrt(dpu * dpup))
        + log_ieps(dv, eps)
        - log_ieps(pu - b.v, eps)
        - log_ieps(a.v - pup, eps)
    )


def wightman_halfspace_3p1(dtau: ArrayLike, d: float, eps: float):
    """(3+1)D Wightman function for a static detector at distance d from a
    Dirichlet plane, pulled back to the detector worldline:

        W = -(1/4pi^2) [ 1/(dtau - i eps)^2 - 1/((dtau - i eps)^2 - 4 d^2) ]
    """
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    if d < 0.0:
        raise ValueError("d must be >= 0")
    z = np.asarray(dtau, dtype=float) - 1j * eps
    out = -(1.0 / (4.0 * np.pi**2)) * (1.0 / z**2 - 1.0 / (z**2 - 4.0 * d**2))
    return complex(out) if np.isscalar(dtau) else out
