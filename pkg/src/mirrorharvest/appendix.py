"""Semi-analytic single-detector probabilities near a static boundary.

For a static detector the double time integral for P collapses to a single
integral over the time difference y = t - t', because the pulled-back
Wightman function is stationary and the Gaussian switching functions
integrate out to sigma sqrt(pi) exp(-y^2 / 4 sigma^2). The resulting 1D
forms serve both as fast evaluators for distance sweeps and as independent
cross-checks of the 2D pipeline.

In (3+1)D (detector at distance d from a Dirichlet plane):

    P_free(omega)  = -sigma/sqrt(16 pi^3) int dy e^{-y^2/4s^2} e^{-i omega y} / (y - i eps)^2
    P_image(omega) = +sigma/sqrt(16 pi^3) int dy e^{-y^2/4s^2} e^{-i omega y} / ((y - i eps)^2 - 4 d^2)

In (1+1)D (static mirror, linear coupling; no IR cutoff needed):

    P(omega) = -sigma/sqrt(16 pi) int dy e^{-i omega y} e^{-y^2/4s^2}
               log[ (eps + i y)^2 / ((eps + i y)^2 + 4 d^2) ]

and the large-window rate limit

    lim_{sigma->inf} P(omega)/sigma = -sqrt(pi) Theta(-omega)/omega e^{2 omega eps} (1 - cos 2 omega d)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import QuadSpec, integrate_1d
from .specfun import log_ieps

__all__ = [
    "StaticProbeSpec",
    "p_free_3p1",
    "p_image_3p1",
    "p_static_1p1",
    "p_free_1p1",
    "p_rate_limit",
]


@dataclass(frozen=True)
class StaticProbeSpec:
    """Static detector at distance d from the boundary: gap omega, switching
    width sigma, regulator eps."""

    omega: float
    sigma: float = 1.0
    d: float = 1.0
    eps: float = 1e-4
    lambda_ir: float = 1e-12

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError("sigma must be positive")
        if self.d < 0.0:
            raise ValueError("d must be >= 0")
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")
        if not self.lambda_ir > 0.0:
            raise ValueError("lambda_ir must be positive")


def _y_range(spec: StaticProbeSpec, quad: QuadSpec):
    # The Gaussian in y has standard deviation sqrt(2) sigma, so the y window
    # is twice the per-detector time window.
    w = 2.0 * quad.window * spec.sigma
    return -w, w


def _reduced_integral(spec: StaticProbeSpec, quad: QuadSpec, kernel, prefactor: float, breakpoints=None):
    lo, hi = _y_range(spec, quad)

    def f(y):
        return np.exp(-(y**2) / (4.0 * spec.sigma**2) - 1j * spec.omega * y) * kernel(y)

    res = integrate_1d(f, lo, hi, quad, breakpoints=breakpoints)
    value = prefactor * spec.sigma * res.value
    err = abs(prefactor) * spec.sigma * res.err_estimate
    if abs(value.imag) > max(10.0 * quad.abs_tol, 10.0 * err):
        raise ValueError(f"imaginary residue {value.imag:.3e} in reduced probability integral")
    return value.real


def p_free_3p1(spec: StaticProbeSpec, quad: QuadSpec = QuadSpec()) -> float:
    """Free-space excitation probability of a static detector in (3+1)D."""
    kern = lambda y: 1.0 / (y - 1j * spec.eps) ** 2
    pref = -1.0 / np.sqrt(16.0 * np.pi**3)
    return _reduced_integral(spec, quad, kern, pref, breakpoints=[0.0])


def p_image_3p1(spec: StaticProbeSpec, quad: QuadSpec = QuadSpec()) -> float:
    """Image-term contribution from a Dirichlet plane at distance d in (3+1)D.

    Total probability near the boundary is p_free_3p1 + p_image_3p1.
    """
    kern = lambda y: 1.0 / ((y - 1j * spec.eps) ** 2 - 4.0 * spec.d**2)
    pref = 1.0 / np.sqrt(16.0 * np.pi**3)
    return _reduced_integral(spec, quad, kern, pref, breakpoints=[-2.0 * spec.d, 0.0, 2.0 * spec.d])


def p_static_1p1(spec: StaticProbeSpec, quad: QuadSpec = QuadSpec()) -> float:
    """Excitation probability of a static detector at distance d from a
    static mirror in (1+1)D, linear coupling.

    The log argument is factored into principal logs,
    (eps+iy)^2 + 4d^2 = (eps + i(y-2d))(eps + i(y+2d)), matching the branch
    handling of the 2D correlators so the cross-check is meaningful.
    """
    eps, d = spec.eps, spec.d

    def kern(y):
        return (
            2.0 * log_ieps(y, eps)
            - log_ieps(y - 2.0 * d, eps)
            - log_ieps(y + 2.0 * d, eps)
        )

    pref = -1.0 / np.sqrt(16.0 * np.pi)
    return _reduced_integral(spec, quad, kern, pref, breakpoints=[-2.0 * d, 0.0, 2.0 * d])


def p_free_1p1(spec: StaticProbeSpec, quad: QuadSpec = QuadSpec()) -> float:
    """Free-space (1+1)D excitation probability, linear coupling.

    Unlike the mirror case this needs the IR cutoff lambda_ir; the kernel is
    2 log(lambda_ir) + 2 log(eps + i y).
    """
    eps = spec.eps
    two_log_lam = 2.0 * np.log(spec.lambda_ir)

    def kern(y):
        return two_log_lam + 2.0 * log_ieps(y, eps)

    pref = -1.0 / np.sqrt(16.0 * np.pi)
    return _reduced_integral(spec, quad, kern, pref, breakpoints=[0.0])


def p_rate_limit(omega: float, d: float, eps: float = 0.0) -> float:
    """Closed-form large-sigma limit of p_static_1p1 / sigma; 0 for omega > 0."""
    if omega == 0.0:
        raise ValueError("omega must be nonzero")
    if omega > 0.0:
        return 0.0
    return -np.sqrt(np.pi) / omega * np.exp(2.0 * omega * eps) * (1.0 - np.cos(2.0 * omega * d))
