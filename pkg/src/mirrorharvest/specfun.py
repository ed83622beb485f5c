"""Self-contained special functions.

Real Lambert W (principal branch) and a principal-branch complex logarithm
helper for i-epsilon regularized arguments. No dependency on scipy: the
Lambert W here is seeded by a branch-point series / asymptotic expansion and
polished with Halley iterations, which makes it easy to validate against an
independent root finder.

All functions accept scalars or numpy arrays and are pure.
"""

from __future__ import annotations

import numpy as np

__all__ = ["lambert_w0", "lambert_w0_exp", "log_ieps"]

_INV_E = float(np.exp(-1.0))

# Halley convergence target: |dw| <= _W_TOL * (2 + |w|)
_W_TOL = 1e-16
_MAX_ITER = 60


def _halley(w, x):
    """Halley refinement of w*exp(w) = x, vectorized."""
    w = np.asarray(w, dtype=float).copy()
    x = np.asarray(x, dtype=float)
    for _ in range(_MAX_ITER):
        ew = np.exp(w)
        f = w * ew - x
        wp1 = np.where(w == -1.0, 1e-300, w + 1.0)
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if np.all(np.abs(dw) <= _W_TOL * (2.0 + np.abs(w))):
            break
    return w


def lambert_w0(x):
    """Principal branch W0 of the Lambert W function for real x > -1/e.

    Satisfies w * exp(w) = x with w >= -1. Raises ValueError for NaN input
    or x <= -1/e (outside the principal real branch).
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(x_arr)):
        raise ValueError("lambert_w0: NaN input")
    if np.any(x_arr < -_INV_E * (1.0 - 1e-12) - 1e-300):
        if np.any(x_arr < -_INV_E):
            raise ValueError("lambert_w0: argument below -1/e")
    scalar = np.isscalar(x) or x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)

    w = np.empty_like(x_arr)

    # Branch-point series seed near -1/e (p = sqrt(2(e x + 1))).
    near_bp = x_arr < -0.25
    if np.any(near_bp):
        p = np.sqrt(np.maximum(2.0 * (np.e * x_arr[near_bp] + 1.0), 0.0))
        w[near_bp] = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0

    # Small-argument series seed: W(x) ~ x (1 - x + 3x^2/2).
    small = (~near_bp) & (np.abs(x_arr) < 0.5)
    if np.any(small):
        xs = x_arr[small]
        w[small] = xs * (1.0 - xs + 1.5 * xs * xs)

    # Asymptotic seed W ~ L1 - L2 + L2/L1 for the rest.
    rest = ~(near_bp | small)
    if np.any(rest):
        xr = x_arr[rest]
        l1 = np.log(xr)
        l2 = np.log(np.maximum(l1, 1e-9))
        safe_l1 = np.where(l1 != 0.0, l1, 1.0)
        w[rest] = np.where(xr > np.e, l1 - l2 + l2 / safe_l1, np.log1p(xr) * 0.8)

    w = _halley(w, x_arr)
    # Exact endpoints.
    w[x_arr == 0.0] = 0.0
    return float(w[0]) if scalar else w


def lambert_w0_exp(y):
    """Overflow-safe evaluation of W0(exp(y)) for any real y.

    For moderate y this is lambert_w0(exp(y)); for large y it solves
    w + log(w) = y by Newton iteration (exp(y) would overflow).
    Very negative y underflow cleanly to exp(y) ~ 0.
    """
    y_arr = np.asarray(y, dtype=float)
    scalar = np.isscalar(y) or y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    out = np.empty_like(y_arr)

    direct = y_arr <= 100.0
    if np.any(direct):
        out[direct] = lambert_w0(np.exp(y_arr[direct]))

    big = ~direct
    if np.any(big):
        yb = y_arr[big]
        w = yb - np.log(yb)
        for _ in range(8):
            # Newton step for f(w) = w + log w - y, f'(w) = (w + 1)/w.
            w -= (w + np.log(w) - yb) * w / (w + 1.0)
        out[big] = w
    return float(out[0]) if scalar else out


def log_ieps(delta, eps):
    """Principal-branch log(eps + i*delta) with Im in (-pi, pi].

    eps must be >= 0; the argument eps = delta = 0 is singular and rejected.
    """
    d_arr = np.asarray(delta, dtype=float)
    e_arr = np.asarray(eps, dtype=float)
    if np.any(e_arr < 0.0):
        raise ValueError("log_ieps: eps must be >= 0")
    if np.any((e_arr == 0.0) & (d_arr == 0.0)):
        raise ValueError("log_ieps: singular argument eps = delta = 0")
    z = e_arr + 1j * d_arr
    out = np.log(z)
    if np.isscalar(delta) and np.isscalar(eps):
        return complex(out)
    return out
