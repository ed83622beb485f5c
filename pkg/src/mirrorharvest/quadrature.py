"""Adaptive panel quadrature for complex-valued integrands.

The workhorse is a breadth-first adaptive Gauss-Legendre scheme: every alive
panel is evaluated with an order-p rule and an embedded lower-order rule in a
single vectorized call, panels whose rule difference exceeds their share of
the tolerance are bisected, and the sweep repeats. Many independent 1D
integrals ("jobs") are processed simultaneously so that integrand calls see
large arrays; this is what makes the nested 2D integration affordable for
integrands with epsilon-smoothed light-cone singularities.

2D integrals are iterated (outer adaptive in t, inner adaptive in t'). A
quadtree over the 2D box was rejected: the singular sets here are curves, so
quadtree refinement to a width-epsilon feature needs O(2^depth) panels along
the curve, while iterated 1D refinement needs O(depth) per outer node.

Known breakpoints (singularity locations) can be supplied per job and are
used as initial panel boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = ["QuadSpec", "QuadResult", "integrate_1d", "integrate_2d", "integrate_2d_triangle"]

_MAX_SWEEPS = 200
_MIN_WIDTH_REL = 1e-15
# A panel is accepted once its rule difference is at the rounding floor of
# the L1 magnitude of the panel integral: below that the "error" is noise,
# and splitting further only multiplies panels (fatal for strongly
# cancelling integrands such as double poles under an oscillatory phase).
# The floor must absorb cancellation-amplified roundoff: evaluating a
# regulated pole 1/(D - i*eps)^2 with D computed as a difference of
# coordinates of magnitude ~L carries a relative noise of order
# 2*L*eps_mach/eps, up to a few 1e-12 for the coordinate scales and
# regulator sizes this package runs with. 1e-11 covers that with margin
# while costing at most 1e-11 * integral(|f|) in absolute accuracy.
_NOISE_FACTOR = 1e-11
# Hard cap on simultaneously alive panels; beyond it the remaining panels
# are absorbed with their current estimates and flagged as not converged.
_MAX_ALIVE_PANELS = 400_000


@dataclass(frozen=True)
class QuadSpec:
    """Tolerance and refinement policy for adaptive integration."""

    rel_tol: float = 1e-7
    abs_tol: float = 1e-12
    max_depth: int = 14
    panel_order: int = 15
    window: float = 5.0

    def __post_init__(self):
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.window < 3.0:
            raise ValueError("window must be >= 3 switching widths")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    panels_used: int
    converged: bool

    def __post_init__(self):
        if self.err_estimate < 0.0:
            raise ValueError("err_estimate must be >= 0")


@lru_cache(maxsize=None)
def _rule_pair(order: int):
    """(nodes, weights) for the main rule and the embedded error rule."""
    x_hi, w_hi = np.polynomial.legendre.leggauss(order)
    lo = max(4, order // 2)
    x_lo, w_lo = np.polynomial.legendre.leggauss(lo)
    return x_hi, w_hi, x_lo, w_lo


def _segments_from_breaks(lo: float, hi: float, breaks) -> np.ndarray:
    """Sorted panel boundaries for [lo, hi] including interior breakpoints."""
    pts = [lo, hi]
    if breaks is not None:
        width = hi - lo
        for b in np.atleast_1d(np.asarray(breaks, dtype=float)):
            if lo + 1e-12 * width < b < hi - 1e-12 * width:
                pts.append(float(b))
    return np.array(sorted(set(pts)))


class _BatchAccumulator:
    __slots__ = ("value", "err", "converged", "panels")

    def __init__(self, n):
        self.value = np.zeros(n, dtype=complex)
        self.err = np.zeros(n, dtype=float)
        self.converged = np.ones(n, dtype=bool)
        self.panels = 0


def _adaptive_batch(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    boundaries: Sequence[np.ndarray],
    rel_tol: float,
    abs_tol: float,
    max_depth: int,
    order: int,
) -> _BatchAccumulator:
    """Run many adaptive 1D integrals at once.

    boundaries[j] is the sorted array of initial panel boundaries of job j.
    f(job_idx, x) evaluates the integrand of job job_idx[i] at x[i] for all i
    in one call and must be vectorized.
    """
    x_hi, w_hi, x_lo, w_lo = _rule_pair(order)
    njobs = len(boundaries)
    acc = _BatchAccumulator(njobs)

    jidx_list, a_list, b_list, d_list = [], [], [], []
    widths = np.zeros(njobs)
    for j, bp in enumerate(boundaries):
        widths[j] = bp[-1] - bp[0]
        for k in range(len(bp) - 1):
            if bp[k + 1] > bp[k]:
                jidx_list.append(j)
                a_list.append(bp[k])
                b_list.append(bp[k + 1])
                d_list.append(0)
    if not jidx_list:
        return acc

    jidx = np.array(jidx_list, dtype=int)
    a = np.array(a_list)
    b = np.array(b_list)
    depth = np.array(d_list, dtype=int)
    min_width = _MIN_WIDTH_REL * np.maximum(widths, 1e-300)
    estimate = np.zeros(njobs, dtype=complex)
    # Roundoff stall detection. At the evaluation-noise floor the rule
    # difference scales with panel width, so after a bisection BOTH children
    # show roughly half the parent's error; with genuine truncation error the
    # sibling away from the difficult feature collapses by orders of
    # magnitude. Three consecutive both-children-no-progress splits mark a
    # panel as noise-limited. parent_err carries the pre-split error; the
    # panel arrays consist of sibling pairs on every sweep after the first.
    parent_err = np.full(len(a), np.inf)
    stall = np.zeros(len(a), dtype=int)
    in_pairs = False

    for _ in range(_MAX_SWEEPS):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes = np.concatenate(
            [mid[:, None] + half[:, None] * x_hi[None, :], mid[:, None] + half[:, None] * x_lo[None, :]],
            axis=1,
        )
        npan, ntot = nodes.shape
        vals = np.asarray(f(np.repeat(jidx, ntot), nodes.ravel()), dtype=complex).reshape(npan, ntot)
        i_hi = half * (vals[:, : len(x_hi)] @ w_hi)
        i_lo = half * (vals[:, len(x_hi):] @ w_lo)
        err = np.abs(i_hi - i_lo)
        noise = _NOISE_FACTOR * half * (np.abs(vals[:, : len(x_hi)]) @ w_hi)
        acc.panels += npan

        np.copyto(estimate, acc.value)
        np.add.at(estimate, jidx, i_hi)
        tol_job = np.maximum(abs_tol, rel_tol * np.abs(estimate))
        allowance = tol_job[jidx] * (b - a) / np.maximum(widths[jidx], 1e-300)

        if in_pairs:
            pair_err = err.reshape(-1, 2)
            pair_parent = parent_err.reshape(-1, 2)[:, 0]
            no_progress = (pair_err.max(axis=1) > 0.35 * pair_parent) & (
                pair_err.min(axis=1) > 0.15 * pair_parent
            )
            stall = np.where(np.repeat(no_progress, 2), stall + 1, 0)

        ok = err <= np.maximum(allowance, noise)
        too_small = (b - a) <= min_width[jidx]
        capped = (depth >= max_depth) | too_small
        # Stalled panels sit at the evaluation-noise floor: accept them with
        # their (honest) error estimate, without declaring non-convergence.
        stalled = stall >= 3

        # Global criterion: when a job's total error (settled + alive panels)
        # is already within its tolerance, accept all its panels as they
        # stand. The per-panel allowance above is proportional to panel
        # width, so evaluation noise that also scales with width (epsilon-
        # amplified cancellation near poles) would otherwise force endless
        # splitting even though the job as a whole converged long ago.
        job_err = acc.err.copy()
        np.add.at(job_err, jidx, err)
        job_ok = job_err <= tol_job

        done = ok | capped | stalled | job_ok[jidx]

        if np.any(done):
            sel = np.where(done)[0]
            np.add.at(acc.value, jidx[sel], i_hi[sel])
            np.add.at(acc.err, jidx[sel], err[sel])
            bad = sel[capped[sel] & ~ok[sel] & ~stalled[sel] & ~job_ok[jidx[sel]]]
            acc.converged[jidx[bad]] = False

        split = ~done
        if not np.any(split):
            break
        if 2 * int(np.count_nonzero(split)) > _MAX_ALIVE_PANELS:
            # Refinement is running away; absorb the worst offenders rather
            # than exhausting memory. Keep the largest-error panels alive.
            order_idx = np.argsort(err[split])
            alive = np.where(split)[0][order_idx]
            drop = alive[: len(alive) - _MAX_ALIVE_PANELS // 2]
            np.add.at(acc.value, jidx[drop], i_hi[drop])
            np.add.at(acc.err, jidx[drop], err[drop])
            acc.converged[jidx[drop]] = False
            split[drop] = False
        jidx = np.repeat(jidx[split], 2)
        mids = mid[split]
        a = np.stack([a[split], mids], axis=1).ravel()
        b = np.stack([mids, b[split]], axis=1).ravel()
        depth = np.repeat(depth[split] + 1, 2)
        parent_err = np.repeat(err[split], 2)
        stall = np.repeat(stall[split], 2)
        in_pairs = True
    else:
        # Sweep budget exhausted: absorb whatever is left.
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        nodes = mid[:, None] + half[:, None] * x_hi[None, :]
        vals = np.asarray(f(np.repeat(jidx, len(x_hi)), nodes.ravel()), dtype=complex).reshape(len(a), -1)
        i_hi = half * (vals @ w_hi)
        np.add.at(acc.value, jidx, i_hi)
        acc.converged[jidx] = False

    return acc


def integrate_1d(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    spec: QuadSpec,
    breakpoints=None,
) -> QuadResult:
    """Adaptive integral of a complex-valued integrand on [lo, hi]."""
    if not lo < hi:
        raise ValueError("integrate_1d requires lo < hi")
    bounds = [_segments_from_breaks(lo, hi, breakpoints)]
    acc = _adaptive_batch(
        lambda j, x: f(x), bounds, spec.rel_tol, spec.abs_tol, spec.max_depth, spec.panel_order
    )
    return QuadResult(complex(acc.value[0]), float(acc.err[0]), acc.panels, bool(acc.converged[0]))


def _integrate_outer(
    f2,
    t_lo: float,
    t_hi: float,
    inner_interval,
    spec: QuadSpec,
    inner_breaks,
) -> QuadResult:
    """Iterated 2D integral: adaptive outer over t, adaptive inner over t'.

    inner_interval(t) -> (lo, hi) gives the inner range for an outer node
    (may be degenerate). inner_breaks(t) optionally returns known singular
    t' locations used as initial inner panel boundaries.
    """
    inner_state = {"err": 0.0, "panels": 0, "converged": True, "count": 0}
    width_out = t_hi - t_lo
    rel_in = spec.rel_tol / 4.0
    abs_in = spec.abs_tol / max(4.0 * width_out, 1.0)

    def outer_integrand(ts: np.ndarray) -> np.ndarray:
        bounds = []
        live = []
        for i, t in enumerate(ts):
            lo_i, hi_i = inner_interval(float(t))
            if hi_i - lo_i <= 0.0:
                continue
            br = inner_breaks(float(t)) if inner_breaks is not None else None
            bounds.append(_segments_from_breaks(lo_i, hi_i, br))
            live.append(i)
        out = np.zeros(len(ts), dtype=complex)
        if not bounds:
            return out
        live_ts = ts[np.array(live)]

        def inner_f(jix, tps):
            return f2(live_ts[jix], tps)

        acc = _adaptive_batch(inner_f, bounds, rel_in, abs_in, spec.max_depth, spec.panel_order)
        out[np.array(live)] = acc.value
        inner_state["err"] += float(np.sum(acc.err))
        inner_state["panels"] += acc.panels
        inner_state["count"] += len(bounds)
        if not np.all(acc.converged):
            inner_state["converged"] = False
        return out

    res = integrate_1d(outer_integrand, t_lo, t_hi, spec)
    mean_inner_err = inner_state["err"] / max(inner_state["count"], 1)
    err = res.err_estimate + mean_inner_err * width_out
    return QuadResult(
        res.value,
        err,
        res.panels_used + inner_state["panels"],
        res.converged and inner_state["converged"],
    )


def integrate_2d(
    f2: Callable[[np.ndarray, np.ndarray], np.ndarray],
    box,
    spec: QuadSpec,
    inner_breaks=None,
) -> QuadResult:
    """Integral of f2(t, t') over the rectangle box = (t_lo, t_hi, tp_lo, tp_hi).

    f2 must be vectorized over equally-shaped t, t' arrays.
    """
    t_lo, t_hi, tp_lo, tp_hi = box
    if not (t_lo < t_hi and tp_lo < tp_hi):
        raise ValueError("integrate_2d requires a nondegenerate box")
    return _integrate_outer(f2, t_lo, t_hi, lambda t: (tp_lo, tp_hi), spec, inner_breaks)


def integrate_2d_triangle(
    f2: Callable[[np.ndarray, np.ndarray], np.ndarray],
    box,
    lower: bool,
    spec: QuadSpec,
    inner_breaks=None,
) -> QuadResult:
    """Integral of f2 over one half of a square box split by the t' = t diagonal.

    lower=True selects {t' < t}, lower=False selects {t' > t}. The inner
    integration range is clamped at the diagonal so the step-function edge
    never enters any panel interior.
    """
    t_lo, t_hi, tp_lo, tp_hi = box
    if abs((t_hi - t_lo) - (tp_hi - tp_lo)) > 1e-12 * (t_hi - t_lo) or abs(t_lo - tp_lo) > 1e-12 * (
        abs(t_lo) + abs(tp_lo) + 1.0
    ):
        raise ValueError("triangle integration requires a square box on the diagonal")
    if lower:
        interval = lambda t: (tp_lo, t)
    else:
        interval = lambda t: (t, tp_hi)
    return _integrate_outer(f2, t_lo, t_hi, interval, spec, inner_breaks)


def extrapolate_to_zero(eps_values: Sequence[float], values: Sequence[complex]):
    """Richardson (Neville polynomial) extrapolation of values(eps) to eps -> 0.

    Returns (limit, err_estimate); err_estimate is the magnitude of the last
    Neville correction. A single sample is returned unchanged with zero error.
    """
    eps = np.asarray(eps_values, dtype=float)
    vals = np.asarray(values, dtype=complex)
    if eps.size != vals.size or eps.size == 0:
        raise ValueError("eps/value size mismatch")
    if eps.size == 1:
        return complex(vals[0]), 0.0
    order = np.argsort(eps)[::-1]
    x = eps[order]
    n = len(x)
    tab = np.zeros((n, n), dtype=complex)
    tab[:, 0] = vals[order]
    for m in range(1, n):
        for i in range(n - m):
            tab[i, m] = (x[i] * tab[i + 1, m - 1] - x[i + m] * tab[i, m - 1]) / (x[i] - x[i + m])
    limit = tab[0, n - 1]
    prev = tab[0, n - 2] if n >= 2 else tab[0, 0]
    return complex(limit), float(abs(limit - prev))
