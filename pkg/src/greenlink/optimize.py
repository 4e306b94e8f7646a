"""Transmit-power selection for the buffered-transmitter efficiency metric.

For sigmoidal success models eta(p) is quasi-concave with a single
interior maximizer, so a golden-section search over log(p) on a bracket
found by coarse sampling is exact up to the bracket tolerance. The QoS
bound Phi <= epsilon converts, because Phi is strictly decreasing in p,
into a minimum power p0 found by bisection; the constrained optimum is
the projection of the unconstrained one onto [max(p0, p_min), p_max].
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Literal, Optional, Sequence, Tuple

import numpy as np

from .efficiency import SystemParams, efficiency, stationarity_residual
from .queueing import QueueParams, packet_loss
from .success import SuccessModel

__all__ = [
    "Binding",
    "Optimum",
    "NoInteriorMaximumError",
    "maximize_unconstrained",
    "qos_threshold",
    "maximize_constrained",
    "limit_optimizer",
    "is_unimodal_grid",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_BRACKET_POINTS = 65
_MAX_EXPANSIONS = 60
_LOG_BRACKET_TOL = 1e-9  # relative width at which the search stops


class NoInteriorMaximumError(RuntimeError):
    """Raised when no interior maximum can be bracketed (non-sigmoidal objective)."""


class Binding(Enum):
    """Which constraint, if any, pins the constrained optimum."""

    INTERIOR = "interior"
    QOS_BOUND = "qos_bound"
    POWER_CAP = "power_cap"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Optimum:
    """Result of a power search; constrained fields are None until filled in.

    p0 is the smallest power meeting the loss bound, math.inf when no
    power up to p_max does; in that case p_star_constrained stays None
    and binding is INFEASIBLE.
    """

    p_star: float
    eta_star: float
    bracket: Tuple[float, float]
    iterations: int
    p0: Optional[float] = None
    p_star_constrained: Optional[float] = None
    binding: Optional[Binding] = None


def _bracket_maximum(
    fun: Callable[[float], float], lo: float, hi: float
) -> Tuple[float, float]:
    """Find (a, b) containing the maximizer of a unimodal fun, expanding as needed.

    Samples a log-spaced grid; an argmax on the boundary pushes that
    boundary outward by a factor of two, up to _MAX_EXPANSIONS times.
    """
    for _ in range(_MAX_EXPANSIONS):
        grid = np.exp(np.linspace(math.log(lo), math.log(hi), _BRACKET_POINTS))
        values = [fun(p) for p in grid]
        best = int(np.argmax(values))
        if values[best] <= 0.0:
            # No signal anywhere on the grid yet; widen both ways.
            lo /= 2.0
            hi *= 2.0
        elif best == 0:
            lo /= 2.0
        elif best == _BRACKET_POINTS - 1:
            hi *= 2.0
        elif (values[best] - max(values[0], values[-1])
              <= 1e-12 * abs(values[best])):
            # Indistinguishable from a monotone plateau: roundoff noise can
            # put the argmax anywhere on it, so keep widening instead of
            # trusting a few-ulp interior "peak".
            lo /= 2.0
            hi *= 2.0
        else:
            return float(grid[best - 1]), float(grid[best + 1])
    raise NoInteriorMaximumError(
        "no interior maximum found: objective keeps climbing toward a bracket edge"
    )


def _golden_max_log(
    fun: Callable[[float], float], lo: float, hi: float
) -> Tuple[float, float, int]:
    """Golden-section maximization over [lo, hi], iterating in log space.

    On ties the lower subinterval is kept, so flat tops resolve toward
    the smallest power. Returns (argmax, max, iterations).
    """
    a = math.log(lo)
    b = math.log(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = fun(math.exp(c))
    fd = fun(math.exp(d))
    iterations = 0
    while b - a > _LOG_BRACKET_TOL:
        if fc < fd:
            a = c
            c, fc = d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(math.exp(d))
        else:  # fc >= fd: keep the lower interval
            b = d
            d, fd = c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(math.exp(c))
        iterations += 1
    x = math.exp(0.5 * (a + b))
    return x, fun(x), iterations


def _search_limits(system: SystemParams) -> Tuple[float, float]:
    # Generous starting bracket: well below the noise floor, well above the cap.
    return system.noise_sigma2 * 1e-3, system.p_max * 1e3


def _refine_by_residual(
    system: SystemParams, queue: QueueParams, model: SuccessModel, p_hat: float
) -> Tuple[float, int]:
    """Polish a section-search maximizer by bisecting the optimality residual.

    Value comparisons cannot place the argmax more precisely than the
    flat top of eta (about sqrt(machine eps) relative); the signed
    residual still crosses zero sharply there, so a sign bisection
    recovers several more digits. Falls back to p_hat when no sign
    change brackets it (flat plateaus).
    """

    def res(p: float) -> float:
        return stationarity_residual(system, queue, model, p)

    lo = hi = p_hat
    r_lo = r_hi = 0.0
    for delta in (1e-4, 1e-3, 1e-2):
        lo = p_hat * (1.0 - delta)
        hi = p_hat * (1.0 + delta)
        r_lo = res(lo)
        r_hi = res(hi)
        if r_lo > 0.0 > r_hi:
            break
    else:
        return p_hat, 0
    a = math.log(lo)
    b = math.log(hi)
    iterations = 0
    while b - a > 1e-13:
        mid = 0.5 * (a + b)
        r_mid = res(math.exp(mid))
        iterations += 1
        if r_mid > 0.0:
            a = mid
        elif r_mid < 0.0:
            b = mid
        else:
            return math.exp(mid), iterations
    return math.exp(0.5 * (a + b)), iterations


def maximize_unconstrained(
    system: SystemParams, queue: QueueParams, model: SuccessModel
) -> Optimum:
    """Global maximizer of eta over p > 0, ignoring p_min/p_max/epsilon."""

    def objective(p: float) -> float:
        return efficiency(system, queue, model, p).eta

    lo, hi = _search_limits(system)
    bracket = _bracket_maximum(objective, lo, hi)
    p_star, eta_star, iterations = _golden_max_log(objective, *bracket)
    p_star, extra = _refine_by_residual(system, queue, model, p_star)
    eta_star = objective(p_star)
    return Optimum(
        p_star=p_star,
        eta_star=eta_star,
        bracket=bracket,
        iterations=iterations + extra,
    )


def qos_threshold(
    system: SystemParams, queue: QueueParams, model: SuccessModel
) -> float:
    """Smallest power whose loss fraction meets epsilon, to 1e-9 relative.

    Phi(p) is strictly decreasing, so bisection in log space applies.
    Returns math.inf when even p_max misses the bound (infeasible).
    """
    eps = system.loss_bound_epsilon

    def phi_at(p: float) -> float:
        return packet_loss(queue, model.success_probability(p))

    lo, _ = _search_limits(system)
    if phi_at(lo) <= eps:
        return lo
    if phi_at(system.p_max) > eps:
        return math.inf
    a = math.log(lo)
    b = math.log(system.p_max)
    while b - a > _LOG_BRACKET_TOL:
        mid = 0.5 * (a + b)
        if phi_at(math.exp(mid)) <= eps:
            b = mid
        else:
            a = mid
    return math.exp(b)  # upper end: guaranteed to satisfy the bound


def maximize_constrained(
    system: SystemParams, queue: QueueParams, model: SuccessModel
) -> Optimum:
    """Maximize eta subject to Phi <= epsilon and p in [p_min, p_max].

    Quasi-concavity makes the answer a projection: push the unconstrained
    maximizer up to p0 or p_min if a floor binds, then clip at p_max.
    """
    unconstrained = maximize_unconstrained(system, queue, model)
    p0 = qos_threshold(system, queue, model)
    if math.isinf(p0):
        return replace(unconstrained, p0=p0, binding=Binding.INFEASIBLE)
    floor = max(unconstrained.p_star, p0, system.p_min)
    if floor > system.p_max:
        p_cc = system.p_max
        binding = Binding.POWER_CAP
    elif unconstrained.p_star >= p0 and unconstrained.p_star >= system.p_min:
        p_cc = unconstrained.p_star
        binding = Binding.INTERIOR
    elif p0 >= system.p_min:
        p_cc = p0
        binding = Binding.QOS_BOUND
    else:
        p_cc = system.p_min  # the configured floor, not the QoS bound, is active
        binding = Binding.POWER_CAP
    return replace(unconstrained, p0=p0, p_star_constrained=p_cc, binding=binding)


def limit_optimizer(
    system: SystemParams,
    model: SuccessModel,
    which: Literal["q_to_0", "q_to_1"],
) -> float:
    """Maximizer of the low- or high-traffic limit of eta, in watts.

    q -> 0: eta is proportional to f(p)/p (fixed draw dominates, pay per
    transmission). q -> 1: the buffer saturates and eta is proportional
    to f(p) / (b + a p).
    """
    if which == "q_to_0":

        def objective(p: float) -> float:
            return model.success_probability(p) / p

    elif which == "q_to_1":

        def objective(p: float) -> float:
            return model.success_probability(p) / (
                system.fixed_power_b + system.amp_coeff_a * p
            )

    else:
        raise ValueError("which must be 'q_to_0' or 'q_to_1'")
    lo, hi = _search_limits(system)
    bracket = _bracket_maximum(objective, lo, hi)
    p_star, _, _ = _golden_max_log(objective, *bracket)
    return p_star


def is_unimodal_grid(values: Sequence[float], rel_tol: float = 1e-9) -> bool:
    """Check that sampled values rise to a single (possibly flat) peak, then fall.

    Comparisons allow slack rel_tol * max(values), and all points within
    that slack of the maximum must be contiguous.
    """
    vals = np.asarray(values, dtype=float)
    if vals.size < 3:
        return True
    vmax = float(vals.max())
    slack = rel_tol * abs(vmax)
    peak = int(vals.argmax())
    rising = vals[: peak + 1]
    falling = vals[peak:]
    if np.any(np.diff(rising) < -slack) or np.any(np.diff(falling) > slack):
        return False
    near_peak = np.flatnonzero(vals >= vmax - slack)
    return bool(near_peak.size == near_peak[-1] - near_peak[0] + 1)
