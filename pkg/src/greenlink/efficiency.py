"""Cross-layer energy efficiency of the buffered transmitter.

The metric divides goodput by total drawn power:

    eta(p) = q (1 - Phi) R / (b + a p q (1 - Phi) / f)

where Phi is the stationary buffer-loss fraction at success probability
f = f(p). The denominator charges the amplifier only for slots that
actually transmit (a busy slot occurs with probability q(1-Phi)/f in
steady state), plus a fixed circuit draw b that is burned every slot.
The fixed draw is what pulls the optimum away from pure per-packet
energy: at low traffic, idling dominates the bill.
"""

import math
from dataclasses import dataclass

from .queueing import QueueParams, packet_loss
from .success import SuccessModel

__all__ = [
    "SystemParams",
    "EfficiencyPoint",
    "efficiency",
    "stationarity_residual",
    "power_gain_db",
]

# Below this the success probability has effectively underflowed and
# eta is pinned to its p -> 0 limit of zero.
_F_FLOOR = 1e-300


@dataclass(frozen=True)
class SystemParams:
    """Link-level constants: rate, power budget, and QoS bound.

    All powers are in watts. amp_coeff_a scales radiated power into
    drawn amplifier power; loss_bound_epsilon = 1 disables the QoS
    constraint since a loss fraction never exceeds 1.
    """

    rate_R: float
    fixed_power_b: float
    noise_sigma2: float
    p_min: float
    p_max: float
    amp_coeff_a: float = 1.0
    loss_bound_epsilon: float = 1.0

    def __post_init__(self) -> None:
        if self.rate_R <= 0.0:
            raise ValueError("rate must be positive")
        if self.fixed_power_b < 0.0:
            raise ValueError("fixed power draw cannot be negative")
        if self.noise_sigma2 <= 0.0:
            raise ValueError("noise power must be positive")
        if not 0.0 < self.p_min < self.p_max:
            raise ValueError("power limits must satisfy 0 < p_min < p_max")
        if self.amp_coeff_a <= 0.0:
            raise ValueError("amplifier coefficient must be positive")
        if not 0.0 < self.loss_bound_epsilon <= 1.0:
            raise ValueError("loss bound must lie in (0, 1]")


@dataclass(frozen=True)
class EfficiencyPoint:
    """Efficiency and its ingredients at one transmit power."""

    power_p: float
    eta: float  # bits per joule
    phi: float  # buffer-loss fraction
    f: float  # packet success probability
    feasible: bool  # phi <= epsilon and p within [p_min, p_max]


def efficiency(
    system: SystemParams, queue: QueueParams, model: SuccessModel, p: float
) -> EfficiencyPoint:
    """Evaluate eta(p) in bits per joule at transmit power p (watts)."""
    if p <= 0.0:
        raise ValueError("transmit power must be positive")
    f = model.success_probability(p)
    if f <= _F_FLOOR:
        phi = 1.0
        eta = 0.0
    else:
        phi = packet_loss(queue, f)
        delivered = queue.arrival_prob_q * (1.0 - phi)  # packets out per slot
        if delivered <= 0.0:
            # 1 - phi can round to zero while f is still normal; eta's
            # goodput numerator is then zero regardless of the power bill.
            eta = 0.0
        else:
            eta = system.rate_R * delivered / (
                system.fixed_power_b + system.amp_coeff_a * p * delivered / f
            )
    feasible = phi <= system.loss_bound_epsilon and system.p_min <= p <= system.p_max
    return EfficiencyPoint(power_p=p, eta=eta, phi=phi, f=f, feasible=feasible)


def stationarity_residual(
    system: SystemParams,
    queue: QueueParams,
    model: SuccessModel,
    p: float,
    rel_step: float = 1e-6,
) -> float:
    """Signed first-order optimality residual of eta at p.

    Writing g = q(1 - Phi), the sign of d(eta)/dp matches

        -Phi'(p) * (b + a p g / f)  +  a g * (Phi'(p) p / f - (1 - Phi) (p/f)'),

    with Phi' estimated by a central finite difference of step
    rel_step * p on packet_loss of f(p), and (p/f)' = (f - p f')/f**2
    taken from the model's derivative. The value is normalized by the
    sum of the two term magnitudes, so it lies in [-1, 1]: positive
    below the maximizer, negative above it, and ~0 at it.
    """
    if p <= 0.0:
        raise ValueError("transmit power must be positive")
    h = rel_step * p
    f_mid = model.success_probability(p)
    f_lo = model.success_probability(p - h)
    f_hi = model.success_probability(p + h)
    if min(f_lo, f_mid, f_hi) <= _F_FLOOR:
        return 0.0  # eta is identically zero in the underflow region
    phi_mid = packet_loss(queue, f_mid)
    phi_lo = packet_loss(queue, f_lo)
    phi_hi = packet_loss(queue, f_hi)
    d_phi = (phi_hi - phi_lo) / (2.0 * h)
    d_p_over_f = (f_mid - p * model.success_derivative(p)) / (f_mid * f_mid)

    q = queue.arrival_prob_q
    b = system.fixed_power_b
    a = system.amp_coeff_a
    g = q * (1.0 - phi_mid)
    term_idle = -d_phi * (b + a * p * g / f_mid)
    term_amp = a * g * (d_phi * p / f_mid - (1.0 - phi_mid) * d_p_over_f)
    scale = abs(term_idle) + abs(term_amp)
    if scale == 0.0:
        return 0.0
    return (term_idle + term_amp) / scale


def power_gain_db(p_star_q1: float, p_star: float) -> float:
    """Power saving, in dB, of the buffer-aware optimum versus the full-load one.

    Positive when the full-load design p_star_q1 over-provisions relative
    to the optimum p_star at the actual traffic level.
    """
    if p_star_q1 <= 0.0 or p_star <= 0.0:
        raise ValueError("both powers must be positive")
    return 10.0 * math.log10(p_star_q1 / p_star)
