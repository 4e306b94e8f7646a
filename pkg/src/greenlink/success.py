"""Packet success-probability models.

Each model maps transmit power p (watts) to the probability f that a
packet transmitted in one slot is decoded correctly. Both families are
monotone in p and sigmoidal, rising from 0 toward 1, which is what gives
the downstream efficiency metric a single interior maximum.
"""

import math
from dataclasses import dataclass
from typing import Union

from scipy.special import erfc

__all__ = [
    "ExpUnknownChannel",
    "QKnownChannel",
    "SuccessModel",
    "gaussian_q",
    "success_probability",
    "success_derivative",
]

_SQRT2 = math.sqrt(2.0)


def gaussian_q(x: float) -> float:
    """Tail probability of the standard normal, Q(x) = P(Z > x)."""
    return 0.5 * erfc(x / _SQRT2)


def _require_positive(**fields: float) -> None:
    for name, value in fields.items():
        if not value > 0.0:
            raise ValueError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class ExpUnknownChannel:
    """Success probability exp(-c/p) when the transmitter has no channel knowledge.

    The constant c = (2**(rate_R/rate_R0) - 1) * noise_sigma2 is the power
    at which f reaches 1/e; noise_sigma2 is the receiver noise power in
    watts with path loss folded in. Rates are in bits per second.
    """

    rate_R: float
    rate_R0: float
    noise_sigma2: float

    def __post_init__(self) -> None:
        _require_positive(
            rate_R=self.rate_R, rate_R0=self.rate_R0, noise_sigma2=self.noise_sigma2
        )

    @property
    def power_scale(self) -> float:
        """The constant c in f(p) = exp(-c/p), in watts."""
        return (2.0 ** (self.rate_R / self.rate_R0) - 1.0) * self.noise_sigma2

    def success_probability(self, p: float) -> float:
        if p < 0.0:
            raise ValueError("transmit power must be nonnegative")
        if p == 0.0:
            return 0.0  # limit of exp(-c/p) as p -> 0+
        return min(1.0, max(0.0, math.exp(-self.power_scale / p)))

    def success_derivative(self, p: float) -> float:
        """df/dp = f(p) * c / p**2, exact for this family."""
        if p <= 0.0:
            raise ValueError("derivative requires positive transmit power")
        return self.success_probability(p) * self.power_scale / (p * p)


@dataclass(frozen=True)
class QKnownChannel:
    """Success probability for a known channel gain, via the Gaussian Q-function.

    f(p) = Q(spread_kappa * (rate_R/rate_R0 - ln(1 + channel_gain_hh * p / noise_sigma2)))

    spread_kappa sets how sharply f switches from 0 to 1 around the power
    where the log term crosses rate_R/rate_R0; it has no universal default
    and must be supplied. channel_gain_hh is the squared channel magnitude.
    """

    rate_R: float
    rate_R0: float
    spread_kappa: float
    channel_gain_hh: float
    noise_sigma2: float

    def __post_init__(self) -> None:
        _require_positive(
            rate_R=self.rate_R,
            rate_R0=self.rate_R0,
            spread_kappa=self.spread_kappa,
            channel_gain_hh=self.channel_gain_hh,
            noise_sigma2=self.noise_sigma2,
        )

    def success_probability(self, p: float) -> float:
        if p < 0.0:
            raise ValueError("transmit power must be nonnegative")
        snr = self.channel_gain_hh * p / self.noise_sigma2
        arg = self.spread_kappa * (self.rate_R / self.rate_R0 - math.log1p(snr))
        return min(1.0, max(0.0, gaussian_q(arg)))

    def success_derivative(self, p: float, rel_step: float = 1e-6) -> float:
        """Central finite difference with step rel_step * p."""
        if p <= 0.0:
            raise ValueError("derivative requires positive transmit power")
        h = rel_step * p
        return (self.success_probability(p + h) - self.success_probability(p - h)) / (2.0 * h)


SuccessModel = Union[ExpUnknownChannel, QKnownChannel]


def success_probability(model: SuccessModel, p: float) -> float:
    """Probability in [0, 1] that a packet sent at power p (watts) gets through."""
    return model.success_probability(p)


def success_derivative(model: SuccessModel, p: float) -> float:
    """Slope df/dp at p: analytic where the family permits, finite-difference otherwise."""
    return model.success_derivative(p)
