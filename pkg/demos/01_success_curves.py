"""Transmission-success curves: how the per-slot success probability
responds to transmit power under the two channel models.

Both curves are sigmoidal: useless at vanishing power, saturating at
high power, with all the action in a narrow transition band. The
exponential curve assumes the sender has no channel knowledge; the
Q-function curve assumes the channel gain is known and spreads the
transition by a sharpness parameter kappa.
"""

import math

from greenlink import ExpUnknownChannel, QKnownChannel

SIGMA2 = 1e-3  # noise power, watts (0 dBm)


def main():
    exp_model = ExpUnknownChannel(rate_R=4000, rate_R0=1000, noise_sigma2=SIGMA2)
    q_model = QKnownChannel(rate_R=4000, rate_R0=1000, spread_kappa=2.0,
                            channel_gain_hh=1.0, noise_sigma2=SIGMA2)

    print(f"exponential model power scale c = {exp_model.power_scale:.4g} W")
    print(f"(success reaches 1/e = {math.exp(-1):.3f} exactly at p = c)\n")

    print(f"{'p [W]':>10}  {'f_exp':>8}  {'f_qfunc':>8}")
    p = 1e-3
    while p <= 10.0:
        fe = exp_model.success_probability(p)
        fq = q_model.success_probability(p)
        bar = "#" * int(40 * fe)
        print(f"{p:>10.4g}  {fe:>8.4f}  {fq:>8.4f}  {bar}")
        p *= 2.51188643150958  # four points per decade

    # the exponential curve's inflection sits at c/2: steepest growth there
    c = exp_model.power_scale
    print(f"\nslope at c/2 = {exp_model.success_derivative(c / 2):.4g} per W "
          f"(the maximum); at c it has dropped to "
          f"{exp_model.success_derivative(c):.4g}")


if __name__ == "__main__":
    main()
