"""Operating-point scenarios: optimal power as a share of the cap.

A worked link budget for a small transmitter with a 35 dBm cap whose
idle electronics draw as much as the amplifier does at full power
(idle = 50% of maximum device consumption). The noise floor is set by
the target SNR at the cap: sigma^2 = p_max / 10^(SNR/10).

Under those assumptions the optimizer answers a practical question:
what fraction of the available power should the link actually use?
"""

from greenlink import (
    ExpUnknownChannel,
    QueueParams,
    SystemParams,
    dbm_to_watts,
    maximize_constrained,
)

P_MAX = dbm_to_watts(35.0)


def optimal_share(snr_db: float, q: float) -> float:
    sigma2 = P_MAX / 10 ** (snr_db / 10.0)
    model = ExpUnknownChannel(rate_R=4000, rate_R0=1000, noise_sigma2=sigma2)
    sysp = SystemParams(rate_R=4000, fixed_power_b=P_MAX, noise_sigma2=sigma2,
                        p_min=P_MAX * 1e-4, p_max=P_MAX)
    res = maximize_constrained(sysp, QueueParams(q, 10), model)
    return 100.0 * res.p_star_constrained / P_MAX


def main():
    print(f"power cap p_max = {P_MAX:.3f} W (35 dBm); idle draw b = p_max;")
    print("percent figures below are p** relative to p_max\n")
    print(f"{'SNR at cap':>11} {'q=0.04':>9} {'q=0.5':>9} {'q=1.0':>9}")
    for snr in (30.0, 25.0, 20.0, 15.0):
        shares = [optimal_share(snr, q) for q in (0.04, 0.5, 1.0)]
        print(f"{snr:>9.0f}dB " + "".join(f"{s:>8.2f}%" for s in shares))

    print("\ntwo rules of thumb fall out: a cleaner channel (higher SNR)")
    print("wants a smaller share of the cap, and lighter traffic wants a")
    print("smaller share still -- single-digit percentages are optimal at")
    print("30 dB, so designing for full blast wastes most of the budget.")


if __name__ == "__main__":
    main()
