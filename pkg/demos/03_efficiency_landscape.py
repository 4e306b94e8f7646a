"""Energy efficiency versus transmit power, across traffic loads.

Efficiency counts delivered bits per joule of *device* energy, so the
idle draw b matters: at low power the device burns b while delivering
almost nothing, at high power the amplifier dominates while the success
probability has long saturated. In between sits a single peak, and the
peak moves with the arrival probability q whenever b > 0.

Usage: python 03_efficiency_landscape.py [--ratio B_OVER_SIGMA2]
"""

import argparse
import math

import numpy as np

from greenlink import (
    ExpUnknownChannel,
    QueueParams,
    SystemParams,
    efficiency,
    maximize_unconstrained,
)

SIGMA2 = 1e-3


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ratio", type=float, default=100.0,
                    help="idle draw as a multiple of the noise power")
    args = ap.parse_args()

    model = ExpUnknownChannel(rate_R=4000, rate_R0=1000, noise_sigma2=SIGMA2)
    sysp = SystemParams(rate_R=4000, fixed_power_b=args.ratio * SIGMA2,
                        noise_sigma2=SIGMA2, p_min=1e-4, p_max=3.162)

    grid = np.exp(np.linspace(math.log(2e-3), math.log(0.5), 56))
    curves = {}
    for q in (0.1, 0.3, 0.5, 1.0):
        curves[q] = [efficiency(sysp, QueueParams(q, 10), model, float(p)).eta
                     for p in grid]

    peak = max(max(vals) for vals in curves.values())
    print(f"idle draw b = {args.ratio:g} x sigma^2 = {args.ratio * SIGMA2:g} W\n")
    print(f"{'p [W]':>9} " + "".join(f"{'q=' + str(q):>12}" for q in curves))
    for i, p in enumerate(grid):
        cells = "".join(f"{curves[q][i]:>12.1f}" for q in curves)
        marker = " <- " + "*" * int(30 * curves[1.0][i] / peak)
        print(f"{p:>9.4f} {cells}{marker}")

    print("\noptimal operating points (unconstrained):")
    for q in curves:
        opt = maximize_unconstrained(sysp, QueueParams(q, 10), model)
        print(f"  q={q:<4}  p* = {opt.p_star:.4f} W   eta* = {opt.eta_star:.1f} bit/J")
    print("\nlighter traffic pushes the optimum toward lower power: the")
    print("queue empties often, so paying for headroom stops being worth it.")


if __name__ == "__main__":
    main()
