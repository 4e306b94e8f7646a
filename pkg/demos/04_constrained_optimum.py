"""Loss bounds and power caps: the constrained optimum.

Raw efficiency maximization may park the link at a power where the
buffer overflows often. A quality constraint (loss fraction <= epsilon)
defines a minimum power p0, a hardware cap defines a maximum, and the
constrained optimum is the plain projection of the unconstrained peak
onto [p0, p_max]. The `binding` field reports which side, if any, won.
"""

from greenlink import (
    ExpUnknownChannel,
    QueueParams,
    SystemParams,
    maximize_constrained,
)

SIGMA2 = 1e-3
MODEL = ExpUnknownChannel(rate_R=4000, rate_R0=1000, noise_sigma2=SIGMA2)


def report(tag, eps, p_max, q=0.82):
    sysp = SystemParams(rate_R=4000, fixed_power_b=100 * SIGMA2,
                        noise_sigma2=SIGMA2, p_min=1e-3, p_max=p_max,
                        loss_bound_epsilon=eps)
    res = maximize_constrained(sysp, QueueParams(q, 10), MODEL)
    p0 = "none" if res.p0 == float("inf") else f"{res.p0:.4f}"
    if res.p_star_constrained is None:
        print(f"{tag:<28} p*={res.p_star:.4f}  p0={p0:<8} -> infeasible")
        return
    print(f"{tag:<28} p*={res.p_star:.4f}  p0={p0:<8} "
          f"p**={res.p_star_constrained:.4f}  [{res.binding.value}]")


def main():
    print("q = 0.82, K = 10, b = 100 sigma^2; varying the constraints:\n")
    report("loose bound, roomy cap", eps=1.00, p_max=3.162)
    report("tight loss bound", eps=0.002, p_max=3.162)
    report("tiny power cap", eps=1.00, p_max=0.010)
    report("bound + cap in conflict", eps=0.002, p_max=0.020)
    print()
    print("interior: the unconstrained peak already satisfies everything;")
    print("qos_bound: the loss bound pushes power above the peak;")
    print("power_cap: the cap (or floor) clips the answer;")
    print("infeasible: no power under the cap meets the loss bound.")


if __name__ == "__main__":
    main()
