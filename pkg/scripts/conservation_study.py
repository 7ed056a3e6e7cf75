#!/usr/bin/env python3
"""Conservation-drift study: momenta and Lagrangian drift versus step size.

Integrates one representative timelike geodesic per rotational family at a
range of fixed steps and prints the max drift of p_u, p_v and L together
with the observed convergence order between consecutive steps.
"""

import argparse
import math

from rotsurf import GeodesicState, integrate, make_family, state_from_angles


def build_runs(speed: float):
    fam14 = make_family("hyperbolic14", "A", "t", "1", 0.02, 40.0)
    fam23 = make_family("hyperbolic23", "A", "2 + t/sqrt(2)",
                        "1 + t/sqrt(2)", -1.4, 60.0)
    fam56 = make_family("elliptic56", "A", "t+2", "1", -1.9, 40.0)
    state56 = state_from_angles(fam56, 0.0, 0.0, 0.0, 1.0, 0.3)
    runs = [
        ("hyperbolic14", fam14, GeodesicState(0, 0, 1.0, 0.3, 0.1,
                                              math.sqrt(1.08))),
        ("hyperbolic23", fam23, GeodesicState(0, 0, 0.0, 0.5, 0.5, 1.5)),
        ("elliptic56", fam56, state56),
    ]
    return [(name, fam,
             GeodesicState(state.u, state.v, state.t, speed * state.du,
                           speed * state.dv, speed * state.dt))
            for name, fam, state in runs]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--length", type=float, default=5.0)
    parser.add_argument("--steps", type=float, nargs="+",
                        default=[4e-3, 2e-3, 1e-3, 5e-4])
    parser.add_argument("--speed", type=float, default=5.0,
                        help="velocity scale; > 1 lifts truncation error "
                             "above the roundoff floor")
    args = parser.parse_args()

    for name, fam, state in build_runs(args.speed):
        print(f"\n{name}: start={state}")
        print(f"{'step':>10} {'p_u drift':>12} {'p_v drift':>12} "
              f"{'L drift':>12} {'order':>7}")
        previous = None
        for step in args.steps:
            trajectory = integrate(fam, state, args.length, step)
            drifts = trajectory.drifts()
            total = max(drifts.values())
            order = ""
            if previous is not None and total > 0 and previous[1] > 0:
                ratio = previous[1] / total
                halvings = math.log2(previous[0] / step)
                if halvings > 0 and ratio > 0:
                    order = f"{math.log2(ratio) / halvings:7.2f}"
            print(f"{step:10.1e} {drifts['p_u_drift']:12.3e} "
                  f"{drifts['p_v_drift']:12.3e} {drifts['L_drift']:12.3e} "
                  f"{order:>7} [{trajectory.termination}]")
            previous = (step, total)


if __name__ == "__main__":
    main()
