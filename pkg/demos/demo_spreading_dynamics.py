"""Simulate SIS, SIR, and competing-pathogens spreading on a power-law
network and print (and optionally plot) the mean prevalence curves.

Usage: python3 demos/demo_spreading_dynamics.py [--plot out.png]
"""

import argparse

import numpy as np

from netspread import engine_reject, model as mdl
from netspread.netgraph import configuration_model
from netspread.simcore import SimConfig


def mean_trajectory(net, model, init, horizon, dt, reps, seed):
    acc = None
    for rep in range(reps):
        cfg = SimConfig(model=model, horizon=horizon, seed=seed, stream_id=rep,
                        init=init, record_mode="grid", grid_dt=dt)
        result = engine_reject.run(net, cfg)
        counts = np.asarray(result.trajectory.counts, dtype=float) / net.n
        acc = counts if acc is None else acc + counts
        times = result.trajectory.times
    return np.asarray(times), acc / reps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=5000)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--plot", help="write the curves to this PNG")
    args = ap.parse_args()

    net = configuration_model(args.nodes, gamma=2.0, kmin=3, kmax=1000, seed=1)
    print(f"network: {net.n} nodes, {net.edge_count()} edges,"
          f" mean degree {2 * net.edge_count() / net.n:.1f}")

    scenarios = [
        ("SIS", mdl.sis(1.0, 0.6), {"I": 0.05, "S": 0.95}, 10.0),
        ("SIR (cyclic)", mdl.sir(1.1, 0.3, 0.6), {"I": 0.02, "R": 0.02, "S": 0.96}, 10.0),
        ("competing", mdl.competing(0.6, 0.63, 0.6, 0.7),
         {"I": 0.02, "J": 0.02, "S": 0.96}, 10.0),
    ]
    curves = []
    for name, model, init, horizon in scenarios:
        times, mean = mean_trajectory(net, model, init, horizon, 0.25,
                                      args.reps, seed=2)
        curves.append((name, model, times, mean))
        print(f"\n{name}: mean fractions over {args.reps} replications")
        header = "  t     " + "  ".join(f"{s:>6}" for s in model.state_names)
        print(header)
        for k in range(0, len(times), max(1, len(times) // 10)):
            row = "  ".join(f"{mean[k, i]:6.3f}" for i in range(model.m))
            print(f"  {times[k]:5.2f} {row}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, axes = plt.subplots(1, len(curves), figsize=(4 * len(curves), 3),
                                 sharey=True)
        for ax, (name, model, times, mean) in zip(axes, curves):
            for i, state in enumerate(model.state_names):
                ax.plot(times, mean[:, i], label=state)
            ax.set_title(name)
            ax.set_xlabel("time")
            ax.legend()
        axes[0].set_ylabel("fraction of nodes")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=120)
        print(f"\nwrote {args.plot}")


if __name__ == "__main__":
    main()
