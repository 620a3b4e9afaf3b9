"""Compare CPU time per applied event across engines and network sizes.

The event-driven rejection engine pays a roughly constant cost per state
change, while the direct Gillespie baselines get slower as the network
grows. Sizes here are kept small so the demo finishes in about a minute;
pass --sizes 1e3,1e4,1e5 for the full picture.

Usage: python3 demos/demo_benchmark.py [--sizes 1e3,1e4]
"""

import argparse

from netspread import engine_baseline, engine_reject, model as mdl
from netspread.netgraph import configuration_model
from netspread.simcore import SimConfig

RUNNERS = {
    "reject": engine_reject.run,
    "ga": engine_baseline.run_ga,
    "oga": engine_baseline.run_oga,
}


def bench(net, runner, horizon, reps):
    cpus = []
    for rep in range(-1, reps):  # first iteration warms caches, then discard
        cfg = SimConfig(model=mdl.sis(1.0, 0.6), horizon=horizon, seed=0,
                        stream_id=max(rep, 0), init={"I": 0.05, "S": 0.95},
                        record_mode="grid", grid_dt=horizon)
        result = runner(net, cfg)
        if rep >= 0:
            cpus.append(result.stats.cpu_time / result.stats.applied_events)
    return sum(cpus) / len(cpus), result.stats.applied_events


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1e3,1e4")
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--events", type=float, default=2e5,
                    help="target applied events per run")
    args = ap.parse_args()
    sizes = [int(float(s)) for s in args.sizes.split(",")]

    print(f"{'n':>8} {'engine':>8} {'us/step':>9} {'applied':>9}")
    for n in sizes:
        net = configuration_model(n, gamma=2.0, kmin=3, kmax=min(1000, n - 1),
                                  seed=n)
        # events scale roughly linearly with n * horizon at fixed prevalence
        horizon = max(0.5, args.events / (2.5 * n))
        for name, runner in RUNNERS.items():
            cpu, applied = bench(net, runner, horizon, args.reps)
            print(f"{n:>8} {name:>8} {cpu * 1e6:>9.2f} {applied:>9}")


if __name__ == "__main__":
    main()
