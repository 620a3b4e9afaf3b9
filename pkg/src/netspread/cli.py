"""Command-line frontend.

Subcommands: generate (configuration-model networks), simulate (one run,
trajectory CSV + stats JSON), bench (CPU-time-per-step records), verify
(statistical conformance against the exact CTMC oracle).

Exit codes: 0 success, 1 validation/input failure, 2 conformance failure.
"""

import argparse
import json
import shlex
import sys
import time

from . import engine_baseline, engine_reject, exact_oracle, model as model_mod, netgraph
from .errors import NetspreadError
from .simcore import SimConfig

PARAM_ORDER = {
    "sis": ("mu", "lambda"),
    "sir": ("mu1", "mu2", "lambda"),
    "competing": ("l1", "l2", "m1", "m2"),
}

BENCH_HEADER = ("engine,model,n,gamma,replication,applied_events,"
                "early_rejects,late_rejects,wall_time,cpu_time_per_step")


def _parse_params(text):
    out = {}
    if text:
        for tok in text.split(","):
            k, _, v = tok.partition("=")
            if not _:
                raise NetspreadError(f"bad parameter {tok!r}, expected name=value")
            out[k.strip()] = float(v)
    return out


def build_model(name, params_text):
    params = _parse_params(params_text)
    if name in PARAM_ORDER:
        order = PARAM_ORDER[name]
        missing = [p for p in order if p not in params]
        if missing:
            raise NetspreadError(f"model {name} needs parameters {', '.join(order)}")
        return model_mod.PRESETS[name](*(params[p] for p in order))
    with open(name) as fh:
        return model_mod.parse_model(fh.read())


def parse_init(text, model):
    """`I:0.05,R:0.02` style fractions (remainder goes to the first declared
    state) or an explicit comma list of per-node state names."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if any(":" in t for t in tokens):
        fractions = {}
        for t in tokens:
            name, _, frac = t.partition(":")
            fractions[name] = fractions.get(name, 0.0) + float(frac)
        rest = 1.0 - sum(fractions.values())
        default = model.state_names[0]
        if rest > 1e-12:
            fractions[default] = fractions.get(default, 0.0) + rest
        return fractions
    return tokens


def load_network(path):
    with open(path) as fh:
        return netgraph.from_edge_list(fh.read())


def load_temporal(path):
    changes = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) not in (4, 5) or parts[1] not in ("add", "remove"):
                raise NetspreadError(f"temporal stream line {lineno}: bad record {raw!r}")
            w = float(parts[4]) if len(parts) == 5 else None
            changes.append((float(parts[0]), parts[1], int(parts[2]), int(parts[3]), w))
    return changes


def run_engine(engine, net, cfg, temporal=None):
    if callable(engine):
        return engine(net, cfg)
    if engine == "reject":
        return engine_reject.run(net, cfg, temporal=temporal)
    if temporal:
        raise NetspreadError("temporal streams are supported by the reject engine only")
    if engine == "ga":
        return engine_baseline.run_ga(net, cfg)
    if engine == "oga":
        return engine_baseline.run_oga(net, cfg)
    raise NetspreadError(f"unknown engine {engine!r}")


def _config_line():
    return "# config: " + " ".join(shlex.quote(a) for a in sys.argv[1:])


# --- subcommands ---

def cmd_generate(args):
    net = netgraph.configuration_model(args.nodes, args.gamma, args.kmin, args.kmax, args.seed)
    with open(args.out, "w") as fh:
        fh.write(_config_line() + "\n")
        fh.write(net.to_edge_list())
    degrees = [net.degree(v) for v in range(net.n)]
    print(f"nodes={net.n} edges={net.edge_count()}"
          f" mean_degree={sum(degrees) / net.n:.3f} max_degree={max(degrees)}")
    return 0


def cmd_simulate(args):
    mdl = build_model(args.model, args.params)
    net = load_network(args.network)
    temporal = load_temporal(args.temporal) if args.temporal else None
    cfg = SimConfig(
        model=mdl,
        horizon=args.horizon,
        seed=args.seed,
        stream_id=args.stream,
        init=parse_init(args.init, mdl),
        record_mode=args.record,
        grid_dt=args.grid_dt,
        log_events=args.log_events is not None,
    )
    result = run_engine(args.engine, net, cfg, temporal=temporal)
    with open(args.out, "w") as fh:
        fh.write(_config_line() + "\n")
        result.trajectory.write_csv(fh)
    if args.log_events:
        from .simcore import write_event_log
        with open(args.log_events, "w") as fh:
            fh.write(_config_line() + "\n")
            write_event_log(fh, result.event_log)
    stats = {
        "engine": args.engine,
        "seed": args.seed,
        "stream_id": args.stream,
        "applied_events": result.stats.applied_events,
        "early_rejects": result.stats.early_rejects,
        "late_rejects": result.stats.late_rejects,
        "stale_skips": result.stats.stale_skips,
        "wall_time": result.stats.wall_time,
        "cpu_time": result.stats.cpu_time,
        "queue_peak": result.stats.queue_peak,
        "final_counts": dict(zip(mdl.state_names, result.trajectory.final_counts())),
    }
    out = json.dumps(stats, indent=2)
    if args.stats_out:
        with open(args.stats_out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return 0


def cmd_bench(args):
    mdl = build_model(args.model, args.params)
    init = parse_init(args.init, mdl)
    sizes = [int(float(s)) for s in args.sizes.split(",")]
    gammas = [float(g) for g in args.gammas.split(",")]
    engines = args.engines.split(",")
    records = []
    for gamma in gammas:
        for n in sizes:
            kmax = min(args.kmax, n - 1)
            net_seed = args.seed + n
            for engine in engines:
                for rep in range(-1, args.replications):  # rep -1 is the warm-up
                    net = netgraph.configuration_model(n, gamma, args.kmin, kmax, net_seed)
                    cfg = SimConfig(model=mdl, horizon=args.horizon, seed=args.seed,
                                    stream_id=max(rep, 0), init=init, record_mode="grid",
                                    grid_dt=args.horizon)
                    result = run_engine(engine, net, cfg)
                    if rep < 0:
                        continue
                    st = result.stats
                    cpu = st.cpu_time / st.applied_events if st.applied_events else float("nan")
                    rec = (engine, args.model, n, gamma, rep, st.applied_events,
                           st.early_rejects, st.late_rejects, st.wall_time, cpu)
                    records.append(rec)
                    print(",".join(str(x) for x in rec))
    with open(args.out, "w") as fh:
        fh.write(_config_line() + "\n")
        fh.write(BENCH_HEADER + "\n")
        for rec in records:
            fh.write(",".join(str(x) for x in rec) + "\n")
    return 0


def verify_marginals(net, mdl, init_states, horizon, runs, engine, seed):
    """R replications vs the exact transient distribution at the horizon."""
    dist = exact_oracle.solve(net, mdl, init_states, horizon)
    hits = {(v, s): 0 for v in range(net.n) for s in range(mdl.m)}
    init_idx = [mdl.state_index(s) if isinstance(s, str) else s for s in init_states]
    for rep in range(runs):
        cfg = SimConfig(model=mdl, horizon=horizon, seed=seed, stream_id=rep,
                        init=init_idx, record_mode="grid", grid_dt=horizon)
        result = run_engine(engine, net, cfg)
        for v, s in enumerate(result.final_states):
            hits[(v, s)] += 1
    empirical = {k: c / runs for k, c in hits.items()}
    exact = {(v, s): dist.marginal(v, s) for v in range(net.n) for s in range(mdl.m)}
    report = exact_oracle.conformance_test(empirical, exact, runs)
    for c in report["checks"]:
        c["state"] = mdl.state_names[c["state"]]
    return report


def cmd_verify(args):
    mdl = build_model(args.model, args.params)
    net = load_network(args.network)
    init_states = parse_init(args.init, mdl)
    if isinstance(init_states, dict):
        raise NetspreadError("verify needs an explicit per-node --init, e.g. I,S,S")
    report = verify_marginals(net, mdl, init_states, args.horizon,
                              args.runs, args.engine, args.seed)
    report["config"] = " ".join(sys.argv[1:])
    out = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    print(out if not args.out else f"pass={report['pass']} failures={report['failures']}")
    return 0 if report["pass"] else 2


def make_parser():
    p = argparse.ArgumentParser(prog="netspread")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a configuration-model edge list")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--gamma", type=float, required=True)
    g.add_argument("--kmin", type=int, default=3)
    g.add_argument("--kmax", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("simulate", help="run one simulation")
    s.add_argument("--network", required=True)
    s.add_argument("--model", required=True, help="sis|sir|competing or a model file")
    s.add_argument("--params", default="")
    s.add_argument("--init", required=True)
    s.add_argument("--horizon", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stream", type=int, default=0)
    s.add_argument("--engine", choices=("reject", "ga", "oga"), default="reject")
    s.add_argument("--temporal", help="temporal edge stream file")
    s.add_argument("--record", choices=("events", "grid"), default="events")
    s.add_argument("--grid-dt", type=float, default=1.0)
    s.add_argument("--out", required=True)
    s.add_argument("--stats-out")
    s.add_argument("--log-events")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bench", help="CPU-time-per-step benchmark protocol")
    b.add_argument("--sizes", required=True, help="comma list of node counts")
    b.add_argument("--gammas", default="2")
    b.add_argument("--engines", default="reject,ga")
    b.add_argument("--model", default="sis")
    b.add_argument("--params", default="mu=1.0,lambda=0.6")
    b.add_argument("--init", default="I:0.05")
    b.add_argument("--kmin", type=int, default=3)
    b.add_argument("--kmax", type=int, default=1000)
    b.add_argument("--replications", type=int, default=5)
    b.add_argument("--horizon", type=float, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="statistical conformance vs the exact oracle")
    v.add_argument("--network", required=True)
    v.add_argument("--model", required=True)
    v.add_argument("--params", default="")
    v.add_argument("--init", required=True, help="explicit per-node states, e.g. I,S,S")
    v.add_argument("--horizon", type=float, default=1.0)
    v.add_argument("--runs", type=int, default=10000)
    v.add_argument("--engine", choices=("reject", "ga", "oga"), default="reject")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NetspreadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
