"""Shared simulation plumbing: run configuration, statistics, trajectory
recording, and the generic driver loop used by all engines."""

import math
import time
from dataclasses import dataclass, field

from .errors import BadInitialAssignment
from .stochastics import RandomSource

# step outcomes
FINISHED = 0
APPLIED = 1
LATE_REJECT = 2
STALE_SKIP = 3


@dataclass
class SimConfig:
    model: object
    horizon: float
    seed: int = 0
    stream_id: int = 0
    # either {state name: fraction} (fractions summing to 1, assigned by
    # sampling without replacement) or an explicit per-node sequence of
    # state names / indices
    init: object = None
    record_mode: str = "events"  # "events" | "grid"
    grid_dt: float = 1.0
    log_events: bool = False
    check_invariants: bool = False
    freeze_states: bool = False  # no state changes applied; attempt counting only

    def __post_init__(self):
        if not self.horizon > 0:
            raise BadInitialAssignment(f"horizon must be positive, got {self.horizon}")


@dataclass
class RunStats:
    applied_events: int = 0
    early_rejects: int = 0
    late_rejects: int = 0
    stale_skips: int = 0
    wall_time: float = 0.0
    cpu_time: float = 0.0  # process CPU time; robust to scheduling noise
    queue_peak: int = 0


class Trajectory:
    """Sample times and per-state node counts; counts always sum to n."""

    def __init__(self, state_names):
        self.state_names = tuple(state_names)
        self.times = []
        self.counts = []

    def append(self, t, counts):
        self.times.append(t)
        self.counts.append(tuple(counts))

    def fractions(self, n):
        return [[c / n for c in row] for row in self.counts]

    def final_counts(self):
        return self.counts[-1]

    def write_csv(self, fh):
        fh.write("time," + ",".join(self.state_names) + "\n")
        for t, row in zip(self.times, self.counts):
            fh.write(f"{t!r}," + ",".join(str(c) for c in row) + "\n")


@dataclass
class RunResult:
    trajectory: Trajectory
    stats: RunStats
    final_states: list
    event_log: list = None


def build_initial_states(model, n, init, rng):
    """Resolve a SimConfig.init into a per-node state-index list."""
    if init is None:
        raise BadInitialAssignment("no initial assignment given")
    if isinstance(init, dict):
        total = sum(init.values())
        if abs(total - 1.0) > 1e-9:
            raise BadInitialAssignment(f"initial fractions sum to {total}, expected 1")
        idx_frac = [(model.state_index(name), frac) for name, frac in init.items()]
        counts = [int(frac * n) for _, frac in idx_frac]
        # distribute the rounding remainder by largest fractional part
        rem = n - sum(counts)
        order = sorted(range(len(idx_frac)),
                       key=lambda i: idx_frac[i][1] * n - counts[i], reverse=True)
        for i in order[:rem]:
            counts[i] += 1
        states = []
        for (s, _), c in zip(idx_frac, counts):
            states.extend([s] * c)
        # Fisher-Yates with the run's own rng so runs stay reproducible
        for i in range(n - 1, 0, -1):
            j = int(rng.uniform() * (i + 1))
            if j > i:
                j = i
            states[i], states[j] = states[j], states[i]
        return states
    states = list(init)
    if len(states) != n:
        raise BadInitialAssignment(f"explicit assignment has {len(states)} entries for {n} nodes")
    return [s if isinstance(s, int) else model.state_index(s) for s in states]


def drive(engine, cfg):
    """Run an engine's step loop to completion, recording the trajectory.

    The wall clock covers the loop only (setup excluded), matching the
    per-step cost accounting used for benchmarks.
    """
    model = engine.model
    traj = Trajectory(model.state_names)
    grid = cfg.record_mode == "grid"
    horizon = cfg.horizon
    if grid:
        next_t = 0.0
        last_counts = tuple(engine.counts)
    else:
        traj.append(0.0, engine.counts)
    check = cfg.check_invariants
    step = engine.step
    c0 = time.process_time()
    t0 = time.perf_counter()
    while True:
        outcome = step()
        if outcome == FINISHED:
            break
        if check:
            engine.check_invariants()
        if outcome == APPLIED:
            t = engine.clock
            if grid:
                while next_t < t and next_t <= horizon:
                    traj.append(next_t, last_counts)
                    next_t += cfg.grid_dt
                last_counts = tuple(engine.counts)
            else:
                traj.append(t, engine.counts)
    elapsed = time.perf_counter() - t0
    cpu_elapsed = time.process_time() - c0
    if grid:
        while next_t <= horizon:
            traj.append(next_t, last_counts)
            next_t += cfg.grid_dt
    else:
        traj.append(horizon, engine.counts)
    stats = engine.stats
    stats.wall_time = elapsed
    stats.cpu_time = cpu_elapsed
    if hasattr(engine, "queue"):
        stats.queue_peak = engine.queue.peak
    return RunResult(
        trajectory=traj,
        stats=stats,
        final_states=list(engine.state),
        event_log=engine.event_log,
    )


def make_rng(cfg):
    return RandomSource(cfg.seed, cfg.stream_id)


def write_event_log(fh, log):
    fh.write("time,kind,src,dst,rule\n")
    for row in log:
        fh.write(",".join(str(x) for x in row) + "\n")
