import math

import pytest

from netspread import engine_baseline, model as mdl
from netspread.engine_baseline import (
    DynamicNodeList,
    GaGenericEngine,
    GaSisEngine,
    OgaEngine,
    degree_proportional_pick,
    run_ga,
    run_oga,
)
from netspread.errors import OgaRequiresSis
from netspread.model import ModelSpec, NodeRule, validate
from netspread.netgraph import Network, configuration_model
from netspread.simcore import APPLIED, LATE_REJECT, SimConfig, drive
from netspread.stochastics import RandomSource, scripted_source


def exp_u(x):
    return 1.0 - math.exp(-x)


def pair(model=None, init=("I", "S"), horizon=2.0, **kw):
    net = Network(2)
    net.add_edge(0, 1)
    cfg = SimConfig(model=model or mdl.sis(1.0, 0.6), horizon=horizon,
                    init=list(init), **kw)
    return net, cfg


def test_dynamic_node_list():
    lst = DynamicNodeList()
    for x in (10, 20, 30):
        lst.add(x)
    assert len(lst) == 3 and 20 in lst
    lst.remove(20)  # middle removal swaps the tail in
    assert 20 not in lst and len(lst) == 2
    assert set(lst.items) == {10, 30}
    assert lst.pick(0.0) in (10, 30)
    assert lst.pick(0.999) in (10, 30)
    lst.remove(10)
    lst.remove(30)
    assert len(lst) == 0


def test_ga_sis_scripted():
    # pair I-S: aggregated rate c = mu + lam = 1.6; first event at t=1 is an
    # infection (branch draw 0.9 -> 0.9*1.6 > mu); then c = 2 mu and the next
    # waiting time overshoots the horizon
    net, cfg = pair()
    script = scripted_source([exp_u(1.6), 0.9, 0.0, exp_u(2.5)])
    result = run_ga(net, cfg, rng=script)
    assert result.trajectory.times == pytest.approx([0.0, 1.0, 2.0])
    assert result.trajectory.counts == [(1, 1), (0, 2), (0, 2)]
    assert result.stats.applied_events == 1
    assert script.remaining == 0


def test_ga_sis_scripted_curing():
    net, cfg = pair()
    # branch draw 0.5 -> 0.5*1.6 = 0.8 < mu*n_I = 1 -> curing; everything
    # is susceptible afterwards, aggregated rate 0, immediate finish
    script = scripted_source([exp_u(1.6), 0.5, 0.0])
    result = run_ga(net, cfg, rng=script)
    assert result.trajectory.counts[-1] == (2, 0)
    assert result.stats.applied_events == 1


def test_ga_dispatches_generic_for_non_sis():
    net, cfg = pair(model=mdl.sir(1.1, 0.3, 0.6), init=("I", "S"), seed=3)
    result = run_ga(net, cfg)
    assert sum(result.trajectory.final_counts()) == 2


def test_ga_sis_engine_requires_sis():
    net, cfg = pair(model=mdl.sir(1.1, 0.3, 0.6))
    with pytest.raises(OgaRequiresSis):
        GaSisEngine(net, cfg)


def test_oga_requires_sis():
    net, cfg = pair(model=mdl.competing(0.6, 0.63, 0.6, 0.7), init=("I", "S", "J")[:2])
    with pytest.raises(OgaRequiresSis):
        OgaEngine(net, cfg)


def test_oga_scripted_infection():
    net, cfg = pair()
    # total = mu + lam * k_I = 1.6; infection branch; attacker accepted
    # (degree 1 vs kmax 1), neighbor is susceptible -> applied
    script = scripted_source([exp_u(1.6), 0.9, 0.0, 0.0, 0.0, exp_u(6.4)])
    result = run_oga(net, cfg, rng=script)
    assert result.trajectory.times == pytest.approx([0.0, 1.0, 2.0])
    assert result.trajectory.counts[-1] == (0, 2)
    assert result.stats.applied_events == 1
    assert script.remaining == 0


def test_oga_rejection_advances_clock():
    # pair I-I: the infection branch must pick an infected neighbor, which
    # is a rejection that still consumes time
    net, cfg = pair(init=("I", "I"), horizon=10.0)
    engine = OgaEngine(net, cfg, rng=scripted_source([exp_u(3.2), 0.9, 0.0, 0.0, 0.0]))
    assert engine.step() == LATE_REJECT
    assert engine.clock == pytest.approx(1.0)
    assert engine.stats.late_rejects == 1
    assert engine.counts == [0, 2]  # unchanged


def test_degree_proportional_pick_frequencies():
    lst = DynamicNodeList()
    lst.add(0)
    lst.add(1)
    degrees = {0: 1, 1: 3}
    rng = RandomSource(21)
    trials = 20000
    hits = sum(degree_proportional_pick(lst, degrees, rng) == 1 for _ in range(trials))
    se = math.sqrt(0.75 * 0.25 / trials)
    assert abs(hits / trials - 0.75) < 4 * se


def test_ga_sis_edge_list_invariant_through_run():
    net = configuration_model(100, 2.0, 3, 30, seed=5)
    cfg = SimConfig(model=mdl.sis(1.0, 0.6), horizon=2.0, seed=9,
                    init={"I": 0.1, "S": 0.9}, check_invariants=True)
    result = run_ga(net, cfg)
    assert result.stats.applied_events > 0


def test_ga_generic_propensity_invariant_through_run():
    net = configuration_model(60, 2.0, 3, 20, seed=5)
    cfg = SimConfig(model=mdl.competing(0.6, 0.63, 0.6, 0.7), horizon=2.0, seed=9,
                    init={"I": 0.1, "J": 0.1, "S": 0.8}, check_invariants=True)
    result = run_ga(net, cfg)
    assert result.stats.applied_events > 0


def test_oga_sum_k_invariant_through_run():
    net = configuration_model(100, 2.0, 3, 30, seed=5)
    cfg = SimConfig(model=mdl.sis(1.0, 0.6), horizon=2.0, seed=9,
                    init={"I": 0.1, "S": 0.9}, check_invariants=True)
    result = run_oga(net, cfg)
    assert result.stats.applied_events > 0


def test_ga_generic_weighted_pure_decay():
    decay = validate(ModelSpec(("S", "I"), (NodeRule("I", "S", 1.0),)))
    n, t = 1000, 1.0
    net = Network(n)
    cfg = SimConfig(model=decay, horizon=t, seed=17, init=["I"] * n)
    result = drive(GaGenericEngine(net, cfg), cfg)
    p = math.exp(-t)
    n_i = result.trajectory.final_counts()[1]
    assert abs(n_i - n * p) < 4 * math.sqrt(n * p * (1 - p))


def test_baselines_deterministic():
    net = configuration_model(80, 2.0, 3, 20, seed=2)
    def run(runner, stream):
        cfg = SimConfig(model=mdl.sis(1.0, 0.6), horizon=2.0, seed=31,
                        stream_id=stream, init={"I": 0.1, "S": 0.9})
        return runner(net, cfg)
    for runner in (run_ga, run_oga):
        a, b, c = run(runner, 0), run(runner, 0), run(runner, 1)
        assert a.trajectory.times == b.trajectory.times
        assert a.final_states == b.final_states
        assert a.trajectory.times != c.trajectory.times
