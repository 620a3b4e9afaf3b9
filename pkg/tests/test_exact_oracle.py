import math

import numpy as np
import pytest
from scipy.linalg import expm

from netspread import exact_oracle, model as mdl
from netspread.errors import StateSpaceTooLarge
from netspread.exact_oracle import (
    build_generator,
    conformance_test,
    pack,
    solve,
    transient,
    unpack,
)
from netspread.netgraph import Network


def pair(weighted=False, w=1.0):
    net = Network(2, weighted=weighted)
    net.add_edge(0, 1, w)
    return net


def test_pack_unpack_roundtrip():
    for m in (2, 3):
        for code in range(m ** 4):
            assert pack(unpack(code, 4, m), m) == code
    # node 0 is the least significant digit
    assert pack([1, 0, 0], 2) == 1
    assert pack([0, 0, 1], 2) == 4


def test_generator_rows_sum_to_zero():
    gen = build_generator(pair(), mdl.sis(1.0, 0.6))
    rows = np.asarray(gen.sum(axis=1)).ravel()
    assert np.allclose(rows, 0.0, atol=1e-12)
    off = gen.toarray() - np.diag(gen.diagonal())
    assert (off >= 0).all()


def test_generator_entries_sis_pair():
    # states packed base 2: 0=SS, 1=IS, 2=SI, 3=II
    q = build_generator(pair(), mdl.sis(1.0, 0.6)).toarray()
    assert q[0].tolist() == [0, 0, 0, 0]  # SS is absorbing
    assert q[1, 0] == pytest.approx(1.0)  # curing node 0
    assert q[1, 3] == pytest.approx(0.6)  # infection of node 1
    assert q[3, 1] == pytest.approx(1.0)
    assert q[3, 2] == pytest.approx(1.0)
    assert q[3, 3] == pytest.approx(-2.0)


def test_weight_scales_infection_rate():
    q1 = build_generator(pair(weighted=True, w=1.0), mdl.sis(1.0, 0.6)).toarray()
    q2 = build_generator(pair(weighted=True, w=2.5), mdl.sis(1.0, 0.6)).toarray()
    assert q2[1, 3] == pytest.approx(2.5 * q1[1, 3])
    assert q2[1, 0] == pytest.approx(q1[1, 0])  # node rules unaffected


def test_state_space_limit():
    net = Network(16)
    for v in range(15):
        net.add_edge(v, v + 1)
    with pytest.raises(StateSpaceTooLarge):
        build_generator(net, mdl.sir(1.1, 0.3, 0.6))  # 3^16 > 2^24


def test_transient_t0_and_probability_mass():
    gen = build_generator(pair(), mdl.sis(1.0, 0.6))
    p0 = np.zeros(4)
    p0[1] = 1.0
    assert np.allclose(transient(gen, p0, 0.0), p0)
    p = transient(gen, p0, 2.0)
    assert p.sum() == pytest.approx(1.0, abs=1e-10)
    assert (p >= -1e-15).all()


def test_transient_matches_expm():
    net = Network(3)
    net.add_edge(0, 1)
    net.add_edge(1, 2)
    for model in (mdl.sis(1.0, 0.6), mdl.sir(1.1, 0.3, 0.6),
                  mdl.competing(0.6, 0.63, 0.6, 0.7)):
        gen = build_generator(net, model)
        p0 = np.zeros(gen.shape[0])
        p0[pack([model.state_index("I"), 0, 0], model.m)] = 1.0
        want = p0 @ expm(gen.toarray() * 1.5)
        got = transient(gen, p0, 1.5)
        assert np.abs(got - want).max() < 1e-8


def test_transient_large_horizon_splitting():
    # lam * t big enough that exp(-lam t) underflows; answer is the
    # absorbing state SS for pure SIS decay with tiny lambda
    gen = build_generator(pair(), mdl.sis(1.0, 0.001))
    p0 = np.zeros(4)
    p0[3] = 1.0
    p = transient(gen, p0, 500.0)
    assert p[0] == pytest.approx(1.0, abs=1e-6)


def test_single_node_decay_analytic():
    net = Network(1)
    dist = solve(net, mdl.sis(1.3, 0.6), ["I"], 2.0)
    assert dist.marginal(0, 1) == pytest.approx(math.exp(-1.3 * 2.0), abs=1e-10)
    assert dist.marginal(0, 0) == pytest.approx(1 - math.exp(-2.6), abs=1e-10)


def test_marginals_sum_to_one():
    net = Network(3)
    net.add_edge(0, 1)
    net.add_edge(1, 2)
    model = mdl.competing(0.6, 0.63, 0.6, 0.7)
    dist = solve(net, model, ["I", "S", "J"], 0.7)
    for v in range(3):
        assert sum(dist.marginal(v, s) for s in range(model.m)) == pytest.approx(1.0)


def test_conformance_arithmetic():
    exact = {(0, 0): 0.5, (0, 1): 0.5}
    # phat = 0.53 at R = 1e4: z = 0.03 / sqrt(0.25/1e4) = 6 -> fail
    bad = conformance_test({(0, 0): 0.53, (0, 1): 0.47}, exact, 10000)
    assert not bad["pass"] and bad["failures"] == 2
    z = next(c["z"] for c in bad["checks"] if c["state"] == 0)
    assert z == pytest.approx(6.0)
    good = conformance_test({(0, 0): 0.51, (0, 1): 0.49}, exact, 10000)
    assert good["pass"] and good["failures"] == 0


def test_conformance_degenerate_marginal():
    exact = {(0, 0): 1.0, (0, 1): 0.0}
    assert conformance_test({(0, 0): 1.0, (0, 1): 0.0}, exact, 100)["pass"]
    assert not conformance_test({(0, 0): 0.99, (0, 1): 0.01}, exact, 100)["pass"]
