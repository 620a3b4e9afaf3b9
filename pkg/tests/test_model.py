import pytest

from netspread import model as mdl
from netspread.errors import (
    DuplicateRule,
    MalformedLine,
    NonPositiveRate,
    SelfTransition,
    UnknownState,
)
from netspread.model import EdgeRule, ModelSpec, NodeRule, validate


def fictional_system():
    # S+I -> I+I ; I+I -> I+S : the attacker I can be left by an edge rule
    return validate(ModelSpec(
        states=("S", "I"),
        edge_rules=(EdgeRule("S", "I", "I", 0.6), EdgeRule("I", "S", "I", 0.5)),
    ))


def test_sis_preset_shape():
    m = mdl.sis(1.0, 0.6)
    assert m.state_names == ("S", "I")
    assert len(m.spec.node_rules) == 1
    assert len(m.spec.edge_rules) == 1


def test_sir_preset_shape():
    m = mdl.sir(1.1, 0.3, 0.6)
    assert m.state_names == ("S", "I", "R")
    assert len(m.spec.node_rules) == 2
    assert len(m.spec.edge_rules) == 1


def test_competing_preset_shape():
    m = mdl.competing(0.6, 0.63, 0.6, 0.7)
    assert m.state_names == ("S", "I", "J")
    assert len(m.spec.node_rules) == 2
    assert len(m.spec.edge_rules) == 2


def test_self_transition_rejected():
    with pytest.raises(SelfTransition):
        validate(ModelSpec(("S", "I"), (NodeRule("I", "I", 1.0),)))


@pytest.mark.parametrize("rate", [0.0, -1.0, float("inf"), float("nan")])
def test_bad_rates_rejected(rate):
    with pytest.raises(NonPositiveRate):
        validate(ModelSpec(("S", "I"), (NodeRule("I", "S", rate),)))


def test_unknown_state_rejected():
    with pytest.raises(UnknownState):
        validate(ModelSpec(("S", "I"), (NodeRule("I", "X", 1.0),)))


def test_duplicate_rules_rejected():
    with pytest.raises(DuplicateRule):
        validate(ModelSpec(("S", "I"),
                           (NodeRule("I", "S", 1.0), NodeRule("I", "S", 2.0))))
    with pytest.raises(DuplicateRule):
        validate(ModelSpec(("S", "I"), (),
                           (EdgeRule("S", "I", "I", 0.6), EdgeRule("S", "I", "I", 0.7))))


def test_residence_deterministic():
    m = mdl.sis(1.0, 0.6)
    assert m.residence_deterministic("I")
    assert not m.residence_deterministic("S")
    assert mdl.sir(1.1, 0.3, 0.6).residence_deterministic("R")


def test_contact_rate():
    m = mdl.sis(1.0, 0.6)
    assert m.get_contact_rate("I") == pytest.approx(0.6)
    assert m.get_contact_rate("S") == 0.0
    c = mdl.competing(0.6, 0.63, 0.6, 0.7)
    assert c.get_contact_rate("J") == pytest.approx(0.63)


def test_exit_rate():
    assert mdl.sir(1.1, 0.3, 0.6).get_exit_rate("I") == pytest.approx(1.1)
    assert mdl.sis(1.0, 0.6).get_exit_rate("S") == 0.0
    m = validate(ModelSpec(("A", "X", "Y"),
                           (NodeRule("A", "X", 0.3), NodeRule("A", "Y", 0.7))))
    assert m.get_exit_rate("A") == pytest.approx(1.0)


def test_rejection_simulable():
    assert mdl.sis(1.0, 0.6).rejection_simulable
    assert mdl.sir(1.1, 0.3, 0.6).rejection_simulable
    assert mdl.competing(0.6, 0.63, 0.6, 0.7).rejection_simulable
    assert not fictional_system().rejection_simulable


def test_residence_det_xor_attackable():
    for m in (mdl.sis(1.0, 0.6), mdl.sir(1.1, 0.3, 0.6),
              mdl.competing(0.6, 0.63, 0.6, 0.7), fictional_system()):
        for s in range(m.m):
            attackable = any(s == m.index[r.target_from] for r in m.edge_rules)
            assert m.residence_det[s] != attackable


def test_aggregates_additive_over_rules():
    full = mdl.competing(0.6, 0.63, 0.6, 0.7)
    spec = full.spec
    reduced = validate(ModelSpec(spec.states, spec.node_rules, spec.edge_rules[:1]))
    dropped = spec.edge_rules[1]
    c = full.index[dropped.contact]
    assert full.contact_rate[c] - reduced.contact_rate[c] == pytest.approx(dropped.rate)


@pytest.mark.parametrize("rates", [(1.0, 0.6), (0.1, 5.0), (3.5, 0.001)])
def test_presets_roundtrip_any_positive_rates(rates):
    m = mdl.sis(*rates)
    assert validate(m.spec).state_names == m.state_names


def test_parse_model_roundtrip():
    m = mdl.sir(1.1, 0.3, 0.6)
    again = mdl.parse_model(mdl.format_model(m))
    assert again.state_names == m.state_names
    assert again.spec.node_rules == m.spec.node_rules
    assert again.spec.edge_rules == m.spec.edge_rules


def test_parse_model_comments_and_whitespace():
    text = """
    # the SIS model
    state S
    state I
    node I -> S @ 1.0   # recovery
    edge S + I -> I + I @ 0.6
    """
    m = mdl.parse_model(text)
    assert m.get_contact_rate("I") == pytest.approx(0.6)


def test_parse_model_bad_line():
    with pytest.raises(MalformedLine):
        mdl.parse_model("state S\nnode S I 1.0")
    with pytest.raises(MalformedLine):
        mdl.parse_model("edge S + I -> I + J @ 0.6")  # contact mismatch
