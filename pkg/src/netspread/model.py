"""Compartment-model specifications.

A model is a set of named states plus two kinds of stochastic rules:

* node rules ``A -> B @ mu``: a node in A spontaneously moves to B after
  an Exp(mu) waiting time, independent of its neighborhood;
* edge rules ``A + C -> B + C @ lam``: a node in A is pushed to B at rate
  lam per neighbor in C (times the edge weight on weighted networks).

Validation resolves state names to dense indices and precomputes the
per-state aggregates the engines need: total spontaneous exit rate, total
per-edge contact rate emitted by a state, and whether a state's residence
time is fixed on entry (left only via node rules).
"""

import math
from dataclasses import dataclass, field

from .errors import (
    DuplicateRule,
    MalformedLine,
    NonPositiveRate,
    SelfTransition,
    UnknownState,
)


@dataclass(frozen=True)
class StateId:
    index: int
    name: str


@dataclass(frozen=True)
class NodeRule:
    from_state: str
    to_state: str
    rate: float


@dataclass(frozen=True)
class EdgeRule:
    target_from: str
    target_to: str
    contact: str
    rate: float


@dataclass(frozen=True)
class ModelSpec:
    states: tuple
    node_rules: tuple = ()
    edge_rules: tuple = ()


def _check_rate(rate, what):
    if not isinstance(rate, (int, float)) or not math.isfinite(rate) or not rate > 0.0:
        raise NonPositiveRate(f"{what}: rate must be a positive finite number, got {rate!r}")


class ValidatedModel:
    """Immutable, index-resolved model with precomputed aggregates.

    Safe to share read-only across concurrent simulation runs.
    """

    def __init__(self, spec):
        names = tuple(spec.states)
        if len(names) == 0:
            raise UnknownState("model declares no states")
        if len(set(names)) != len(names) or any(not n for n in names):
            raise UnknownState(f"state names must be unique and non-empty: {names}")
        self.spec = spec
        self.state_names = names
        self.m = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.states = tuple(StateId(i, n) for i, n in enumerate(names))

        def resolve(name, rule):
            try:
                return self.index[name]
            except KeyError:
                raise UnknownState(f"rule {rule} references undeclared state {name!r}") from None

        m = self.m
        # node rules: per-state exit rate and (to_state, rate) choices
        self.exit_rate = [0.0] * m
        self.node_choices = [[] for _ in range(m)]
        seen = set()
        for r in spec.node_rules:
            _check_rate(r.rate, f"node rule {r.from_state}->{r.to_state}")
            a = resolve(r.from_state, r)
            b = resolve(r.to_state, r)
            if a == b:
                raise SelfTransition(f"node rule {r.from_state}->{r.to_state} is a self-transition")
            if (a, b) in seen:
                raise DuplicateRule(f"duplicate node rule {r.from_state}->{r.to_state}")
            seen.add((a, b))
            self.exit_rate[a] += r.rate
            self.node_choices[a].append((b, r.rate))

        # edge rules, grouped by contact state
        self.edge_rules = []
        self.contact_rate = [0.0] * m
        self.contact_rules = [[] for _ in range(m)]  # per contact state: (tf, tt, rate, idx)
        self.target_rules = [[] for _ in range(m)]  # per target_from: (contact, tt, rate, idx)
        self._attackable = [False] * m  # state appears as target_from somewhere
        seen = set()
        for r in spec.edge_rules:
            _check_rate(r.rate, f"edge rule {r.target_from}+{r.contact}->{r.target_to}+{r.contact}")
            a = resolve(r.target_from, r)
            b = resolve(r.target_to, r)
            c = resolve(r.contact, r)
            if a == b:
                raise SelfTransition(
                    f"edge rule {r.target_from}+{r.contact}->{r.target_to}+{r.contact}"
                    " is a self-transition"
                )
            if (a, c) in seen:
                raise DuplicateRule(
                    f"duplicate edge rule for target {r.target_from} and contact {r.contact};"
                    " combine the rates into one rule"
                )
            seen.add((a, c))
            idx = len(self.edge_rules)
            self.edge_rules.append(r)
            self.contact_rate[c] += r.rate
            self.contact_rules[c].append((a, b, r.rate, idx))
            self.target_rules[a].append((c, b, r.rate, idx))
            self._attackable[a] = True

        # a state is residence-deterministic iff no edge rule can move it
        self.residence_det = [not a for a in self._attackable]
        self.rejection_simulable = all(
            self.residence_det[s] for s in range(m) if self.contact_rate[s] > 0.0
        )

    # --- queries ---

    def state_index(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnknownState(f"unknown state {name!r}") from None

    def _idx(self, s):
        return s if isinstance(s, int) else self.state_index(s)

    def residence_deterministic(self, s):
        return self.residence_det[self._idx(s)]

    def get_contact_rate(self, s):
        return self.contact_rate[self._idx(s)]

    def get_exit_rate(self, s):
        return self.exit_rate[self._idx(s)]


def validate(spec):
    return ValidatedModel(spec)


# --- presets ---

def sis(mu, lam):
    """S + I -> I + I @ lam ; I -> S @ mu."""
    return validate(ModelSpec(
        states=("S", "I"),
        node_rules=(NodeRule("I", "S", mu),),
        edge_rules=(EdgeRule("S", "I", "I", lam),),
    ))


def sir(mu1, mu2, lam):
    """S + I -> I + I @ lam ; I -> R @ mu1 ; R -> S @ mu2 (cyclic)."""
    return validate(ModelSpec(
        states=("S", "I", "R"),
        node_rules=(NodeRule("I", "R", mu1), NodeRule("R", "S", mu2)),
        edge_rules=(EdgeRule("S", "I", "I", lam),),
    ))


def competing(lam1, lam2, mu1, mu2):
    """Two pathogens I and J competing over susceptible nodes."""
    return validate(ModelSpec(
        states=("S", "I", "J"),
        node_rules=(NodeRule("I", "S", mu1), NodeRule("J", "S", mu2)),
        edge_rules=(EdgeRule("S", "I", "I", lam1), EdgeRule("S", "J", "J", lam2)),
    ))


PRESETS = {"sis": sis, "sir": sir, "competing": competing}


# --- text format ---
# state <name>
# node <from> -> <to> @ <rate>
# edge <target_from> + <contact> -> <target_to> + <contact> @ <rate>

def parse_model(text):
    """Parse the plain-text model format into a ValidatedModel."""
    states = []
    node_rules = []
    edge_rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "state" and len(toks) == 2:
                states.append(toks[1])
            elif toks[0] == "node" and len(toks) == 6 and toks[2] == "->" and toks[4] == "@":
                node_rules.append(NodeRule(toks[1], toks[3], float(toks[5])))
            elif (toks[0] == "edge" and len(toks) == 10 and toks[2] == "+"
                  and toks[4] == "->" and toks[6] == "+" and toks[8] == "@"):
                if toks[3] != toks[7]:
                    raise ValueError("contact state must match on both sides")
                edge_rules.append(EdgeRule(toks[1], toks[5], toks[3], float(toks[9])))
            else:
                raise ValueError("unrecognized declaration")
        except ValueError as exc:
            raise MalformedLine(f"model file line {lineno}: {exc}: {raw!r}") from None
    return validate(ModelSpec(tuple(states), tuple(node_rules), tuple(edge_rules)))


def format_model(model):
    """Inverse of parse_model (up to whitespace)."""
    out = [f"state {n}" for n in model.state_names]
    for r in model.spec.node_rules:
        out.append(f"node {r.from_state} -> {r.to_state} @ {r.rate}")
    for r in model.spec.edge_rules:
        out.append(f"edge {r.target_from} + {r.contact} -> {r.target_to} + {r.contact} @ {r.rate}")
    return "\n".join(out) + "\n"
