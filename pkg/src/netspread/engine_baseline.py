"""Baseline simulation engines.

* GA (standard Gillespie / direct method), SIS-specialized: maintains the
  infected-node list and the S-I edge list, samples the next event from
  the aggregated rate, and walks the changed node's neighborhood to keep
  the edge list exact.
* A generic direct method for arbitrary validated models (per-node
  propensities), so SIR-like models have a baseline too.
* OGA (optimized Gillespie): degree-proportional attacker sampling with
  rejection; only the changed node's list entry is touched.
"""

import math
from math import log1p

from .errors import CorruptState, OgaRequiresSis
from .simcore import (
    APPLIED,
    FINISHED,
    LATE_REJECT,
    RunStats,
    build_initial_states,
    drive,
    make_rng,
)


class DynamicNodeList:
    """Dense array plus position index: O(1) add, remove, and uniform pick."""

    __slots__ = ("items", "pos")

    def __init__(self):
        self.items = []
        self.pos = {}

    def __len__(self):
        return len(self.items)

    def __contains__(self, x):
        return x in self.pos

    def add(self, x):
        self.pos[x] = len(self.items)
        self.items.append(x)

    def remove(self, x):
        items = self.items
        p = self.pos.pop(x)
        last = items.pop()
        if p < len(items):
            items[p] = last
            self.pos[last] = p

    def pick(self, u):
        items = self.items
        i = int(u * len(items))
        return items[i if i < len(items) else len(items) - 1]


# ordered (infected, susceptible) pairs; same swap-with-last trick
DynamicEdgeList = DynamicNodeList


def _is_sis(model):
    return (model.state_names == ("S", "I")
            and len(model.spec.node_rules) == 1
            and len(model.spec.edge_rules) == 1
            and model.spec.node_rules[0].from_state == "I"
            and model.spec.edge_rules[0].target_from == "S"
            and model.spec.edge_rules[0].contact == "I")


class GaSisEngine:
    """Standard Gillespie with the S-I edge-list bookkeeping, SIS only."""

    def __init__(self, net, cfg, rng=None):
        model = cfg.model
        if not _is_sis(model):
            raise OgaRequiresSis("the SIS-specialized GA needs an SIS model")
        self.net = net
        self.cfg = cfg
        self.model = model
        self.rng = rng if rng is not None else make_rng(cfg)
        self.mu = model.spec.node_rules[0].rate
        self.lam = model.spec.edge_rules[0].rate
        self.S = model.index["S"]
        self.I = model.index["I"]
        self.clock = 0.0
        self.stats = RunStats()
        self.event_log = [] if cfg.log_events else None
        self.state = build_initial_states(model, net.n, cfg.init, self.rng)
        self.counts = [0] * model.m
        for s in self.state:
            self.counts[s] += 1
        self.infected = DynamicNodeList()
        self.si_edges = DynamicEdgeList()
        state = self.state
        for node in range(net.n):
            if state[node] == self.I:
                self.infected.add(node)
                for nb in net.adjacency[node]:
                    if state[nb] == self.S:
                        self.si_edges.add((node, nb))

    def step(self):
        n_i = len(self.infected)
        n_si = len(self.si_edges)
        c = self.mu * n_i + self.lam * n_si
        if c == 0.0:
            return FINISHED
        rng_uniform = self.rng.uniform
        self.clock -= log1p(-rng_uniform()) / c
        if self.clock > self.cfg.horizon:
            self.clock = self.cfg.horizon
            return FINISHED
        state = self.state
        S, I = self.S, self.I
        adj = self.net.adjacency
        if rng_uniform() * c < self.mu * n_i:  # curing
            node = self.infected.pick(rng_uniform())
            self.infected.remove(node)
            state[node] = S
            for nb in adj[node]:
                if state[nb] == S:
                    self.si_edges.remove((node, nb))
                else:
                    self.si_edges.add((nb, node))
            self.counts[I] -= 1
            self.counts[S] += 1
            if self.event_log is not None:
                self.event_log.append((self.clock, "transition", node, "", "I->S"))
        else:  # infection
            src, node = self.si_edges.pick(rng_uniform())
            state[node] = I
            self.infected.add(node)
            for nb in adj[node]:
                if state[nb] == S:
                    self.si_edges.add((node, nb))
                else:
                    self.si_edges.remove((nb, node))
            self.counts[S] -= 1
            self.counts[I] += 1
            if self.event_log is not None:
                self.event_log.append((self.clock, "attack", src, node, "S+I->I+I"))
        self.stats.applied_events += 1
        return APPLIED

    def check_invariants(self):
        state = self.state
        expected = set()
        for node in range(self.net.n):
            if state[node] == self.I:
                for nb in self.net.adjacency[node]:
                    if state[nb] == self.S:
                        expected.add((node, nb))
        if expected != set(self.si_edges.items):
            raise CorruptState("S-I edge list out of sync with the network state")


class GaGenericEngine:
    """Direct method over per-node propensities, for any validated model."""

    def __init__(self, net, cfg, rng=None):
        model = cfg.model
        self.net = net
        self.cfg = cfg
        self.model = model
        self.rng = rng if rng is not None else make_rng(cfg)
        self.clock = 0.0
        self.stats = RunStats()
        self.event_log = [] if cfg.log_events else None
        self.state = build_initial_states(model, net.n, cfg.init, self.rng)
        self.counts = [0] * model.m
        for s in self.state:
            self.counts[s] += 1
        self.prop = [self._propensity(node) for node in range(net.n)]
        self.total = sum(self.prop)

    def _propensity(self, node):
        model = self.model
        s = self.state[node]
        p = model.exit_rate[s]
        rules = model.target_rules[s]
        if rules:
            state = self.state
            weights = self.net.weights[node] if self.net.weighted else None
            for slot, nb in enumerate(self.net.adjacency[node]):
                w = weights[slot] if weights is not None else 1.0
                nbs = state[nb]
                for contact, _, rate, _ in rules:
                    if nbs == contact:
                        p += rate * w
        return p

    def _refresh(self, node):
        old = self.prop[node]
        new = self._propensity(node)
        self.prop[node] = new
        self.total += new - old

    def step(self):
        total = self.total
        if total <= 1e-14:
            return FINISHED
        rng_uniform = self.rng.uniform
        self.clock -= log1p(-rng_uniform()) / total
        if self.clock > self.cfg.horizon:
            self.clock = self.cfg.horizon
            return FINISHED
        # pick node proportional to propensity
        u = rng_uniform() * total
        acc = 0.0
        prop = self.prop
        node = -1
        for i, p in enumerate(prop):
            if p > 0.0:
                node = i
                acc += p
                if u < acc:
                    break
        model = self.model
        s = self.state[node]
        state = self.state
        # enumerate the node's firing options, then pick within its propensity
        options = []
        acc = 0.0
        for to, rate in model.node_choices[s]:
            acc += rate
            options.append((acc, to,
                            (self.clock, "transition", node, "",
                             f"{model.state_names[s]}->{model.state_names[to]}")))
        weights = self.net.weights[node] if self.net.weighted else None
        for slot, nb in enumerate(self.net.adjacency[node]):
            w = weights[slot] if weights is not None else 1.0
            nbs = state[nb]
            for contact, to, rate, ridx in model.target_rules[s]:
                if nbs == contact:
                    acc += rate * w
                    r = model.edge_rules[ridx]
                    options.append((acc, to,
                                    (self.clock, "attack", nb, node,
                                     f"{r.target_from}+{r.contact}->{r.target_to}+{r.contact}")))
        u = rng_uniform() * prop[node]
        new_state, label = options[-1][1], options[-1][2]
        for cum, to, lab in options:
            if u < cum:
                new_state, label = to, lab
                break
        self.counts[s] -= 1
        self.counts[new_state] += 1
        state[node] = new_state
        self._refresh(node)
        for nb in self.net.adjacency[node]:
            self._refresh(nb)
        self.stats.applied_events += 1
        if self.event_log is not None:
            self.event_log.append(label)
        return APPLIED

    def check_invariants(self):
        for node in range(self.net.n):
            if abs(self.prop[node] - self._propensity(node)) > 1e-9:
                raise CorruptState(f"stale propensity at node {node}")


class OgaEngine:
    """Optimized Gillespie for SIS: attackers drawn degree-proportionally
    (rejection against the maximum degree), neighbor uniformly; infected
    targets yield a rejection that still advances the clock."""

    def __init__(self, net, cfg, rng=None):
        model = cfg.model
        if not _is_sis(model):
            raise OgaRequiresSis("OGA is implemented for the SIS model only")
        self.net = net
        self.cfg = cfg
        self.model = model
        self.rng = rng if rng is not None else make_rng(cfg)
        self.mu = model.spec.node_rules[0].rate
        self.lam = model.spec.edge_rules[0].rate
        self.S = model.index["S"]
        self.I = model.index["I"]
        self.clock = 0.0
        self.stats = RunStats()
        self.event_log = [] if cfg.log_events else None
        self.state = build_initial_states(model, net.n, cfg.init, self.rng)
        self.counts = [0] * model.m
        for s in self.state:
            self.counts[s] += 1
        self.kmax = max((len(a) for a in net.adjacency), default=0)
        self.infected = DynamicNodeList()
        self.sum_k = 0
        for node in range(net.n):
            if self.state[node] == self.I:
                self.infected.add(node)
                self.sum_k += len(net.adjacency[node])

    def step(self):
        n_i = len(self.infected)
        total = self.mu * n_i + self.lam * self.sum_k
        if total == 0.0:
            return FINISHED
        rng_uniform = self.rng.uniform
        self.clock -= log1p(-rng_uniform()) / total
        if self.clock > self.cfg.horizon:
            self.clock = self.cfg.horizon
            return FINISHED
        state = self.state
        adj = self.net.adjacency
        S, I = self.S, self.I
        frozen = self.cfg.freeze_states
        if rng_uniform() * total < self.mu * n_i:  # curing branch
            if frozen:
                return LATE_REJECT
            node = self.infected.pick(rng_uniform())
            self.infected.remove(node)
            self.sum_k -= len(adj[node])
            state[node] = S
            self.counts[I] -= 1
            self.counts[S] += 1
            if self.event_log is not None:
                self.event_log.append((self.clock, "transition", node, "", "I->S"))
            self.stats.applied_events += 1
            return APPLIED
        # infection branch: degree-proportional attacker via rejection vs kmax
        kmax = self.kmax
        while True:
            src = self.infected.pick(rng_uniform())
            k = len(adj[src])
            if rng_uniform() * kmax < k:
                break
        nb = adj[src][int(rng_uniform() * k) % k]
        if state[nb] == I:
            self.stats.late_rejects += 1
            if self.event_log is not None:
                self.event_log.append((self.clock, "late_reject", src, nb, "S+I->I+I"))
            return LATE_REJECT
        if frozen:
            self.stats.applied_events += 1
            if self.event_log is not None:
                self.event_log.append((self.clock, "attack", src, nb, "S+I->I+I"))
            return APPLIED
        state[nb] = I
        self.infected.add(nb)
        self.sum_k += len(adj[nb])
        self.counts[S] -= 1
        self.counts[I] += 1
        if self.event_log is not None:
            self.event_log.append((self.clock, "attack", src, nb, "S+I->I+I"))
        self.stats.applied_events += 1
        return APPLIED

    def check_invariants(self):
        want = sum(len(self.net.adjacency[n]) for n in self.infected.items)
        if want != self.sum_k:
            raise CorruptState("infected degree sum out of sync")


def degree_proportional_pick(node_list, degrees, rng):
    """Node i with probability degrees[i] / sum over the list, by uniform
    pick plus acceptance against the maximum degree."""
    kmax = max(degrees[x] for x in node_list.items)
    while True:
        node = node_list.pick(rng.uniform())
        if rng.uniform() * kmax < degrees[node]:
            return node


def run_ga(net, cfg, rng=None):
    model = cfg.model
    if _is_sis(model):
        engine = GaSisEngine(net, cfg, rng=rng)
    else:
        engine = GaGenericEngine(net, cfg, rng=rng)
    return drive(engine, cfg)


def run_oga(net, cfg, rng=None):
    return drive(OgaEngine(net, cfg, rng=rng), cfg)
