"""Rejection-based event-driven simulation.

One event queue holds two kinds of events. Transition events fire node
rules; because every attackable state must be residence-deterministic for
this engine (checked up front), the exit time of any state that emits
attacks is known the moment the node enters it. Attack events are
generated one at a time per attacking node at the full rate
contact_rate * weight_sum, and attempts that provably cannot succeed
(target ineligible for longer than the attempt time) are rejected early,
before ever touching the queue. Attempts invalidated by later state
changes are rejected late, when they surface.

Temporal edge streams are pulled in timestamp order: all changes due
before the next queued event are applied first. Edge removals rely on an
edge-presence check at pop time; additions may replace a node's pending
attack with an earlier one, invalidating the old entry lazily via the
per-node attempt sequence number.
"""

import math
from math import log1p

from .errors import (
    CorruptState,
    EdgeAbsent,
    ModelNotRejectionSimulable,
    OutOfOrderStream,
)
from .event_queue import ATTACK, TRANSITION, EventQueue
from .simcore import (
    APPLIED,
    FINISHED,
    LATE_REJECT,
    STALE_SKIP,
    RunStats,
    build_initial_states,
    drive,
    make_rng,
)

INF = math.inf

ADD = "add"
REMOVE = "remove"


class RejectionEngine:

    def __init__(self, net, cfg, rng=None, temporal=None):
        model = cfg.model
        if not model.rejection_simulable:
            raise ModelNotRejectionSimulable(
                "some state emits attacks but can be left by an edge rule;"
                " its residence time is not known on entry, use the generic"
                " Gillespie engine instead"
            )
        self.net = net
        self.cfg = cfg
        self.model = model
        self.rng = rng if rng is not None else make_rng(cfg)
        self.clock = 0.0
        self.horizon = cfg.horizon
        self.queue = EventQueue()
        self.stats = RunStats()
        self.event_log = [] if cfg.log_events else None

        n = net.n
        self.state = build_initial_states(model, n, cfg.init, self.rng)
        self.residence_end = [INF] * n
        self.attempt_seq = [0] * n
        self.epoch = [0] * n  # bumps on every state change
        self.next_attempt = [INF] * n
        self.counts = [0] * model.m
        for s in self.state:
            self.counts[s] += 1

        self._edge_targets = [(model.index[r.target_from], model.index[r.target_to])
                              for r in model.edge_rules]

        self._changes = list(temporal) if temporal else []
        for i in range(1, len(self._changes)):
            if self._changes[i][0] < self._changes[i - 1][0]:
                raise OutOfOrderStream("temporal change times must be nondecreasing")
        self._change_pos = 0
        self.temporal_mode = bool(self._changes)

        # two passes: all residence ends must exist before attacks are drawn
        exit_rate = model.exit_rate
        contact_rate = model.contact_rate
        state = self.state
        for node in range(n):
            if exit_rate[state[node]] > 0.0:
                self._gen_transition(node, 0.0)
        for node in range(n):
            if contact_rate[state[node]] > 0.0:
                self._gen_attack(node, 0.0)

    # --- event generation ---

    def _gen_transition(self, node, now):
        model = self.model
        s = self.state[node]
        er = model.exit_rate[s]
        t = now - log1p(-self.rng.uniform()) / er
        choices = model.node_choices[s]
        if len(choices) == 1:
            to = choices[0][0]
        else:
            u = self.rng.uniform() * er
            acc = 0.0
            to = choices[-1][0]
            for b, rate in choices:
                acc += rate
                if u < acc:
                    to = b
                    break
        if model.residence_det[s]:
            self.residence_end[node] = t
        self.queue.push((t, TRANSITION, node, to, s, self.epoch[node]))

    def _gen_attack(self, node, now):
        """Draw the node's next attack attempt, early-rejecting attempts whose
        target is provably ineligible until after the attempt time."""
        net = self.net
        model = self.model
        rng_uniform = self.rng.uniform
        state = self.state
        s = state[node]
        cr = model.contact_rate[s]
        rate = cr * net.weight_sum[node]
        self.next_attempt[node] = INF
        if not rate > 0.0:
            return
        rend = self.residence_end[node]
        if rend > self.horizon:
            # attempts past the horizon can never be applied; capping here
            # also terminates generation for never-recovering attackers
            rend = self.horizon
        adj = net.adjacency[node]
        rules = model.contact_rules[s]
        single_rule = len(rules) == 1
        if single_rule:
            tf, _, _, ridx = rules[0]
        weighted = net.weighted
        residence_det = model.residence_det
        residence_end = self.residence_end
        k = len(adj)
        t = now
        early = 0
        while True:
            t -= log1p(-rng_uniform()) / rate
            if rend < t:
                break  # attacker leaves its state first; no event
            if weighted:
                slot = net.weighted_neighbor_slot(node, rng_uniform())
            else:
                slot = int(rng_uniform() * k)
                if slot >= k:
                    slot = k - 1
            target = adj[slot]
            if not single_rule:
                u = rng_uniform() * cr
                acc = 0.0
                tf, _, _, ridx = rules[-1]
                for cand in rules:
                    acc += cand[2]
                    if u < acc:
                        tf, _, _, ridx = cand
                        break
            ts = state[target]
            if ts != tf and residence_det[ts] and residence_end[target] > t:
                early += 1
                continue  # early reject: target stays ineligible past t
            self.queue.push((t, ATTACK, node, target, ridx, self.attempt_seq[node]))
            self.next_attempt[node] = t
            break
        self.stats.early_rejects += early

    def _apply_state_change(self, node, new_state, t):
        old = self.state[node]
        self.counts[old] -= 1
        self.counts[new_state] += 1
        self.state[node] = new_state
        self.epoch[node] += 1
        self.attempt_seq[node] += 1  # any pending attack from the old state dies
        self.residence_end[node] = INF
        self.next_attempt[node] = INF
        model = self.model
        if model.exit_rate[new_state] > 0.0:
            self._gen_transition(node, t)  # must come first: sets residence_end
        if model.contact_rate[new_state] > 0.0:
            self._gen_attack(node, t)

    # --- temporal stream ---

    def apply_temporal_change(self, change):
        t, op, n1, n2 = change[0], change[1], change[2], change[3]
        if t < self.clock:
            raise OutOfOrderStream(
                f"temporal change at {t} is before the current clock {self.clock}"
            )
        net = self.net
        if op == REMOVE:
            net.remove_edge(n1, n2)
            return
        w = change[4] if len(change) > 4 and change[4] is not None else 1.0
        net.add_edge(n1, n2, w)
        model = self.model
        link_w = w if net.weighted else 1.0
        for node, other in ((n1, n2), (n2, n1)):
            s = self.state[node]
            cr = model.contact_rate[s]
            if not cr > 0.0:
                continue
            cand = t - log1p(-self.rng.uniform()) / (cr * link_w)
            if self.residence_end[node] < cand or cand >= self.next_attempt[node]:
                continue  # pending schedule already covers this window
            rules = model.contact_rules[s]
            if len(rules) == 1:
                ridx = rules[0][3]
            else:
                u = self.rng.uniform() * cr
                acc = 0.0
                ridx = rules[-1][3]
                for cand_rule in rules:
                    acc += cand_rule[2]
                    if u < acc:
                        ridx = cand_rule[3]
                        break
            self.attempt_seq[node] += 1  # invalidate the superseded attempt
            self.queue.push((cand, ATTACK, node, other, ridx, self.attempt_seq[node]))
            self.next_attempt[node] = cand

    def _pull_due_changes(self):
        changes = self._changes
        pos = self._change_pos
        queue = self.queue
        horizon = self.horizon
        while pos < len(changes):
            t = changes[pos][0]
            if t > horizon or t > queue.peek_time():
                break
            self.apply_temporal_change(changes[pos])
            pos += 1
        self._change_pos = pos

    def reinit_attacks(self):
        """Drop every pending attack and redraw from the current clock;
        escape hatch after massive batch edge changes."""
        model = self.model
        state = self.state
        for node in range(self.net.n):
            self.attempt_seq[node] += 1
            self.next_attempt[node] = INF
            if model.contact_rate[state[node]] > 0.0:
                self._gen_attack(node, self.clock)

    # --- main loop ---

    def step(self):
        if self._change_pos < len(self._changes):
            self._pull_due_changes()
        e = self.queue.pop()
        if e is None:
            return FINISHED
        t, kind, node, target, rule, stamp = e
        if t > self.horizon:
            self.clock = self.horizon
            return FINISHED
        self.clock = t
        stats = self.stats
        if kind == TRANSITION:
            if stamp != self.epoch[node] or self.cfg.freeze_states:
                stats.stale_skips += 1
                return STALE_SKIP
            self._apply_state_change(node, target, t)
            stats.applied_events += 1
            if self.event_log is not None:
                names = self.model.state_names
                self.event_log.append(
                    (t, "transition", node, "", f"{names[rule]}->{names[target]}"))
            return APPLIED
        # attack; node is the source
        if stamp != self.attempt_seq[node]:
            stats.stale_skips += 1
            return STALE_SKIP
        self.next_attempt[node] = INF
        if self.temporal_mode and target not in self.net.adjacency[node]:
            stats.late_rejects += 1
            self._gen_attack(node, t)
            return LATE_REJECT
        tf, tt = self._edge_targets[rule]
        if self.cfg.check_invariants:
            s_src = self.state[node]
            if all(r[3] != rule for r in self.model.contact_rules[s_src]):
                raise CorruptState(
                    f"attack from node {node} in state {s_src} via rule {rule}"
                )
        if self.cfg.freeze_states or self.state[target] != tf:
            stats.late_rejects += 1
            if self.event_log is not None:
                r = self.model.edge_rules[rule]
                self.event_log.append(
                    (t, "late_reject", node, target,
                     f"{r.target_from}+{r.contact}->{r.target_to}+{r.contact}"))
            self._gen_attack(node, t)
            return LATE_REJECT
        self._apply_state_change(target, tt, t)
        self._gen_attack(node, t)
        stats.applied_events += 1
        if self.event_log is not None:
            r = self.model.edge_rules[rule]
            self.event_log.append(
                (t, "attack", node, target,
                 f"{r.target_from}+{r.contact}->{r.target_to}+{r.contact}"))
        return APPLIED

    # --- consistency checks (test mode) ---

    def check_invariants(self):
        model = self.model
        n = self.net.n
        if sum(self.counts) != n:
            raise CorruptState("state counts do not sum to the node count")
        pending_trans = [0] * n
        pending_attack = [0] * n
        for e in self.queue.events():
            if e.kind == TRANSITION:
                if e.stamp == self.epoch[e.node]:
                    pending_trans[e.node] += 1
                    if model.residence_det[self.state[e.node]] and \
                            e.time != self.residence_end[e.node]:
                        raise CorruptState(
                            f"node {e.node}: transition time {e.time} !="
                            f" residence end {self.residence_end[e.node]}")
            else:
                if e.stamp == self.attempt_seq[e.node]:
                    pending_attack[e.node] += 1
                    if not e.time < self.residence_end[e.node]:
                        raise CorruptState(
                            f"node {e.node}: attack at {e.time} not before"
                            f" residence end {self.residence_end[e.node]}")
        for node in range(n):
            s = self.state[node]
            want = 1 if model.exit_rate[s] > 0.0 else 0
            if pending_trans[node] != want:
                raise CorruptState(
                    f"node {node} in state {s} has {pending_trans[node]}"
                    f" pending transitions, expected {want}")
            if pending_attack[node] > 1 or \
                    (pending_attack[node] == 1 and not model.contact_rate[s] > 0.0):
                raise CorruptState(
                    f"node {node} in state {s} has {pending_attack[node]}"
                    " pending attacks")


def init(net, cfg, rng=None, temporal=None):
    return RejectionEngine(net, cfg, rng=rng, temporal=temporal)


def run(net, cfg, rng=None, temporal=None):
    engine = RejectionEngine(net, cfg, rng=rng, temporal=temporal)
    return drive(engine, cfg)
