"""Contact networks: adjacency storage, edge-list I/O, and the
configuration-model generator with truncated power-law degrees.

Adjacency is stored as plain per-node neighbor arrays (lists), which keeps
the simulation hot path (indexed neighbor access) cheap. Edge removal is
O(k) via swap-with-last; temporal streams change one edge at a time, so
that cost is acceptable.
"""

import bisect

import numpy as np

from .errors import (
    AsymmetricWeight,
    DegenerateParameters,
    EdgeAbsent,
    EdgeExists,
    IsolatedNode,
    MalformedLine,
    NonPositiveWeight,
    SelfLoop,
    SlotOutOfRange,
)


class Network:
    """Undirected simple graph, optionally edge-weighted.

    Invariants: no self-loops, no duplicate edges, symmetric adjacency
    (with equal weights on both directions). For unweighted networks
    weight_sum[v] == degree(v).
    """

    def __init__(self, n, weighted=False):
        self.n = n
        self.weighted = weighted
        self.adjacency = [[] for _ in range(n)]
        self.weights = [[] for _ in range(n)] if weighted else None
        self.weight_sum = [0.0] * n
        self._prefix = [None] * n if weighted else None

    # --- queries ---

    def degree(self, node):
        return len(self.adjacency[node])

    def edge_count(self):
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, n1, n2):
        return n2 in self.adjacency[n1]

    def neighbor_at(self, node, slot):
        adj = self.adjacency[node]
        if not 0 <= slot < len(adj):
            raise SlotOutOfRange(f"node {node} has degree {len(adj)}, slot {slot} out of range")
        return adj[slot]

    def weighted_neighbor_slot(self, node, u):
        """Slot chosen proportionally to edge weight, O(log k) via prefix sums."""
        k = len(self.adjacency[node])
        if k == 0:
            raise IsolatedNode(f"node {node} has no neighbors")
        prefix = self._prefix[node]
        if prefix is None:
            prefix = np.cumsum(self.weights[node]).tolist()
            self._prefix[node] = prefix
        slot = bisect.bisect_right(prefix, u * prefix[-1])
        return k - 1 if slot >= k else slot

    def copy(self):
        """Independent copy; needed when replicating temporal runs, which
        mutate the topology they own."""
        dup = Network(self.n, weighted=self.weighted)
        dup.adjacency = [list(a) for a in self.adjacency]
        if self.weighted:
            dup.weights = [list(w) for w in self.weights]
        dup.weight_sum = list(self.weight_sum)
        return dup

    # --- mutation ---

    def add_edge(self, n1, n2, w=1.0):
        if n1 == n2:
            raise SelfLoop(f"self-loop at node {n1}")
        if n2 in self.adjacency[n1]:
            raise EdgeExists(f"edge ({n1},{n2}) already present")
        if self.weighted and not w > 0.0:
            raise NonPositiveWeight(f"edge ({n1},{n2}) weight {w} must be positive")
        for a, b in ((n1, n2), (n2, n1)):
            self.adjacency[a].append(b)
            if self.weighted:
                self.weights[a].append(w)
                self.weight_sum[a] += w
                self._prefix[a] = None
            else:
                self.weight_sum[a] += 1.0

    def remove_edge(self, n1, n2):
        for a, b in ((n1, n2), (n2, n1)):
            adj = self.adjacency[a]
            try:
                slot = adj.index(b)
            except ValueError:
                raise EdgeAbsent(f"edge ({n1},{n2}) not present") from None
            adj[slot] = adj[-1]
            adj.pop()
            if self.weighted:
                ws = self.weights[a]
                w = ws[slot]
                ws[slot] = ws[-1]
                ws.pop()
                self.weight_sum[a] -= w
                self._prefix[a] = None
            else:
                self.weight_sum[a] -= 1.0

    # --- I/O ---

    def to_edge_list(self):
        """Each undirected edge once, src < dst."""
        lines = []
        for a in range(self.n):
            adj = self.adjacency[a]
            for slot, b in enumerate(adj):
                if a < b:
                    if self.weighted:
                        lines.append(f"{a},{b},{self.weights[a][slot]}")
                    else:
                        lines.append(f"{a},{b}")
        return "\n".join(lines) + ("\n" if lines else "")


def from_edge_list(lines):
    """Build a Network from `src,dst[,weight]` lines; `#` starts a comment."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    edges = {}
    weighted = False
    max_id = -1
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            if len(parts) == 2:
                a, b, w = int(parts[0]), int(parts[1]), 1.0
            elif len(parts) == 3:
                a, b, w = int(parts[0]), int(parts[1]), float(parts[2])
                weighted = True
            else:
                raise ValueError("expected 2 or 3 comma-separated fields")
            if a < 0 or b < 0:
                raise ValueError("node ids must be non-negative")
        except ValueError as exc:
            raise MalformedLine(f"edge list line {lineno}: {exc}: {raw!r}") from None
        if a == b:
            raise SelfLoop(f"edge list line {lineno}: self-loop at node {a}")
        if len(parts) == 3 and not w > 0.0:
            raise NonPositiveWeight(f"edge list line {lineno}: weight {w} must be positive")
        key = (a, b) if a < b else (b, a)
        if key in edges:
            if edges[key] != w:
                raise AsymmetricWeight(
                    f"edge list line {lineno}: edge {key} listed twice"
                    f" with weights {edges[key]} and {w}"
                )
        else:
            edges[key] = w
        max_id = max(max_id, a, b)
    net = Network(max_id + 1, weighted=weighted)
    for (a, b), w in edges.items():
        net.add_edge(a, b, w)
    return net


def sample_powerlaw_degrees(n, gamma, kmin, kmax, gen):
    """Degrees sampled i.i.d. from P(k) proportional to k^-gamma on
    [kmin, kmax]; the total is made even by resampling the last node."""
    ks = np.arange(kmin, kmax + 1)
    pmf = ks.astype(float) ** -gamma
    pmf /= pmf.sum()
    degrees = gen.choice(ks, size=n, p=pmf)
    while degrees.sum() % 2 != 0:
        degrees[-1] = gen.choice(ks, p=pmf)
    return degrees


def configuration_model(n, gamma, kmin, kmax, seed):
    """Erased configuration model with truncated power-law degrees.

    Stub matching, then self-loops dropped and multi-edges collapsed.
    Deterministic for a fixed seed.
    """
    if n < 2 or not gamma > 1 or not 1 <= kmin <= kmax or kmax >= n:
        raise DegenerateParameters(
            f"need n >= 2, gamma > 1, 1 <= kmin <= kmax < n;"
            f" got n={n}, gamma={gamma}, kmin={kmin}, kmax={kmax}"
        )
    gen = np.random.Generator(np.random.Philox(key=np.array([seed, 0], dtype=np.uint64)))
    degrees = sample_powerlaw_degrees(n, gamma, kmin, kmax, gen)
    stubs = np.repeat(np.arange(n), degrees)
    gen.shuffle(stubs)
    src = stubs[0::2]
    dst = stubs[1::2]
    keep = src != dst
    lo = np.minimum(src[keep], dst[keep])
    hi = np.maximum(src[keep], dst[keep])
    pairs = np.unique(np.stack([lo, hi], axis=1), axis=0)
    net = Network(n)
    adjacency = net.adjacency
    for a, b in pairs.tolist():
        adjacency[a].append(b)
        adjacency[b].append(a)
    net.weight_sum = [float(len(a)) for a in adjacency]
    return net
