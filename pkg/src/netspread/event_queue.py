"""Binary-heap event queue with lazy invalidation.

Attack events carry the attacker's attempt sequence number at generation
time; when a temporal edge addition replaces a node's pending attack, the
node's counter advances and the superseded entry is simply skipped when it
surfaces, instead of being deleted in place. This keeps all queue
operations O(log n).

Events are stored as flat time-first tuples so the heap orders them with
no wrapper objects on the hot path; `Event` is the named view used by
tests and the invariant checker. Ties in time (probability zero in
continuous time) resolve deterministically by the remaining fields.
"""

import math
from collections import namedtuple
from heapq import heappop, heappush

from .errors import TimeInPast

TRANSITION = 0
ATTACK = 1

# Transition: node = affected node, target = new state index, rule = node-rule
# choice, stamp = node epoch at generation time.
# Attack: node = source, target = attacked node, rule = edge-rule index,
# stamp = source attempt_seq at generation time.
Event = namedtuple("Event", ["time", "kind", "node", "target", "rule", "stamp"])


class EventQueue:
    __slots__ = ("_heap", "_last_popped", "peak")

    def __init__(self):
        self._heap = []
        self._last_popped = 0.0
        self.peak = 0

    def __len__(self):
        return len(self._heap)

    def push(self, event):
        t = event[0]
        if not math.isfinite(t) or t < self._last_popped:
            raise TimeInPast(
                f"event time {t} is before the last popped time {self._last_popped}"
            )
        heap = self._heap
        heappush(heap, event)
        if len(heap) > self.peak:
            self.peak = len(heap)

    def pop(self):
        """Earliest event, or None when empty (normal termination signal)."""
        heap = self._heap
        if not heap:
            return None
        event = heappop(heap)
        self._last_popped = event[0]
        return event

    def peek_time(self):
        return self._heap[0][0] if self._heap else math.inf

    def events(self):
        """Snapshot of queue contents as named events, unordered."""
        return [Event._make(e) for e in self._heap]


def is_stale(event, attempt_seq):
    """An attack is stale iff its stamp no longer matches the source node's
    current attempt sequence number."""
    return event.stamp != attempt_seq
