import math

import pytest

from netspread.errors import TimeInPast
from netspread.event_queue import ATTACK, TRANSITION, Event, EventQueue, is_stale
from netspread.stochastics import RandomSource


def ev(t, kind=TRANSITION, node=0, stamp=0):
    return Event(t, kind, node, 0, 0, stamp)


def test_fifo_by_time():
    q = EventQueue()
    for t in (3.0, 1.0, 2.0):
        q.push(ev(t))
    assert [q.pop().time for _ in range(3)] == [1.0, 2.0, 3.0]
    assert q.pop() is None


def test_matches_sorted_oracle():
    rng = RandomSource(17)
    times = [rng.uniform() * 100 for _ in range(2000)]
    q = EventQueue()
    for t in times:
        q.push(ev(t))
    popped = []
    while True:
        e = q.pop()
        if e is None:
            break
        popped.append(e.time)
    assert popped == sorted(times)


def test_interleaved_push_pop_never_goes_back():
    rng = RandomSource(23)
    q = EventQueue()
    clock = 0.0
    for _ in range(50):
        q.push(ev(clock + rng.uniform()))
    for _ in range(3000):
        e = q.pop()
        if e is None:
            break
        assert e.time >= clock
        clock = e.time
        if rng.uniform() < 0.6:
            q.push(ev(clock + rng.uniform() * 5))


def test_time_in_past_rejected():
    q = EventQueue()
    q.push(ev(5.0))
    q.pop()
    with pytest.raises(TimeInPast):
        q.push(ev(4.999))
    q.push(ev(5.0))  # equal to last popped is fine


def test_nonfinite_times_rejected():
    q = EventQueue()
    with pytest.raises(TimeInPast):
        q.push(ev(math.inf))
    with pytest.raises(TimeInPast):
        q.push(ev(math.nan))


def test_peek_and_len():
    q = EventQueue()
    assert q.peek_time() == math.inf
    q.push(ev(2.0))
    q.push(ev(1.0))
    assert q.peek_time() == 1.0
    assert len(q) == 2


def test_peak_tracking():
    q = EventQueue()
    for t in (1.0, 2.0, 3.0):
        q.push(ev(t))
    q.pop()
    q.pop()
    q.push(ev(4.0))
    assert q.peak == 3


def test_events_snapshot():
    q = EventQueue()
    q.push(ev(1.0, node=1))
    q.push(ev(2.0, node=2))
    assert sorted(e.node for e in q.events()) == [1, 2]
    assert len(q) == 2  # snapshot does not consume


def test_staleness_by_stamp():
    e = ev(1.0, kind=ATTACK, node=3, stamp=5)
    assert not is_stale(e, 5)
    assert is_stale(e, 6)


def test_deterministic_under_equal_times():
    # equal times (probability zero in continuous time) resolve by the
    # remaining tuple fields, deterministically
    q = EventQueue()
    a = Event(1.0, TRANSITION, 10, 0, 0, 0)
    b = Event(1.0, TRANSITION, 20, 0, 0, 0)
    q.push(b)
    q.push(a)
    assert q.pop().node == 10
    assert q.pop().node == 20
