"""Run-pool sorting: sorted runs built by end insertion, collapsed by splice merging.

The sort keeps a pool of at most `capacity` sorted runs. Each incoming key
is probed against the newest run's head and tail; a key that extends
neither end opens a new run. Once the pool is full, the next rejected key
forces the whole pool to collapse, newest run first, into a single run,
and the key is then inserted again. A final collapse after the last
insertion leaves one run holding the sorted output.

Runs are singly linked node chains with head and tail pointers, so both
end insertions and merges move nodes by relinking; elements are never
copied. Merging threads one run's nodes into the other's chain. With the
small-into-big optimization enabled the shorter run is threaded into the
longer one, which reduces relinks; the output order and the comparison
count are provably identical either way, because both directions walk the
same comparison staircase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import EQUAL, LESS, Key, Metrics, counting_compare

__all__ = [
    "ExtendOutcome",
    "Node",
    "Run",
    "RunPool",
    "insert_element",
    "list_capacity",
    "list_sort",
    "merge_all",
    "merge_pair",
    "try_extend",
]


def list_capacity(n: int) -> int:
    """Run-pool capacity for an input of n keys.

    Piecewise in tt = n // 10000; fractional rungs round half-up and the
    result never drops below 2 (a pool of one run cannot absorb the
    reinserted key that triggers a collapse).
    """
    if n < 0:
        raise ValueError(f"element count must be non-negative, got {n}")
    tt = n // 10000
    if tt <= 0:
        raw = 15.0
    elif tt <= 10:
        raw = 5.0 * tt
    elif tt <= 50:
        raw = 50 + 3.0 * (tt - 10)
    elif tt <= 100:
        raw = 170 + 1.0 * (tt - 50)
    elif tt <= 500:
        raw = 220 + 0.45 * (tt - 100)
    elif tt <= 1000:
        raw = 400 + 0.15 * (tt - 500)
    elif tt <= 10000:
        raw = 475 + 0.032 * (tt - 1000)
    else:
        raw = 10000.0
    return max(2, math.floor(raw + 0.5))


class Node:
    __slots__ = ("key", "next")

    def __init__(self, key: Key, nxt: "Node | None" = None):
        self.key = key
        self.next = nxt


@dataclass(slots=True)
class Run:
    """A sorted chain of nodes, open for insertion at both ends.

    created_at is the run's position in the pool, starting at 1; a merge
    survivor keeps position 1. from_merge marks runs produced by merging
    rather than seeded by insertion.
    """

    head: Node
    tail: Node
    length: int
    created_at: int
    from_merge: bool = False

    @classmethod
    def seeded(cls, key: Key, created_at: int) -> "Run":
        node = Node(key)
        return cls(head=node, tail=node, length=1, created_at=created_at)

    def prepend(self, key: Key) -> None:
        self.head = Node(key, self.head)
        self.length += 1

    def append(self, key: Key) -> None:
        node = Node(key)
        self.tail.next = node
        self.tail = node
        self.length += 1

    def keys(self):
        node = self.head
        while node is not None:
            yield node.key
            node = node.next

    def values(self) -> list[int]:
        return [k.value for k in self.keys()]


class RunPool:
    """Ordered collection of at most `capacity` runs; the last run is current."""

    def __init__(self, capacity: int, optimize: bool = True, on_merge=None):
        if capacity < 2:
            raise ValueError(f"capacity must be at least 2, got {capacity}")
        self.capacity = capacity
        self.optimize = optimize
        self.on_merge = on_merge
        self.runs: list[Run] = []

    @property
    def current(self) -> Run:
        return self.runs[-1]

    def open_run(self, key: Key, metrics: Metrics) -> None:
        self.runs.append(Run.seeded(key, created_at=len(self.runs) + 1))
        metrics.runs_created += 1


class ExtendOutcome(Enum):
    PREPENDED = "prepended"
    APPENDED = "appended"
    REJECTED = "rejected"


def try_extend(run: Run, key: Key, metrics: Metrics) -> ExtendOutcome:
    """Extend a run at its head or tail, or reject the key.

    Keys below the head prepend; keys greater than or equal to the tail
    append, so equal keys keep arrival order. Costs at most two counted
    comparisons; the run is untouched on rejection.
    """
    if run.length == 0:
        raise ValueError("try_extend requires a non-empty run")
    if counting_compare(key, run.head.key, metrics) == LESS:
        run.prepend(key)
        metrics.relinks += 1
        return ExtendOutcome.PREPENDED
    if counting_compare(key, run.tail.key, metrics) != LESS:
        run.append(key)
        metrics.relinks += 1
        return ExtendOutcome.APPENDED
    return ExtendOutcome.REJECTED


def insert_element(pool: RunPool, key: Key, metrics: Metrics) -> None:
    """Place one key into the pool, collapsing the pool first if it is full."""
    if not pool.runs:
        pool.open_run(key, metrics)
        return
    if try_extend(pool.current, key, metrics) != ExtendOutcome.REJECTED:
        return
    if len(pool.runs) < pool.capacity:
        pool.open_run(key, metrics)
        return
    merge_all(pool, metrics)
    if try_extend(pool.current, key, metrics) != ExtendOutcome.REJECTED:
        return
    pool.open_run(key, metrics)


def merge_pair(a: Run, b: Run, metrics: Metrics, optimize: bool = True) -> Run:
    """Merge two sorted runs into one by relinking nodes.

    `a` must be the earlier-created run; on equal values its element comes
    first. One run's chain stays in place as the base and the other run's
    nodes are threaded into it: the current run by default, the shorter of
    the two when `optimize` is set. Each threaded node costs one relink;
    a remainder chain attached after the base is exhausted costs one.
    """
    if optimize and b.length > a.length:
        base, threaded, threaded_is_b = b, a, False
    else:
        base, threaded, threaded_is_b = a, b, True
    head = base.head
    tail = base.tail
    prev: Node | None = None
    cur: Node | None = base.head
    t: Node | None = threaded.head
    while t is not None:
        if cur is None:
            # Base exhausted: the rest of the threaded chain attaches whole.
            prev.next = t
            tail = threaded.tail
            metrics.relinks += 1
            break
        c = counting_compare(t.key, cur.key, metrics)
        if c == LESS or (c == EQUAL and not threaded_is_b):
            nxt = t.next
            t.next = cur
            if prev is None:
                head = t
            else:
                prev.next = t
            prev = t
            metrics.relinks += 1
            t = nxt
        else:
            prev = cur
            cur = cur.next
    return Run(
        head=head,
        tail=tail,
        length=a.length + b.length,
        created_at=a.created_at,
        from_merge=True,
    )


def merge_all(pool: RunPool, metrics: Metrics) -> None:
    """Collapse the pool to a single run, folding from the last run backwards."""
    if pool.on_merge is not None:
        pool.on_merge(pool)
    while len(pool.runs) > 1:
        b = pool.runs.pop()
        a = pool.runs[-1]
        pool.runs[-1] = merge_pair(a, b, metrics, pool.optimize)
        metrics.merges += 1
    if pool.runs:
        pool.runs[0].created_at = 1


def list_sort(
    keys,
    capacity_override: int | None = None,
    *,
    optimize: bool = True,
    on_merge=None,
) -> tuple[list[Key], Metrics]:
    """Sort a sequence of keys through the run pool.

    Capacity comes from list_capacity(n) unless overridden. Returns the
    sorted keys and the populated metrics. The sort is stable: equal values
    keep their input order, observable through tags.
    """
    n = len(keys)
    capacity = list_capacity(n) if capacity_override is None else capacity_override
    metrics = Metrics(capacity_used=capacity)
    pool = RunPool(capacity, optimize=optimize, on_merge=on_merge)
    for key in keys:
        insert_element(pool, key, metrics)
    if len(pool.runs) > 1:
        merge_all(pool, metrics)
    out = list(pool.runs[0].keys()) if pool.runs else []
    return out, metrics
