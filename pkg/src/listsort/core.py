"""Shared sort-key types, the counting comparison channel, and output verification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

# Orderings returned by counting_compare.
LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(slots=True)
class Key:
    """A 64-bit signed sort key plus the position it held in the input.

    Ordering is by `value` alone; `tag` exists so stability can be observed
    and is never compared. Key deliberately defines no rich comparisons:
    every ordering decision on the sorting hot path has to go through
    `counting_compare` so it gets counted.
    """

    value: int
    tag: int = 0


@dataclass(slots=True)
class Metrics:
    """Operation counters for one sort invocation.

    relinks counts node splices for linked sorts and element moves (array
    writes of a payload) for contiguous-buffer sorts. runs_created counts
    runs seeded by insertion, not runs produced by merging.
    """

    comparisons: int = 0
    relinks: int = 0
    runs_created: int = 0
    merges: int = 0
    capacity_used: int = 0


@dataclass(slots=True)
class SortReport:
    """One benchmark observation: which sort, on what input, at what cost.

    elapsed_ns covers the sort call only; generation and verification
    happen outside the timed region.
    """

    algorithm: str
    pattern: str
    n: int
    seed: int
    trial: int
    elapsed_ns: int
    metrics: Metrics


def counting_compare(a: Key, b: Key, metrics: Metrics) -> int:
    """Order two keys by value, charging exactly one comparison."""
    metrics.comparisons += 1
    if a.value < b.value:
        return LESS
    if a.value > b.value:
        return GREATER
    return EQUAL


@dataclass(slots=True)
class VerifyResult:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_sorted(input_keys, output_keys) -> VerifyResult:
    """Check that output is non-decreasing by value and a permutation of input.

    Permutation is multiset equality over (value, tag) pairs. On failure the
    reason names the first out-of-order index or the first multiset
    discrepancy encountered.
    """
    for i in range(len(output_keys) - 1):
        if output_keys[i].value > output_keys[i + 1].value:
            return VerifyResult(
                False,
                f"order violation at index {i}: "
                f"{output_keys[i].value} > {output_keys[i + 1].value}",
            )
    want = Counter((k.value, k.tag) for k in input_keys)
    got = Counter((k.value, k.tag) for k in output_keys)
    if want != got:
        for item in sorted(got):
            if got[item] != want[item]:
                return VerifyResult(
                    False,
                    f"multiset discrepancy: {item} appears {got[item]}x in "
                    f"output, {want[item]}x in input",
                )
        for item in sorted(want):
            if got[item] != want[item]:
                return VerifyResult(
                    False,
                    f"multiset discrepancy: {item} appears {got[item]}x in "
                    f"output, {want[item]}x in input",
                )
    return VerifyResult(True)


def verify_sorted_arrays(in_vals, out_vals, out_tags) -> VerifyResult:
    """Array-level verifier used by the benchmark harness.

    Tags are original positions, so `out_tags` being a permutation of
    0..n-1 with `out_vals == in_vals[out_tags]` proves multiset equality.
    """
    n = in_vals.size
    if out_vals.size != n or out_tags.size != n:
        return VerifyResult(False, "length mismatch")
    if n == 0:
        return VerifyResult(True)
    bad = np.nonzero(out_vals[:-1] > out_vals[1:])[0]
    if bad.size:
        i = int(bad[0])
        return VerifyResult(
            False,
            f"order violation at index {i}: "
            f"{int(out_vals[i])} > {int(out_vals[i + 1])}",
        )
    if not np.array_equal(np.sort(out_tags), np.arange(n, dtype=out_tags.dtype)):
        return VerifyResult(False, "output tags are not a permutation of input positions")
    if not np.array_equal(out_vals, in_vals[out_tags]):
        return VerifyResult(False, "output values do not match input values at their tags")
    return VerifyResult(True)
