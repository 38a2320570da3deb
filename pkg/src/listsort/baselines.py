"""The five instrumented comparison sorts the run-pool sort is measured against.

Each wrapper accepts a sequence of Key and returns (sorted keys, metrics),
delegating the actual work to the compiled kernels so the same code is
exercised by unit tests and by timed benchmark runs.

Implementation choices that matter for the benchmarks:

- quick_sort partitions around the last element on purpose, so sorted
  inputs degrade to n(n-1)/2 comparisons; a randomized or median-of-three
  pivot would hide exactly the behavior the harness is there to show. It
  iterates with an explicit stack, always deferring the larger side, so
  those degenerate inputs cannot exhaust call depth.
- merge_sort_array is top-down over one contiguous buffer with a single
  half-size auxiliary buffer; stable.
- merge_sort_linked splices nodes bottom-up and never copies elements;
  stable.
- bubble_sort stops after the first pass that swaps nothing, and
  selection_sort performs exactly n(n-1)/2 comparisons on every input.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .core import Key, Metrics


def _run(algo: str, keys) -> tuple[list[Key], Metrics]:
    n = len(keys)
    vals = np.fromiter((k.value for k in keys), dtype=np.int64, count=n)
    tags = np.fromiter((k.tag for k in keys), dtype=np.int64, count=n)
    out_vals, out_tags, counters = kernels.sort_arrays(algo, vals, tags)
    out = [Key(int(v), int(t)) for v, t in zip(out_vals, out_tags)]
    return out, kernels.metrics_from_counters(counters)


def bubble_sort(keys) -> tuple[list[Key], Metrics]:
    """Adjacent-swap sort with early exit on a swap-free pass."""
    return _run("bubble", keys)


def selection_sort(keys) -> tuple[list[Key], Metrics]:
    """Repeatedly select the minimum of the unsorted suffix."""
    return _run("selection", keys)


def insertion_sort(keys) -> tuple[list[Key], Metrics]:
    """Insert each key into its place in the sorted prefix. Stable."""
    return _run("insertion", keys)


def quick_sort(keys) -> tuple[list[Key], Metrics]:
    """Last-element-pivot quicksort over a contiguous buffer."""
    return _run("quick", keys)


def merge_sort_array(keys) -> tuple[list[Key], Metrics]:
    """Top-down mergesort over a contiguous buffer. Stable."""
    return _run("mergearr", keys)


def merge_sort_linked(keys) -> tuple[list[Key], Metrics]:
    """Bottom-up splice mergesort over a linked node sequence. Stable."""
    return _run("mergelink", keys)
