"""Run-pool list sort, instrumented baseline sorts, and a benchmark harness."""

from .baselines import (
    bubble_sort,
    insertion_sort,
    merge_sort_array,
    merge_sort_linked,
    quick_sort,
    selection_sort,
)
from .core import Key, Metrics, SortReport, counting_compare, verify_sorted
from .datagen import Pattern, generate, generate_values, parse_pattern
from .listsort import list_capacity, list_sort

__version__ = "0.1.0"

__all__ = [
    "Key",
    "Metrics",
    "Pattern",
    "SortReport",
    "bubble_sort",
    "counting_compare",
    "generate",
    "generate_values",
    "insertion_sort",
    "list_capacity",
    "list_sort",
    "merge_sort_array",
    "merge_sort_linked",
    "parse_pattern",
    "quick_sort",
    "selection_sort",
    "verify_sorted",
]
