"""QuickMergesort family: internal sorting with about n log n comparisons."""

from .driver import (
    PRESETS,
    SortConfig,
    choose_mergesort_side,
    clever_quicksort,
    hqms,
    hybrid_pivot_controller,
    momqms,
    qmqs,
    qms,
    quickmergesort,
    sort,
    std_sort,
)
from .instrument import CountingComparator, Element, Metrics, SentinelViolation
from .merge_core import BaseCasePolicy, x_levels

__all__ = [
    "BaseCasePolicy",
    "CountingComparator",
    "Element",
    "Metrics",
    "PRESETS",
    "SentinelViolation",
    "SortConfig",
    "choose_mergesort_side",
    "clever_quicksort",
    "hqms",
    "hybrid_pivot_controller",
    "momqms",
    "qmqs",
    "qms",
    "quickmergesort",
    "sort",
    "std_sort",
    "x_levels",
]
