"""QuickMergesort variants: partition, Mergesort one side into the other, loop.

Variants
--------
``qms``     Median-of-3 pivot, Mergesort with hard-coded base cases for n < 10.
``qmqs``    Median-of-3 pivot, Mergesort switching to median-of-3 quicksort
            after a fixed number of levels (base calls of about n**beta).
``momqms``  Pivot = median of the n/3 triple medians; worst case
            n log n + O(n) comparisons.
``hqms``    Median-of-3, but one MoM step after every pivot whose rank falls
            outside [delta*n, (1-delta)*n].
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from numba import njit

from .instrument import (
    ARMED,
    MOM_STEPS,
    PART_STEPS,
    CountingComparator,
    Metrics,
    as_keys,
    enter,
    leave,
    toggle_marks,
)
from .merge_core import HARDCODED_SMALL, BaseCasePolicy, base_sort, out_kernel
from .partition import (
    DEFAULT_BLOCK,
    block_partition_kernel,
    clever_quicksort_kernel,
    median3_kernel,
    new_workspace,
    three_way_kernel,
)
from .select import median_of_sqrt_kernel, mom_partition
from .smallsort import insertion_sort

MEDIAN_OF_3 = 0
MEDIAN_OF_SQRT_N = 1
MOM_OF_THIRDS = 2
HYBRID = 3

SMALLER_ALWAYS = 0
LARGER_WHEN_FEASIBLE = 1

LEFT = 0
RIGHT = 1

_PIVOTS = {"median3": MEDIAN_OF_3, "median_sqrt": MEDIAN_OF_SQRT_N, "mom": MOM_OF_THIRDS, "hybrid": HYBRID}
_SIDES = {"smaller": SMALLER_ALWAYS, "larger": LARGER_WHEN_FEASIBLE}

HARDCODED_CUTOFF = 10


@dataclass(frozen=True)
class SortConfig:
    variant: str = "qms"
    pivot: str = "median3"
    base_case: BaseCasePolicy = field(default_factory=lambda: BaseCasePolicy("hardcoded", HARDCODED_CUTOFF))
    beta: Fraction | float | None = None  # level-based base case when set
    delta: Fraction | float = Fraction(1, 16)
    mergesort_side: str = "larger"
    three_way: bool = False
    block: int = DEFAULT_BLOCK

    def __post_init__(self):
        if self.pivot not in _PIVOTS:
            raise ValueError(f"unknown pivot strategy {self.pivot!r}")
        if self.mergesort_side not in _SIDES:
            raise ValueError(f"unknown side policy {self.mergesort_side!r}")
        if self.beta is not None and not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")
        if not 0 < self.delta < Fraction(1, 2):
            raise ValueError("delta must lie in (0, 1/2)")
        if self.block < 1:
            raise ValueError("block must be positive")

    def with_(self, **kw) -> SortConfig:
        return replace(self, **kw)


def qms(**kw) -> SortConfig:
    return SortConfig(**kw)


def qmqs(beta=Fraction(1, 2), **kw) -> SortConfig:
    kw.setdefault("base_case", BaseCasePolicy("clever_quicksort"))
    return SortConfig(variant="qmqs", beta=beta, **kw)


def momqms(**kw) -> SortConfig:
    kw.setdefault("three_way", True)
    return SortConfig(variant="momqms", pivot="mom", **kw)


def hqms(delta=Fraction(1, 16), **kw) -> SortConfig:
    return SortConfig(variant="hqms", pivot="hybrid", delta=delta, **kw)


PRESETS = {"qms": qms, "qmqs": qmqs, "momqms": momqms, "hqms": hqms}


@njit(cache=True)
def choose_side_kernel(left, right, policy):
    if policy == LARGER_WHEN_FEASIBLE:
        if right > left:
            return RIGHT if left >= (right + 1) // 2 else LEFT
        return LEFT if right >= (left + 1) // 2 else RIGHT
    return LEFT if left <= right else RIGHT


@njit(cache=True)
def pivot_is_bad(rank, n, delta):
    return rank < delta * n or rank > (1.0 - delta) * n


@njit(cache=True)
def levels_for(n, beta):
    if beta <= 0.0:
        return -1
    x = (1.0 - beta) * np.log2(n)
    lv = int(np.ceil(x - 1e-9))
    return max(lv, 0)


@njit
def qms_kernel(a, tags, st, ws, lo, hi, pivot_kind, base_kind, thresh, beta, delta, side_policy, three_way):
    enter(st)
    begin = lo
    end = hi
    use_mom = False
    small = HARDCODED_CUTOFF if base_kind == HARDCODED_SMALL else 4
    armed = st[ARMED] != 0
    while end - begin > 1:
        n = end - begin
        if n < small:
            if base_kind == HARDCODED_SMALL:
                base_sort(a, tags, st, ws, begin, end, base_kind)
            else:
                insertion_sort(a, tags, st, begin, end)
            break
        st[PART_STEPS] += 1
        if pivot_kind == MOM_OF_THIRDS or (pivot_kind == HYBRID and use_mom):
            st[MOM_STEPS] += 1
            lt, gt = mom_partition(a, tags, st, begin, end, three_way)
            use_mom = False
        else:
            if pivot_kind == MEDIAN_OF_SQRT_N:
                pv = median_of_sqrt_kernel(a, tags, st, begin, end)
            else:
                pv = median3_kernel(a, tags, st, begin, begin + n // 2, end - 1)
            if three_way:
                lt, gt = three_way_kernel(a, tags, st, begin, end, pv)
            else:
                lt, gt = block_partition_kernel(a, tags, st, ws, begin, end, pv)
            if pivot_kind == HYBRID:
                use_mom = pivot_is_bad(lt - begin, n, delta)
        left = lt - begin
        right = end - gt
        side = choose_side_kernel(left, right, side_policy)
        if side == LEFT:
            lvl = levels_for(left, beta) if left > 0 else -1
            if tags is not None:
                if armed:
                    toggle_marks(tags, gt, end)
            out_kernel(a, tags, st, ws, begin, lt, gt, base_kind, thresh, lvl)
            if tags is not None:
                if armed:
                    toggle_marks(tags, gt, end)
            begin = gt
        else:
            lvl = levels_for(right, beta) if right > 0 else -1
            if tags is not None:
                if armed:
                    toggle_marks(tags, begin, lt)
            out_kernel(a, tags, st, ws, gt, end, begin, base_kind, thresh, lvl)
            if tags is not None:
                if armed:
                    toggle_marks(tags, begin, lt)
            end = lt
    leave(st)


# ---------------------------------------------------------------------------
# Python API


def choose_mergesort_side(left_size: int, right_size: int, policy: str = "larger") -> str:
    if left_size + right_size < 1:
        raise ValueError("empty partition")
    return "left" if choose_side_kernel(left_size, right_size, _SIDES[policy]) == LEFT else "right"


def hybrid_pivot_controller(prev_pivot_rank: int | None, n: int, delta=Fraction(1, 16)) -> str:
    """Strategy for the next partitioning step given the previous pivot's rank."""
    if prev_pivot_rank is None:
        return "median3"
    if not 0 <= prev_pivot_rank <= n:
        raise ValueError("rank outside 0..n")
    return "mom" if pivot_is_bad(prev_pivot_rank, n, float(delta)) else "median3"


def _kernel_args(cfg: SortConfig):
    beta = -1.0 if cfg.beta is None else float(cfg.beta)
    return (
        _PIVOTS[cfg.pivot],
        cfg.base_case.code,
        cfg.base_case.threshold,
        beta,
        float(cfg.delta),
        _SIDES[cfg.mergesort_side],
        bool(cfg.three_way),
    )


def quickmergesort(a: np.ndarray, cfg: SortConfig | None = None, cmp: CountingComparator | None = None, rng=None) -> Metrics:
    """Sort ``a[lo:hi]`` (int64, contiguous) in place and return its metrics."""
    cfg = cfg or qms()
    cmp = cmp if cmp is not None else CountingComparator()
    lo, hi = rng if rng is not None else (0, len(a))
    ws = new_workspace(cfg.block)
    cmp.start_clock()
    qms_kernel(a, cmp.tags, cmp.state, ws, lo, hi, *_kernel_args(cfg))
    cmp.stop_clock()
    cmp.check()
    return cmp.metrics()


def clever_quicksort(a: np.ndarray, rng=None, cmp: CountingComparator | None = None) -> Metrics:
    cmp = cmp if cmp is not None else CountingComparator()
    lo, hi = rng if rng is not None else (0, len(a))
    cmp.start_clock()
    clever_quicksort_kernel(a, cmp.tags, cmp.state, new_workspace(), lo, hi)
    cmp.stop_clock()
    cmp.check()
    return cmp.metrics()


def sort(seq, config: SortConfig | str | None = None, *, payload=None, sentinel: bool = False,
         cmp: CountingComparator | None = None) -> Metrics:
    """Sort ``seq`` in place by integer key.

    ``seq`` may be a contiguous int64 numpy array or a mutable sequence of
    integers.  ``payload`` (same length) is permuted along with the keys.
    With ``sentinel=True`` every comparison checks that no buffer element
    parked during merging takes part; a violation raises
    :class:`~quickmergesort.instrument.SentinelViolation`.
    """
    if isinstance(config, str):
        config = PRESETS[config]()
    cfg = config or qms()
    in_place = isinstance(seq, np.ndarray) and seq.dtype == np.int64 and seq.flags.c_contiguous
    a = seq if in_place else as_keys(seq)
    cmp = cmp if cmp is not None else CountingComparator()
    if payload is not None or sentinel:
        tags = np.arange(len(a), dtype=np.int64)
        if sentinel:
            cmp.arm(tags)
        else:
            cmp.attach(tags)
    m = quickmergesort(a, cfg, cmp)
    if not in_place:
        seq[:] = a.tolist() if not isinstance(seq, np.ndarray) else a
    if payload is not None:
        order = cmp.tags.tolist()
        payload[:] = [payload[i] for i in order]
    return m


def _counted_keys(values, counter):
    class Key:
        __slots__ = ("v",)

        def __init__(self, v):
            self.v = v

        def __lt__(self, other):
            counter[0] += 1
            return self.v < other.v

    return [Key(v) for v in values]


def std_sort(seq, cmp: CountingComparator | None = None, impl: str = "numpy") -> Metrics:
    """The platform sort counted through a comparator.

    ``impl="numpy"`` is numpy's default (introsort) sort on an object array,
    ``impl="list"`` is CPython's ``list.sort`` (Timsort).
    """
    if impl not in ("numpy", "list"):
        raise ValueError(f"unknown std implementation {impl!r}")
    cmp = cmp if cmp is not None else CountingComparator()
    counter = [0]
    keys = _counted_keys(seq.tolist() if isinstance(seq, np.ndarray) else list(seq), counter)
    if impl == "numpy":
        arr = np.empty(len(keys), dtype=object)
        arr[:] = keys
        t0 = time.perf_counter_ns()
        arr.sort(kind="quicksort")
        cmp.elapsed += time.perf_counter_ns() - t0
        keys = arr.tolist()
    else:
        t0 = time.perf_counter_ns()
        keys.sort()
        cmp.elapsed += time.perf_counter_ns() - t0
    cmp.state[0] += counter[0]
    seq[:] = [k.v for k in keys]
    return cmp.metrics()


def mom_fraction(cmp: CountingComparator) -> float:
    steps = int(cmp.state[PART_STEPS])
    return 0.0 if steps == 0 else int(cmp.state[MOM_STEPS]) / steps


def recursion_bound(n: int) -> float:
    return 2 * math.log2(max(n, 2)) + 16
