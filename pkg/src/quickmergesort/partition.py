"""Partitioning schemes and pivot sampling.

Two-way partitions return ``(lt_end, gt_begin)`` with the pivot at ``lt_end``
and ``gt_begin == lt_end + 1``; three-way partitions return the bounds of the
block of elements equal to the pivot.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from .instrument import CountingComparator, cmp3, enter, leave, less, swap
from .select import _three_way_phys, median_of_sqrt_kernel
from .smallsort import insertion_sort

DEFAULT_BLOCK = 128
STACK_SLOTS = 256
QUICKSORT_CUTOFF = 16


class PartitionResult(NamedTuple):
    lt_end: int
    gt_begin: int
    left_size: int
    right_size: int


def new_workspace(block: int = DEFAULT_BLOCK) -> np.ndarray:
    """Scratch words for one sort: explicit quicksort stack plus two offset blocks."""
    return np.zeros(STACK_SLOTS + 2 * block, dtype=np.int64)


@njit(cache=True)
def median3_kernel(a, tags, st, i, j, k):
    if less(a, tags, st, i, j):
        if less(a, tags, st, j, k):
            return j
        return k if less(a, tags, st, i, k) else i
    if less(a, tags, st, i, k):
        return i
    return k if less(a, tags, st, j, k) else j


@njit(cache=True)
def block_partition_kernel(a, tags, st, ws, lo, hi, pv):
    """Hoare partition with buffered misplaced offsets (BlockQuicksort style).

    Every non-pivot element is compared with the pivot exactly once.
    """
    if pv != lo:
        swap(a, tags, st, lo, pv)
    B = (ws.shape[0] - STACK_SLOTS) // 2
    offl = STACK_SLOTS
    offr = STACK_SLOTS + B
    begin = lo + 1
    last = hi - 1
    num_l = 0
    num_r = 0
    start_l = 0
    start_r = 0
    while last - begin + 1 > 2 * B:
        if num_l == 0:
            start_l = 0
            for j in range(B):
                ws[offl + num_l] = j
                if not less(a, tags, st, begin + j, lo):
                    num_l += 1
        if num_r == 0:
            start_r = 0
            for j in range(B):
                ws[offr + num_r] = j
                if not less(a, tags, st, lo, last - j):
                    num_r += 1
        num = min(num_l, num_r)
        for j in range(num):
            swap(a, tags, st, begin + ws[offl + start_l + j], last - ws[offr + start_r + j])
        num_l -= num
        num_r -= num
        start_l += num
        start_r += num
        if num_l == 0:
            begin += B
        if num_r == 0:
            last -= B

    # final phase: the rest splits into one left and one right block
    rest = last - begin + 1
    if num_l == 0 and num_r == 0:
        shift_l = rest // 2
        shift_r = rest - shift_l
    elif num_l == 0:
        shift_r = B
        shift_l = rest - B
    else:
        shift_l = B
        shift_r = rest - B
    if num_l == 0:
        start_l = 0
        for j in range(shift_l):
            ws[offl + num_l] = j
            if not less(a, tags, st, begin + j, lo):
                num_l += 1
    if num_r == 0:
        start_r = 0
        for j in range(shift_r):
            ws[offr + num_r] = j
            if not less(a, tags, st, lo, last - j):
                num_r += 1
    num = min(num_l, num_r)
    for j in range(num):
        swap(a, tags, st, begin + ws[offl + start_l + j], last - ws[offr + start_r + j])
    num_l -= num
    num_r -= num
    start_l += num
    start_r += num

    if num_l > 0:
        # misplaced (>= pivot) elements go to the back of the left block
        p = begin + shift_l - 1
        for j in range(num_l - 1, -1, -1):
            x = begin + ws[offl + start_l + j]
            if x != p:
                swap(a, tags, st, x, p)
            p -= 1
        mid = p + 1
    elif num_r > 0:
        p = last - shift_r + 1
        for j in range(num_r - 1, -1, -1):
            x = last - ws[offr + start_r + j]
            if x != p:
                swap(a, tags, st, x, p)
            p += 1
        mid = p
    else:
        mid = begin + shift_l
    if mid - 1 != lo:
        swap(a, tags, st, lo, mid - 1)
    return mid - 1, mid


@njit(cache=True)
def lomuto_mo3_kernel(a, tags, st, lo, hi):
    m = median3_kernel(a, tags, st, lo, lo + (hi - lo) // 2, hi - 1)
    last = hi - 1
    if m != last:
        swap(a, tags, st, m, last)
    i = lo
    for j in range(lo, last):
        if less(a, tags, st, j, last):
            if i != j:
                swap(a, tags, st, i, j)
            i += 1
    if i != last:
        swap(a, tags, st, i, last)
    return i, i + 1


@njit(cache=True)
def three_way_kernel(a, tags, st, lo, hi, pv):
    lt, gt = _three_way_phys(a, tags, st, lo, hi, pv)
    return lo + lt, lo + gt


@njit(cache=True)
def clever_quicksort_kernel(a, tags, st, ws, lo, hi):
    """Median-of-3 quicksort with an explicit stack; ranges below the cutoff
    are left for one final insertion sort pass over the whole range."""
    sp = 0
    if hi - lo >= QUICKSORT_CUTOFF:
        ws[0] = lo
        ws[1] = hi
        sp = 1
        enter(st)
    while sp > 0:
        sp -= 1
        leave(st)
        l = ws[2 * sp]
        r = ws[2 * sp + 1]
        while r - l >= QUICKSORT_CUTOFF:
            p, _ = lomuto_mo3_kernel(a, tags, st, l, r)
            if p - l < r - p - 1:
                big_l, big_r, l, r = p + 1, r, l, p
            else:
                big_l, big_r, r = l, p, r
                l = p + 1
            if big_r - big_l >= QUICKSORT_CUTOFF:
                ws[2 * sp] = big_l
                ws[2 * sp + 1] = big_r
                sp += 1
                enter(st)
    insertion_sort(a, tags, st, lo, hi)


# ---------------------------------------------------------------------------
# Python-level wrappers


def _cmp(cmp):
    return cmp if cmp is not None else CountingComparator()


def median_of_3_index(a: np.ndarray, i: int, j: int, k: int, cmp=None) -> int:
    if len({i, j, k}) != 3:
        raise ValueError("positions must be distinct")
    cmp = _cmp(cmp)
    r = int(median3_kernel(a, cmp.tags, cmp.state, i, j, k))
    cmp.check()
    return r


def _result(lo, hi, lt, gt):
    return PartitionResult(int(lt), int(gt), int(lt - lo), int(hi - gt))


def block_partition(a: np.ndarray, rng, pivot_pos: int, block: int = DEFAULT_BLOCK, cmp=None) -> PartitionResult:
    lo, hi = rng
    if block < 1:
        raise ValueError("block size must be positive")
    if not lo <= pivot_pos < hi:
        raise ValueError("pivot position outside range")
    cmp = _cmp(cmp)
    lt, gt = block_partition_kernel(a, cmp.tags, cmp.state, new_workspace(block), lo, hi, pivot_pos)
    cmp.check()
    return _result(lo, hi, lt, gt)


def lomuto_mo3_partition(a: np.ndarray, rng, cmp=None) -> PartitionResult:
    """Median-of-3 pivot then Lomuto's one-directional partition.

    Quadratic on inputs with many equal keys; only meant for the quicksort
    base case on randomly ordered subarrays.
    """
    lo, hi = rng
    if hi - lo < 3:
        raise ValueError("need at least three elements")
    cmp = _cmp(cmp)
    lt, gt = lomuto_mo3_kernel(a, cmp.tags, cmp.state, lo, hi)
    cmp.check()
    return _result(lo, hi, lt, gt)


def three_way_partition(a: np.ndarray, rng, pivot_pos: int, cmp=None) -> PartitionResult:
    lo, hi = rng
    if not lo <= pivot_pos < hi:
        raise ValueError("pivot position outside range")
    cmp = _cmp(cmp)
    lt, gt = three_way_kernel(a, cmp.tags, cmp.state, lo, hi, pivot_pos)
    cmp.check()
    return _result(lo, hi, lt, gt)


def pivot_median_of_sqrt(a: np.ndarray, rng=None, cmp=None) -> int:
    """Gather an odd sample of about sqrt(n) strided elements to the front
    and return the position of its exact median."""
    lo, hi = rng if rng is not None else (0, len(a))
    if hi - lo < 4:
        raise ValueError("need at least four elements")
    cmp = _cmp(cmp)
    r = int(median_of_sqrt_kernel(a, cmp.tags, cmp.state, lo, hi))
    cmp.check()
    return r


def sample_size(n: int) -> int:
    import math

    return 2 * (math.isqrt(n) // 2) + 1
