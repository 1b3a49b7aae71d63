"""Swap-based Mergesort that uses another part of the same array as buffer.

Elements parked in the buffer region ("dummies") are moved around while the
runs are merged but are never compared.  ``mergesort_with_temp`` sorts a range
with a buffer of ``ceil(n/2)`` slots; ``mergesort_into`` sorts a range into a
disjoint target region, leaving the target's old contents behind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .instrument import MOVES, X_CALLS, X_MAX, X_MIN, CountingComparator, enter, leave, less, swap
from .partition import clever_quicksort_kernel, new_workspace
from .smallsort import hardcoded_small, insertion_sort

INSERTION = 0
CLEVER_QUICKSORT = 1
HARDCODED_SMALL = 2

_KINDS = {"insertion": INSERTION, "clever_quicksort": CLEVER_QUICKSORT, "hardcoded": HARDCODED_SMALL}


class Range(NamedTuple):
    begin: int
    end: int

    def __len__(self) -> int:  # type: ignore[override]
        return self.end - self.begin


@dataclass(frozen=True)
class BaseCasePolicy:
    """Which algorithm finishes small Mergesort subproblems and when.

    With ``levels=None`` the base case runs on ranges shorter than
    ``threshold``; otherwise it runs after exactly ``levels`` halvings.
    """

    kind: str = "insertion"
    threshold: int = 2
    levels: int | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown base case {self.kind!r}")
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")

    @property
    def code(self) -> int:
        return _KINDS[self.kind]


@njit(cache=True)
def swap_merge_kernel(a, tags, st, b1, e1, t, te):
    """Merge run [b1,e1) with the run at [t+m, te) into [t, te).

    The m = e1-b1 dummies at [t, t+m) end up in [b1, e1).  A single element
    is held in a register so each output costs two moves instead of a swap.
    """
    m = e1 - b1
    if m == 0:
        return
    tmp = a[t]
    tmp_tag = 0
    if tags is not None:
        tmp_tag = tags[t]
    st[MOVES] += 1
    hole = t
    i1 = b1
    i2 = t + m
    moves = 0
    while True:
        if i2 < te and not less(a, tags, st, i1, i2):
            src = i2
            i2 += 1
        else:
            src = i1
            i1 += 1
        a[hole] = a[src]
        if tags is not None:
            tags[hole] = tags[src]
        nxt = hole + 1
        if nxt < i2:
            a[src] = a[nxt]
            if tags is not None:
                tags[src] = tags[nxt]
            hole = nxt
            moves += 2
        else:
            # run1 exhausted; the rest of run2 is already in place
            a[src] = tmp
            if tags is not None:
                tags[src] = tmp_tag
            moves += 2
            break
    st[MOVES] += moves


@njit(cache=True)
def base_sort(a, tags, st, ws, lo, hi, kind):
    if kind == CLEVER_QUICKSORT:
        clever_quicksort_kernel(a, tags, st, ws, lo, hi)
    elif kind == HARDCODED_SMALL:
        hardcoded_small(a, tags, st, lo, hi)
    else:
        insertion_sort(a, tags, st, lo, hi)


@njit(cache=True)
def _note_x_call(st, n):
    st[X_CALLS] += 1
    if n < st[X_MIN]:
        st[X_MIN] = n
    if n > st[X_MAX]:
        st[X_MAX] = n


@njit
def msort_kernel(a, tags, st, ws, b, e, t, kind, thresh, lvl):
    n = e - b
    enter(st)
    if n <= 1 or lvl == 0 or (lvl < 0 and n < thresh):
        if n > 1:
            base_sort(a, tags, st, ws, b, e, kind)
        if lvl >= 0:
            _note_x_call(st, n)
        for i in range(n):
            swap(a, tags, st, b + i, t + i)
    else:
        q = n // 2
        sub = lvl - 1 if lvl > 0 else -1
        msort_kernel(a, tags, st, ws, b + q, e, t + q, kind, thresh, sub)
        msort_kernel(a, tags, st, ws, b, b + q, b + q, kind, thresh, sub)
        swap_merge_kernel(a, tags, st, b + q, b + 2 * q, t, t + n)
    leave(st)


@njit
def out_kernel(a, tags, st, ws, b, e, temp, kind, thresh, lvl):
    n = e - b
    if n <= 1:
        return
    if lvl == 0:
        base_sort(a, tags, st, ws, b, e, kind)
        _note_x_call(st, n)
        return
    enter(st)
    q = n // 2
    r = n - q
    sub = lvl - 1 if lvl > 0 else -1
    msort_kernel(a, tags, st, ws, b + q, e, temp, kind, thresh, sub)
    msort_kernel(a, tags, st, ws, b, b + q, b + r, kind, thresh, sub)
    swap_merge_kernel(a, tags, st, temp, temp + r, b, e)
    leave(st)


def x_levels(n: int, beta: float) -> int:
    """Mergesort levels above the base case so that base calls get about n**beta elements."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < beta <= 1:
        raise ValueError("beta must lie in (0, 1]")
    return max(0, math.ceil((1 - beta) * math.log2(n) - 1e-9))


# ---------------------------------------------------------------------------
# Python-level wrappers


def _disjoint(r1, r2) -> bool:
    return r1[1] <= r2[0] or r2[1] <= r1[0]


def _cmp(cmp):
    return cmp if cmp is not None else CountingComparator()


def _lvl(policy: BaseCasePolicy) -> int:
    return -1 if policy.levels is None else policy.levels


def swap_merge(a: np.ndarray, run1, out, cmp: CountingComparator | None = None) -> None:
    """Merge sorted ``run1`` with the sorted run filling the tail of ``out``.

    The first ``len(run1)`` slots of ``out`` hold dummies; afterwards they sit
    in ``run1``'s slots in unspecified order.
    """
    (b1, e1), (t, te) = run1, out
    if not _disjoint((b1, e1), (t, te)):
        raise ValueError("run1 and out overlap")
    if te - t < e1 - b1:
        raise ValueError("out shorter than run1")
    cmp = _cmp(cmp)
    swap_merge_kernel(a, cmp.tags, cmp.state, b1, e1, t, te)
    cmp.check()


def mergesort_into(a: np.ndarray, src, target, policy: BaseCasePolicy | None = None, cmp=None) -> None:
    policy = policy or BaseCasePolicy()
    (b, e), (t, te) = src, target
    if te - t != e - b:
        raise ValueError("target and source differ in length")
    if e > b and not _disjoint((b, e), (t, te)):
        raise ValueError("source and target overlap")
    cmp = _cmp(cmp)
    msort_kernel(a, cmp.tags, cmp.state, new_workspace(), b, e, t, policy.code, policy.threshold, _lvl(policy))
    cmp.check()


def mergesort_with_temp(a: np.ndarray, rng, temp, policy: BaseCasePolicy | None = None, cmp=None) -> None:
    """Sort ``rng`` in place; ``temp`` must offer ceil(n/2) slots outside it."""
    policy = policy or BaseCasePolicy()
    b, e = rng
    tb, te = temp
    n = e - b
    if te - tb < (n + 1) // 2:
        raise ValueError("temporary region too small")
    if n > 1 and not _disjoint((b, e), (tb, tb + (n + 1) // 2)):
        raise ValueError("temporary region overlaps the range")
    cmp = _cmp(cmp)
    out_kernel(a, cmp.tags, cmp.state, new_workspace(), b, e, tb, policy.code, policy.threshold, _lvl(policy))
    cmp.check()


def insertion_sort_range(a: np.ndarray, rng=None, cmp=None) -> None:
    lo, hi = rng if rng is not None else (0, len(a))
    cmp = _cmp(cmp)
    insertion_sort(a, cmp.tags, cmp.state, lo, hi)
    cmp.check()


def worst_case_mergesort_bound(n: int) -> int:
    """n*ceil(log2 n) - 2**ceil(log2 n) + 1 (0 for n <= 1)."""
    if n <= 1:
        return 0
    k = (n - 1).bit_length()
    return n * k - (1 << k) + 1
