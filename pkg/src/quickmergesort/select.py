"""Worst-case linear selection.

``mom_select`` is median-of-medians over groups of five with a six-comparison
median-of-five and adaptive pivot ranks for extreme ``k``.  It works either on
a plain range or on a *triple view*: a range of ``3t`` elements whose logical
element ``i`` is the middle slot ``3i + 1`` of an ordered triple.  Swapping two
logical elements of a triple view swaps the whole triples, so every triple
keeps its (min, median, max) shape while its median is being selected.

``mom_pivot_for_qms`` combines the two: it orders the ``n/3`` triples, selects
the (lower) median of their medians and partitions the range around it while
comparing only the elements whose side is not already implied by the triple
order.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .instrument import (
    CMP,
    MOM_SLACK,
    SELECT_EXCESS,
    CountingComparator,
    cmp3,
    enter,
    leave,
    less,
    swap,
)
from .smallsort import sort3

SELECT_CUTOFF = 20


@njit(cache=True, inline="always")
def _phys(lo, tri, i):
    if tri:
        return lo + 3 * i + 1
    return lo + i


@njit(cache=True, inline="always")
def _lless(a, tags, st, lo, tri, i, j):
    return less(a, tags, st, _phys(lo, tri, i), _phys(lo, tri, j))


@njit(cache=True, inline="always")
def _lswap(a, tags, st, lo, tri, i, j):
    if i == j:
        return
    if tri:
        pi = lo + 3 * i
        pj = lo + 3 * j
        swap(a, tags, st, pi, pj)
        swap(a, tags, st, pi + 1, pj + 1)
        swap(a, tags, st, pi + 2, pj + 2)
    else:
        swap(a, tags, st, lo + i, lo + j)


@njit(cache=True)
def _median5(a, tags, st, lo, tri, p0, p1, p2, p3, p4):
    # Six comparisons, no data movement: track indices only.
    if _lless(a, tags, st, lo, tri, p1, p0):
        p0, p1 = p1, p0
    if _lless(a, tags, st, lo, tri, p3, p2):
        p2, p3 = p3, p2
    # the smaller of the two pair minima is below three others: not the median
    if _lless(a, tags, st, lo, tri, p2, p0):
        p0, p1, p2, p3 = p2, p3, p0, p1
    # median = second smallest of {p1, p2 < p3, p4}
    if _lless(a, tags, st, lo, tri, p4, p1):
        p1, p4 = p4, p1
    if _lless(a, tags, st, lo, tri, p2, p1):
        return p1 if _lless(a, tags, st, lo, tri, p1, p3) else p3
    return p2 if _lless(a, tags, st, lo, tri, p2, p4) else p4


@njit(cache=True)
def _insertion_logical(a, tags, st, lo, tri, l, r):
    for i in range(l + 1, r):
        j = i
        while j > l and _lless(a, tags, st, lo, tri, j, j - 1):
            _lswap(a, tags, st, lo, tri, j, j - 1)
            j -= 1


@njit(cache=True)
def _three_way_logical(a, tags, st, lo, tri, l, r):
    """Pivot at logical l; returns (lt, gt) with [l,lt) <, [lt,gt) ==, [gt,r) >."""
    lt = l + 1
    i = l + 1
    gt = r
    pp = _phys(lo, tri, l)
    while i < gt:
        c = cmp3(a, tags, st, _phys(lo, tri, i), pp)
        if c < 0:
            _lswap(a, tags, st, lo, tri, lt, i)
            lt += 1
            i += 1
        elif c > 0:
            gt -= 1
            _lswap(a, tags, st, lo, tri, i, gt)
        else:
            i += 1
    _lswap(a, tags, st, lo, tri, l, lt - 1)
    return lt - 1, gt


@njit(cache=True, inline="always")
def _record_sub(st, size, parent):
    v = 10 * size - 7 * parent
    if v > st[SELECT_EXCESS]:
        st[SELECT_EXCESS] = v


@njit(cache=True)
def adapted_median_rank(n, m, k1):
    """1-based rank among the m group medians used as pivot when seeking rank k1."""
    half = (m + 1) // 2
    if 10 * k1 <= 3 * n:
        p = max((k1 + 2) // 3, 1)
        return min(p, half)
    if 10 * k1 >= 7 * n:
        p = m - max((n - k1 + 3) // 3, 1) + 1
        return max(p, half)
    return half


@njit
def select_kernel(a, tags, st, lo, tri, l, r, k):
    """Logical index holding the element of 0-based rank k within [l, r).

    On return [l, r) is partitioned around that element.
    """
    enter(st)
    while True:
        n = r - l
        if n < SELECT_CUTOFF:
            _insertion_logical(a, tags, st, lo, tri, l, r)
            leave(st)
            return l + k
        m = n // 5
        for g in range(m):
            b = l + 5 * g
            med = _median5(a, tags, st, lo, tri, b, b + 1, b + 2, b + 3, b + 4)
            _lswap(a, tags, st, lo, tri, l + g, med)
        p1 = adapted_median_rank(n, m, k + 1)
        _record_sub(st, m, n)
        piv = select_kernel(a, tags, st, lo, tri, l, l + m, p1 - 1)
        _lswap(a, tags, st, lo, tri, l, piv)
        lt, gt = _three_way_logical(a, tags, st, lo, tri, l, r)
        if k < lt - l:
            r = lt
            _record_sub(st, r - l, n)
        elif k < gt - l:
            leave(st)
            return l + k
        else:
            k -= gt - l
            l = gt
            _record_sub(st, r - l, n)


@njit(cache=True)
def sort_triples_kernel(a, tags, st, lo, t):
    for g in range(t):
        b = lo + 3 * g
        sort3(a, tags, st, b, b + 1, b + 2)


_LEFT = 0
_RIGHT = 1
_UNKNOWN = 2
_PIVOT = 3


@njit(cache=True, inline="always")
def _side_class(lo, t, p, x):
    off = x - lo
    if off >= 3 * t:
        return _UNKNOWN
    g = off // 3
    r = off - 3 * g
    if g < p:
        return _LEFT if r < 2 else _UNKNOWN
    if g > p:
        return _RIGHT if r > 0 else _UNKNOWN
    if r == 0:
        return _LEFT
    if r == 1:
        return _PIVOT
    return _RIGHT


@njit
def triple_median_pivot(a, tags, st, lo, hi):
    """Order the triples and select the lower median of their medians.

    Returns (t, p): number of triples and the logical index of the pivot
    triple; the pivot sits at lo + 3p + 1.
    """
    t = (hi - lo) // 3
    sort_triples_kernel(a, tags, st, lo, t)
    p = (t + 1) // 2 - 1
    select_kernel(a, tags, st, lo, True, 0, t, p)
    return t, p


@njit(cache=True)
def known_side_partition(a, tags, st, lo, hi, t, p):
    """Hoare partition that compares only elements of undetermined side.

    Elements are classified by their original slot: every element the scans
    inspect has not moved yet, because swaps only write behind the pointers.
    """
    pv = lo + 3 * p + 1
    i = lo
    j = hi - 1
    while True:
        while i <= j:
            c = _side_class(lo, t, p, i)
            if c == _LEFT or c == _PIVOT:
                i += 1
            elif c == _RIGHT:
                break
            elif less(a, tags, st, i, pv):
                i += 1
            else:
                break
        while j > i:
            c = _side_class(lo, t, p, j)
            if c == _RIGHT:
                j -= 1
            elif c == _LEFT or c == _PIVOT:
                break
            elif less(a, tags, st, pv, j):
                j -= 1
            else:
                break
        if j <= i:
            break
        swap(a, tags, st, i, j)
        if pv == j:
            pv = i
        i += 1
        j -= 1
    mid = i
    swap(a, tags, st, pv, mid - 1)
    return mid - 1, mid


@njit(cache=True)
def _three_way_phys(a, tags, st, lo, hi, pv):
    swap(a, tags, st, lo, pv)
    return _three_way_logical(a, tags, st, lo, False, 0, hi - lo)


@njit
def mom_partition(a, tags, st, lo, hi, three_way):
    """Pivot by median of triple medians, then partition; returns (lt, gt)."""
    n = hi - lo
    t, p = triple_median_pivot(a, tags, st, lo, hi)
    if three_way:
        lt, gt = _three_way_phys(a, tags, st, lo, hi, lo + 3 * p + 1)
        lt += lo
        gt += lo
    else:
        lt, gt = known_side_partition(a, tags, st, lo, hi, t, p)
    # Keys equal to the pivot count for both sides: the guarantee is on its rank.
    slack = min(gt - lo - 1, hi - lt - 1) - 2 * (n // 6)
    if slack < st[MOM_SLACK]:
        st[MOM_SLACK] = slack
    return lt, gt


@njit
def median_of_sqrt_kernel(a, tags, st, lo, hi):
    n = hi - lo
    r = int(np.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    s = 2 * (r // 2) + 1
    stride = n // s
    for i in range(1, s):
        swap(a, tags, st, lo + i, lo + i * stride)
    mid = s // 2
    select_kernel(a, tags, st, lo, False, 0, s, mid)
    return lo + mid


# ---------------------------------------------------------------------------
# Python-level wrappers


def _prep(a, cmp):
    if cmp is None:
        cmp = CountingComparator()
    return a, cmp


def median_of_5(a: np.ndarray, positions, cmp: CountingComparator | None = None) -> int:
    """Index (among ``positions``) of the median of the five addressed keys."""
    a, cmp = _prep(a, cmp)
    p = [int(x) for x in positions]
    if len(set(p)) != 5:
        raise ValueError("median_of_5 needs five distinct positions")
    r = int(_median5(a, cmp.tags, cmp.state, 0, False, *p))
    cmp.check()
    return r


def sort_triples(a: np.ndarray, rng=None, cmp: CountingComparator | None = None) -> "StridedTripleView":
    a, cmp = _prep(a, cmp)
    lo, hi = rng if rng is not None else (0, len(a))
    if (hi - lo) % 3:
        raise ValueError("triple view needs a length divisible by 3")
    sort_triples_kernel(a, cmp.tags, cmp.state, lo, (hi - lo) // 3)
    cmp.check()
    return StridedTripleView(a, lo, (hi - lo) // 3)


class StridedTripleView:
    """Logical view of the medians of ``t`` consecutive ordered triples."""

    def __init__(self, base: np.ndarray, lo: int, t: int):
        self.base = base
        self.lo = lo
        self.t = t

    def __len__(self) -> int:
        return self.t

    def __getitem__(self, i: int):
        if not 0 <= i < self.t:
            raise IndexError(i)
        return self.base[self.lo + 3 * i + 1]

    def medians(self) -> np.ndarray:
        return self.base[self.lo + 1 : self.lo + 3 * self.t : 3].copy()

    def triples_ordered(self) -> bool:
        tr = self.base[self.lo : self.lo + 3 * self.t].reshape(-1, 3)
        return bool(np.all(tr[:, 0] <= tr[:, 1]) and np.all(tr[:, 1] <= tr[:, 2]))


def mom_select(v, k: int, cmp: CountingComparator | None = None) -> int:
    """Bring the element of 1-based rank ``k`` into place; return its position.

    ``v`` is either a numpy key array (whole range), a ``(array, lo, hi)``
    tuple, or a :class:`StridedTripleView`; for a view the returned position is
    the logical index.
    """
    if isinstance(v, StridedTripleView):
        a, lo, n, tri = v.base, v.lo, v.t, True
    elif isinstance(v, tuple):
        a, lo, hi = v
        n, tri = hi - lo, False
    else:
        a, lo, n, tri = v, 0, len(v), False
    if not 1 <= k <= n:
        raise ValueError(f"rank {k} outside 1..{n}")
    if cmp is None:
        cmp = CountingComparator()
    pos = select_kernel(a, cmp.tags, cmp.state, lo, tri, 0, n, k - 1)
    cmp.check()
    return int(pos) if tri else int(lo + pos)


def mom_pivot_for_qms(a: np.ndarray, rng=None, cmp: CountingComparator | None = None) -> int:
    """Median of the triple medians; returns its position (pivot not yet partitioned)."""
    a, cmp = _prep(a, cmp)
    lo, hi = rng if rng is not None else (0, len(a))
    if hi - lo < 3:
        raise ValueError("need at least three elements")
    t, p = triple_median_pivot(a, cmp.tags, cmp.state, lo, hi)
    cmp.check()
    return int(lo + 3 * p + 1)


def select_comparisons(cmp: CountingComparator) -> int:
    return int(cmp.state[CMP])
