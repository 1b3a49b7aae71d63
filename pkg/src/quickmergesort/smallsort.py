"""Insertion sort and hard-coded base cases for tiny ranges."""

from numba import njit

from .instrument import CMP, MOVES, VIOLATIONS, less, swap


@njit(cache=True, inline="always")
def _less_val(a, tags, st, v, vt, j):
    # v (tag vt) is an element held outside the array during insertion.
    st[CMP] += 1
    if tags is not None:
        if vt < 0 or tags[j] < 0:
            st[VIOLATIONS] += 1
    return v < a[j]


@njit(cache=True)
def insertion_sort(a, tags, st, lo, hi):
    """Stable linear insertion sort of a[lo:hi]; at most n(n-1)/2 comparisons."""
    for i in range(lo + 1, hi):
        if not less(a, tags, st, i, i - 1):
            continue
        v = a[i]
        vt = 0
        if tags is not None:
            vt = tags[i]
        a[i] = a[i - 1]
        if tags is not None:
            tags[i] = tags[i - 1]
        j = i - 1
        moves = 2
        while j > lo and _less_val(a, tags, st, v, vt, j - 1):
            a[j] = a[j - 1]
            if tags is not None:
                tags[j] = tags[j - 1]
            j -= 1
            moves += 1
        a[j] = v
        if tags is not None:
            tags[j] = vt
        st[MOVES] += moves + 1


@njit(cache=True)
def _binary_insert(a, tags, st, lo, first, hi):
    # a[lo:first] is sorted; insert a[first:hi] one by one
    for i in range(first, hi):
        v = a[i]
        vt = 0
        if tags is not None:
            vt = tags[i]
        # first position in [lo, i) whose key is greater than v
        l = lo
        r = i
        while l < r:
            mid = (l + r) >> 1
            if _less_val(a, tags, st, v, vt, mid):
                r = mid
            else:
                l = mid + 1
        if l == i:
            continue
        for j in range(i, l, -1):
            a[j] = a[j - 1]
            if tags is not None:
                tags[j] = tags[j - 1]
        a[l] = v
        if tags is not None:
            tags[l] = vt
        st[MOVES] += i - l + 2


@njit(cache=True)
def binary_insertion_sort(a, tags, st, lo, hi):
    """Stable insertion sort that finds each slot by binary search.

    Element i costs at most ceil(log2(i + 1)) comparisons, which beats both
    linear insertion and merging on the tiny ranges it is used for.
    """
    _binary_insert(a, tags, st, lo, lo + 1, hi)


@njit(cache=True, inline="always")
def cswap(a, tags, st, i, j):
    if less(a, tags, st, j, i):
        swap(a, tags, st, i, j)


@njit(cache=True)
def sort3(a, tags, st, i, j, k):
    """Order a[i] <= a[j] <= a[k] with at most three comparisons."""
    cswap(a, tags, st, i, j)
    if less(a, tags, st, k, j):
        swap(a, tags, st, j, k)
        cswap(a, tags, st, i, j)


@njit(cache=True)
def hardcoded_small(a, tags, st, lo, hi):
    """Comparison-frugal sorts for the n < 10 base cases."""
    n = hi - lo
    if n == 2:
        cswap(a, tags, st, lo, lo + 1)
    elif n == 3:
        sort3(a, tags, st, lo, lo + 1, lo + 2)
    elif n == 4:
        # sorted triple plus one binary insertion: 2 + 2/3 + 2 comparisons on average
        sort3(a, tags, st, lo, lo + 1, lo + 2)
        _binary_insert(a, tags, st, lo, lo + 3, hi)
    elif n > 4:
        binary_insertion_sort(a, tags, st, lo, hi)
