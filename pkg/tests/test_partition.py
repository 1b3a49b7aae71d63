import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quickmergesort import CountingComparator, clever_quicksort
from quickmergesort.merge_core import insertion_sort_range
from quickmergesort.partition import (
    block_partition,
    lomuto_mo3_partition,
    median_of_3_index,
    pivot_median_of_sqrt,
    sample_size,
    three_way_partition,
)

from conftest import FIG1, keys


def check_two_way(a, lo, hi, res, pivot):
    assert res.gt_begin == res.lt_end + 1
    assert a[res.lt_end] == pivot
    assert all(a[lo:res.lt_end] <= pivot)
    assert all(a[res.gt_begin:hi] >= pivot)
    assert res.left_size == res.lt_end - lo and res.right_size == hi - res.gt_begin


def test_median_of_3_examples():
    a = keys([1, 2, 3])
    assert median_of_3_index(a, 0, 1, 2) == 1
    a = keys([9, 9, 1])
    assert a[median_of_3_index(a, 0, 1, 2)] == 9


def test_median_of_3_all_orderings():
    for p in itertools.permutations([10, 20, 30]):
        a = keys(p)
        c = CountingComparator()
        assert a[median_of_3_index(a, 0, 1, 2, c)] == 20
        assert c.comparisons <= 3


def test_median_of_3_needs_distinct_positions():
    with pytest.raises(ValueError):
        median_of_3_index(keys([1, 2, 3]), 0, 0, 2)


def test_block_partition_fig1(fig1):
    c = CountingComparator()
    res = block_partition(fig1, (0, 12), 0, cmp=c)
    assert res.lt_end == 7
    assert set(fig1[:7]) == {3, 2, 4, 5, 6, 0, 1}
    assert set(fig1[8:]) == {9, 10, 11, 8}
    check_two_way(fig1, 0, 12, res, 7)
    assert c.comparisons == 11


@pytest.mark.parametrize("n", [1, 2, 5, 300, 1000])
def test_block_partition_all_equal(n):
    a = np.full(n, 4, dtype=np.int64)
    c = CountingComparator()
    res = block_partition(a, (0, n), n // 2, block=16, cmp=c)
    check_two_way(a, 0, n, res, 4)
    assert c.comparisons == n - 1


def hoare_sides(xs, p):
    """Textbook two-pointer Hoare partition around xs[p] (pivot parked first)."""
    xs = list(xs)
    xs[0], xs[p] = xs[p], xs[0]
    pv = xs[0]
    i, j = 1, len(xs) - 1
    while True:
        while i <= j and xs[i] < pv:
            i += 1
        while j >= i and xs[j] > pv:
            j -= 1
        if i >= j:
            break
        xs[i], xs[j] = xs[j], xs[i]
        i += 1
        j -= 1
    return sorted(xs[1:i]), sorted(xs[i:])


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=400), st.data(), st.sampled_from([1, 2, 3, 8, 128]))
def test_block_partition_property(xs, data, block):
    n = len(xs)
    lo = data.draw(st.integers(0, 3))
    a = keys([99] * lo + xs + [-99])
    p = data.draw(st.integers(lo, lo + n - 1))
    pivot = a[p]
    c = CountingComparator()
    res = block_partition(a, (lo, lo + n), p, block, c)
    check_two_way(a, lo, lo + n, res, pivot)
    assert sorted(a[lo:lo + n]) == sorted(xs)
    assert list(a[:lo]) == [99] * lo and a[-1] == -99
    assert c.comparisons == n - 1


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=300, unique=True), st.data())
def test_block_partition_matches_hoare(xs, data):
    p = data.draw(st.integers(0, len(xs) - 1))
    a = keys(xs)
    res = block_partition(a, (0, len(xs)), p, block=4)
    left, right = hoare_sides(xs, p)
    assert sorted(a[:res.lt_end]) == left
    assert sorted(a[res.gt_begin:]) == right


def test_lomuto_fig1(fig1):
    c = CountingComparator()
    res = lomuto_mo3_partition(fig1, (0, 12), c)
    pivot = fig1[res.lt_end]
    check_two_way(fig1, 0, 12, res, pivot)
    # median of 7, 9, 8 (first, middle, last)
    assert pivot == 8
    assert c.comparisons <= 3 + 11


def test_lomuto_all_equal():
    a = np.full(50, 1, dtype=np.int64)
    res = lomuto_mo3_partition(a, (0, 50))
    check_two_way(a, 0, 50, res, 1)


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=200))
def test_lomuto_property(xs):
    a = keys(xs)
    res = lomuto_mo3_partition(a, (0, len(xs)))
    check_two_way(a, 0, len(xs), res, a[res.lt_end])
    assert sorted(a) == sorted(xs)


def test_three_way_example():
    a = keys([2, 1, 2, 0, 2])
    res = three_way_partition(a, (0, 5), 0)
    assert sorted(a[:res.lt_end]) == [0, 1]
    assert list(a[res.lt_end:res.gt_begin]) == [2, 2, 2]
    assert res.right_size == 0


def test_three_way_distinct_is_two_way():
    a = keys([5, 3, 9, 1, 7])
    c = CountingComparator()
    res = three_way_partition(a, (0, 5), 0, c)
    check_two_way(a, 0, 5, res, 5)
    assert c.comparisons == 4


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=200), st.data())
def test_three_way_property(xs, data):
    p = data.draw(st.integers(0, len(xs) - 1))
    a = keys(xs)
    pv = a[p]
    c = CountingComparator()
    res = three_way_partition(a, (0, len(xs)), p, c)
    assert all(a[:res.lt_end] < pv)
    assert all(a[res.lt_end:res.gt_begin] == pv)
    assert all(a[res.gt_begin:] > pv)
    assert sorted(a) == sorted(xs)
    assert c.comparisons == len(xs) - 1


def test_median_of_sqrt_n9_sorted():
    a = keys(range(1, 10))
    assert a[pivot_median_of_sqrt(a)] == 4


def test_median_of_sqrt_n4():
    a = keys([4, 1, 3, 2])
    assert sample_size(4) == 3
    p = pivot_median_of_sqrt(a)
    # sample a[0], a[1], a[2] = 4, 1, 3 -> 3
    assert a[p] == 3


def test_median_of_sqrt_random_1e4():
    n = 10**4
    x = np.random.default_rng(0).permutation(n).astype(np.int64) + 1
    s = sample_size(n)
    want = np.sort(x[: s * (n // s) : n // s])[s // 2]
    a = x.copy()
    p = pivot_median_of_sqrt(a)
    assert a[p] == want and 1 <= a[p] <= n
    assert sorted(a) == sorted(x)


def test_median_of_sqrt_too_small():
    with pytest.raises(ValueError):
        pivot_median_of_sqrt(keys([1, 2, 3]))


def test_clever_quicksort_small_is_insertion():
    x = keys([5, 2, 8, 1, 9, 3, 3, 0, 7, 6, 4, 2, 11, 10, 13])
    c1, c2 = CountingComparator(), CountingComparator()
    a, b = x.copy(), x.copy()
    clever_quicksort(a, cmp=c1)
    insertion_sort_range(b, cmp=c2)
    assert list(a) == sorted(x) and c1.comparisons == c2.comparisons


@given(st.lists(st.integers(-50, 50), max_size=600))
def test_clever_quicksort_sorts(xs):
    a = keys(xs)
    clever_quicksort(a)
    assert list(a) == sorted(xs)


@pytest.mark.xfail(strict=True, reason="the linear term (about -2.8n) dominates at n = 1000; the "
                   "asymptotic constant 1.188 only shows at large n (see the n = 2^20 acceptance check)")
def test_clever_quicksort_constant_at_1000():
    n, ratios = 1000, []
    for s in range(100):
        a = np.random.default_rng(s).permutation(n).astype(np.int64)
        c = CountingComparator()
        clever_quicksort(a, cmp=c)
        ratios.append(c.comparisons / (n * math.log2(n)))
    assert 1.10 <= np.mean(ratios) <= 1.30
