import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quickmergesort.instrument import CMP, new_state
from quickmergesort.smallsort import binary_insertion_sort, hardcoded_small, sort3


@pytest.mark.parametrize("n", range(0, 10))
def test_hardcoded_exhaustive(n):
    worst = 0
    for p in itertools.permutations(range(n)):
        a = np.array(p, dtype=np.int64)
        s = new_state()
        hardcoded_small(a, None, s, 0, n)
        assert list(a) == list(range(n))
        worst = max(worst, s[CMP])
    # binary insertion: sum of ceil(lg(i + 1))
    assert worst <= sum(math.ceil(math.log2(i + 1)) for i in range(1, n))


def test_sort3_at_most_three():
    for p in itertools.permutations([1, 2, 3]):
        a = np.array(p, dtype=np.int64)
        s = new_state()
        sort3(a, None, s, 0, 1, 2)
        assert list(a) == [1, 2, 3] and s[CMP] <= 3


@given(st.lists(st.integers(0, 3), max_size=40))
def test_binary_insertion_stable(xs):
    a = np.array(xs, dtype=np.int64)
    tags = np.arange(len(xs), dtype=np.int64)
    binary_insertion_sort(a, tags, new_state(), 0, len(xs))
    assert list(a) == sorted(xs)
    assert [t for _, t in sorted(zip(xs, range(len(xs))))] == list(tags)
