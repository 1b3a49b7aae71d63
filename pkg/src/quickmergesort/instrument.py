"""Element order, comparison/move counters and the metrics record.

All sorting kernels operate on a contiguous ``int64`` key array plus an
optional parallel ``int64`` tag array (``None`` when unused).  Tags travel with their keys on every
move; they carry payload indices and, when sentinel checking is armed, the
"dummy" mark (a negative tag).  Counters live in a small ``int64`` state vector
owned by one :class:`CountingComparator`, so every sort invocation has its own
counters and nothing is global.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numba import njit

# Slots of the state vector shared by all kernels.
CMP = 0
MOVES = 1
DEPTH = 2
MAX_DEPTH = 3
ARMED = 4
MOM_STEPS = 5
PART_STEPS = 6
MOM_SLACK = 7  # min over MoM pivots of min(left, right) - 2*floor(n/6)
SELECT_EXCESS = 8  # max over selection subproblems of 10*size - 7*parent
X_MIN = 9
X_MAX = 10
X_CALLS = 11
VIOLATIONS = 12
STATE_SIZE = 16

_BIG = np.int64(1) << 62

NO_TAGS = None  # kernels specialise on a missing tag array


class SentinelViolation(RuntimeError):
    """A comparison touched an element marked as a dummy."""


def new_state() -> np.ndarray:
    st = np.zeros(STATE_SIZE, dtype=np.int64)
    st[MOM_SLACK] = _BIG
    st[SELECT_EXCESS] = -_BIG
    st[X_MIN] = _BIG
    return st


@njit(cache=True, inline="always")
def _check_sentinel(tags, st, i, j):
    # Raising inside the hot loop is expensive in compiled code; count instead
    # and let the Python caller raise.  Marks only exist while armed.
    if tags is not None:
        if tags[i] < 0 or tags[j] < 0:
            st[VIOLATIONS] += 1


@njit(cache=True, inline="always")
def less(a, tags, st, i, j):
    """a[i] < a[j], counted."""
    st[CMP] += 1
    _check_sentinel(tags, st, i, j)
    return a[i] < a[j]


@njit(cache=True, inline="always")
def cmp3(a, tags, st, i, j):
    """Three-way comparison of a[i] and a[j] (-1, 0, 1); one counted comparison."""
    st[CMP] += 1
    _check_sentinel(tags, st, i, j)
    if a[i] < a[j]:
        return -1
    if a[j] < a[i]:
        return 1
    return 0


@njit(cache=True, inline="always")
def swap(a, tags, st, i, j):
    st[MOVES] += 3
    t = a[i]
    a[i] = a[j]
    a[j] = t
    if tags is not None:
        u = tags[i]
        tags[i] = tags[j]
        tags[j] = u


@njit(cache=True, inline="always")
def assign(a, tags, st, dst, src):
    st[MOVES] += 1
    a[dst] = a[src]
    if tags is not None:
        tags[dst] = tags[src]


@njit(cache=True, inline="always")
def enter(st):
    st[DEPTH] += 1
    if st[DEPTH] > st[MAX_DEPTH]:
        st[MAX_DEPTH] = st[DEPTH]


@njit(cache=True, inline="always")
def leave(st):
    st[DEPTH] -= 1


@njit(cache=True)
def toggle_marks(tags, lo, hi):
    # x -> -x - 1 is an involution mapping payload indices >= 0 to marks < 0.
    for x in range(lo, hi):
        tags[x] = -tags[x] - 1


@dataclass(frozen=True, order=False)
class Element:
    """A key with an optional opaque payload; ordered and compared by key only."""

    key: int
    payload: bytes | None = field(default=None, compare=False)
    dummy: bool = field(default=False, compare=False)

    def __lt__(self, other: Element) -> bool:
        return self.key < other.key


@dataclass
class Metrics:
    comparisons: int = 0
    moves: int = 0
    max_depth: int = 0
    elapsed: int = 0  # nanoseconds

    def reset(self) -> Metrics:
        self.comparisons = self.moves = self.max_depth = self.elapsed = 0
        return self

    def snapshot(self) -> Metrics:
        return dataclasses.replace(self)


def metrics_reset(m: Metrics) -> Metrics:
    return m.reset()


def metrics_snapshot(m: Metrics) -> Metrics:
    return m.snapshot()


class CountingComparator:
    """Total order on keys with monotone comparison/move counters.

    ``state`` is the counter vector handed to the compiled kernels; ``tags``
    is the per-element tag array (empty unless payloads or sentinel checking
    are in use).  :meth:`compare` is the Python-level entry point used by the
    standard-library baseline and by tests.
    """

    def __init__(self, key=None, *, sentinel: bool = False):
        self.key = key
        self.state = new_state()
        self.tags = NO_TAGS
        self.sentinel = sentinel
        self.state[ARMED] = int(sentinel)
        self._t0 = 0
        self.elapsed = 0

    @property
    def comparisons(self) -> int:
        return int(self.state[CMP])

    @property
    def moves(self) -> int:
        return int(self.state[MOVES])

    def arm(self, tags: np.ndarray) -> None:
        """Attach a tag array and enable dummy checking on it."""
        self.tags = tags
        self.sentinel = True
        self.state[ARMED] = 1

    def attach(self, tags: np.ndarray) -> None:
        self.tags = tags

    def _keyof(self, x: Any):
        if isinstance(x, Element):
            if self.sentinel and x.dummy:
                raise SentinelViolation(f"comparison touched dummy element {x!r}")
            x = x.key
        return self.key(x) if self.key is not None else x

    def compare(self, a: Any, b: Any) -> int:
        """Return -1, 0 or 1; always counts exactly one comparison."""
        self.state[CMP] += 1
        ka, kb = self._keyof(a), self._keyof(b)
        if ka < kb:
            return -1
        if kb < ka:
            return 1
        return 0

    def check(self) -> None:
        """Raise if a compiled kernel compared a marked dummy since the last reset."""
        v = int(self.state[VIOLATIONS])
        if v:
            raise SentinelViolation(f"{v} comparison(s) touched a dummy element")

    def count_moves(self, k: int) -> None:
        self.state[MOVES] += k

    def start_clock(self) -> None:
        self._t0 = time.perf_counter_ns()

    def stop_clock(self) -> None:
        self.elapsed += time.perf_counter_ns() - self._t0

    def metrics(self) -> Metrics:
        return Metrics(
            comparisons=int(self.state[CMP]),
            moves=int(self.state[MOVES]),
            max_depth=int(self.state[MAX_DEPTH]),
            elapsed=int(self.elapsed),
        )

    def reset(self) -> None:
        armed = self.state[ARMED]
        self.state[:] = new_state()
        self.state[ARMED] = armed
        self.elapsed = 0


def as_keys(seq) -> np.ndarray:
    """Contiguous int64 view/copy of ``seq`` suitable for the kernels."""
    return np.ascontiguousarray(np.asarray(seq, dtype=np.int64))
