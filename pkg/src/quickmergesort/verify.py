"""Invariant suite behind ``qmsort verify``.

Each check returns a list of failure descriptions (empty when healthy) so the
same functions serve the CLI report and the test-suite.
"""

from __future__ import annotations

import itertools
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import driver
from .bench import Distribution, generate_input, rng_for
from .instrument import MOM_SLACK, MOM_STEPS, PART_STEPS, SELECT_EXCESS, CountingComparator, SentinelViolation
from .merge_core import mergesort_with_temp, swap_merge, worst_case_mergesort_bound
from .select import median_of_5, mom_select

VARIANTS = ("qms", "qmqs", "momqms", "hqms")
DISTRIBUTIONS = ("random", "sorted", "reverse", "organpipe", "fewdistinct:3", "fewdistinct:50", "dupmod:7")
MOM_LINEAR = 16.1


def _sorted_ok(a, ref) -> bool:
    return np.array_equal(a, np.sort(ref))


def check_sorting(variants=VARIANTS, dists=DISTRIBUTIONS, ns=(0, 1, 2, 3, 10, 100, 1000), seeds=range(5)):
    bad = []
    for v, d, n, s in itertools.product(variants, dists, ns, seeds):
        x = generate_input(d, n, s)
        a = x.copy()
        driver.sort(a, v)
        if not _sorted_ok(a, x):
            bad.append(f"{v} {d} n={n} seed={s}")
    return bad


def check_payload(ns=(0, 1, 9, 10, 57, 1000), seeds=range(3)):
    bad = []
    for v, n, s in itertools.product(VARIANTS, ns, seeds):
        x = generate_input("fewdistinct:5", n, s)
        a = x.copy()
        pl = list(range(n))
        driver.sort(a, v, payload=pl)
        if not (_sorted_ok(a, x) and np.array_equal(x[np.array(pl, dtype=np.int64)], a)):
            bad.append(f"{v} n={n} seed={s}")
    return bad


def check_sentinel(ns=(5, 10, 11, 100, 1000, 10_000), seeds=range(50), variants=VARIANTS):
    """Full sorts with dummy marking armed; any touched dummy is a failure."""
    bad = []
    for v, n, s in itertools.product(variants, ns, seeds):
        a = generate_input("random" if s % 2 else "dupmod:9", n, s)
        try:
            driver.sort(a, v, sentinel=True)
        except SentinelViolation as e:
            bad.append(f"{v} n={n} seed={s}: {e}")
    return bad


def check_median_of_5():
    bad = []
    for perm in itertools.permutations(range(5)):
        a = np.array(perm, dtype=np.int64)
        cmp = CountingComparator()
        i = median_of_5(a, range(5), cmp)
        if a[i] != 2 or cmp.comparisons > 7:
            bad.append(f"{perm}: got {a[i]} with {cmp.comparisons} comparisons")
    return bad


def check_mergesort_bound(max_n=8):
    bad = []
    for n in range(1, max_n + 1):
        bound = worst_case_mergesort_bound(n)
        h = (n + 1) // 2
        for perm in itertools.permutations(range(n)):
            a = np.array(list(perm) + [-1] * h, dtype=np.int64)
            cmp = CountingComparator()
            mergesort_with_temp(a, (0, n), (n, n + h), cmp=cmp)
            if list(a[:n]) != list(range(n)) or cmp.comparisons > bound:
                bad.append(f"n={n} {perm}: {cmp.comparisons} > {bound}")
                break
    return bad


def check_swap_merge(trials=300, seed=0):
    """Random merges with the buffer armed as dummies."""
    rng = rng_for(seed)
    bad = []
    for t in range(trials):
        m = int(rng.integers(0, 20))
        r2 = int(rng.integers(0, 20))
        gap = int(rng.integers(0, 3))
        run1 = np.sort(rng.integers(0, 30, m))
        run2 = np.sort(rng.integers(0, 30, r2))
        junk = np.full(m, 999)
        a = np.concatenate([run1, np.zeros(gap, np.int64), junk, run2]).astype(np.int64)
        t0 = m + gap
        tags = np.arange(len(a), dtype=np.int64)
        tags[t0:t0 + m] = -tags[t0:t0 + m] - 1
        cmp = CountingComparator()
        cmp.arm(tags)
        try:
            swap_merge(a, (0, m), (t0, t0 + m + r2), cmp)
        except SentinelViolation as e:
            bad.append(f"trial {t}: {e}")
            continue
        if not np.array_equal(a[t0:], np.sort(np.concatenate([run1, run2]))):
            bad.append(f"trial {t}: merge output wrong")
        elif sorted(a[:m].tolist()) != [999] * m:
            bad.append(f"trial {t}: dummies not displaced into run1")
    return bad


def mom_inputs(count=1000, max_n=100_000, seed=0):
    """(label, keys, three_way) triples covering all adversarial families."""
    rng = rng_for(seed, 1 << 20)
    kinds = ["random", "sorted", "reverse", "organpipe", "fewdistinct:4", "fewdistinct:100"]
    lo, hi = math.log(12), math.log(max_n)
    for i in range(count):
        n = 12 + i % 10 if i < 40 else int(math.exp(rng.uniform(lo, hi)))
        d = Distribution.parse(kinds[i % len(kinds)])
        yield f"{d} n={n} seed={i}", generate_input(d, n, seed + i), d.kind == "fewdistinct"


def mom_budget(n: int) -> float:
    return n * math.log2(n) + MOM_LINEAR * n if n > 1 else 0


def check_mom(inputs):
    """Pivot rank guarantee on every MoM call and the total comparison budget."""
    bad = []
    for label, x, tw in inputs:
        n = len(x)
        a = x.copy()
        cmp = CountingComparator()
        driver.sort(a, driver.momqms(three_way=True) if tw else driver.momqms(three_way=False), cmp=cmp)
        slack = int(cmp.state[MOM_SLACK])
        if not _sorted_ok(a, x):
            bad.append(f"{label}: not sorted")
        if slack < -2:
            bad.append(f"{label}: pivot side short by {-slack} below 2*floor(n/6)")
        if cmp.comparisons > mom_budget(n):
            bad.append(f"{label}: {cmp.comparisons} comparisons > n log n + {MOM_LINEAR} n")
    return bad


def check_hybrid_worst(inputs, allowance=2.0):
    bad = []
    for label, x, _ in inputs:
        n = len(x)
        a = x.copy()
        m = driver.sort(a, "hqms")
        if m.comparisons > mom_budget(n) + allowance * n:
            bad.append(f"{label}: {m.comparisons} comparisons")
    return bad


def select_ranks(n, rng):
    ks = {1, n, (n + 1) // 2, max(1, (3 * n) // 10), max(1, (7 * n) // 10)}
    ks.update(int(k) for k in rng.integers(1, n + 1, 3))
    return sorted(ks)


def check_select(count=1000, max_n=20_000, seed=0):
    """mom_select: <= 22n comparisons; recursive subproblems <= 0.7n + 5."""
    rng = rng_for(seed, 1 << 21)
    kinds = ["random", "sorted", "reverse", "organpipe", "fewdistinct:3", "dupmod:50"]
    bad = []
    for i in range(count):
        n = int(math.exp(rng.uniform(0, math.log(max_n))))
        x = generate_input(kinds[i % len(kinds)], n, seed + i)
        for k in select_ranks(n, rng):
            a = x.copy()
            cmp = CountingComparator()
            pos = mom_select(a, k, cmp)
            want = np.sort(x)[k - 1]
            ok = a[pos] == want and np.all(a[:pos] <= want) and np.all(a[pos:] >= want)
            if not ok:
                bad.append(f"{kinds[i % 6]} n={n} k={k}: wrong element or not partitioned")
            if cmp.comparisons > 22 * n:
                bad.append(f"{kinds[i % 6]} n={n} k={k}: {cmp.comparisons} > 22n")
            if int(cmp.state[SELECT_EXCESS]) > 50:
                bad.append(f"{kinds[i % 6]} n={n} k={k}: subproblem above 0.7n + 5")
    return bad


def depth_bound(n: int) -> float:
    return 2 * math.log2(max(n, 2)) + 16


def check_depth(ns=(10, 1000, 10_000), dists=("random", "sorted", "organpipe", "fewdistinct:3")):
    bad = []
    for v, n, d in itertools.product(VARIANTS, ns, dists):
        a = generate_input(d, n, 1)
        m = driver.sort(a, v)
        if m.max_depth > depth_bound(n):
            bad.append(f"{v} {d} n={n}: depth {m.max_depth}")
    return bad


def check_hybrid_fraction(n=100_000, trials=10):
    """Share of MoM steps among all partitioning steps, pooled over trials."""
    mom = steps = 0
    for t in range(trials):
        cmp = CountingComparator()
        driver.sort(generate_input("random", n, t), "hqms", cmp=cmp)
        mom += int(cmp.state[MOM_STEPS])
        steps += int(cmp.state[PART_STEPS])
    f = mom / max(steps, 1)
    return [] if f < 0.05 else [f"MoM fraction {f:.3f} over {steps} steps"]


def check_determinism(n=5000):
    bad = []
    for v in VARIANTS:
        ms = []
        for _ in range(2):
            m = driver.sort(generate_input("random", n, 7), v)
            ms.append((m.comparisons, m.moves, m.max_depth))
        if ms[0] != ms[1]:
            bad.append(f"{v}: {ms[0]} != {ms[1]}")
    return bad


@dataclass
class Outcome:
    name: str
    failures: list
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures


def suite(quick: bool):
    if quick:
        return [
            ("sorting", lambda: check_sorting(ns=(0, 1, 2, 3, 10, 100, 1000, 10_000), seeds=range(2))),
            ("payload", check_payload),
            ("sentinel", lambda: check_sentinel(ns=(5, 11, 100, 2000), seeds=range(5))),
            ("median_of_5", check_median_of_5),
            ("mergesort_bound", lambda: check_mergesort_bound(7)),
            ("swap_merge", check_swap_merge),
            ("mom", lambda: check_mom(mom_inputs(120, 10_000))),
            ("hybrid_worst", lambda: check_hybrid_worst(mom_inputs(60, 10_000))),
            ("select", lambda: check_select(150, 10_000)),
            ("depth", check_depth),
            ("hybrid_fraction", lambda: check_hybrid_fraction(10_000, 20)),
            ("determinism", check_determinism),
        ]
    return [
        ("sorting", lambda: check_sorting(ns=(0, 1, 2, 3, 10, 100, 1000, 10_000, 100_000))),
        ("payload", check_payload),
        ("sentinel", check_sentinel),
        ("median_of_5", check_median_of_5),
        ("mergesort_bound", check_mergesort_bound),
        ("swap_merge", lambda: check_swap_merge(3000)),
        ("mom", lambda: check_mom(mom_inputs())),
        ("hybrid_worst", lambda: check_hybrid_worst(mom_inputs(300))),
        ("select", check_select),
        ("depth", lambda: check_depth((10, 1000, 100_000, 1 << 20))),
        ("hybrid_fraction", check_hybrid_fraction),
        ("determinism", check_determinism),
    ]


def run(quick: bool = False, out=sys.stdout) -> bool:
    ok = True
    for name, fn in suite(quick):
        t0 = time.perf_counter()
        res = Outcome(name, fn(), time.perf_counter() - t0)
        ok &= res.ok
        print(f"{'PASS' if res.ok else 'FAIL'} {name:<16} {res.seconds:7.2f}s", file=out)
        for f in res.failures[:10]:
            print(f"    {f}", file=out)
        if len(res.failures) > 10:
            print(f"    ... {len(res.failures) - 10} more", file=out)
    return ok
