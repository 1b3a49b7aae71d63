"""Input generation, single trials, CSV output and aggregation.

Inputs come from numpy's PCG64 generator.  Every (seed, trial) pair gets its
own stream via ``SeedSequence(seed, spawn_key=(trial,))``, so trials are
independent and each one can be replayed alone.  Permutations use numpy's
Fisher-Yates shuffle.
"""

from __future__ import annotations

import csv
import math
import statistics
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

import numpy as np

from .driver import PRESETS, SortConfig, sort, std_sort
from .instrument import CountingComparator

HEADER = [
    "algorithm",
    "n",
    "distribution",
    "seed",
    "trial",
    "comparisons",
    "moves",
    "time_ns",
    "max_depth",
    "cmp_norm_linear",
    "cmp_over_nlogn",
]

KINDS = ("random", "sorted", "reverse", "organpipe", "fewdistinct", "dupmod")
ALGORITHMS = ("qms", "qmqs", "momqms", "hqms", "std", "timsort")


class SortFailure(AssertionError):
    pass


@dataclass(frozen=True)
class Distribution:
    kind: str = "random"
    param: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution {self.kind!r}")
        if self.kind in ("fewdistinct", "dupmod"):
            if self.param is None or self.param < 1:
                raise ValueError(f"{self.kind} needs a positive parameter")
        elif self.param is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    @classmethod
    def parse(cls, text: str) -> Distribution:
        kind, _, arg = text.strip().lower().partition(":")
        if arg:
            try:
                return cls(kind, int(arg))
            except ValueError:
                raise ValueError(f"bad distribution parameter in {text!r}") from None
        return cls(kind)

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def generate_input(d: Distribution | str, n: int, seed: int = 0, trial: int = 0) -> np.ndarray:
    """Deterministic int64 input of length ``n`` with values in 1..n (or 1..k)."""
    if isinstance(d, str):
        d = Distribution.parse(d)
    if n < 0:
        raise ValueError("n must be >= 0")
    if d.kind == "sorted":
        return np.arange(1, n + 1, dtype=np.int64)
    if d.kind == "reverse":
        return np.arange(n, 0, -1, dtype=np.int64)
    if d.kind == "organpipe":
        up = np.arange(1, (n + 1) // 2 + 1, dtype=np.int64)
        return np.concatenate([up, up[: n // 2][::-1]])
    rng = rng_for(seed, trial)
    if d.kind == "dupmod":
        return rng.integers(0, d.param, n, dtype=np.int64) + 1
    perm = rng.permutation(n).astype(np.int64) + 1
    if d.kind == "fewdistinct":
        return perm % d.param + 1
    return perm


@dataclass
class TrialRecord:
    algorithm: str
    n: int
    distribution: str
    seed: int
    trial: int
    comparisons: int
    moves: int
    time_ns: int
    max_depth: int
    cmp_norm_linear: float
    cmp_over_nlogn: float

    def row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


def normalized(c: int, n: int) -> tuple[float, float]:
    if n < 1:
        return math.nan, math.nan
    lg = math.log2(n)
    return (c - n * lg) / n, (c / (n * lg) if n > 1 else math.nan)


def make_config(algo: str, beta=None, delta=None, block=None, three_way=None, side=None) -> SortConfig | None:
    """Preset for ``algo`` with optional overrides; None for the std baselines."""
    if algo in ("std", "timsort"):
        return None
    if algo not in PRESETS:
        raise ValueError(f"unknown algorithm {algo!r}")
    kw = {}
    if beta is not None:
        if algo != "qmqs":
            raise ValueError("beta only applies to qmqs")
        kw["beta"] = Fraction(beta)
    if delta is not None:
        if algo != "hqms":
            raise ValueError("delta only applies to hqms")
        kw["delta"] = Fraction(delta)
    if block is not None:
        kw["block"] = block
    if three_way is not None:
        kw["three_way"] = three_way
    if side is not None:
        kw["mergesort_side"] = side
    return PRESETS[algo](**kw)


def run_trial(cfg: SortConfig | str | None, data: np.ndarray, *, algorithm=None, distribution="random",
              seed=0, trial=0) -> TrialRecord:
    """Sort a copy of ``data``, check the result and fill in a record.

    ``cfg`` is a SortConfig, a preset name, or ``"std"``/``"timsort"``/None
    for the platform sorts.  ``data`` itself is left untouched.
    """
    if isinstance(cfg, str):
        algorithm = algorithm or cfg
        cfg = make_config(cfg)
    if algorithm is None:
        algorithm = cfg.variant if cfg is not None else "std"
    a = np.array(data, dtype=np.int64)
    cmp = CountingComparator()
    if cfg is None:
        m = std_sort(a, cmp, impl="list" if algorithm == "timsort" else "numpy")
    else:
        m = sort(a, cfg, cmp=cmp)
    expect = np.sort(data, kind="stable")
    if not np.array_equal(a, expect):
        bad = np.flatnonzero(a != expect)
        raise SortFailure(
            f"{algorithm} n={len(a)} {distribution} seed={seed} trial={trial}: "
            f"output differs from oracle at {bad.size} position(s), first {int(bad[0])}"
        )
    lin, ratio = normalized(m.comparisons, len(a))
    return TrialRecord(algorithm, len(a), str(distribution), seed, trial, m.comparisons, m.moves,
                       m.elapsed, m.max_depth, lin, ratio)


def bench(algo: str, ns, dist: Distribution | str, trials: int, seed: int, out=None, **overrides) -> list[TrialRecord]:
    """Run ``trials`` trials per n; writes CSV rows to ``out`` as they finish."""
    d = Distribution.parse(dist) if isinstance(dist, str) else dist
    cfg = make_config(algo, **overrides)
    writer = None
    if out is not None:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(HEADER)
    records = []
    for n in ns:
        for t in range(trials):
            rec = run_trial(cfg, generate_input(d, n, seed, t), algorithm=algo, distribution=d, seed=seed, trial=t)
            records.append(rec)
            if writer is not None:
                writer.writerow(rec.row())
    return records


def read_csv(path) -> list[TrialRecord]:
    conv = {f.name: f.type for f in fields(TrialRecord)}
    casts = {"str": str, "int": int, "float": float}
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(TrialRecord(**{k: casts[conv[k]](v) for k, v in row.items()}))
    return out


@dataclass
class Summary:
    algorithm: str
    n: int
    distribution: str
    trials: int
    mean_comparisons: float
    sd_comparisons: float
    mean_norm_linear: float
    sd_norm_linear: float
    mean_over_nlogn: float
    sd_over_nlogn: float
    mean_time_ns: float


def _sd(xs):
    return statistics.stdev(xs) if len(xs) > 1 else 0.0


def aggregate(records) -> list[Summary]:
    """Mean and sample standard deviation per (algorithm, n, distribution)."""
    groups: dict[tuple, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.n, r.distribution), []).append(r)
    out = []
    for (algo, n, dist), rs in groups.items():
        c = [r.comparisons for r in rs]
        lin = [r.cmp_norm_linear for r in rs]
        rat = [r.cmp_over_nlogn for r in rs]
        out.append(Summary(algo, n, dist, len(rs), statistics.fmean(c), _sd(c), statistics.fmean(lin), _sd(lin),
                           statistics.fmean(rat), _sd(rat), statistics.fmean(r.time_ns for r in rs)))
    return out


def print_summary(summaries, file=None) -> None:
    file = file or sys.stderr
    for s in summaries:
        print(
            f"{s.algorithm:>8} n={s.n:<9} {s.distribution:<14} trials={s.trials:<4} "
            f"C/n-log n={s.mean_norm_linear:+.4f} (sd {s.sd_norm_linear:.4f})  "
            f"C/(n log n)={s.mean_over_nlogn:.4f}  time={s.mean_time_ns / 1e6:.2f} ms",
            file=file,
        )
