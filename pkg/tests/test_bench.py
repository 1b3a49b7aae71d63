import csv
import io
import math

import numpy as np
import pytest

from quickmergesort.bench import (
    HEADER,
    Distribution,
    SortFailure,
    aggregate,
    bench,
    generate_input,
    make_config,
    read_csv,
    run_trial,
)

from conftest import FIG1, keys


def test_generate_sorted_and_organpipe():
    assert list(generate_input("sorted", 4)) == [1, 2, 3, 4]
    assert list(generate_input("organpipe", 6)) == [1, 2, 3, 3, 2, 1]
    assert list(generate_input("organpipe", 5)) == [1, 2, 3, 2, 1]
    assert list(generate_input("reverse", 3)) == [3, 2, 1]
    assert len(generate_input("random", 0)) == 0


def test_generate_random_replays():
    a = generate_input("random", 1000, 9)
    b = generate_input("random", 1000, 9)
    assert sorted(a) == list(range(1, 1001))
    assert a.tobytes() == b.tobytes()
    assert generate_input("random", 1000, 9, trial=1).tobytes() != a.tobytes()


def test_generate_duplicates():
    x = generate_input("fewdistinct:4", 1000, 1)
    assert set(x) == {1, 2, 3, 4}
    assert np.bincount(x).tolist()[1:] == [250] * 4
    y = generate_input("dupmod:3", 500, 1)
    assert set(y) <= {1, 2, 3}


def test_distribution_parse():
    assert str(Distribution.parse("fewdistinct:8")) == "fewdistinct:8"
    for bad in ("zipf", "fewdistinct", "sorted:3", "fewdistinct:x", "fewdistinct:0"):
        with pytest.raises(ValueError):
            Distribution.parse(bad)


def test_run_trial_fig1():
    data = keys(FIG1)
    rec = run_trial("qms", data)
    assert rec.comparisons > 0
    assert list(data) == FIG1  # original reusable


def test_run_trial_single():
    rec = run_trial("momqms", keys([3]))
    assert rec.comparisons == 0


def test_run_trial_std():
    rec = run_trial("std", generate_input("random", 300, 1))
    assert rec.algorithm == "std" and rec.comparisons >= 299


def test_run_trial_detects_broken_sort(monkeypatch):
    import quickmergesort.bench as B

    def broken(a, cfg, cmp=None):
        a[0], a[-1] = a[-1], a[0]
        return cmp.metrics()

    monkeypatch.setattr(B, "sort", broken)
    with pytest.raises(SortFailure, match="differs"):
        run_trial("qms", keys([1, 2, 3]))


def test_normalized_fields_recomputable():
    rec = run_trial("hqms", generate_input("random", 4096, 3))
    lg = math.log2(4096)
    assert rec.cmp_norm_linear == pytest.approx((rec.comparisons - 4096 * lg) / 4096)
    assert rec.cmp_over_nlogn == pytest.approx(rec.comparisons / (4096 * lg))


def test_bench_csv_schema_and_determinism(tmp_path):
    out = io.StringIO()
    recs = bench("qms", [100, 200], "random", 3, 1, out=out)
    rows = list(csv.reader(io.StringIO(out.getvalue())))
    assert rows[0] == HEADER
    assert ",".join(HEADER) == ("algorithm,n,distribution,seed,trial,comparisons,moves,time_ns,"
                                "max_depth,cmp_norm_linear,cmp_over_nlogn")
    assert len(rows) == 7 and len(recs) == 6
    again = bench("qms", [100, 200], "random", 3, 1)
    assert [r.comparisons for r in recs] == [r.comparisons for r in again]
    p = tmp_path / "x.csv"
    p.write_text(out.getvalue())
    back = read_csv(p)
    assert [r.comparisons for r in back] == [r.comparisons for r in recs]


def test_aggregate_mean_and_sample_sd():
    recs = bench("qmqs", [512], "random", 5, 2)
    (s,) = aggregate(recs)
    cs = [r.comparisons for r in recs]
    assert s.trials == 5
    assert s.mean_comparisons == pytest.approx(np.mean(cs))
    assert s.sd_comparisons == pytest.approx(np.std(cs, ddof=1))


def test_make_config_overrides():
    cfg = make_config("qmqs", beta="1/3", block=64, side="smaller")
    assert float(cfg.beta) == pytest.approx(1 / 3) and cfg.block == 64
    assert make_config("hqms", delta="1/8").delta == 0.125
    assert make_config("std") is None
    with pytest.raises(ValueError):
        make_config("qms", beta="1/2")
    with pytest.raises(ValueError):
        make_config("nope")


@pytest.mark.parametrize("dist", ["sorted", "reverse", "organpipe", "fewdistinct:3", "dupmod:10"])
def test_every_algorithm_every_distribution(dist):
    for algo in ("qms", "qmqs", "momqms", "hqms", "std", "timsort"):
        bench(algo, [0, 1, 777], dist, 1, 5)
