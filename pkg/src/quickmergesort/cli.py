"""Command line: ``qmsort bench|verify|sort-file``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import bench as B
from . import verify as V
from .driver import sort

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


class ParseError(ValueError):
    pass


def _ns(text):
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not ns or min(ns) < 0:
        raise argparse.ArgumentTypeError("sizes must be non-negative integers")
    return ns


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _dist(text):
    try:
        return B.Distribution.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _seed(text):
    s = int(text)
    if not 0 <= s < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return s


def read_ints(path) -> np.ndarray:
    vals = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s:
                # a lone trailing newline is fine, blank lines elsewhere are not
                rest = fh.read()
                if rest.strip():
                    raise ParseError(f"{path}:{lineno}: empty line")
                break
            try:
                v = int(s, 10)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not an integer: {s!r}") from None
            if not INT64_MIN <= v <= INT64_MAX:
                raise ParseError(f"{path}:{lineno}: value out of signed 64-bit range")
            vals.append(v)
    return np.array(vals, dtype=np.int64)


def sort_file(src, dst, cfg="qms"):
    a = read_ints(src)
    m = sort(a, cfg)
    with open(dst, "w", encoding="utf-8") as fh:
        if len(a):
            fh.write("\n".join(map(str, a.tolist())))
            fh.write("\n")
    return m


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmsort", description="QuickMergesort variants: benchmark, verify, sort files.")
    sub = p.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("bench", help="run trials and write one CSV row per trial")
    b.add_argument("--algo", required=True, choices=B.ALGORITHMS)
    b.add_argument("--n", required=True, type=_ns, help="comma separated sizes")
    b.add_argument("--dist", default=B.Distribution("random"), type=_dist,
                   help="random|sorted|reverse|organpipe|fewdistinct:<k>|dupmod:<m>")
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--seed", type=_seed, default=1)
    b.add_argument("--beta", type=_rational)
    b.add_argument("--delta", type=_rational)
    b.add_argument("--block", type=int)
    b.add_argument("--three-way", action="store_true", default=None)
    b.add_argument("--side", choices=("smaller", "larger"))
    b.add_argument("--out", help="CSV path (default stdout)")
    b.add_argument("--summary", action="store_true", help="print means and deviations to stderr")

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("--quick", action="store_true", help="sizes up to 10^4 only")

    for name in ("sort-file", "sort_file"):
        s = sub.add_parser(name, help="sort a file of integers, one per line")
        s.add_argument("input")
        s.add_argument("output")
        s.add_argument("--algo", default="qms", choices=B.ALGORITHMS[:4])
    return p


def main(argv=None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    if args.cmd == "bench":
        if args.trials < 1:
            p.error("--trials must be positive")
        overrides = dict(beta=args.beta, delta=args.delta, block=args.block, three_way=args.three_way, side=args.side)
        try:
            B.make_config(args.algo, **overrides)
        except ValueError as e:
            p.error(str(e))
        out = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            recs = B.bench(args.algo, args.n, args.dist, args.trials, args.seed, out=out, **overrides)
        finally:
            if args.out:
                out.close()
        if args.summary:
            B.print_summary(B.aggregate(recs))
        return 0
    if args.cmd == "verify":
        return 0 if V.run(quick=args.quick) else 1
    try:
        sort_file(args.input, args.output, args.algo)
    except (ParseError, OSError) as e:
        print(f"qmsort: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
