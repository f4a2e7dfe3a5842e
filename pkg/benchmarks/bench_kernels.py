#!/usr/bin/env python3
"""Benchmark the compiled GF(2) kernel against the numpy fallback.

Times rank computation (plain and four-Russians paths) on seeded random
matrices and on the parity matrices of the shipped code families, checking
along the way that every path returns the same rank. Results print as a
table; --csv / --json write machine-readable copies.

Usage:
    python benchmarks/bench_kernels.py [--sizes 1024,4096] [--families h2:8,h3:4]
                                       [--repeats 3] [--seed 2024]
                                       [--csv out.csv] [--json out.json]
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from cosetcode import _kernels, cosetgraph
from cosetcode.codefam import FamilySpec


@dataclass
class Row:
    case: str
    rows: int
    cols: int
    backend: str
    method: str
    rank: int
    seconds: float


def _available_backends() -> list[str]:
    names = []
    try:
        _kernels.get_backend("c")
        names.append("c")
    except ImportError:
        pass
    names.append("python")
    return names


def _time_rank(words: np.ndarray, cols: int, backend: str, method: str, repeats: int):
    impl = _kernels.get_backend(backend)
    best = float("inf")
    rank = -1
    for _ in range(repeats):
        scratch = words.copy()
        t0 = time.perf_counter()
        rank = _kernels.rank_words(scratch, cols, method=method, backend=impl)
        best = min(best, time.perf_counter() - t0)
    return rank, best


def bench_case(name: str, words: np.ndarray, cols: int, repeats: int) -> list[Row]:
    rows = []
    ranks = set()
    for backend in _available_backends():
        for method in ("plain", "m4r"):
            rank, secs = _time_rank(words, cols, backend, method, repeats)
            ranks.add(rank)
            rows.append(Row(name, words.shape[0], cols, backend, method, rank, secs))
    if len(ranks) != 1:
        raise AssertionError(f"{name}: backends/methods disagree on rank: {ranks}")
    return rows


def random_case(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    nw = (n + 63) // 64
    return rng.integers(0, 1 << 64, size=(n, nw), dtype=np.uint64)


def family_case(token: str) -> tuple[str, np.ndarray, int]:
    kind, _, r = token.partition(":")
    spec = (
        FamilySpec(kind, r=int(r))
        if kind != "hs"
        else FamilySpec("hs", r=int(r.split(",")[1]), s=int(r.split(",")[0]))
    )
    pm = cosetgraph.parity_matrix(cosetgraph.build_graph(spec.generators()))
    return spec.label(), pm.words, pm.cols


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1024,4096", help="random square sizes")
    ap.add_argument("--families", default="h2:8,h3:4", help="family cases kind:r")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--csv")
    ap.add_argument("--json")
    args = ap.parse_args(argv)

    all_rows: list[Row] = []
    for tok in filter(None, args.sizes.split(",")):
        n = int(tok)
        words = random_case(n, args.seed)
        all_rows += bench_case(f"random {n}x{n}", words, n, args.repeats)
    for tok in filter(None, args.families.split(",")):
        name, words, cols = family_case(tok)
        all_rows += bench_case(f"parity {name}", words, cols, args.repeats)

    width = max(len(r.case) for r in all_rows)
    print(f"{'case':<{width}}  {'size':>11}  {'backend':>7}  {'method':>6}  {'rank':>7}  {'secs':>9}")
    for r in all_rows:
        print(
            f"{r.case:<{width}}  {r.rows:>5}x{r.cols:<5}  {r.backend:>7}  "
            f"{r.method:>6}  {r.rank:>7}  {r.seconds:>9.4f}"
        )
    pensum = {}
    for r in all_rows:
        pensum.setdefault((r.case, r.method), {})[r.backend] = r.seconds
    if any("c" in v and "python" in v for v in pensum.values()):
        print("\nspeedup (python / c):")
        for (case, method), v in pensum.items():
            if "c" in v and "python" in v:
                print(f"  {case} [{method}]: {v['python'] / v['c']:.1f}x")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(asdict(all_rows[0])))
            w.writeheader()
            for r in all_rows:
                w.writerow(asdict(r))
        print(f"wrote {args.csv}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([asdict(r) for r in all_rows], fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.json}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
