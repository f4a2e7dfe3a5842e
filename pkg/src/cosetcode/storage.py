"""Storage-code semantics: ranks, rates, repair and guessing-game checks.

A report for a family builds its generators and graph, computes the GF(2)
rank of the parity matrix, and derives dim = N - rank, the exact rational
rate dim/N, and the guessing number gn = N - rank, then evaluates the
family's rank bound. Ranks are computed densely whenever the parity matrix
fits the memory cap, and through the structured evaluator (tensorrank) for
the recursive families beyond it; where both run, they are cross-checked.

Random colorings for the guessing game come from numpy's default_rng
(PCG64) seeded explicitly, so outcomes are bit-reproducible across runs and
platforms. Bounds and rates are exact Fractions; floats appear only in
displays.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import bitlin, cosetgraph, tensorrank
from .bitlin import BitVector, CapacityError
from .codefam import FamilySpec
from .cosetgraph import CosetGraph, parity_matrix

RECURSIVE_FAMILIES = ("h2", "h3", "hs")

DEFAULT_SWEEP_GRID: tuple[tuple[int, int], ...] = tuple(
    (s, r) for s in (2, 3) for r in range(4, 9)
)
STRESS_PAIR = (4, 4)


class BoundViolationError(AssertionError):
    """A computed rank/rate violates the family's stated bound."""


@dataclass(frozen=True)
class StorageReport:
    """Derived statistics of one coset-graph storage code."""

    spec: FamilySpec
    n_vertices: int
    rank: int
    triangle_free: bool
    connected: bool
    bound_rhs: Fraction
    bound_kind: str  # "exact" or "upper"

    @property
    def dim(self) -> int:
        return self.n_vertices - self.rank

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim, self.n_vertices)

    @property
    def gn(self) -> int:
        """Guessing number of the full-parity strategy: N + log2(P_s) = dim."""
        return self.dim

    @property
    def bound_met(self) -> bool:
        if self.bound_kind == "exact":
            return Fraction(self.rank) == self.bound_rhs
        return Fraction(self.rank) <= self.bound_rhs

    def to_json_dict(self) -> dict:
        out = {
            "family": self.spec.family,
            "s": self.spec.depth,
            "r": self.spec.r,
            "N": self.n_vertices,
            "rank": self.rank,
            "dim": self.dim,
            "rate_num": self.rate.numerator,
            "rate_den": self.rate.denominator,
            "gn": self.gn,
            "triangle_free": self.triangle_free,
            "connected": self.connected,
            "bound_rhs_num": self.bound_rhs.numerator,
            "bound_rhs_den": self.bound_rhs.denominator,
            "bound_met": self.bound_met,
        }
        if self.spec.family == "padded_hamming":
            out["m"] = self.spec.m
        return out


def rank_bound(spec: FamilySpec) -> tuple[Fraction, str]:
    """The family's rank bound from the source analysis: (rhs, kind)."""
    r = spec.r
    if spec.family == "hamming":
        return Fraction(1), "exact"  # complete graph: one global parity
    if spec.family == "zero_code":
        return Fraction(1 << r if r % 2 == 0 else 1 << (r - 1)), "exact"
    if spec.family == "repetition":
        if r % 2 == 1:
            return Fraction(1 << r), "exact"
        return Fraction((1 << r) - (1 << (r // 2)), 2), "exact"
    if spec.family == "padded_hamming":
        return Fraction(1 << (spec.m or 0)), "exact"
    if spec.family == "h2":
        return Fraction((1 << r) + 4), "upper"  # 2^{r+2}/4 + 4
    if spec.family == "h3":
        return Fraction((1 << (2 * r)) + 3 * (1 << (r + 2))), "upper"
    # hs: N (2^-s + 2^{-r+1})
    s = spec.s or 2
    return Fraction((1 << ((s - 1) * r)) + (1 << ((s - 2) * r + s + 1))), "upper"


def rate_lower_bound(s: int, r: int) -> Fraction:
    """The sweep's rate bound: 1 - 2^-s - 2^{-r+1}."""
    return 1 - Fraction(1, 1 << s) - Fraction(2, 1 << r)


def _dense_rank(graph: CosetGraph) -> int:
    pm = parity_matrix(graph)
    # the matrix is freshly materialized and owned here, eliminate in place
    return bitlin.rank_destructive(pm)


def _structured_rank(spec: FamilySpec) -> int:
    depth = spec.depth
    if depth is None:
        raise CapacityError(
            f"{spec.label()}: parity matrix exceeds the memory cap and no "
            "structured evaluator applies"
        )
    return tensorrank.family_rank(depth, spec.r, spec.generators().columns)


def compute_rank(spec: FamilySpec, method: str = "auto") -> int:
    """Parity-matrix rank; dense when it fits the cap, structured beyond.

    When both paths run for a recursive family they must agree; a mismatch
    raises, since both are meant to be exact.
    """
    n = 1 << spec.ambient_dim
    dense_fits = bitlin.matrix_bytes(n, n) <= bitlin.memory_cap()
    if method == "dense" or (method == "auto" and dense_fits):
        dense = _dense_rank(cosetgraph.build_graph(spec.generators()))
        if method == "auto" and spec.family in RECURSIVE_FAMILIES:
            structured = _structured_rank(spec)
            if structured != dense:
                raise AssertionError(
                    f"{spec.label()}: structured rank {structured} != dense {dense}"
                )
        return dense
    if method not in ("auto", "structured"):
        raise ValueError(f"unknown rank method {method!r}")
    return _structured_rank(spec)


def storage_report(spec: FamilySpec, method: str = "auto") -> StorageReport:
    """Build generators and graph, compute rank/rate/flags and the bound."""
    gens = spec.generators()
    bound, kind = rank_bound(spec)
    return StorageReport(
        spec=spec,
        n_vertices=1 << spec.ambient_dim,
        rank=compute_rank(spec, method=method),
        triangle_free=cosetgraph.is_triangle_free(gens),
        connected=cosetgraph.is_connected(gens),
        bound_rhs=bound,
        bound_kind=kind,
    )


def _coloring_bits(c) -> np.ndarray:
    if isinstance(c, BitVector):
        return c.to_dense()
    arr = np.asarray(c, dtype=np.uint8) & 1
    if arr.ndim != 1:
        raise ValueError("coloring must be one-dimensional")
    return arr


def verify_repair(graph: CosetGraph, c) -> bool:
    """Does every vertex equal the mod-2 sum of its neighbors' values?

    Self-loops follow the zero-generator convention, so this holds exactly
    for the kernel vectors of the parity matrix.
    """
    bits = _coloring_bits(c)
    if bits.shape[0] != graph.n_vertices:
        raise ValueError(
            f"coloring length {bits.shape[0]} != vertex count {graph.n_vertices}"
        )
    idx = np.arange(graph.n_vertices)
    acc = bits.copy()
    for h in graph.generators.nonzero():
        acc ^= bits[idx ^ h]
    return not acc.any()


@dataclass(frozen=True)
class GuessOutcome:
    """Strategy-vs-kernel comparison over seeded random colorings."""

    trials: int
    matches: int
    mismatches: int
    successes: int
    success_probability: Fraction  # exact P_s = 2^{dim - N}

    def __post_init__(self):
        if self.matches + self.mismatches != self.trials:
            raise ValueError("matches + mismatches must equal trials")


def guessing_equivalence(graph: CosetGraph, trials: int, seed: int) -> GuessOutcome:
    """Simulate the full-parity guessing strategy on random colorings.

    Each vertex guesses the mod-2 sum of its neighbors; a trial succeeds iff
    every guess is right. Success must coincide with kernel membership of
    the coloring (parity_matrix . x = 0); any disagreement is a mismatch.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    n = graph.n_vertices
    rng = np.random.default_rng(seed)
    colorings = rng.integers(0, 2, size=(trials, n), dtype=np.uint8)

    idx = np.arange(n)
    # a vertex sees only its proper neighbors; the self-loop convention makes
    # the guess formula the same whether or not 0 is a generator
    guesses = np.zeros_like(colorings)
    for h in graph.generators.nonzero():
        guesses ^= colorings[:, idx ^ h]
    strategy_wins = (guesses == colorings).all(axis=1)

    pm = parity_matrix(graph)
    packed = bitlin.pack_rows(colorings, n)
    in_kernel = np.ones(trials, dtype=bool)
    for v in range(n):
        parities = np.bitwise_count(packed & pm.words[v]).sum(axis=1) & np.uint64(1)
        in_kernel &= parities == 0

    mismatches = int((strategy_wins != in_kernel).sum())
    rank = bitlin.rank(pm)
    return GuessOutcome(
        trials=trials,
        matches=trials - mismatches,
        mismatches=mismatches,
        successes=int(strategy_wins.sum()),
        success_probability=Fraction(1, 1 << rank),
    )


def kernel_enumerate(graph: CosetGraph, cap: int = 1 << 16) -> list[BitVector]:
    """All codewords of the storage code, by spanning the kernel basis."""
    basis = bitlin.kernel_basis(parity_matrix(graph))
    dim = len(basis)
    if 1 << dim > cap:
        raise CapacityError(f"2^{dim} codewords exceed cap {cap}")
    words = [BitVector(graph.n_vertices)]
    current = BitVector(graph.n_vertices)
    # Gray-code walk: flip one basis vector per step
    for k in range(1, 1 << dim):
        flip = (k & -k).bit_length() - 1
        current = current ^ basis[flip]
        words.append(current)
    return words


def theorem_sweep(
    pairs: Iterable[tuple[int, int]],
    method: str = "auto",
    check: bool = True,
) -> list[StorageReport]:
    """Reports for hs(s, r) pairs, in (s, r) order, with the rate bound check.

    Any pair whose computed rate falls below 1 - 2^-s - 2^{-r+1} is a hard
    failure (BoundViolationError) unless check=False.
    """
    reports = []
    for s, r in sorted(set(pairs)):
        spec = FamilySpec("hs", r=r, s=s)
        rep = storage_report(spec, method=method)
        reports.append(rep)
        if check and rep.rate < rate_lower_bound(s, r):
            raise BoundViolationError(
                f"hs(s={s}, r={r}): rate {rep.rate} < bound {rate_lower_bound(s, r)}"
            )
    return reports


def rate_monotonicity(reports: Sequence[StorageReport]) -> dict[int, bool]:
    """Per depth s: is the rate nondecreasing in r across the given reports?"""
    by_s: dict[int, list[tuple[int, Fraction]]] = {}
    for rep in reports:
        if rep.spec.depth is not None:
            by_s.setdefault(rep.spec.depth, []).append((rep.spec.r, rep.rate))
    return {
        s: all(a[1] <= b[1] for a, b in zip(rows, rows[1:]))
        for s, rows in ((s, sorted(rows)) for s, rows in by_s.items())
    }


CSV_COLUMNS = [
    "family", "s", "r", "N", "rank", "dim", "rate_num", "rate_den", "gn",
    "triangle_free", "connected", "bound_rhs_num", "bound_rhs_den", "bound_met",
]


def report_to_json(report: StorageReport) -> str:
    return json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"


def reports_to_json(reports: Sequence[StorageReport]) -> str:
    return (
        json.dumps([r.to_json_dict() for r in reports], sort_keys=True, indent=2)
        + "\n"
    )


def reports_to_csv(reports: Sequence[StorageReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rep in reports:
        d = rep.to_json_dict()
        writer.writerow(
            [
                "" if d.get(col) is None
                else str(d[col]).lower() if isinstance(d[col], bool)
                else d[col]
                for col in CSV_COLUMNS
            ]
        )
    return buf.getvalue()
