"""Parity-check matrix families for coset-graph storage codes.

Columns are encoded as integers with coordinate 1 as the most significant
bit, so lexicographic order of vectors is integer order. Families:

* ``hamming_matrix(r)``: all nonzero r-vectors in lex order (0..01 leftmost,
  1..1 rightmost); its coset graph is the complete graph K_{2^r}.
* ``padded_hamming_generators(r, m)``: Hamming columns extended by m zero
  rows; the graph splits into 2^m complete components.
* ``zero_code_generators(r)``: the standard basis.
* ``repetition_generators(r)``: {e_1, ..., e_r, 1_r, 0_r}.
* ``h2``/``hs``: the recursive triangle-free family. Column recursion
  (base s = 2, then per step): every column c of the previous matrix
  reappears as 0|c|0^r, every nonzero c also as 1|c|0^r, and a fresh
  Hamming block enters as 1|0^{(s-2)r+s-1}|h. Column order is: zero column
  first, first copy, new Hamming block, second copy; Hamming blocks are
  internally lex-ordered. The matrix is (s-1)r+s by (2^{s-1}-1)(2^r-1) +
  2^{s-1} + 1, asserted on construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bitlin import BitMatrix, pack_rows

FAMILIES = ("hamming", "zero_code", "repetition", "padded_hamming", "h2", "h3", "hs")

# h2/h3/hs triangle-freeness and rate claims hold for r >= 4
MIN_RECURSIVE_R = 4


@dataclass(frozen=True)
class GeneratorSet:
    """A duplicate-free set of columns of F_2^r, kept in construction order."""

    r: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("dimension must be >= 1")
        cols = tuple(int(c) for c in self.columns)
        if any(not 0 <= c < 1 << self.r for c in cols):
            raise ValueError("column outside F_2^r")
        if len(set(cols)) != len(cols):
            raise ValueError("duplicate columns")
        object.__setattr__(self, "columns", cols)

    def __len__(self) -> int:
        return len(self.columns)

    @property
    def has_zero(self) -> bool:
        return 0 in self.columns

    def nonzero(self) -> tuple[int, ...]:
        return tuple(c for c in self.columns if c)

    def to_matrix(self) -> BitMatrix:
        """The r x n check matrix whose j-th column is columns[j]."""
        return columns_to_matrix(self.r, self.columns)

    def to_lines(self) -> str:
        """One bitstring per column, in stored order."""
        return "\n".join(format(c, f"0{self.r}b") for c in self.columns) + "\n"


def columns_to_matrix(r: int, columns: Sequence[int]) -> BitMatrix:
    dense = np.zeros((r, len(columns)), dtype=np.uint8)
    for j, c in enumerate(columns):
        for i in range(r):
            dense[i, j] = (c >> (r - 1 - i)) & 1
    return BitMatrix(r, len(columns), pack_rows(dense, len(columns)))


def hamming_columns(r: int) -> list[int]:
    if r < 2:
        raise ValueError("Hamming matrix needs r >= 2")
    return list(range(1, 1 << r))


def hamming_matrix(r: int) -> BitMatrix:
    """Parity-check matrix of the length 2^r - 1 Hamming code, lex columns."""
    return columns_to_matrix(r, hamming_columns(r))


def padded_hamming_generators(r: int, m: int) -> GeneratorSet:
    """Hamming columns with m zero rows appended, as vectors of F^{r+m}."""
    if m < 1:
        raise ValueError("padding needs m >= 1")
    return GeneratorSet(r + m, tuple(h << m for h in hamming_columns(r)))


def zero_code_generators(r: int) -> GeneratorSet:
    """Standard basis e_1..e_r (zero-codeword-only small code)."""
    if r < 1:
        raise ValueError("needs r >= 1")
    return GeneratorSet(r, tuple(1 << (r - 1 - i) for i in range(r)))


def repetition_generators(r: int) -> GeneratorSet:
    """{e_1, ..., e_r, 1_r, 0_r} (repetition-plus-zero small code)."""
    if r < 2:
        raise ValueError("needs r >= 2")
    basis = tuple(1 << (r - 1 - i) for i in range(r))
    return GeneratorSet(r, basis + ((1 << r) - 1, 0))


def _check_recursive_params(s: int, r: int, allow_small_r: bool) -> None:
    if s < 2:
        raise ValueError("recursion depth s must be >= 2")
    if r < 2:
        raise ValueError("Hamming order r must be >= 2")
    if r < MIN_RECURSIVE_R and not allow_small_r:
        raise ValueError(
            f"r = {r} is below the r >= {MIN_RECURSIVE_R} regime; "
            "pass allow_small_r to override (triangle-freeness is then re-checked, "
            "not assumed)"
        )


def hs_dimensions(s: int, r: int) -> tuple[int, int]:
    """(rows, cols) of H_s by the closed formula."""
    return (s - 1) * r + s, ((1 << (s - 1)) - 1) * ((1 << r) - 1) + (1 << (s - 1)) + 1


def hs_columns(s: int, r: int, allow_small_r: bool = False) -> list[int]:
    """Columns of H_s as integers of width (s-1)r + s."""
    _check_recursive_params(s, r, allow_small_r)
    ham = hamming_columns(r)
    if s == 2:
        # zero col | Hamming block with 2-prefix (0,1) | (1,0)|0 | (1,1)|0
        cols = [0]
        cols += [(0b01 << r) | h for h in ham]
        cols += [0b10 << r, 0b11 << r]
    else:
        prev = hs_columns(s - 1, r, allow_small_r)
        top = 1 << (hs_dimensions(s, r)[0] - 1)
        cols = [c << r for c in prev]
        cols += [top | h for h in ham]
        cols += [top | (c << r) for c in prev if c]
    rows, ncols = hs_dimensions(s, r)
    if len(cols) != ncols or len(set(cols)) != ncols or max(cols) >= 1 << rows:
        raise AssertionError(f"H_{s} dimensions disagree with the closed formula")
    return cols


def h2_columns(r: int, allow_small_r: bool = False) -> list[int]:
    return hs_columns(2, r, allow_small_r)


def hs_matrix(s: int, r: int, allow_small_r: bool = False) -> BitMatrix:
    rows, _ = hs_dimensions(s, r)
    return columns_to_matrix(rows, hs_columns(s, r, allow_small_r))


def hs_generators(s: int, r: int, allow_small_r: bool = False) -> GeneratorSet:
    rows, _ = hs_dimensions(s, r)
    return GeneratorSet(rows, tuple(hs_columns(s, r, allow_small_r)))


def h2_matrix(r: int, allow_small_r: bool = False) -> BitMatrix:
    return hs_matrix(2, r, allow_small_r)


def h2_generators(r: int, allow_small_r: bool = False) -> GeneratorSet:
    return hs_generators(2, r, allow_small_r)


def min_distance(columns, limit: int = 4) -> int | None:
    """Smallest dependency among 1..limit-1 nonzero columns, or None.

    None means every set of fewer than ``limit`` nonzero columns is
    independent, i.e. the code generated by the nonzero columns has minimum
    distance >= limit. Zero columns are excluded from consideration. Only
    limit <= 4 is supported (pairwise/triple scan).
    """
    if limit > 4:
        raise ValueError("only limit <= 4 is supported")
    if isinstance(columns, BitMatrix):
        dense = columns.to_dense()
        r = columns.rows
        vals = [int("".join(map(str, dense[:, j])), 2) if r else 0 for j in range(columns.cols)]
    elif isinstance(columns, GeneratorSet):
        vals = list(columns.columns)
    else:
        vals = [int(c) for c in columns]
    vals = [c for c in vals if c]
    if limit >= 2 and len(set(vals)) != len(vals):
        return 2
    if limit >= 3:
        arr = np.asarray(sorted(set(vals)), dtype=np.int64)
        for i, a in enumerate(arr.tolist()):
            rest = arr[i + 1 :]
            sums = np.bitwise_xor(rest, a)
            # pair (a, b) closes a triple iff a^b is itself a column
            hits = np.isin(sums, arr)
            for b, sm in zip(rest[hits].tolist(), sums[hits].tolist()):
                if sm != a and sm != b:
                    return 3
    return None


@dataclass(frozen=True)
class FamilySpec:
    """Which parity-check family to build: kind plus its parameters."""

    family: str
    r: int
    s: int | None = None
    m: int | None = None
    allow_small_r: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.family == "hs":
            if self.s is None:
                raise ValueError("family hs needs the recursion depth s")
            if self.s < 2:
                raise ValueError("hs needs s >= 2")
        elif self.s is not None:
            raise ValueError(f"family {self.family} takes no s parameter")
        if self.family == "padded_hamming":
            if self.m is None or self.m < 1:
                raise ValueError("padded_hamming needs m >= 1")
        elif self.m is not None:
            raise ValueError(f"family {self.family} takes no m parameter")
        mins = {"hamming": 2, "zero_code": 1, "repetition": 2, "padded_hamming": 2}
        if self.family in mins and self.r < mins[self.family]:
            raise ValueError(f"family {self.family} needs r >= {mins[self.family]}")
        if self.family in ("h2", "h3", "hs"):
            _check_recursive_params(self.depth or 2, self.r, self.allow_small_r)

    @property
    def depth(self) -> int | None:
        """Recursion depth for the recursive families (2 for h2, 3 for h3)."""
        if self.family == "h2":
            return 2
        if self.family == "h3":
            return 3
        if self.family == "hs":
            return self.s
        return None

    @property
    def ambient_dim(self) -> int:
        """Dimension of the vertex group F_2^K."""
        if self.family in ("hamming", "zero_code", "repetition"):
            return self.r
        if self.family == "padded_hamming":
            return self.r + (self.m or 0)
        return hs_dimensions(self.depth or 2, self.r)[0]

    def label(self) -> str:
        if self.family == "hs":
            return f"hs(s={self.s}, r={self.r})"
        if self.family == "padded_hamming":
            return f"padded_hamming(r={self.r}, m={self.m})"
        return f"{self.family}(r={self.r})"

    def generators(self) -> GeneratorSet:
        if self.family == "hamming":
            return GeneratorSet(self.r, tuple(hamming_columns(self.r)))
        if self.family == "zero_code":
            return zero_code_generators(self.r)
        if self.family == "repetition":
            return repetition_generators(self.r)
        if self.family == "padded_hamming":
            return padded_hamming_generators(self.r, self.m or 1)
        return hs_generators(self.depth or 2, self.r, self.allow_small_r)

    def check_matrix(self) -> BitMatrix:
        if self.family == "hamming":
            return hamming_matrix(self.r)
        gens = self.generators()
        return gens.to_matrix()
