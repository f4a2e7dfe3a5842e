"""The commutative ring P_r of GF(2) sums of XOR-translation matrices.

Gamma_v is the 2^r x 2^r permutation matrix with entry (u, w) = 1 iff
u + w = v (vectors of F_2^r in lexicographic order, coordinate 1 most
significant). Sums of Gammas are represented sparsely by their support set
V, since the whole algebra is determined by supports: products convolve
supports with mod-2 cancellation, sums take symmetric differences. Dense
materialization happens only on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import bitlin
from .bitlin import BitMatrix


@dataclass(frozen=True)
class GroupElement:
    """An element of F_2^r, encoded as an integer index under lex order."""

    r: int
    value: int

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("group dimension must be >= 0")
        if not 0 <= self.value < 1 << self.r:
            raise ValueError(f"value {self.value} outside F_2^{self.r}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> GroupElement:
        value = 0
        for b in bits:
            value = (value << 1) | (b & 1)
        return cls(len(bits), value)

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.r - 1 - i)) & 1 for i in range(self.r))

    def to01(self) -> str:
        return format(self.value, f"0{self.r}b")

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __xor__(self, other: GroupElement) -> GroupElement:
        if self.r != other.r:
            raise ValueError("xor across different dimensions")
        return GroupElement(self.r, self.value ^ other.value)


def _values(r: int, elems: Iterable[int | GroupElement]) -> list[int]:
    out = []
    for e in elems:
        if isinstance(e, GroupElement):
            if e.r != r:
                raise ValueError("mixed dimensions in support")
            out.append(e.value)
        else:
            v = int(e)
            if not 0 <= v < 1 << r:
                raise ValueError(f"value {v} outside F_2^{r}")
            out.append(v)
    return out


@dataclass(frozen=True)
class PermSum:
    """An element of P_r: the sum of Gamma_v over a duplicate-free support."""

    r: int
    support: tuple[int, ...]

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("group dimension must be >= 0")
        vals = sorted(self.support)
        if any(not 0 <= v < 1 << self.r for v in vals):
            raise ValueError("support element outside the group")
        if any(a == b for a, b in zip(vals, vals[1:])):
            raise ValueError("duplicate support element")
        object.__setattr__(self, "support", tuple(vals))

    @classmethod
    def from_elements(cls, r: int, elems: Iterable[int | GroupElement]) -> PermSum:
        return cls(r, tuple(_values(r, elems)))

    @property
    def size(self) -> int:
        """s(A): the well-defined number of permutation summands."""
        return len(self.support)

    def is_zero(self) -> bool:
        return not self.support

    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self.r, v) for v in self.support)


def zero(r: int) -> PermSum:
    return PermSum(r, ())


def gamma(v: GroupElement) -> PermSum:
    """The single permutation matrix Gamma_v; gamma(0) is the identity."""
    return PermSum(v.r, (v.value,))


def identity(r: int) -> PermSum:
    return PermSum(r, (0,))


def _check_same_r(a: PermSum, b: PermSum) -> None:
    if a.r != b.r:
        raise ValueError(f"dimension mismatch: {a.r} vs {b.r}")


def add(a: PermSum, b: PermSum) -> PermSum:
    """Sum in P_r: symmetric difference of supports (pairs cancel mod 2)."""
    _check_same_r(a, b)
    return PermSum(a.r, tuple(set(a.support) ^ set(b.support)))


def mul(a: PermSum, b: PermSum) -> PermSum:
    """Product in P_r: XOR-convolution of supports with mod-2 cancellation."""
    _check_same_r(a, b)
    if not a.support or not b.support:
        return zero(a.r)
    av = np.asarray(a.support, dtype=np.int64)
    bv = np.asarray(b.support, dtype=np.int64)
    prods = np.bitwise_xor.outer(av, bv).ravel()
    vals, counts = np.unique(prods, return_counts=True)
    return PermSum(a.r, tuple(int(v) for v in vals[counts & 1 == 1]))


def parity(a: PermSum) -> str:
    """Parity of s(A): "odd" or "even"."""
    return "odd" if len(a.support) & 1 else "even"


def _require_odd(a: PermSum, what: str) -> None:
    if parity(a) != "odd":
        raise ValueError(f"{what} requires odd s(A), got s = {a.size}")


def self_inverse_check(a: PermSum) -> bool:
    """For odd s(A): does A * A equal the identity? (Always true.)"""
    _require_odd(a, "self_inverse_check")
    return mul(a, a) == identity(a.r)


def divide(a: PermSum, b: PermSum) -> PermSum:
    """The unique C with A*C = C*A = B, for odd s(A); C = A*B since A*A = I."""
    _require_odd(a, "divide")
    c = mul(a, b)
    if mul(a, c) != b:
        raise AssertionError("division check failed")  # unreachable for odd A
    return c


def stripe_scale(blocks: Sequence[PermSum], b: PermSum) -> list[PermSum]:
    """Scale a horizontal stripe (A_1|...|A_t) -> (A_1 B|...|A_t B), odd B.

    Preserves the stripe's row space, hence the rank of any matrix the
    stripe sits in.
    """
    _require_odd(b, "stripe_scale")
    if not blocks:
        return []
    if any(blk.r != b.r for blk in blocks):
        raise ValueError("stripe blocks of mixed dimension")
    return [mul(blk, b) for blk in blocks]


def materialize(a: PermSum) -> BitMatrix:
    """The dense 2^r x 2^r matrix with entry (u, w) = 1 iff u + w in supp(A)."""
    n = 1 << a.r
    bitlin._charge(bitlin.matrix_bytes(n, n))
    m = BitMatrix(n, n)
    if a.support:
        idx = np.arange(n)
        for v in a.support:
            cols = idx ^ v
            m.words[idx, cols >> 6] |= np.uint64(1) << (cols & 63).astype(np.uint64)
    return m


def class_concat_rank(a: PermSum, shifts: Sequence[int | GroupElement]) -> int:
    """Rank of (A*Gamma_u1 | A*Gamma_u2 | ...); equals rank(A) for any shifts."""
    if not shifts:
        raise ValueError("need at least one shift")
    vals = _values(a.r, shifts)
    blocks = [materialize(mul(a, PermSum(a.r, (u,)))) for u in vals]
    return bitlin.rank(bitlin.hstack(blocks))
