"""Exact parity-matrix ranks for the recursive families, without dense work.

Every generator of H_s is a prefix in F_2^s plus at most one active Hamming
block, and each (prefix, block) pair that occurs at all occurs with the
complete set of nonzero block vectors. Summed over such a block, the
translations contribute ones(2^r) + I on that tensor factor, so the whole
adjacency sum lives in the small commutative algebra

    F_2[F_2^s] (x) F_2[eps_1, ..., eps_{s-1}] / (eps_i^2),

with eps_i acting as the all-ones matrix on block i (eps^2 = 2^r * eps = 0).
Over F_2[eps]/(eps^2) the block space F_2^{2^r} splits into one free summand
and 2^r - 2 trivial ones, so

    rank(A) = sum over V of (2^r - 2)^(s-1-|V|) * rank(A restricted to V),

where the restriction sets eps_i = 0 off V and is a dense matrix of order
2^s * 2^|V| <= 2^(2s-1). Each inner rank is a tiny bitlin elimination.

This reproduces the dense ranks exactly (checked in the test suite wherever
both paths fit in memory) and is what makes the sweep's N = 2^17 and 2^19
rows feasible: the dense matrices there would need 2 and 32 GiB.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from . import bitlin
from .bitlin import BitMatrix

Terms = frozenset[tuple[int, int]]  # {(prefix value, eps mask)} with coefficient 1


def symbolic_terms(s: int, r: int, columns: Iterable[int]) -> Terms:
    """Express sum(Gamma_h, h in S union {0}) in the prefix/eps algebra.

    Validates the structural assumptions: every nonzero column has at most
    one active r-bit block, and per (prefix, block) slot the column suffixes
    form the complete nonzero set.
    """
    n_blocks = s - 1
    width = n_blocks * r + s
    block_mask = (1 << r) - 1
    singles: set[int] = set()
    grouped: dict[tuple[int, int], set[int]] = {}
    cols = set(columns) | {0}
    for h in cols:
        if not 0 <= h < 1 << width:
            raise ValueError(f"column {h} outside F_2^{width}")
        prefix = h >> (n_blocks * r)
        active = [
            (i, (h >> ((n_blocks - 1 - i) * r)) & block_mask) for i in range(n_blocks)
        ]
        active = [(i, v) for i, v in active if v]
        if len(active) > 1:
            raise ValueError(
                "column touches several Hamming blocks; not in the recursive form"
            )
        if not active:
            if prefix in singles:
                raise ValueError("duplicate prefix-only column")
            singles.add(prefix)
        else:
            i, v = active[0]
            grouped.setdefault((prefix, i), set()).add(v)
    full = set(range(1, 1 << r))
    terms: dict[tuple[int, int], int] = {}

    def _flip(u: int, mask: int) -> None:
        key = (u, mask)
        terms[key] = terms.get(key, 0) ^ 1

    for u in singles:
        _flip(u, 0)
    for (u, i), vals in grouped.items():
        if vals != full:
            raise ValueError(
                f"block {i} under prefix {u:0{s}b} is not a complete Hamming set"
            )
        # ones + identity on block i: Gamma_u (x) (I + eps_i)
        _flip(u, 0)
        _flip(u, 1 << i)
    return frozenset(k for k, c in terms.items() if c)


def restricted_matrix(terms: Terms, s: int, keep_mask: int) -> BitMatrix:
    """Materialize the algebra element on F_2[F_2^s] (x) F_2[eps_V].

    Basis vectors are (u, m) with u in F_2^s and m a submask of keep_mask;
    a term (t, e) maps (u, m) to (u ^ t, m | e) when e is disjoint from m
    and contained in keep_mask, and kills it otherwise.
    """
    kept = [i for i in range(max(keep_mask.bit_length(), 1)) if keep_mask >> i & 1]
    nm = len(kept)
    submasks = []
    for local in range(1 << nm):
        m = 0
        for j, i in enumerate(kept):
            if local >> j & 1:
                m |= 1 << i
        submasks.append(m)
    pos = {m: j for j, m in enumerate(submasks)}
    n = (1 << s) * (1 << nm)
    out = BitMatrix(n, n)
    for (t, e) in terms:
        if e & ~keep_mask:
            continue
        for j, m in enumerate(submasks):
            if e & m:
                continue
            tgt = pos[m | e]
            for u in range(1 << s):
                row = (u ^ t) * (1 << nm) + tgt
                col = u * (1 << nm) + j
                out.set(row, col, out.get(row, col) ^ 1)
    return out


def rank_from_terms(terms: Terms, s: int, r: int) -> int:
    """Exact GF(2) rank of the materialized element on the full space."""
    n_blocks = s - 1
    total = 0
    for keep in range(1 << n_blocks):
        rho = bitlin.rank(restricted_matrix(terms, s, keep))
        mult = ((1 << r) - 2) ** (n_blocks - bin(keep).count("1"))
        total += mult * rho
    return total


def family_rank(s: int, r: int, columns: Iterable[int]) -> int:
    """Exact rank of sum(Gamma_h, h in S union {0}) for a recursive family."""
    return rank_from_terms(symbolic_terms(s, r, columns), s, r)


def full_matrix_from_terms(terms: Terms, s: int, r: int) -> BitMatrix:
    """Expand the algebra element to the actual 2^K x 2^K matrix (tests only)."""
    from . import permring

    n_blocks = s - 1
    width = n_blocks * r + s
    support: set[int] = set()
    for (t, e) in terms:
        # eps_i expands to sum(Gamma_v, v in block i) including v = 0
        expansions = [t << (n_blocks * r)]
        for i in range(n_blocks):
            if e >> i & 1:
                shift = (n_blocks - 1 - i) * r
                expansions = [
                    base | (v << shift) for base in expansions for v in range(1 << r)
                ]
        for h in expansions:
            support.symmetric_difference_update({h})
    return permring.materialize(permring.PermSum(width, tuple(support)))
