"""Cayley (coset) graphs over F_2^r and the prefix block decomposition.

Vertices are F_2^r; v and w are adjacent iff v + w is a nonzero generator.
A zero generator records a self-loop on every vertex. The parity matrix is
always the materialization of sum(Gamma_h for h in S union {0}), i.e. the
augmented adjacency matrix A + I when 0 is not a generator and the plain
adjacency matrix (which then already carries its diagonal) when it is, so
both conventions flow through one code path.

The graph is never materialized as an edge list; neighbors come straight
from the generator set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import bitlin, permring
from .bitlin import BitMatrix
from .codefam import GeneratorSet
from .permring import PermSum


@dataclass(frozen=True)
class CosetGraph:
    """Cay(F_2^r, S); immutable, queries are pure."""

    generators: GeneratorSet

    @property
    def r(self) -> int:
        return self.generators.r

    @property
    def n_vertices(self) -> int:
        return 1 << self.r

    @property
    def has_zero(self) -> bool:
        return self.generators.has_zero

    @property
    def degree(self) -> int:
        """Number of proper (non-loop) neighbors of every vertex."""
        return len(self.generators.nonzero())

    def neighbors(self, v: int) -> list[int]:
        if not 0 <= v < self.n_vertices:
            raise IndexError(v)
        return [v ^ h for h in self.generators.nonzero()]


def build_graph(s: GeneratorSet | Iterable[int], r: int | None = None) -> CosetGraph:
    """Construct the coset graph; duplicate columns are rejected."""
    if isinstance(s, GeneratorSet):
        return CosetGraph(s)
    cols = tuple(s)
    if r is None:
        raise ValueError("r is required when passing raw columns")
    return CosetGraph(GeneratorSet(r, cols))


def adjacency_sum(s: GeneratorSet) -> PermSum:
    """The adjacency matrix as a ring element: sum of Gamma_h over S as given."""
    return PermSum(s.r, s.columns)


def parity_matrix(g: CosetGraph) -> BitMatrix:
    """Materialize sum(Gamma_h, h in S union {0}): the full-parity check rows."""
    s = g.generators
    support = set(s.columns) | {0}
    return permring.materialize(PermSum(s.r, tuple(support)))


def is_triangle_free(s: GeneratorSet) -> bool:
    """No two distinct nonzero generators sum to a third (no 3-cliques)."""
    nz = sorted(s.nonzero())
    if len(nz) < 3:
        return True
    arr = np.asarray(nz, dtype=np.int64)
    for i, h in enumerate(arr.tolist()):
        sums = np.bitwise_xor(arr[i + 1 :], h)
        if np.isin(sums, arr).any():
            return False
    return True


def is_connected(s: GeneratorSet) -> bool:
    """True iff the nonzero generators span F_2^r (GF(2) rank = r)."""
    basis: list[int] = []
    for h in s.nonzero():
        v = h
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            if len(basis) == s.r:
                return True
    return len(basis) == s.r


@dataclass(frozen=True)
class BlockDecomposition:
    """Adjacency blocks by prefix: stripe (i, j) holds D_{v_i + v_j}.

    ``blocks`` maps every prefix-sum u in F_2^ell to the suffix-space
    element D_u = sum(Gamma_v, v in S_u), where S_u collects the suffixes of
    the generators whose ell-prefix is u; empty S_u gives the zero element.
    """

    r: int
    ell: int
    blocks: Mapping[int, PermSum]

    @property
    def suffix_dim(self) -> int:
        return self.r - self.ell


def block_decompose(s: GeneratorSet, ell: int) -> BlockDecomposition:
    """Split generators by their ell-bit prefix into suffix-space elements."""
    if not 0 <= ell <= s.r:
        raise ValueError(f"prefix length must be in 0..{s.r}")
    suffix_bits = s.r - ell
    groups: dict[int, set[int]] = {u: set() for u in range(1 << ell)}
    for h in s.columns:
        groups[h >> suffix_bits].add(h & ((1 << suffix_bits) - 1))
    blocks = {
        u: PermSum(suffix_bits, tuple(vals)) for u, vals in groups.items()
    }
    return BlockDecomposition(s.r, ell, blocks)


def reassemble(d: BlockDecomposition) -> BitMatrix:
    """Rebuild the adjacency sum from the block grid (entry (i,j) = D_{v_i+v_j}).

    Deliberately assembles the stripe grid from the per-prefix blocks rather
    than summing translations directly, so it can be checked against the
    direct construction.
    """
    if d.ell == 0:
        return permring.materialize(d.blocks[0])
    n_stripes = 1 << d.ell
    side = 1 << d.suffix_dim
    bitlin._charge((n_stripes * side) ** 2)
    tiles = np.stack(
        [permring.materialize(d.blocks[u]).to_dense() for u in range(n_stripes)]
    )
    grid = np.bitwise_xor.outer(np.arange(n_stripes), np.arange(n_stripes))
    dense = tiles[grid].transpose(0, 2, 1, 3).reshape(n_stripes * side, n_stripes * side)
    return BitMatrix.from_dense(dense)
