"""Dense GF(2) vectors and matrices with word-packed rows.

Bit i of a row lives in uint64 word i >> 6 at position i & 63; all bits past
the declared length are kept zero. Rank, kernel, products and stacking are
sized for matrices up to 2^16 x 2^16 under a configurable memory cap
(default 1 GiB, env override COSETCODE_MEMORY_CAP). Elimination always runs
on a scratch copy with a deterministic leftmost-pivot order, so ranks and
kernels are reproducible; results are identical across backends and across
the plain / four-Russians paths.

Matrix text format: first line ``rows cols``, then one ASCII 0/1 string per
row.

Operations never mutate their inputs (``rank_destructive`` is the explicit
exception), so instances shared across threads are safe as long as callers
treat them as frozen once shared.
"""

from __future__ import annotations

import os
import sys
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

if sys.byteorder != "little":  # packbits<->uint64 views assume this
    raise ImportError("cosetcode requires a little-endian platform")

WORD_BITS = 64
DEFAULT_MEMORY_CAP = 1 << 30

_memory_cap = int(os.environ.get("COSETCODE_MEMORY_CAP", DEFAULT_MEMORY_CAP))


class CapacityError(MemoryError):
    """A requested allocation exceeds the configured memory cap."""


class DimensionError(ValueError):
    """Operand shapes do not conform."""


def memory_cap() -> int:
    return _memory_cap


def set_memory_cap(nbytes: int) -> int:
    """Set the allocation cap in bytes; returns the previous value."""
    global _memory_cap
    if nbytes <= 0:
        raise ValueError("memory cap must be positive")
    old = _memory_cap
    _memory_cap = int(nbytes)
    return old


def _charge(nbytes: int) -> None:
    if nbytes > _memory_cap:
        raise CapacityError(
            f"allocation of {nbytes} bytes exceeds memory cap {_memory_cap}"
        )


def nwords(cols: int) -> int:
    return (cols + WORD_BITS - 1) // WORD_BITS


def matrix_bytes(rows: int, cols: int) -> int:
    return rows * nwords(cols) * 8


def _tail_mask(length: int) -> np.uint64:
    rem = length & 63
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


def _mask_tail_rows(words: np.ndarray, length: int) -> None:
    if words.shape[-1]:
        words[..., -1] &= _tail_mask(length)


class BitVector:
    """A length-n GF(2) vector packed into uint64 words."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray | None = None):
        if length < 0:
            raise ValueError("length must be nonnegative")
        self.length = length
        if words is None:
            words = np.zeros(nwords(length), dtype=np.uint64)
        else:
            words = np.ascontiguousarray(words, dtype=np.uint64)
            if words.shape != (nwords(length),):
                raise DimensionError("word payload does not match length")
            _mask_tail_rows(words, length)
        self.words = words

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        dense = np.asarray(list(bits), dtype=np.uint8) & 1
        return cls(len(dense), pack_rows(dense[None, :], len(dense))[0])

    @classmethod
    def from01(cls, text: str) -> BitVector:
        if text and set(text) - {"0", "1"}:
            raise ValueError("bit string may contain only 0 and 1")
        return cls.from_bits(int(ch) for ch in text)

    def copy(self) -> BitVector:
        return BitVector(self.length, self.words.copy())

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def set(self, i: int, value: int) -> None:
        if not 0 <= i < self.length:
            raise IndexError(i)
        bit = np.uint64(1) << np.uint64(i & 63)
        if value & 1:
            self.words[i >> 6] |= bit
        else:
            self.words[i >> 6] &= ~bit

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise DimensionError("xor of different lengths")
        return BitVector(self.length, self.words ^ other.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.length, self.words.tobytes()))

    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def is_zero(self) -> bool:
        return not self.words.any()

    def to_dense(self) -> np.ndarray:
        return unpack_words(self.words[None, :], self.length)[0]

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.to_dense())

    def __repr__(self) -> str:
        shown = self.to01() if self.length <= 64 else f"<{self.length} bits>"
        return f"BitVector({shown})"


class BitMatrix:
    """A rows x cols GF(2) matrix with word-packed rows."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        _charge(matrix_bytes(rows, cols))
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, nwords(cols)), dtype=np.uint64)
        else:
            words = np.ascontiguousarray(words, dtype=np.uint64)
            if words.shape != (rows, nwords(cols)):
                raise DimensionError("word payload does not match dimensions")
            _mask_tail_rows(words, cols)
        self.words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        m = cls(n, n)
        idx = np.arange(n)
        m.words[idx, idx >> 6] = np.uint64(1) << (idx & 63).astype(np.uint64)
        return m

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> BitMatrix:
        dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8) & 1)
        rows, cols = dense.shape
        return cls(rows, cols, pack_rows(dense, cols))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector | str | Iterable[int]]) -> BitMatrix:
        vecs = [
            r if isinstance(r, BitVector)
            else BitVector.from01(r) if isinstance(r, str)
            else BitVector.from_bits(r)
            for r in rows
        ]
        if not vecs:
            return cls(0, 0)
        cols = vecs[0].length
        if any(v.length != cols for v in vecs):
            raise DimensionError("rows of unequal length")
        return cls(len(vecs), cols, np.vstack([v.words for v in vecs]))

    def row(self, i: int) -> BitVector:
        if not 0 <= i < self.rows:
            raise IndexError(i)
        return BitVector(self.cols, self.words[i].copy())

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def set(self, i: int, j: int, value: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        bit = np.uint64(1) << np.uint64(j & 63)
        if value & 1:
            self.words[i, j >> 6] |= bit
        else:
            self.words[i, j >> 6] &= ~bit

    def copy(self) -> BitMatrix:
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("sum of different shapes")
        return BitMatrix(self.rows, self.cols, self.words ^ other.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.words.tobytes()))

    def is_zero(self) -> bool:
        return not self.words.any()

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def to_dense(self) -> np.ndarray:
        _charge(self.rows * max(self.cols, 1))
        return unpack_words(self.words, self.cols)

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def pack_rows(dense: np.ndarray, cols: int) -> np.ndarray:
    """Pack an (m, cols) 0/1 array into (m, nwords(cols)) uint64 words."""
    dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8) & 1)
    m = dense.shape[0]
    nw = nwords(cols)
    packed = np.packbits(dense, axis=1, bitorder="little")
    buf = np.zeros((m, nw * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return buf.view(np.uint64)


def unpack_words(words: np.ndarray, cols: int) -> np.ndarray:
    """Unpack (m, nw) uint64 words into an (m, cols) uint8 0/1 array."""
    if words.shape[1] == 0:
        return np.zeros((words.shape[0], cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


def rank(m: BitMatrix, method: str = "auto") -> int:
    """GF(2) row rank; the input matrix is not modified."""
    _charge(matrix_bytes(m.rows, m.cols))  # elimination scratch copy
    scratch = m.words.copy()
    return _kernels.rank_words(scratch, m.cols, method=method)


def rank_destructive(m: BitMatrix, method: str = "auto") -> int:
    """GF(2) rank computed in place; ``m`` holds its echelon form afterwards.

    Saves the scratch copy for budget-critical callers (the 2^16-vertex
    stress case fills half the default cap on its own).
    """
    return _kernels.rank_words(m.words, m.cols, method=method)


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """A basis of {x : M x = 0}; cols - rank(M) vectors, deterministic order."""
    _charge(matrix_bytes(m.rows, m.cols))
    scratch = m.words.copy()
    pivots = _kernels.rref_words(scratch, m.cols)
    piv_set = set(pivots)
    basis: list[BitVector] = []
    for free in range(m.cols):
        if free in piv_set:
            continue
        v = BitVector(m.cols)
        v.set(free, 1)
        wi, sh = free >> 6, np.uint64(free & 63)
        for j, pc in enumerate(pivots):
            if (scratch[j, wi] >> sh) & np.uint64(1):
                v.set(pc, 1)
        basis.append(v)
    return basis


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """GF(2) matrix product."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    _charge(matrix_bytes(a.rows, b.cols))
    out = _kernels.matmul_words(a.words, a.cols, b.words)
    return BitMatrix(a.rows, b.cols, out)


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    """GF(2) matrix-vector product."""
    if m.cols != v.length:
        raise DimensionError("matrix-vector length mismatch")
    anded = m.words & v.words[None, :]
    parities = np.bitwise_count(anded).sum(axis=1) & 1
    return BitVector(m.rows, pack_rows(parities.astype(np.uint8)[None, :], m.rows)[0])


def row_space_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff the row spaces coincide: rank(A) = rank(B) = rank(A over B)."""
    if a.cols != b.cols:
        raise DimensionError("row spaces live in different ambient spaces")
    ra = rank(a)
    rb = rank(b)
    if ra != rb:
        return False
    return rank(vstack([a, b])) == ra


def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    """Concatenate left to right."""
    if not blocks:
        raise ValueError("nothing to stack")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionError("hstack needs equal row counts")
    total = sum(b.cols for b in blocks)
    _charge(matrix_bytes(rows, total) + rows * max(total, 1))
    dense = np.concatenate([b.to_dense() for b in blocks], axis=1)
    return BitMatrix.from_dense(dense)


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    """Concatenate top to bottom."""
    if not blocks:
        raise ValueError("nothing to stack")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionError("vstack needs equal column counts")
    rows = sum(b.rows for b in blocks)
    _charge(matrix_bytes(rows, cols))
    return BitMatrix(rows, cols, np.concatenate([b.words for b in blocks], axis=0))


def block_assemble(grid: Sequence[Sequence[BitMatrix]]) -> BitMatrix:
    """Assemble a block matrix; grid[i][j] lands at block position (i, j)."""
    if not grid or not grid[0]:
        raise ValueError("empty block grid")
    width = len(grid[0])
    if any(len(row) != width for row in grid):
        raise DimensionError("ragged block grid")
    heights = [row[0].rows for row in grid]
    widths = [b.cols for b in grid[0]]
    for i, row in enumerate(grid):
        for j, b in enumerate(row):
            if b.rows != heights[i] or b.cols != widths[j]:
                raise DimensionError(f"block ({i}, {j}) does not conform")
    total_r, total_c = sum(heights), sum(widths)
    _charge(matrix_bytes(total_r, total_c) + total_r * max(total_c, 1))
    dense = np.zeros((total_r, total_c), dtype=np.uint8)
    y = 0
    for i, row in enumerate(grid):
        x = 0
        for j, b in enumerate(row):
            dense[y : y + heights[i], x : x + widths[j]] = b.to_dense()
            x += widths[j]
        y += heights[i]
    return BitMatrix.from_dense(dense)


def matrix_to_text(m: BitMatrix) -> str:
    dense = m.to_dense()
    lines = [f"{m.rows} {m.cols}"]
    lines.extend("".join("1" if b else "0" for b in row) for row in dense)
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> BitMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    rows, cols = map(int, lines[0].split())
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for i, ln in enumerate(lines[1:]):
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"row {i} is not a {cols}-bit 0/1 string")
        dense[i] = np.frombuffer(ln.encode(), dtype=np.uint8) - ord("0")
    return BitMatrix.from_dense(dense)


def write_matrix_text(m: BitMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(matrix_to_text(m))


def read_matrix_text(path) -> BitMatrix:
    with open(path) as fh:
        return matrix_from_text(fh.read())
