"""Pure-numpy kernels for word-packed GF(2) matrices.

Fallback backend with the same signatures and results as the compiled
``cosetcode._corex`` extension. Rows are C-contiguous uint64 arrays, bit i
of a row in word i >> 6 at position i & 63. Elimination routines are
destructive; callers own the copy policy.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_ONE = np.uint64(1)

# chunk for table-gather sweeps, keeps the fancy-indexing temp small
_SWEEP_CHUNK = 4096


def _column_bits(w: np.ndarray, col: int) -> np.ndarray:
    return (w[:, col >> 6] >> np.uint64(col & 63)) & _ONE


def rank_plain(w: np.ndarray, cols: int) -> int:
    """Row-echelon rank by one-pivot-at-a-time elimination (destructive)."""
    rows = w.shape[0]
    if rows == 0 or cols == 0:
        return 0
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        bits = _column_bits(w[rank:], col)
        nz = np.nonzero(bits)[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            w[[rank, piv]] = w[[piv, rank]]
        below = np.nonzero(_column_bits(w[rank + 1 :], col))[0]
        if below.size:
            w[rank + 1 + below] ^= w[rank]
        rank += 1
    return rank


def rank_m4r(w: np.ndarray, cols: int, block: int = 8) -> int:
    """Row-echelon rank, four-Russians style (destructive).

    Per block of up to ``block`` columns: run the pivot search on the small
    per-row bit patterns E, recording for every row which original pivot
    rows its reduction combines (``combo``), then apply all combinations to
    the full rows with one table lookup per row.
    """
    rows = w.shape[0]
    if rows == 0 or cols == 0:
        return 0
    rank = 0
    col = 0
    while col < cols and rank < rows:
        kk = min(block, cols - col)
        sub = w[rank:]
        m = sub.shape[0]
        E = np.zeros(m, dtype=np.uint16)
        for j in range(kk):
            E |= _column_bits(sub, col + j).astype(np.uint16) << j
        combo = np.zeros(m, dtype=np.uint16)
        is_piv = np.zeros(m, dtype=bool)
        ploc: list[int] = []
        for j in range(kk):
            bitj = 1 << j
            cand = np.nonzero(E & bitj)[0]
            sel = -1
            for i in cand[: len(ploc) + 1]:  # a non-pivot occurs within npiv+1 candidates
                if not is_piv[i]:
                    sel = int(i)
                    break
            if sel < 0:
                continue
            patt = E[sel]
            cmb = combo[sel] ^ np.uint16(1 << len(ploc))
            red = cand[cand != sel]
            E[red] ^= patt
            combo[red] ^= cmb
            is_piv[sel] = True
            ploc.append(sel)
        npiv = len(ploc)
        if npiv:
            porig = sub[np.array(ploc)].copy()
            table = np.zeros((1 << npiv, w.shape[1]), dtype=np.uint64)
            for t in range(npiv):
                h = 1 << t
                table[h : 2 * h] = table[:h] ^ porig[t]
            for i0 in range(0, m, _SWEEP_CHUNK):
                cc = combo[i0 : i0 + _SWEEP_CHUNK]
                nzr = np.nonzero(cc)[0]
                if nzr.size:
                    sub[i0 + nzr] ^= table[cc[nzr]]
            for t in range(npiv):
                src = ploc[t]
                if src != t:
                    sub[[t, src]] = sub[[src, t]]
                    for t2 in range(t + 1, npiv):
                        if ploc[t2] == t:
                            ploc[t2] = src
            rank += npiv
        col += kk
    return rank


def rref_words(w: np.ndarray, cols: int) -> list[int]:
    """Reduced row echelon form in place; returns the pivot column list."""
    rows = w.shape[0]
    pivots: list[int] = []
    if rows == 0 or cols == 0:
        return pivots
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(_column_bits(w[rank:], col))[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            w[[rank, piv]] = w[[piv, rank]]
        ones = np.nonzero(_column_bits(w, col))[0]
        ones = ones[ones != rank]
        if ones.size:
            w[ones] ^= w[rank]
        pivots.append(col)
        rank += 1
    return pivots


def matmul_words(aw: np.ndarray, a_cols: int, bw: np.ndarray) -> np.ndarray:
    """GF(2) product: XOR the B-rows selected by each A-row's set bits."""
    a_rows = aw.shape[0]
    out = np.zeros((a_rows, bw.shape[1]), dtype=np.uint64)
    if a_rows == 0 or a_cols == 0 or bw.shape[0] == 0:
        return out
    for i in range(a_rows):
        acc = out[i]
        for wj in range(aw.shape[1]):
            word = int(aw[i, wj])
            base = wj << 6
            while word:
                low = word & -word
                acc ^= bw[base + low.bit_length() - 1]
                word ^= low
    return out
