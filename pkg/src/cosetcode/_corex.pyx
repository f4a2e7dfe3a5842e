# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for word-packed GF(2) matrices.

Rows are C-contiguous uint64 arrays, bit i of a row living in word i >> 6 at
position i & 63. All elimination routines are destructive on the array they
are handed; callers own the copy policy. The four-Russians rank groups up to
8 pivots per pass and sweeps the remaining rows with a 256-entry combination
table, which is what makes the 2^16-vertex cases tractable.
"""

from libc.stdint cimport uint8_t, uint16_t, uint64_t

import numpy as np

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

BACKEND_NAME = "c"


cdef inline int _bit(const uint64_t* row, Py_ssize_t col) noexcept nogil:
    return <int> ((row[col >> 6] >> (col & 63)) & 1)


cdef inline void _xor_rows(uint64_t* dst, const uint64_t* src, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(nw):
        dst[k] ^= src[k]


cdef inline void _swap_rows(uint64_t* a, uint64_t* b, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t k
    cdef uint64_t t
    for k in range(nw):
        t = a[k]
        a[k] = b[k]
        b[k] = t


def rank_plain(uint64_t[:, ::1] w, Py_ssize_t cols):
    """Row-echelon rank by one-pivot-at-a-time elimination (destructive)."""
    cdef Py_ssize_t rows = w.shape[0]
    cdef Py_ssize_t nw = w.shape[1]
    if rows == 0 or cols == 0:
        return 0
    cdef uint64_t* base = &w[0, 0]
    cdef Py_ssize_t rank = 0, col, i, piv
    cdef uint64_t* pr
    with nogil:
        for col in range(cols):
            if rank == rows:
                break
            piv = -1
            for i in range(rank, rows):
                if _bit(base + i * nw, col):
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                _swap_rows(base + piv * nw, base + rank * nw, nw)
            pr = base + rank * nw
            for i in range(rank + 1, rows):
                if _bit(base + i * nw, col):
                    _xor_rows(base + i * nw, pr, nw)
            rank += 1
    return rank


def rank_m4r(uint64_t[:, ::1] w, Py_ssize_t cols):
    """Row-echelon rank, four-Russians style (destructive).

    Per block of up to 8 columns: find pivots on the small bit-pattern
    matrix E (tracking, per row, which original pivot rows its reduction
    combines), then clear the whole block from every remaining row with a
    single table lookup per row.
    """
    cdef Py_ssize_t rows = w.shape[0]
    cdef Py_ssize_t nw = w.shape[1]
    if rows == 0 or cols == 0:
        return 0

    E_np = np.zeros(rows, dtype=np.uint16)
    combo_np = np.zeros(rows, dtype=np.uint16)
    ispiv_np = np.zeros(rows, dtype=np.uint8)
    live_np = np.zeros(rows, dtype=np.intp)
    table_np = np.zeros((256, nw), dtype=np.uint64)
    cdef uint16_t[::1] E = E_np
    cdef uint16_t[::1] combo = combo_np
    cdef uint8_t[::1] ispiv = ispiv_np
    cdef Py_ssize_t[::1] live = live_np
    cdef uint64_t[:, ::1] table = table_np

    cdef uint64_t* base = &w[0, 0]
    cdef uint64_t* tbase = &table[0, 0]
    cdef uint64_t* rp
    cdef uint64_t* dst
    cdef uint64_t* srcp
    cdef Py_ssize_t rank = 0, col = 0
    cdef Py_ssize_t kk, m, i, j, t, t2, li, nlive, sel, npiv, src, sz, idx, k
    cdef Py_ssize_t ploc[8]
    cdef uint16_t bitj, patt, cmb, c

    with nogil:
        while col < cols and rank < rows:
            kk = cols - col
            if kk > 8:
                kk = 8
            m = rows - rank
            # bit patterns of the block columns; rows with no bits never move
            nlive = 0
            for i in range(m):
                rp = base + (rank + i) * nw
                c = 0
                for j in range(kk):
                    if _bit(rp, col + j):
                        c |= <uint16_t> (1 << j)
                E[i] = c
                if c:
                    combo[i] = 0
                    ispiv[i] = 0
                    live[nlive] = i
                    nlive += 1
            npiv = 0
            for j in range(kk):
                bitj = <uint16_t> (1 << j)
                sel = -1
                for li in range(nlive):
                    i = live[li]
                    if (E[i] & bitj) and ispiv[i] == 0:
                        sel = i
                        break
                if sel < 0:
                    continue
                patt = E[sel]
                cmb = combo[sel] ^ <uint16_t> (1 << npiv)
                for li in range(nlive):
                    i = live[li]
                    if (E[i] & bitj) and i != sel:
                        E[i] ^= patt
                        combo[i] ^= cmb
                ploc[npiv] = sel
                ispiv[sel] = 1
                npiv += 1
            if npiv > 0:
                # table[mask] = XOR of the original pivot rows named by mask
                for k in range(nw):
                    tbase[k] = 0
                sz = 1
                for t in range(npiv):
                    rp = base + (rank + ploc[t]) * nw
                    for idx in range(sz):
                        dst = tbase + (sz + idx) * nw
                        srcp = tbase + idx * nw
                        for k in range(nw):
                            dst[k] = srcp[k] ^ rp[k]
                    sz <<= 1
                for li in range(nlive):
                    i = live[li]
                    c = combo[i]
                    if c:
                        _xor_rows(base + (rank + i) * nw, tbase + (<Py_ssize_t> c) * nw, nw)
                for t in range(npiv):
                    src = ploc[t]
                    if src != t:
                        _swap_rows(base + (rank + t) * nw, base + (rank + src) * nw, nw)
                        for t2 in range(t + 1, npiv):
                            if ploc[t2] == t:
                                ploc[t2] = src
                rank += npiv
            col += kk
    return rank


def rref_words(uint64_t[:, ::1] w, Py_ssize_t cols):
    """Reduced row echelon form in place; returns the pivot column list."""
    cdef Py_ssize_t rows = w.shape[0]
    cdef Py_ssize_t nw = w.shape[1]
    pivots = []
    if rows == 0 or cols == 0:
        return pivots
    cdef uint64_t* base = &w[0, 0]
    cdef Py_ssize_t rank = 0, col, i, piv
    cdef uint64_t* pr
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if _bit(base + i * nw, col):
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            _swap_rows(base + piv * nw, base + rank * nw, nw)
        pr = base + rank * nw
        with nogil:
            for i in range(rows):
                if i != rank and _bit(base + i * nw, col):
                    _xor_rows(base + i * nw, pr, nw)
        pivots.append(col)
        rank += 1
    return pivots


def matmul_words(uint64_t[:, ::1] aw, Py_ssize_t a_cols, uint64_t[:, ::1] bw):
    """GF(2) product: XOR the B-rows selected by each A-row's set bits."""
    cdef Py_ssize_t a_rows = aw.shape[0]
    cdef Py_ssize_t nwa = aw.shape[1]
    cdef Py_ssize_t nwb = bw.shape[1]
    out_np = np.zeros((a_rows, nwb), dtype=np.uint64)
    cdef uint64_t[:, ::1] out = out_np
    if a_rows == 0 or a_cols == 0 or bw.shape[0] == 0:
        return out_np
    cdef uint64_t* ob = &out[0, 0]
    cdef uint64_t* bb = &bw[0, 0]
    cdef Py_ssize_t i, wj, j
    cdef uint64_t word
    with nogil:
        for i in range(a_rows):
            for wj in range(nwa):
                word = aw[i, wj]
                while word:
                    j = (wj << 6) + __builtin_ctzll(word)
                    _xor_rows(ob + i * nwb, bb + j * nwb, nwb)
                    word &= word - 1
    return out_np
