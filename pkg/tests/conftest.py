"""Shared test helpers: independent oracles and random matrix generation."""

from __future__ import annotations

import numpy as np
import pytest

from cosetcode import bitlin
from cosetcode.bitlin import BitMatrix


def naive_rank(dense: np.ndarray) -> int:
    """Gaussian elimination on Python ints; independent of the packed engine."""
    m, n = dense.shape
    rows = [int("".join(str(int(b)) for b in row[::-1]), 2) if n else 0 for row in dense]
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if (rows[i] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, m):
            if (rows[i] >> col) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def span_set(dense: np.ndarray) -> frozenset[int]:
    """The full row span as a set of ints; only for tiny matrices."""
    m, n = dense.shape
    rows = [int("".join(str(int(b)) for b in row[::-1]), 2) if n else 0 for row in dense]
    span = {0}
    for r in rows:
        span |= {r ^ s for s in span}
    return frozenset(span)


def random_bitmatrix(rng: np.random.Generator, rows: int, cols: int) -> BitMatrix:
    return BitMatrix.from_dense(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xC0DE)


@pytest.fixture
def small_memory_cap():
    """Temporarily shrink the allocation cap; restores afterwards."""
    old = bitlin.set_memory_cap(1 << 14)
    yield 1 << 14
    bitlin.set_memory_cap(old)


# ---------------------------------------------------------------------------
# acceptance-criteria scoreboard (filled by test_acceptance.py)

CRITERION_RESULTS: list[tuple[str, bool, str]] = []


def record_criterion(label: str, ok: bool, detail: str) -> None:
    CRITERION_RESULTS.append((label, ok, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, ok, detail in CRITERION_RESULTS:
        tr.write_line(f"[{label}] {'PASS' if ok else 'FAIL'} - {detail}")
