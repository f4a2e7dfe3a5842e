"""Backend selection for the word-packed GF(2) kernels.

Prefers the compiled extension, falls back to the numpy implementation.
``COSETCODE_BACKEND=python`` or ``=c`` forces a choice (the latter raises if
the extension is missing). Both backends produce identical ranks, RREFs and
products; ``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import os
from typing import Any

_FORCED = os.environ.get("COSETCODE_BACKEND")

if _FORCED == "python":
    from . import _core_py as _impl
elif _FORCED == "c":
    from . import _corex as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _corex as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _core_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND_NAME

# four-Russians kicks in at this width unless a method is forced
M4R_THRESHOLD = 4096


def get_backend(name: str | None = None) -> Any:
    """Return a kernel module by name ("c" or "python"); default the active one."""
    if name is None:
        return _impl
    if name == "python":
        from . import _core_py

        return _core_py
    if name == "c":
        from . import _corex

        return _corex
    raise ValueError(f"unknown backend {name!r}")


def rank_words(words, cols: int, method: str = "auto", backend: Any = None) -> int:
    """GF(2) rank; destructive on ``words``. ``method``: auto, plain or m4r."""
    impl = backend if backend is not None else _impl
    if method == "auto":
        method = "m4r" if cols >= M4R_THRESHOLD else "plain"
    if method == "m4r":
        return int(impl.rank_m4r(words, cols))
    if method == "plain":
        return int(impl.rank_plain(words, cols))
    raise ValueError(f"unknown rank method {method!r}")


def rref_words(words, cols: int, backend: Any = None) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    impl = backend if backend is not None else _impl
    return list(impl.rref_words(words, cols))


def matmul_words(aw, a_cols: int, bw, backend: Any = None):
    """Word-packed GF(2) matrix product (A is a_rows x a_cols, B has a_cols rows)."""
    impl = backend if backend is not None else _impl
    return impl.matmul_words(aw, a_cols, bw)
