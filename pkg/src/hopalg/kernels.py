"""GF(2) elimination backend, chosen at import.

The compiled extension ``hopalg._f2`` is used when it was built; otherwise the
pure-Python module ``hopalg._f2_py`` is used.  Both produce identical output.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

from . import _f2_py

try:
    from . import _f2 as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _f2_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = _compiled if _compiled is not None else _f2_py


def available() -> list[str]:
    return sorted(_BACKENDS)


def backend() -> str:
    return _active.NAME


def set_backend(name: str) -> None:
    """Select ``"compiled"``, ``"python"`` or ``"auto"``."""
    global _active
    if name == "auto":
        _active = _compiled if _compiled is not None else _f2_py
        return
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available()}") from None


@contextmanager
def using(name: str) -> Iterator[None]:
    previous = _active.NAME
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    return _active.rref(rows, ncols)


def left_kernel(rows: list[int], ncols: int) -> list[int]:
    return _active.left_kernel(rows, ncols)


def reduce(vec: int, rows: list[int], pivots: list[int]) -> int:
    """Reduce ``vec`` against echelon ``rows`` whose pivot columns are ``pivots``."""
    for row, piv in zip(rows, pivots):
        if vec >> piv & 1:
            vec ^= row
    return vec
