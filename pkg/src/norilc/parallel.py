"""Order-preserving thread map with a process-wide width setting."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_width = 1


def get_jobs() -> int:
    return _width


def set_jobs(n: int) -> None:
    global _width
    if n < 1:
        raise ValueError("parallelism width must be at least 1")
    _width = n


@contextmanager
def jobs(n: int):
    old = _width
    set_jobs(n)
    try:
        yield
    finally:
        set_jobs(old)


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """map() that may fan out over threads; results keep input order."""
    items = list(items)
    if _width == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_width) as ex:
        return list(ex.map(fn, items))
