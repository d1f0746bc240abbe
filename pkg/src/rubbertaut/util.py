"""Small shared helpers: rational formatting, combinatorics, worker pools."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import InvalidArgumentError

__all__ = [
    "fraction_str",
    "parse_fraction",
    "falling_factorial",
    "binomial",
    "parallel_map",
    "worker_count",
]

T = TypeVar("T")
U = TypeVar("U")

#: Environment variable capping the worker pool used by ``parallel_map``.
THREADS_ENV = "RUBBER_TAUT_THREADS"


def fraction_str(value: Fraction | int) -> str:
    """Render an exact rational as ``p`` or ``p/q`` (never a float)."""
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"not a rational: {text!r}") from exc


def falling_factorial(n: int, k: int) -> int:
    """Product ``n (n-1) ... (n-k+1)`` with the empty product equal to 1.

    Defined for integer ``n`` and ``k >= 0``; returns 0 when ``0 <= n < k``.
    """
    if k < 0:
        raise InvalidArgumentError("falling factorial needs k >= 0")
    result = 1
    for i in range(k):
        result *= n - i
    return result


def worker_count() -> int:
    """Worker pool size: ``RUBBER_TAUT_THREADS`` if set, else 1."""
    raw = os.environ.get(THREADS_ENV, "")
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, count)


def parallel_map(fn: Callable[[T], U], items: Iterable[T]) -> list[U]:
    """Map ``fn`` over ``items`` preserving order.

    Uses a thread pool of ``worker_count()`` workers; with a single worker the
    map runs inline, so results are deterministic either way.
    """
    seq: Sequence[T] = list(items)
    workers = worker_count()
    if workers == 1 or len(seq) <= 1:
        return [fn(item) for item in seq]
    with ThreadPoolExecutor(max_workers=min(workers, len(seq))) as pool:
        return list(pool.map(fn, seq))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient for integer ``n`` (negative allowed) and ``k >= 0``."""
    if k < 0:
        raise InvalidArgumentError("binomial needs k >= 0")
    if n >= 0:
        return math.comb(n, k)
    return falling_factorial(n, k) // math.factorial(k)
