"""Exact truncated power series and Laurent polynomials over rational-like rings.

Everything here is exact: coefficients are ``fractions.Fraction`` (or, for
Laurent polynomials, elements of any user-supplied commutative ring described
by a :class:`RingOps` table).  Power series carry an explicit truncation
order; asking for a coefficient beyond it raises ``TruncationExceededError``
rather than returning a silent zero.  Laurent polynomials are finite by
construction and never truncate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Generic, Iterable, Mapping, TypeVar

from .errors import InvalidArgumentError, TruncationExceededError
from .util import fraction_str, parse_fraction

__all__ = [
    "PowerSeries",
    "series",
    "series_add",
    "series_coeff",
    "series_mul",
    "series_scale",
    "series_pow",
    "series_log",
    "series_exp",
    "series_compose",
    "series_tau",
    "series_log_sine",
    "series_to_json",
    "series_from_json",
    "RingOps",
    "FRACTION_OPS",
    "LaurentPoly",
]

C = TypeVar("C")


# ---------------------------------------------------------------------------
# Truncated power series over Fraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeries:
    """A power series truncated at an explicit order.

    ``coeffs[i]`` is the coefficient of ``x**i`` for ``0 <= i <= order``;
    nothing is known beyond ``order``.
    """

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        """Coefficient of ``x**n``; errors outside the stored range."""
        if n < 0:
            raise InvalidArgumentError(f"coefficient index must be >= 0, got {n}")
        if n > self.order:
            raise TruncationExceededError(
                f"coefficient {n} requested but series is truncated at order {self.order}"
            )
        return self.coeffs[n]


def series(coeffs: Iterable[Fraction | int], order: int | None = None) -> PowerSeries:
    """Build a series from leading coefficients, zero-padded to ``order``."""
    values = [Fraction(c) for c in coeffs]
    if order is None:
        if not values:
            raise InvalidArgumentError("empty series needs an explicit order")
        order = len(values) - 1
    if order < 0:
        raise InvalidArgumentError(f"order must be >= 0, got {order}")
    if len(values) > order + 1:
        raise InvalidArgumentError("more coefficients than the requested order allows")
    values.extend([Fraction(0)] * (order + 1 - len(values)))
    return PowerSeries(tuple(values))


def series_coeff(f: PowerSeries, i: int) -> Fraction:
    """Coefficient of ``x**i`` of ``f``; functional form of ``f.coefficient(i)``."""
    return f.coefficient(i)


def series_add(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Sum, truncated at the smaller of the two orders."""
    order = min(f.order, g.order)
    return PowerSeries(tuple(f.coeffs[i] + g.coeffs[i] for i in range(order + 1)))


def series_scale(f: PowerSeries, c: Fraction | int) -> PowerSeries:
    frac = Fraction(c)
    return PowerSeries(tuple(frac * a for a in f.coeffs))


def series_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Product, truncated at the smaller of the two orders."""
    order = min(f.order, g.order)
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(f.coeffs[: order + 1]):
        if a == 0:
            continue
        for j in range(order + 1 - i):
            b = g.coeffs[j]
            if b != 0:
                out[i + j] += a * b
    return PowerSeries(tuple(out))


def series_pow(f: PowerSeries, n: int) -> PowerSeries:
    """Non-negative integer power, truncated at ``f.order``."""
    if n < 0:
        raise InvalidArgumentError(f"power must be >= 0, got {n}")
    result = series([1], f.order)
    base = f
    while n:
        if n & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        n >>= 1
    return result


def series_log(f: PowerSeries) -> PowerSeries:
    """Logarithm of a series with constant term 1.

    Uses the derivative recurrence ``n f_n = n g_n + sum_{k<n} k g_k f_{n-k}``
    for ``g = log f``.
    """
    if f.coeffs[0] != 1:
        raise InvalidArgumentError("series_log needs constant term 1")
    n_max = f.order
    g = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n):
            acc += k * g[k] * f.coeffs[n - k]
        g[n] = f.coeffs[n] - acc / n
    return PowerSeries(tuple(g))


def series_exp(f: PowerSeries) -> PowerSeries:
    """Exponential of a series with constant term 0.

    Uses ``n h_n = sum_{k<=n} k f_k h_{n-k}`` for ``h = exp f``.
    """
    if f.coeffs[0] != 0:
        raise InvalidArgumentError("series_exp needs constant term 0")
    n_max = f.order
    h = [Fraction(0)] * (n_max + 1)
    h[0] = Fraction(1)
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if f.coeffs[k] != 0:
                acc += k * f.coeffs[k] * h[n - k]
        h[n] = acc / n
    return PowerSeries(tuple(h))


def series_compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Composition ``f(g(x))`` for ``g`` with constant term 0 (Horner form)."""
    if g.coeffs[0] != 0:
        raise InvalidArgumentError("series_compose needs inner constant term 0")
    order = min(f.order, g.order)
    result = series([f.coeffs[f.order]], order)
    for i in range(f.order - 1, -1, -1):
        result = series_mul(result, PowerSeries(g.coeffs[: order + 1]))
        result = series_add(result, series([f.coeffs[i]], order))
    return result


def series_tau(order: int) -> PowerSeries:
    """The tree series ``sum_{r>=1} r^(r-1)/r! x^r`` to the given order.

    It is the unique power-series solution of ``tau = x * exp(tau)`` with
    zero constant term.
    """
    if order < 1:
        raise InvalidArgumentError(f"order must be >= 1, got {order}")
    coeffs = [Fraction(0)]
    for r in range(1, order + 1):
        coeffs.append(Fraction(r ** (r - 1), math.factorial(r)))
    return PowerSeries(tuple(coeffs))


def series_log_sine(d: int, order: int) -> PowerSeries:
    """The even series ``log((d y / 2) / sin(d y / 2))`` to the given order.

    Built by expanding ``sin(z)/z`` at ``z = d y / 2`` and taking ``-log`` of
    the result, so every coefficient is an exact rational.
    """
    if d < 1:
        raise InvalidArgumentError(f"scale d must be >= 1, got {d}")
    if order < 0:
        raise InvalidArgumentError(f"order must be >= 0, got {order}")
    half = Fraction(d, 2)
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    for k in range(1, order // 2 + 1):
        coeffs[2 * k] = (-1) ** k * half ** (2 * k) / math.factorial(2 * k + 1)
    sinc = PowerSeries(tuple(coeffs))
    return series_scale(series_log(sinc), -1)


def series_to_json(f: PowerSeries) -> dict[str, Any]:
    """Serialize as ``{"order": N, "coeffs": ["p/q", ...]}``."""
    return {"order": f.order, "coeffs": [fraction_str(c) for c in f.coeffs]}


def series_from_json(data: Mapping[str, Any]) -> PowerSeries:
    """Inverse of :func:`series_to_json`."""
    try:
        order = int(data["order"])
        coeffs = [parse_fraction(str(c)) for c in data["coeffs"]]
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"malformed series payload: {data!r}") from exc
    if len(coeffs) != order + 1:
        raise InvalidArgumentError(
            f"series payload lists {len(coeffs)} coefficients for order {order}"
        )
    return PowerSeries(tuple(coeffs))


# ---------------------------------------------------------------------------
# Laurent polynomials over a duck-typed coefficient ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingOps(Generic[C]):
    """Operation table describing a commutative coefficient ring.

    ``zero`` is a factory (rings with mutable elements get fresh zeros),
    ``scale`` multiplies an element by an exact rational.
    """

    zero: Callable[[], C]
    add: Callable[[C, C], C]
    neg: Callable[[C], C]
    mul: Callable[[C, C], C]
    is_zero: Callable[[C], bool]
    scale: Callable[[C, Fraction], C]


FRACTION_OPS: RingOps[Fraction] = RingOps(
    zero=lambda: Fraction(0),
    add=lambda a, b: a + b,
    neg=lambda a: -a,
    mul=lambda a, b: a * b,
    is_zero=lambda a: a == 0,
    scale=lambda a, q: a * q,
)


class LaurentPoly(Generic[C]):
    """A finite Laurent polynomial in one variable ``t``.

    Exponents may be negative; coefficients live in the ring described by
    ``ops``.  All arithmetic is exact and never truncates.
    """

    __slots__ = ("ops", "_coeffs")

    def __init__(self, ops: RingOps[C], coeffs: Mapping[int, C] | None = None):
        self.ops = ops
        self._coeffs: dict[int, C] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not ops.is_zero(v):
                    self._coeffs[int(k)] = v

    # -- inspection -----------------------------------------------------

    def coefficient(self, k: int) -> C:
        """Coefficient of ``t**k`` (an exact zero if absent)."""
        if k in self._coeffs:
            return self._coeffs[k]
        return self.ops.zero()

    def support(self) -> list[int]:
        """Sorted exponents with nonzero coefficient."""
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        if not self._coeffs:
            raise InvalidArgumentError("zero Laurent polynomial has no degree")
        return min(self._coeffs)

    def max_degree(self) -> int:
        if not self._coeffs:
            raise InvalidArgumentError("zero Laurent polynomial has no degree")
        return max(self._coeffs)

    # -- arithmetic -----------------------------------------------------

    def add(self, other: "LaurentPoly[C]") -> "LaurentPoly[C]":
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            if k in out:
                out[k] = self.ops.add(out[k], v)
            else:
                out[k] = v
        return LaurentPoly(self.ops, out)

    def neg(self) -> "LaurentPoly[C]":
        return LaurentPoly(self.ops, {k: self.ops.neg(v) for k, v in self._coeffs.items()})

    def sub(self, other: "LaurentPoly[C]") -> "LaurentPoly[C]":
        return self.add(other.neg())

    def mul(self, other: "LaurentPoly[C]") -> "LaurentPoly[C]":
        out: dict[int, C] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                prod = self.ops.mul(a, b)
                key = i + j
                if key in out:
                    out[key] = self.ops.add(out[key], prod)
                else:
                    out[key] = prod
        return LaurentPoly(self.ops, out)

    def scale(self, q: Fraction | int) -> "LaurentPoly[C]":
        frac = Fraction(q)
        return LaurentPoly(self.ops, {k: self.ops.scale(v, frac) for k, v in self._coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly[C]":
        """Multiply by ``t**k``."""
        return LaurentPoly(self.ops, {e + k: v for e, v in self._coeffs.items()})

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.sub(other).is_zero()

    def __hash__(self):  # pragma: no cover - mutability guard
        raise TypeError("LaurentPoly is not hashable")

    def __repr__(self) -> str:
        terms = ", ".join(f"t^{k}: {self._coeffs[k]!r}" for k in self.support())
        return f"LaurentPoly({{{terms}}})"
