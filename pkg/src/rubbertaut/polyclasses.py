"""Class-valued polynomials: the genus-one divisor quadric, exact
interpolation, and the formal normal-function square expansion.

The centerpiece is a quadratic form in weights attached to the non-reference
marks whose coefficients are degree-one tautological classes
(:class:`~rubbertaut.tautring.TautClass`).  The same container also supports
plain rational coefficients, so the exact tensor-grid interpolator below is
generic in the value type.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Any, Callable, Mapping, Sequence

from .errors import InvalidArgumentError
from .tautring import (
    RingContext,
    TautClass,
    boundary,
    psi1,
    pullback_forget,
    relabel,
)

__all__ = [
    "MultiPoly",
    "genus1_polynomial",
    "check_pullback_stability",
    "check_equivariance",
    "check_homogeneity",
    "interpolate",
    "hain_expand",
]


def _is_zero_value(value: Any) -> bool:
    if value is None:
        return True
    is_zero = getattr(value, "is_zero", None)
    if callable(is_zero):
        return bool(is_zero())
    return value == 0


@dataclass(frozen=True)
class MultiPoly:
    """A polynomial in several variables with duck-typed coefficients.

    ``coeffs`` maps exponent tuples (one entry per variable) to values; the
    values only need addition among themselves and left-multiplication by
    ``Fraction``.  Zero values are dropped on construction.
    """

    nvars: int
    coeffs: Mapping[tuple[int, ...], Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[tuple[int, ...], Any] = {}
        for exponents, value in self.coeffs.items():
            key = tuple(int(e) for e in exponents)
            if len(key) != self.nvars or any(e < 0 for e in key):
                raise InvalidArgumentError(f"bad exponent tuple {exponents!r}")
            if not _is_zero_value(value):
                cleaned[key] = value
        object.__setattr__(self, "coeffs", cleaned)

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def coefficient(self, exponents: Sequence[int]) -> Any:
        return self.coeffs.get(tuple(int(e) for e in exponents))

    def evaluate(self, point: Sequence[Fraction | int]) -> Any:
        """Value at an exact rational point (None when the sum is empty)."""
        if len(point) != self.nvars:
            raise InvalidArgumentError(
                f"point has {len(point)} entries for {self.nvars} variables"
            )
        values = [Fraction(p) for p in point]
        total: Any = None
        for exponents, value in self.coeffs.items():
            scale = Fraction(1)
            for base, exp in zip(values, exponents):
                scale *= base**exp
            term = scale * value
            total = term if total is None else total + term
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        for key in keys:
            a = self.coeffs.get(key)
            b = other.coeffs.get(key)
            if a is None or b is None:
                return False
            if not a == b:
                return False
        return True


# ---------------------------------------------------------------------------
# The genus-one divisor quadric
# ---------------------------------------------------------------------------


def _pure_square_class(ctx: RingContext, i: int) -> TautClass:
    """Coefficient of ``alpha_i**2``: psi1 minus divisors separating 1 from i."""
    cls = psi1(ctx)
    for size in range(2, ctx.t):
        for genus0 in combinations(ctx.marks, size):
            if 1 in genus0 and i not in genus0:
                cls = cls - boundary(ctx, [m for m in ctx.marks if m not in genus0])
    return cls


def _mixed_class(ctx: RingContext, i: int, j: int) -> TautClass:
    """Coefficient of ``alpha_i alpha_j``: psi1 minus two families of divisors."""
    cls = psi1(ctx)
    for size in range(2, ctx.t):
        for genus0 in combinations(ctx.marks, size):
            separates = 1 in genus0 and i not in genus0 and j not in genus0
            joins = 1 not in genus0 and i in genus0 and j in genus0
            if separates or joins:
                cls = cls - boundary(ctx, [m for m in ctx.marks if m not in genus0])
    return cls


def genus1_polynomial(t: int) -> MultiPoly:
    """The degree-two class polynomial in weights ``alpha_2 .. alpha_t``.

    Variable ``i`` of the result corresponds to mark ``i + 2``; the
    coefficient of ``alpha_i**2`` and of ``alpha_i alpha_j`` are degree-one
    classes on the ``t``-mark space.
    """
    if t < 3:
        raise InvalidArgumentError(f"need at least 3 marks, got {t}")
    ctx = RingContext.standard(t)
    free_marks = list(range(2, t + 1))
    coeffs: dict[tuple[int, ...], TautClass] = {}

    def exponents(pairs: Mapping[int, int]) -> tuple[int, ...]:
        return tuple(pairs.get(m, 0) for m in free_marks)

    for i in free_marks:
        coeffs[exponents({i: 2})] = _pure_square_class(ctx, i)
    for i, j in combinations(free_marks, 2):
        coeffs[exponents({i: 1, j: 1})] = _mixed_class(ctx, i, j)
    return MultiPoly(t - 1, coeffs)


def check_pullback_stability(t: int) -> bool:
    """Setting the last weight to zero must recover the pulled-back polynomial.

    Compares every coefficient of the ``t``-mark polynomial with last
    exponent zero against the pullback (adding mark ``t``) of the matching
    coefficient one level down, in reduced normal form.
    """
    if t < 4:
        raise InvalidArgumentError(f"stability needs at least 4 marks, got {t}")
    big = genus1_polynomial(t)
    small = genus1_polynomial(t - 1)
    seen: set[tuple[int, ...]] = set()
    for exponents, value in small.coeffs.items():
        lifted_exponents = exponents + (0,)
        seen.add(lifted_exponents)
        counterpart = big.coefficient(lifted_exponents)
        if counterpart is None:
            return False
        if pullback_forget(value, t).reduce() != counterpart.reduce():
            return False
    for exponents in big.coeffs:
        if exponents[-1] == 0 and exponents not in seen:
            return False
    return True


def check_equivariance(t: int) -> bool:
    """Relabeling marks 2..t must permute the coefficients accordingly."""
    poly = genus1_polynomial(t)
    free_marks = list(range(2, t + 1))

    def exponents(pairs: Mapping[int, int]) -> tuple[int, ...]:
        return tuple(pairs.get(m, 0) for m in free_marks)

    for image in permutations(free_marks):
        mapping = {1: 1}
        mapping.update(dict(zip(free_marks, image)))
        for i in free_marks:
            moved = relabel(poly.coefficient(exponents({i: 2})), mapping)
            if moved != poly.coefficient(exponents({mapping[i]: 2})):
                return False
        for i, j in combinations(free_marks, 2):
            moved = relabel(poly.coefficient(exponents({i: 1, j: 1})), mapping)
            a, b = sorted((mapping[i], mapping[j]))
            if moved != poly.coefficient(exponents({a: 1, b: 1})):
                return False
    return True


def check_homogeneity(
    t: int, scale: Fraction | int, point: Sequence[Fraction | int]
) -> bool:
    """Degree-two homogeneity: ``P(c * a) == c**2 * P(a)`` at an exact point."""
    poly = genus1_polynomial(t)
    frac = Fraction(scale)
    scaled_point = [frac * Fraction(p) for p in point]
    lhs = poly.evaluate(scaled_point)
    rhs = frac * frac * poly.evaluate(point)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Exact tensor-grid interpolation
# ---------------------------------------------------------------------------


def _lagrange_basis(points: Sequence[Fraction]) -> list[list[Fraction]]:
    """Coefficient vectors of the Lagrange basis through the given nodes."""
    n = len(points)
    basis: list[list[Fraction]] = []
    for i in range(n):
        coeffs = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            denom *= points[i] - points[j]
            expanded = [Fraction(0)] * (len(coeffs) + 1)
            for degree, c in enumerate(coeffs):
                expanded[degree + 1] += c
                expanded[degree] -= points[j] * c
            coeffs = expanded
        padded = coeffs + [Fraction(0)] * (n - len(coeffs))
        basis.append([c / denom for c in padded])
    return basis


def interpolate(
    fn: Callable[[tuple[Fraction, ...]], Any],
    nvars: int,
    degrees: Sequence[int],
) -> MultiPoly:
    """Exact interpolation of ``fn`` on the integer grid ``{0..deg}**nvars``.

    ``fn`` must be a polynomial of per-variable degree at most ``degrees``;
    its values may be rationals or any type supporting addition and
    ``Fraction``-scaling (such as :class:`TautClass`).
    """
    if nvars < 1:
        raise InvalidArgumentError(f"need at least one variable, got {nvars}")
    if len(degrees) != nvars or any(d < 0 for d in degrees):
        raise InvalidArgumentError(f"bad per-variable degrees {degrees!r}")
    axes = [[Fraction(v) for v in range(d + 1)] for d in degrees]
    bases = [_lagrange_basis(axis) for axis in axes]
    coeffs: dict[tuple[int, ...], Any] = {}
    for grid_index in product(*(range(len(axis)) for axis in axes)):
        value = fn(tuple(axes[v][grid_index[v]] for v in range(nvars)))
        if _is_zero_value(value):
            continue
        for exponents in product(*(range(len(axis)) for axis in axes)):
            weight = Fraction(1)
            for v in range(nvars):
                weight *= bases[v][grid_index[v]][exponents[v]]
            if weight == 0:
                continue
            term = weight * value
            if exponents in coeffs:
                coeffs[exponents] = coeffs[exponents] + term
            else:
                coeffs[exponents] = term
    return MultiPoly(nvars, coeffs)


# ---------------------------------------------------------------------------
# Formal normal-function square expansion
# ---------------------------------------------------------------------------


def hain_expand(
    g: int, t: int, weights: Sequence[Fraction | int]
) -> dict[tuple[tuple, ...], Fraction]:
    """Expand the ``g``-th power of the weighted divisor combination.

    The linear combination pairs each mark's squared weight with a formal
    cotangent symbol ``("psi+", j)`` and each subset with formal boundary
    symbols ``("delta", h, J)``; the result maps degree-``g`` monomials
    (sorted symbol tuples) to exact rationals, including the ``1/g!``
    normalization.
    """
    if g < 2:
        raise InvalidArgumentError(f"need genus >= 2, got {g}")
    if t < 2:
        raise InvalidArgumentError(f"need at least 2 marks, got {t}")
    k = [Fraction(w) for w in weights]
    if len(k) != t:
        raise InvalidArgumentError(f"need {t} weights, got {len(k)}")
    if sum(k) != 0:
        raise InvalidArgumentError("weights must sum to zero")
    marks = list(range(1, t + 1))
    base: dict[tuple, Fraction] = {}
    for index, mark in enumerate(marks):
        value = k[index] ** 2 / 2
        if value:
            base[("psi+", mark)] = value
    for size in range(1, t + 1):
        for subset in combinations(range(t), size):
            k_sum = sum((k[i] for i in subset), Fraction(0))
            if k_sum == 0:
                continue
            j_key = tuple(marks[i] for i in subset)
            if size >= 2:
                base[("delta", 0, j_key)] = -(k_sum**2)
            for h in range(1, g):
                scaled = Fraction(2 * h - 1, 2 * g - 2) * k_sum
                base[("delta", h, j_key)] = -(scaled**2) / 2
    support = sorted(base)
    result: dict[tuple[tuple, ...], Fraction] = {}
    for monomial in combinations_with_replacement(support, g):
        coeff = Fraction(1)
        for symbol in monomial:
            coeff *= base[symbol]
        if not coeff:
            continue
        denom = 1
        for count in Counter(monomial).values():
            denom *= math.factorial(count)
        result[monomial] = coeff / denom
    return result
