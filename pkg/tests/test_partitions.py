from __future__ import annotations

from fractions import Fraction

import pytest

from rubbertaut.errors import InvalidArgumentError
from rubbertaut.partitions import (
    MarkedPartition,
    aut,
    decorated_aut,
    enumerate_partitions,
    enumerate_marked,
    tau_power_coefficient,
)
from rubbertaut.series import series_pow, series_tau


# ---------------------------------------------------------------------------
# Independent oracle: partition counts via Euler's pentagonal recurrence
# ---------------------------------------------------------------------------


def _partition_counts(n_max: int) -> list[int]:
    counts = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = 1 if k % 2 else -1
            if g1 <= n:
                total += sign * counts[n - g1]
            if g2 <= n:
                total += sign * counts[n - g2]
            k += 1
        counts[n] = total
    return counts


def test_enumeration_count_matches_pentagonal_oracle() -> None:
    counts = _partition_counts(12)
    for n in range(1, 13):
        assert len(enumerate_partitions(n)) == counts[n]


def test_enumeration_contents_and_order() -> None:
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(6)) == 11
    for nu in enumerate_partitions(9):
        assert sum(nu) == 9
        assert nu == tuple(sorted(nu, reverse=True))
    assert len(set(enumerate_partitions(9))) == len(enumerate_partitions(9))


def test_enumeration_with_length_bound() -> None:
    bounded = enumerate_partitions(6, max_length=2)
    assert bounded == [(6,), (5, 1), (4, 2), (3, 3)]


def test_aut_orders() -> None:
    assert aut((3, 2, 1)) == 1
    assert aut((2, 2, 1)) == 2
    assert aut((1, 1, 1)) == 6
    assert aut((2, 2, 2, 1, 1)) == 12


def test_decorated_aut_distinguishes_decorations() -> None:
    assert decorated_aut([(1, (), True), (1, (), False), (1, (), False)]) == 2
    assert decorated_aut([(1, (), False)] * 3) == 6
    assert decorated_aut([(2, (1,), False), (2, (2,), False)]) == 1
    assert decorated_aut([]) == 1


def test_enumerate_marked_distinct_parts_have_trivial_orbits() -> None:
    classes = enumerate_marked((2, 1), (2, 3))
    assert len(classes) == 4
    assert all(orbit == 1 for _, orbit in classes)


def test_enumerate_marked_merge_equal_parts() -> None:
    classes = enumerate_marked((1, 1), (2, 3))
    assert classes == [
        (MarkedPartition(slots=((1, ()), (1, (2, 3)))), 2),
        (MarkedPartition(slots=((1, (2,)), (1, (3,)))), 2),
    ]
    single = enumerate_marked((1, 1), (2,))
    assert single == [(MarkedPartition(slots=((1, ()), (1, (2,)))), 2)]


def test_enumerate_marked_orbit_sizes_sum_to_all_assignments() -> None:
    for nu in [(3, 2, 1), (2, 2, 2), (2, 1, 1), (1, 1, 1, 1)]:
        for labels in [(2,), (2, 3), (2, 3, 4)]:
            classes = enumerate_marked(nu, labels)
            assert sum(orbit for _, orbit in classes) == len(nu) ** len(labels)


def test_enumerate_marked_reject_duplicate_labels() -> None:
    with pytest.raises(InvalidArgumentError):
        enumerate_marked((2, 1), (2, 2))


def test_tau_power_coefficient_matches_series_route() -> None:
    # Independent route: raise the tree series to the l-th power and read off
    # coefficients; the partition-sum formula must agree everywhere.
    for l in range(0, 5):
        power = series_pow(series_tau(8), l)
        for n in range(0, 9):
            assert tau_power_coefficient(n, l) == power.coefficient(n)


def test_tau_power_coefficient_frozen_values() -> None:
    assert tau_power_coefficient(0, 0) == 1
    assert tau_power_coefficient(3, 2) == 2
    assert tau_power_coefficient(1, 1) == 1
    assert tau_power_coefficient(2, 3) == 0
    assert tau_power_coefficient(4, 2) == 4
    assert tau_power_coefficient(5, 2) == Fraction(25, 3)
