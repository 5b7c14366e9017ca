from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from cgaverma.combinatorics import (
    Partition,
    bernoulli_number,
    bernoulli_poly,
    count_no_ones,
    partition_stats,
    partitions_of,
)


def brute_partitions(n):
    """All non-increasing positive sequences summing to n, by filtering tuples."""
    found = set()
    for length in range(n + 1):
        for parts in product(range(1, n + 1), repeat=length):
            if sum(parts) == n and list(parts) == sorted(parts, reverse=True):
                found.add(parts)
    return found


def cycle_type(perm):
    seen, lengths = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def test_partitions_of_zero():
    assert partitions_of(0) == [Partition()]


def test_partitions_of_four():
    assert len(partitions_of(4)) == 5


def test_partitions_with_max_part():
    assert partitions_of(4, 2) == [Partition([2, 2]), Partition([2, 1, 1]), Partition([1, 1, 1, 1])]


@pytest.mark.parametrize("n", range(0, 8))
def test_partitions_match_brute_force(n):
    got = partitions_of(n)
    assert {tuple(p) for p in got} == brute_partitions(n)
    assert len(got) == len(set(got))
    assert [list(p) for p in got] == sorted([list(p) for p in got], reverse=True)


def test_partition_counts():
    assert [len(partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_stats_examples():
    assert partition_stats(Partition()) == (1, 1, 1)
    assert partition_stats(Partition([2, 2])) == (1, 8, 1)
    assert partition_stats(Partition([3, 1, 1])) == (1, 6, 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_z_is_centralizer_order(n):
    # n!/z_lambda is the number of permutations with cycle type lambda
    counts = {}
    for perm in permutations(range(n)):
        t = cycle_type(perm)
        counts[t] = counts.get(t, 0) + 1
    for lam in partitions_of(n):
        assert counts[tuple(lam)] == factorial(n) // lam.z
        assert factorial(n) % lam.z == 0
        assert lam.epsilon == (-1) ** (n - lam.length)


@pytest.mark.parametrize("n", range(0, 9))
def test_sum_of_class_sizes(n):
    assert sum(Fraction(factorial(n), lam.z) for lam in partitions_of(n)) == factorial(n)


def test_u_counts_arrangements():
    for n in range(1, 7):
        for lam in partitions_of(n):
            assert lam.u == len(set(permutations(lam)))


def test_count_no_ones_examples():
    assert count_no_ones(0) == 1
    assert count_no_ones(1) == 0
    assert count_no_ones(6) == 4
    assert count_no_ones(8) == 7


@pytest.mark.parametrize("j", range(2, 21))
def test_count_no_ones_difference(j):
    assert count_no_ones(j) == len(partitions_of(j)) - len(partitions_of(j - 1))


def test_bernoulli_examples():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_poly(0, Fraction(7, 3)) == 1
    assert bernoulli_poly(1, 0) == Fraction(-1, 2)
    assert bernoulli_poly(2, 3) == Fraction(37, 6)


def test_bernoulli_against_generating_function():
    # x / (e^x - 1) = sum B_n x^n / n!
    x = sympy.Symbol("x")
    series = sympy.series(x / (sympy.exp(x) - 1), x, 0, 21).removeO()
    for n in range(21):
        want = sympy.Rational(series.coeff(x, n)) * sympy.factorial(n)
        assert bernoulli_number(n) == Fraction(int(want.p), int(want.q))


@pytest.mark.parametrize("n", range(21))
def test_bernoulli_reflection(n):
    assert bernoulli_poly(n, 1) == (-1) ** n * bernoulli_poly(n, 0)


@pytest.mark.parametrize("k", range(1, 11))
def test_odd_bernoulli_vanish(k):
    assert bernoulli_number(2 * k + 1) == 0


@given(st.integers(0, 12), st.fractions(max_denominator=9))
def test_bernoulli_poly_difference(n, x):
    # B_n(x + 1) - B_n(x) = n x^(n-1)
    lhs = bernoulli_poly(n, x + 1) - bernoulli_poly(n, x)
    assert lhs == (n * x ** (n - 1) if n else 0)


def test_partition_json():
    assert Partition().to_json() == []
    assert Partition([2, 2]).to_json() == [2, 2]
    assert Partition.from_multiplicities({2: 2, 1: 1}) == Partition([2, 2, 1])
