from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cgaverma.combinatorics import Partition, partitions_of
from cgaverma.polyring import MultiPoly
from cgaverma.symfunc import (
    PExpr,
    a_coeffs,
    cauchy_check,
    e_in_p,
    expand_basis,
    power_sum_system_poly,
    reduce_p,
    reduce_p_closed,
    reduce_p_mod_p1,
    u_poly,
)

from conftest import small_rationals

x = [MultiPoly.var("sym", i) for i in range(4)]
P = PExpr.gen


def points(r):
    return st.lists(small_rationals, min_size=r, max_size=r)


def test_expand_basis_examples():
    assert expand_basis("e", 2, 2) == x[0] * x[1]
    assert expand_basis("p", 3, 2) == x[0] ** 3 + x[1] ** 3
    assert expand_basis("h", 2, 2) == x[0] ** 2 + x[0] * x[1] + x[1] ** 2
    assert expand_basis("e", 3, 2).is_zero()
    assert expand_basis("e", 0, 2) == expand_basis("h", 0, 2) == MultiPoly.const("sym", 1)
    with pytest.raises(ValueError):
        expand_basis("m", [1, 1, 1], 2)


def test_m_basis():
    assert expand_basis("m", [2, 1], 2) == x[0] ** 2 * x[1] + x[0] * x[1] ** 2


@pytest.mark.parametrize("n", range(1, 6))
def test_h_is_sum_of_monomials(n):
    # h_n = sum over all partitions of n of m_lambda
    for nv in (1, 2, 3):
        total = MultiPoly("sym")
        for lam in partitions_of(n):
            if lam.length <= nv:
                total = total + expand_basis("m", lam, nv)
        assert total == expand_basis("h", n, nv)


def test_e_in_p_examples():
    assert e_in_p(1) == P(1)
    assert e_in_p(2) == (P(1) * P(1) - P(2)).scale(Fraction(1, 2))
    assert e_in_p(3) == (P(1) ** 3 - (P(1) * P(2)).scale(3) + P(3).scale(2)).scale(Fraction(1, 6))


@pytest.mark.parametrize("n", range(1, 6))
def test_e_in_p_explicit(n):
    for nv in range(1, 5):
        assert e_in_p(n).to_multipoly(nv) == expand_basis("e", n, nv)


def test_u_poly_examples():
    y1, y2, y3 = (MultiPoly.var("arg", i) for i in range(3))
    assert u_poly(1) == y1
    assert u_poly(2) == y1**2 - y2.scale(2)
    assert u_poly(3) == y1**3 - (y1 * y2).scale(3) + y3.scale(3)


@pytest.mark.parametrize("n", range(1, 7))
def test_u_poly_gives_power_sums(n):
    # p_n(x) = u_n(e_1(x), ..., e_n(x)) in explicit variables
    for nv in (2, 3, 4):
        es = {i: expand_basis("e", i + 1, nv) for i in range(n)}
        assert u_poly(n).substitute(es, "sym") == expand_basis("p", n, nv)


@pytest.mark.parametrize("n", range(1, 9))
def test_newton_round_trip(n):
    assert reduce_p_closed(n, n) == P(n)


def test_reduce_p_examples():
    assert reduce_p(2, 5) == P(2)
    want = (P(1) * P(2)).scale(Fraction(3, 2)) - (P(1) ** 3).scale(Fraction(1, 2))
    assert reduce_p(3, 2) == want
    assert want.evaluate_at([1, 1]) == 2


@settings(max_examples=30)
@given(st.integers(1, 10), st.integers(1, 4), st.data())
def test_reduce_p_evaluates_to_power_sum(k, r, data):
    pt = data.draw(points(r))
    assert reduce_p(k, r).evaluate_at(pt) == sum(Fraction(v) ** k for v in pt)
    assert reduce_p(k, r).max_generator() <= r


@pytest.mark.parametrize("k", range(1, 9))
@pytest.mark.parametrize("r", range(1, 5))
def test_recurrence_matches_closed_sum(k, r):
    assert reduce_p(k, r) == reduce_p_closed(k, r)


def test_reduce_mod_p1_examples():
    for k in range(1, 8):
        assert reduce_p_mod_p1(k, 1).is_zero()
    assert reduce_p_mod_p1(4, 2) == (P(2) * P(2)).scale(Fraction(1, 2))
    assert reduce_p_mod_p1(5, 3) == (P(2) * P(3)).scale(Fraction(5, 6))


def test_a_coeffs_examples():
    a = a_coeffs(2, 2)
    assert a == {(Partition([2]), Partition([2])): 1, (Partition([1, 1]), Partition([1, 1])): 1}
    a = a_coeffs(3, 2)
    row = {mu: c for (lam, mu), c in a.items() if lam == Partition([3])}
    assert row == {Partition([2, 1]): Fraction(3, 2), Partition([1, 1, 1]): Fraction(-1, 2)}


@settings(max_examples=25)
@given(st.integers(0, 6), st.integers(1, 4), st.data())
def test_a_coeffs_by_evaluation(n, r, data):
    pt = data.draw(points(r))
    a = a_coeffs(n, r)
    for lam in partitions_of(n):
        lhs = PExpr({lam: 1}).evaluate_at(pt)
        rhs = sum(
            (c * PExpr({mu: 1}).evaluate_at(pt) for (l2, mu), c in a.items() if l2 == lam),
            Fraction(0),
        )
        assert lhs == rhs
        if lam.length and lam[0] <= r:
            assert {mu: c for (l2, mu), c in a.items() if l2 == lam} == {lam: 1}


def test_cauchy_examples():
    assert cauchy_check(1, 1, 2)
    assert cauchy_check(2, 2, 4)
    assert cauchy_check(3, 2, 5)


@pytest.mark.parametrize("nx", [1, 2, 3])
@pytest.mark.parametrize("ny", [1, 2, 3])
def test_cauchy_all(nx, ny):
    assert cauchy_check(nx, ny, 6)


def test_power_sum_system_examples():
    assert power_sum_system_poly([0]) == [1, 0]
    assert power_sum_system_poly([0, 2]) == [1, 0, -1]
    assert power_sum_system_poly([3, 5]) == [1, -3, 2]


@settings(max_examples=30)
@given(st.integers(1, 4), st.data())
def test_power_sum_system_recovers_inputs(r, data):
    roots = data.draw(points(r))
    a = [sum(Fraction(v) ** k for v in roots) for k in range(1, r + 1)]
    coeffs = power_sum_system_poly(a)
    # coefficients compared with the expanded product, no root extraction
    want = [Fraction(1)]
    for i in range(1, r + 1):
        e = sum((_prod(c) for c in combinations(roots, i)), Fraction(0))
        want.append((-1) ** i * e)
    assert coeffs == want
    # and Newton's identities send the e_i back to the a_i
    es = {i: (-1) ** i * coeffs[i] for i in range(1, r + 1)}
    for k in range(1, r + 1):
        val = u_poly(k).evaluate({i - 1: es.get(i, 0) for i in range(1, k + 1)})
        assert val == a[k - 1]


def _prod(vals):
    out = Fraction(1)
    for v in vals:
        out *= v
    return out


def test_pexpr_json():
    e = e_in_p(3)
    assert PExpr.from_json(e.to_json()) == e
    assert e.to_json()["terms"][0]["partition"] == [3]
