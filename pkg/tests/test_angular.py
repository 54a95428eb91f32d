from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rungelenz.angular import (
    CouplingKey,
    b_minus_closed_form,
    b_minus_direct,
    b_minus_element,
    clebsch_gordan,
    master_coefficients,
    reduced_b_element,
    wigner_6j,
)
from rungelenz.errors import InvalidLabels
from rungelenz.exact import ZERO, HalfInt, Surd, surd_sum
from rungelenz.oracles import cg_by_diagonalization, six_j_by_contraction

half = Fraction(1, 2)


def _ms(j2):
    return [HalfInt(t) for t in range(-j2, j2 + 1, 2)]


# --- oracle-frozen values -------------------------------------------------

def test_singlet_cg_matches_oracle():
    want = Surd(Fraction(1, 2), 2)
    assert cg_by_diagonalization(half, half, half, -half, 0, 0) == want
    assert clebsch_gordan(half, half, half, -half, 0, 0) == want


def test_six_j_values_match_oracle():
    assert six_j_by_contraction(1, 1, 1, 0, 1, 1) == Fraction(-1, 3)
    assert wigner_6j(1, 1, 1, 0, 1, 1) == Fraction(-1, 3)
    sixth = Surd(Fraction(1, 6), 6)
    assert six_j_by_contraction(half, half, 1, 1, 0, half) == sixth
    assert wigner_6j(half, half, 1, 1, 0, half) == sixth


def test_cg_trivial_cases():
    for j1, j2 in [(half, half), (1, 2), (Fraction(3, 2), 1)]:
        assert clebsch_gordan(j1, j1, j2, j2, j1 + j2, j1 + j2) == 1
    assert clebsch_gordan(1, 1, 1, 1, 1, 2) == ZERO
    assert clebsch_gordan(1, 0, 1, 0, 3, 0) == ZERO
    assert clebsch_gordan(1, 1, 1, 0, 2, 0) == ZERO


def test_six_j_triangle_violation():
    assert wigner_6j(1, 1, 3, 1, 1, 1) == ZERO


def test_coupling_key():
    assert CouplingKey.of(1, 0, half, half, half, half).is_valid()
    assert not CouplingKey.of(1, half, 1, 0, 1, half).is_valid()


# --- invariants -----------------------------------------------------------

@pytest.mark.parametrize("t1", range(7))
def test_cg_orthogonality(t1):
    for t2 in range(7):
        Js = range(abs(t1 - t2), t1 + t2 + 1, 2)
        for tJ in Js:
            for tK in Js:
                for tM in range(-min(tJ, tK), min(tJ, tK) + 1, 2):
                    terms = []
                    for m1 in _ms(t1):
                        m2 = HalfInt(tM - m1.twice)
                        if abs(m2.twice) > t2:
                            continue
                        a = clebsch_gordan(HalfInt(t1), m1, HalfInt(t2), m2, HalfInt(tJ), HalfInt(tM))
                        b = clebsch_gordan(HalfInt(t1), m1, HalfInt(t2), m2, HalfInt(tK), HalfInt(tM))
                        terms.append(a * b)
                    assert surd_sum(terms) == int(tJ == tK)


@pytest.mark.parametrize("tb", range(6))
def test_cg_exchange_symmetry(tb):
    b = HalfInt(tb)
    for lp in range(tb + 1):
        for M in range(-lp, lp + 1):
            for mp in _ms(tb):
                mm = HalfInt(2 * M - mp.twice)
                if abs(mm.twice) > tb:
                    continue
                lhs = clebsch_gordan(b, mp, b, mm, lp, M)
                rhs = clebsch_gordan(b, mm, b, mp, lp, M)
                sign = -1 if (tb - lp) % 2 else 1
                assert lhs == rhs * sign


def test_cg_matches_oracle_small_sample():
    for labels in [(1, 0, 1, 0, 0, 0), (Fraction(3, 2), half, 1, -1, half, -half), (2, 1, 1, -1, 2, 0)]:
        assert clebsch_gordan(*labels) == cg_by_diagonalization(*labels)


# --- ladder elements ------------------------------------------------------

def test_reduced_element():
    assert reduced_b_element(1) == ZERO
    assert reduced_b_element(2) == Surd.sqrt(Fraction(3, 2))
    assert reduced_b_element(3) == 2
    with pytest.raises(InvalidLabels):
        reduced_b_element(0)


def test_b_minus_examples():
    assert b_minus_element(2, 0, 1, "plus") == -Surd.sqrt(half)
    assert b_minus_element(2, 1, 1, "plus") == Surd.sqrt(half)
    assert b_minus_element(3, 3, 2, "plus") == ZERO
    for lp in range(3):
        for branch in ("plus", "minus"):
            assert b_minus_element(1, lp, 0, branch) == ZERO


@pytest.mark.parametrize("args", [(2, 0, 2), (3, -1, 1), (0, 0, 0)])
def test_b_minus_rejects_bad_labels(args):
    with pytest.raises(InvalidLabels):
        b_minus_element(*args)


def _hand_formula(n, lp, l, branch):
    sgn = 1 if branch == "plus" else -1
    if lp == l - 1:
        return -sgn * Surd.sqrt(Fraction(l * (n * n - l * l), 2 * (2 * l + 1)))
    if lp == l + 1:
        return sgn * Surd.sqrt(Fraction(n * n - (l + 1) ** 2, 2 * (2 * l + 1) * (2 * l + 3)))
    if lp == l:
        return Surd.sqrt(Fraction(l, 2))
    return ZERO


@pytest.mark.parametrize("n", range(1, 11))
def test_b_minus_all_routes_agree(n):
    for l in range(n):
        for lp in range(max(0, l - 2), l + 3):
            for branch in ("plus", "minus"):
                want = _hand_formula(n, lp, l, branch)
                assert b_minus_element(n, lp, l, branch) == want
                assert b_minus_closed_form(n, lp, l, branch) == want
                if n <= 5:
                    assert b_minus_direct(n, lp, l, branch) == want


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n))))
def test_branch_relation(nll):
    n, l, lp = nll
    plus = b_minus_element(n, lp, l, "plus")
    minus = b_minus_element(n, lp, l, "minus")
    assert minus == (plus if (l - lp) % 2 == 0 else -plus)


@pytest.mark.parametrize("n", range(1, 9))
def test_sum_rule_gives_l_minus(n):
    for l in range(n):
        total = b_minus_element(n, l, l, "plus") + b_minus_element(n, l, l, "minus")
        assert total == Surd.sqrt(2 * l)


@pytest.mark.parametrize("n", range(1, 9))
def test_master_coefficients(n):
    for l in range(n):
        c = master_coefficients(n, l)
        assert c.same == ZERO
        assert c.up == Surd.sqrt(Fraction(2 * (n * n - (l + 1) ** 2), (2 * l + 1) * (2 * l + 3)))
        if l == 0:
            assert c.down is None
        else:
            assert c.down == -Surd.sqrt(Fraction(2 * l * (n * n - l * l), 2 * l + 1))
