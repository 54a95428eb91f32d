import math
import time
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rungelenz.errors import GroundAngular, InvalidLabels, MixedAngular, NegativeRadius, NormalizationError
from rungelenz.exact import X, Polynomial, Surd
from rungelenz.radial import (
    RadialWaveFunction,
    ZeroFunction,
    evaluate,
    factorization_residual,
    generate_shell,
    lower_l,
    node_count,
    ode_residual,
    overlap,
    perturbed,
    radial_state,
    raise_l,
    top_state,
)

third = Surd.sqrt(Fraction(1, 27))
half = Surd.sqrt(Fraction(1, 8))

# explicit low-lying states, written out by hand: (prefactor, poly)
TABLE = {
    (1, 0): (Surd.coerce(2), [1]),
    (2, 1): (Surd.sqrt(Fraction(1, 3)) * half, [1]),
    (2, 0): (half * 2, [1, Fraction(-1, 2)]),
    (3, 2): (Surd.sqrt(2) * 2 / (Surd.sqrt(5) * 27) * third, [1]),
    (3, 1): (Surd.sqrt(2) * Fraction(4, 9) * third, [1, Fraction(-1, 6)]),
    (3, 0): (third * 2, [1, Fraction(-2, 3), Fraction(2, 27)]),
}


def laguerre_state(n, l):
    """Independent closed form through associated Laguerre polynomials."""
    k, alpha = n - l - 1, 2 * l + 1
    y = Fraction(2, n)
    # L_k^alpha(y x) = sum_i (-1)^i C(k+alpha, k-i) (y x)^i / i!
    coeffs = [Fraction((-1) ** i * comb(k + alpha, k - i), factorial(i)) * y**i for i in range(k + 1)]
    lead = coeffs[0]
    norm_sq = y**3 * Fraction(factorial(n - l - 1), 2 * n * factorial(n + l))
    prefactor = Surd.sqrt(norm_sq) * y**l * lead
    return prefactor, Polynomial.from_list([c / lead for c in coeffs])


@pytest.mark.parametrize("key", sorted(TABLE))
def test_table_states(key):
    n, l = key
    pref, poly = TABLE[key]
    R = radial_state(n, l)
    assert R.prefactor == pref
    assert R.poly == Polynomial.from_list(poly)
    assert R.decay_rate == Fraction(1, n)


@pytest.mark.parametrize("n", range(1, 13))
def test_matches_laguerre_oracle(n):
    for R in generate_shell(n):
        pref, poly = laguerre_state(n, R.l)
        assert R.prefactor == pref
        assert R.poly == poly


def test_generic_upper_forms():
    for n in range(2, 12):
        assert radial_state(n, n - 2).poly == Polynomial.from_list([1, Fraction(-1, n * (n - 1))])
    for n in range(3, 12):
        want = [1, Fraction(-2, n * (n - 2)), Fraction(4, n * n * (2 * n - 3) * (2 * n - 4))]
        assert radial_state(n, n - 3).poly == Polynomial.from_list(want)


def test_generic_prefactor_ratios():
    # relative to the top state, so independent of how it is normalized
    for n in range(2, 12):
        top = radial_state(n, n - 1).prefactor
        assert radial_state(n, n - 2).prefactor / top == Surd.sqrt(2 * n - 1) * (n * (n - 1))
        if n >= 3:
            want = Surd.sqrt((2 * n - 1) * (n - 1)) * Fraction((2 * n - 3) * (n - 2) * n * n, 2)
            assert radial_state(n, n - 3).prefactor / top == want
            assert radial_state(n, n - 3).poly[2] == Fraction(2, n * n * (2 * n * n - 7 * n + 6))


def test_top_state():
    assert top_state(1).prefactor == 2
    assert top_state(2).prefactor == Surd.sqrt(Fraction(1, 24))
    assert top_state(3).prefactor.square() == Fraction(2, 3) ** 7 / 720
    for n in range(1, 15):
        assert top_state(n).prefactor.square() == Fraction(2, n) ** (2 * n + 1) / factorial(2 * n)
    with pytest.raises(InvalidLabels):
        top_state(0)


def test_lowering_examples():
    assert lower_l(radial_state(2, 1)) == radial_state(2, 0)
    assert lower_l(radial_state(3, 2)).prefactor == TABLE[(3, 1)][0]
    with pytest.raises(GroundAngular):
        lower_l(radial_state(1, 0))


def test_raising_examples():
    for n in range(1, 8):
        assert isinstance(raise_l(top_state(n)), ZeroFunction)
    assert raise_l(radial_state(2, 0)) == top_state(2)
    assert raise_l(radial_state(3, 1)) == top_state(3)


@pytest.mark.parametrize("n", range(2, 10))
def test_round_trip(n):
    for l in range(n - 1):
        upper = radial_state(n, l + 1)
        assert raise_l(lower_l(upper)) == upper


def test_norm_is_checked():
    bad = RadialWaveFunction(2, 1, Surd.coerce(1), Polynomial.constant(1), Fraction(1, 2))
    with pytest.raises(NormalizationError):
        lower_l(bad)


def test_generate_shell_order():
    assert [R.l for R in generate_shell(4)] == [3, 2, 1, 0]
    with pytest.raises(InvalidLabels):
        generate_shell(0)
    with pytest.raises(InvalidLabels):
        radial_state(2, 2)


def test_evaluate():
    assert evaluate(radial_state(1, 0), 0) == 2.0
    assert evaluate(radial_state(2, 0), 2) == 0.0
    R21 = radial_state(2, 1)
    xs = np.linspace(4.0, 80.0, 50)
    values = evaluate(R21, xs)
    assert np.all(np.diff(values) < 0) and values[-1] < 1e-15
    with pytest.raises(NegativeRadius):
        evaluate(R21, -0.1)


@pytest.mark.parametrize("n", range(1, 7))
def test_evaluate_against_float_form(n):
    xs = np.linspace(0.0, 4.0 * n * n, 41)
    for R in generate_shell(n):
        pref, poly = laguerre_state(n, R.l)
        want = float(pref) * xs**R.l * np.polyval([float(c) for c in reversed(poly.coeffs)], xs) * np.exp(-xs / n)
        np.testing.assert_allclose(R(xs), want, rtol=1e-12, atol=1e-15)


def test_overlap_examples():
    assert overlap(radial_state(2, 0), radial_state(3, 0)) == 0
    assert overlap(radial_state(2, 1), radial_state(3, 1)) == 0
    with pytest.raises(MixedAngular):
        overlap(radial_state(2, 0), radial_state(2, 1))


@given(st.integers(0, 7).flatmap(lambda l: st.tuples(st.just(l), st.integers(l + 1, 8), st.integers(l + 1, 8))))
def test_orthonormality(lnn):
    l, n1, n2 = lnn
    assert overlap(radial_state(n1, l), radial_state(n2, l)) == int(n1 == n2)


@pytest.mark.parametrize("n", range(1, 11))
def test_ode_residual_vanishes(n):
    for R in generate_shell(n):
        assert ode_residual(R).is_zero()


def test_ode_residual_detects_perturbation():
    assert not ode_residual(perturbed(radial_state(1, 0), X)).is_zero()
    assert not ode_residual(perturbed(radial_state(3, 2), X * X)).is_zero()


def test_factorization_examples():
    first, second = factorization_residual(2, 0)
    assert first.is_zero() and second is None
    first, second = factorization_residual(3, 1)
    assert first.is_zero() and second.is_zero()
    first, second = factorization_residual(2, 1)
    assert first is None and second.is_zero()
    with pytest.raises(InvalidLabels):
        factorization_residual(2, 3)


@pytest.mark.parametrize("n", range(1, 11))
def test_node_count(n):
    for R in generate_shell(n):
        assert node_count(R) == n - R.l - 1


def test_text_form():
    assert str(radial_state(2, 0)) == "R_20(x) = 1/2*sqrt(2) * (1 - 1/2*x) * exp(-1/2 x)"


def test_large_shell_is_fast():
    start = time.perf_counter()
    shell = generate_shell(30)
    assert time.perf_counter() - start < 5.0
    assert all(overlap(R, R) == 1 for R in shell[::7])
    assert math.isfinite(float(shell[-1].prefactor))
