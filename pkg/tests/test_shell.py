import math

import numpy as np
import pytest

from rungelenz.angular import master_closed_form
from rungelenz.errors import InvalidLabels
from rungelenz.shell import (
    a_minus_elements,
    algebra_residuals,
    annihilation_check,
    build_shell,
    default_tolerance,
    spin_matrices,
)


def test_spin_matrices_half():
    Jx, Jy, Jz = spin_matrices(1)
    np.testing.assert_allclose(Jz, np.diag([-0.5, 0.5]))
    np.testing.assert_allclose(Jx @ Jy - Jy @ Jx, 1j * Jz, atol=1e-15)


def test_trivial_shell():
    S = build_shell(1)
    assert S.dim == 1
    for M in (*S.L, *S.Aprime):
        assert M.shape == (1, 1) and M[0, 0] == 0
    assert all(v == 0.0 for v in algebra_residuals(S).values())
    assert annihilation_check(S) == (0.0, 0.0)


def test_lz_diagonal_n2():
    S = build_shell(2)
    assert S.basis == ((0, 0), (1, -1), (1, 0), (1, 1))
    Lz = S.L[2]
    np.testing.assert_allclose(Lz, np.diag([0, -1, 0, 1]), atol=1e-14)


def test_l_squared_spectrum_n3():
    S = build_shell(3)
    L2 = sum(M @ M for M in S.L)
    evals = np.sort(np.linalg.eigvalsh(L2))
    np.testing.assert_allclose(evals, [0, 2, 2, 2, 6, 6, 6, 6, 6], atol=1e-12)
    # already diagonal in the coupled basis
    np.testing.assert_allclose(L2, np.diag([l * (l + 1) for l, _ in S.basis]), atol=1e-12)


def test_casimir_trace_n3():
    S = build_shell(3)
    C = sum(M @ M for M in S.Aprime) + sum(M @ M for M in S.L)
    assert abs(np.trace(C).real / 9 - 8) < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_algebra_residuals(n):
    S = build_shell(n)
    res = algebra_residuals(S)
    assert set(res) >= {"LL", "LA", "AA", "L.A", "A.L", "casimir", "B+B+", "B-B-", "B+B-", "hermiticity"}
    assert max(res.values()) < 1e-10
    assert res["hermiticity"] < 1e-13
    U = S.cg_transform
    assert np.max(np.abs(U @ U.T - np.eye(S.dim))) < 1e-12


def test_n2_residuals_tight():
    assert max(algebra_residuals(build_shell(2)).values()) < 1e-12


def test_matrices_are_read_only():
    S = build_shell(2)
    with pytest.raises(ValueError):
        S.L[0][0, 0] = 1.0


def test_a_minus_examples():
    S2 = build_shell(2)
    e = a_minus_elements(S2, 1)
    assert abs(e.c_down - (-math.sqrt(2))) < 1e-12 and e.c_up == 0 and abs(e.c_same) < 1e-12
    e = a_minus_elements(S2, 0)
    assert abs(e.c_up - math.sqrt(2)) < 1e-12 and e.c_down is None and e.c_same == 0
    e = a_minus_elements(build_shell(3), 1)
    assert abs(e.c_up - math.sqrt(2 / 3)) < 1e-12
    assert abs(e.c_down + math.sqrt(16 / 3)) < 1e-12
    assert abs(e.c_same) < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_a_minus_matches_closed_form(n):
    S = build_shell(n)
    for l in range(n):
        got = a_minus_elements(S, l)
        want = master_closed_form(n, l)
        assert abs(got.c_up - float(want.up)) < 1e-10
        if want.down is None:
            assert got.c_down is None
        else:
            assert abs(got.c_down - float(want.down)) < 1e-10
        assert abs(got.c_same) < 1e-12 and got.leakage < 1e-12


@pytest.mark.parametrize("n", [2, 5])
def test_annihilation(n):
    lo, hi = annihilation_check(build_shell(n))
    assert lo < 1e-12 and hi < 1e-12


def test_labels():
    S = build_shell(3)
    assert S.index(2, 2) == 8
    with pytest.raises(InvalidLabels):
        S.index(3, 0)
    with pytest.raises(InvalidLabels):
        a_minus_elements(S, 3)
    with pytest.raises(InvalidLabels):
        build_shell(0)


def test_default_tolerance():
    assert default_tolerance(2) == 1e-10
    assert default_tolerance(100) == pytest.approx(1e-9)
