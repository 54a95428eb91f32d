"""Explicit L and A' matrices on a degenerate hydrogen shell.

The shell ``n`` carries two commuting spin-``b`` algebras ``B(+)``, ``B(-)``
with ``b = (n-1)/2``.  On the product space ``|m+, m->`` we build
``L = B(+) + B(-)`` and ``A' = B(+) - B(-)`` and rotate both into the coupled
``|l, m>`` basis with Clebsch-Gordan coefficients.  Coupled basis order is
ascending ``l`` then ascending ``m``.  Units: hbar = 1, ``A'`` dimensionless.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .angular import clebsch_gordan
from .errors import InvalidLabels
from .spectrum import validate_labels, validate_n

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_j, _i, _k] = -1.0


def spin_matrices(twice_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(J_x, J_y, J_z)`` for spin ``j = twice_j/2``, basis ``m = -j .. j``."""
    j = twice_j / 2
    m = np.arange(-j, j + 1)
    # J_+ |j m> = sqrt(j(j+1) - m(m+1)) |j m+1>
    jp = np.diag(np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1)), k=-1).astype(complex)
    jm = jp.conj().T
    return (jp + jm) / 2, (jp - jm) / 2j, np.diag(m).astype(complex)


def coupled_basis(n: int) -> list[tuple[int, int]]:
    return [(l, m) for l in range(n) for m in range(-l, l + 1)]


def cg_transform(n: int) -> np.ndarray:
    """Real orthogonal matrix with rows ``|l, m>`` and columns ``|m+, m->``."""
    tb = n - 1
    ms = [Fraction(t, 2) for t in range(-tb, tb + 1, 2)]
    b = Fraction(tb, 2)
    basis = coupled_basis(n)
    U = np.zeros((n * n, n * n))
    for row, (l, m) in enumerate(basis):
        for ip, mp in enumerate(ms):
            im_ = ms.index(m - mp) if abs(m - mp) <= b else None
            if im_ is None:
                continue
            U[row, ip * n + im_] = float(clebsch_gordan(b, mp, b, m - mp, l, m))
    return U


@dataclass(frozen=True)
class ShellOperators:
    n: int
    L: tuple[np.ndarray, np.ndarray, np.ndarray]
    Aprime: tuple[np.ndarray, np.ndarray, np.ndarray]
    basis: tuple[tuple[int, int], ...]
    cg_transform: np.ndarray

    @property
    def dim(self) -> int:
        return self.n * self.n

    @property
    def b_plus(self) -> tuple[np.ndarray, ...]:
        return tuple((L + A) / 2 for L, A in zip(self.L, self.Aprime))

    @property
    def b_minus(self) -> tuple[np.ndarray, ...]:
        return tuple((L - A) / 2 for L, A in zip(self.L, self.Aprime))

    def a_lowering(self) -> np.ndarray:
        return self.Aprime[0] - 1j * self.Aprime[1]

    def a_raising(self) -> np.ndarray:
        return self.Aprime[0] + 1j * self.Aprime[1]

    def index(self, l: int, m: int) -> int:
        if not 0 <= l < self.n or abs(m) > l:
            raise InvalidLabels(f"no state |{self.n},{l},{m}>")
        return l * l + l + m


def build_shell(n: int) -> ShellOperators:
    validate_n(n)
    J = spin_matrices(n - 1)
    eye = np.eye(n)
    bp = [np.kron(Ji, eye) for Ji in J]
    bm = [np.kron(eye, Ji) for Ji in J]
    U = cg_transform(n)

    def rotate(M: np.ndarray) -> np.ndarray:
        out = U @ M @ U.T
        out.setflags(write=False)
        return out

    U.setflags(write=False)
    return ShellOperators(
        n=n,
        L=tuple(rotate(p + m) for p, m in zip(bp, bm)),
        Aprime=tuple(rotate(p - m) for p, m in zip(bp, bm)),
        basis=tuple(coupled_basis(n)),
        cg_transform=U,
    )


def _max_abs(M: np.ndarray) -> float:
    return float(np.max(np.abs(M))) if M.size else 0.0


def _commutator_residual(X, Y, Z) -> float:
    """max over i, j of ``|[X_i, Y_j] - i eps_ijk Z_k|``."""
    worst = 0.0
    for i in range(3):
        for j in range(3):
            target = sum(1j * _EPS[i, j, k] * Z[k] for k in range(3))
            worst = max(worst, _max_abs(X[i] @ Y[j] - Y[j] @ X[i] - target))
    return worst


def algebra_residuals(S: ShellOperators) -> dict[str, float]:
    """Max-entry residuals of every operator identity on the shell.

    Keys: ``LL``, ``LA``, ``AA`` (commutators), ``L.A``, ``A.L``,
    ``casimir`` (``A'^2 + L^2 - (n^2-1)``), ``B+B+``, ``B-B-``, ``B+B-``
    (the SO(4) algebra in split form), ``B+^2``, ``B-^2`` (each equal to
    ``(n^2-1)/4``) and ``hermiticity``.
    """
    L, A = S.L, S.Aprime
    Bp, Bm = S.b_plus, S.b_minus
    eye = np.eye(S.dim)
    zero = (np.zeros_like(eye),) * 3
    casimir = sum(a @ a for a in A) + sum(x @ x for x in L)
    quarter = (S.n * S.n - 1) / 4
    worst_cross = max(_max_abs(Bp[i] @ Bm[j] - Bm[j] @ Bp[i]) for i in range(3) for j in range(3))
    return {
        "LL": _commutator_residual(L, L, L),
        "LA": _commutator_residual(L, A, A),
        "AA": _commutator_residual(A, A, L),
        "L.A": _max_abs(sum(x @ a for x, a in zip(L, A))),
        "A.L": _max_abs(sum(a @ x for x, a in zip(L, A))),
        "casimir": _max_abs(casimir - (S.n * S.n - 1) * eye),
        "B+B+": _commutator_residual(Bp, Bp, Bp),
        "B-B-": _commutator_residual(Bm, Bm, Bm),
        "B+B-": max(worst_cross, _commutator_residual(Bp, Bm, zero)),
        "B+^2": _max_abs(sum(x @ x for x in Bp) - quarter * eye),
        "B-^2": _max_abs(sum(x @ x for x in Bm) - quarter * eye),
        "hermiticity": max(_max_abs(M - M.conj().T) for M in (*L, *A)),
    }


@dataclass(frozen=True)
class AMinusElements:
    """Projections of ``A'_-|n,l,l>``.

    ``c_down`` is ``None`` for ``l = 0``; ``c_up`` is zero on the top state.
    """

    c_up: complex
    c_down: Optional[complex]
    c_same: complex
    leakage: float


def a_minus_elements(S: ShellOperators, l: int) -> AMinusElements:
    """``<n,l+1,l-1|A'_-|n,l,l>``, ``<n,l-1,l-1|..>``, ``<n,l,l-1|..>``.

    ``leakage`` is the largest amplitude on any state outside the
    ``l' = l +- 1`` channels.
    """
    validate_labels(S.n, l)
    if l == 0 and S.n == 1:
        return AMinusElements(c_up=0j, c_down=None, c_same=0j, leakage=0.0)
    column = S.a_lowering()[:, S.index(l, l)]
    up = column[S.index(l + 1, l - 1)] if l + 1 < S.n else 0j
    down = column[S.index(l - 1, l - 1)] if l >= 1 else None
    same = column[S.index(l, l - 1)] if l >= 1 else 0j
    allowed = [S.index(l + d, l - 1) for d in (1, -1) if 0 <= l + d < S.n and abs(l - 1) <= l + d]
    rest = np.delete(column, allowed)
    return AMinusElements(
        c_up=complex(up),
        c_down=complex(down) if down is not None else None,
        c_same=complex(same),
        leakage=_max_abs(rest),
    )


def annihilation_check(S: ShellOperators) -> tuple[float, float]:
    """Norms of ``A'_-|n,n-1,-(n-1)>`` and ``A'_+|n,n-1,n-1>``."""
    top = S.n - 1
    lo = S.a_lowering()[:, S.index(top, -top)]
    hi = S.a_raising()[:, S.index(top, top)]
    return float(np.linalg.norm(lo)), float(np.linalg.norm(hi))


def default_tolerance(n: int) -> float:
    return max(1e-10, n * n * 1e-13)
