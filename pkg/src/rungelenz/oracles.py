"""Independent reference routes for the angular-momentum coefficients.

Nothing in the production path imports this module; it exists so the
verification suites and tests can check the Racah formulas against
constructions that share none of their algebra.

* :func:`cg_by_diagonalization` finds each coupled state as the exact null
  vector of ``J**2 - J(J+1)`` inside a fixed-``M`` block of the product
  basis, with phases fixed by the Condon-Shortley rule and the lowering
  operator.
* :func:`six_j_by_contraction` sums products of four 3-j symbols over all
  projections.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .angular import Label, clebsch_gordan
from .exact import ZERO, HalfInt, Surd, surd_sum


def _block(t1: int, t2: int, tM: int) -> list[int]:
    """Doubled ``m1`` values of the fixed-``M`` product block, ascending."""
    lo = max(-t1, tM - t2)
    hi = min(t1, tM + t2)
    return list(range(lo, hi + 1, 2))


def _null_vector(t1: int, t2: int, tJ: int, tM: int) -> dict[int, tuple[Fraction, int]]:
    """Squared components and signs of the ``J**2 = J(J+1)`` vector, unphased.

    The block matrix is tridiagonal with off-diagonals ``sqrt(c_k)``;
    substituting ``v_k = u_k / prod_{i<k} sqrt(c_i)`` turns the null-vector
    recursion rational.
    """
    j1, j2, J = Fraction(t1, 2), Fraction(t2, 2), Fraction(tJ, 2)
    lam = J * (J + 1)
    block = _block(t1, t2, tM)
    diag = []
    offs = []
    for idx, tm1 in enumerate(block):
        m1, m2 = Fraction(tm1, 2), Fraction(tM - tm1, 2)
        diag.append(j1 * (j1 + 1) + j2 * (j2 + 1) + 2 * m1 * m2)
        if idx + 1 < len(block):
            offs.append((j1 - m1) * (j1 + m1 + 1) * (j2 + m2) * (j2 - m2 + 1))
    u = [Fraction(1)]
    for k in range(len(block) - 1):
        nxt = -(diag[k] - lam) * u[k] - (offs[k - 1] * u[k - 1] if k else 0)
        u.append(nxt)
    last = len(block) - 1
    closing = (diag[last] - lam) * u[last] + (offs[last - 1] * u[last - 1] if last else 0)
    if closing != 0:
        raise ArithmeticError(f"J={J} is not an eigenvalue in block M={Fraction(tM, 2)}")
    weights = []
    prod = Fraction(1)
    for k, uk in enumerate(u):
        weights.append(uk * uk / prod)
        if k < len(offs):
            prod *= offs[k]
    norm = sum(weights)
    return {
        tm1: (w / norm, (u[k] > 0) - (u[k] < 0))
        for k, (tm1, w) in enumerate(zip(block, weights))
    }


@lru_cache(maxsize=None)
def _coupled_multiplet(t1: int, t2: int, tJ: int) -> dict[int, dict[int, Surd]]:
    """``{tM: {tm1: <j1 m1; j2 M-m1 | J M>}}`` for every ``M`` of the multiplet."""
    out: dict[int, dict[int, Surd]] = {}
    for tM in range(tJ, -tJ - 1, -2):
        raw = _null_vector(t1, t2, tJ, tM)
        vec = {tm1: Surd.signed_sqrt(s, w) for tm1, (w, s) in raw.items()}
        if tM == tJ:
            # Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0
            flip = vec[t1].sign < 0
        else:
            # J_- |J, M+1> must have a positive overlap with |J, M>
            above = out[tM + 2]
            pivot = max(vec, key=lambda k: float(abs(vec[k])))
            m1, m2 = Fraction(pivot, 2), Fraction(tM - pivot, 2)
            j1, j2 = Fraction(t1, 2), Fraction(t2, 2)
            lowered = 0.0
            if pivot + 2 in above:
                lowered += float(Surd.sqrt((j1 + m1 + 1) * (j1 - m1)) * above[pivot + 2])
            if pivot in above:
                lowered += float(Surd.sqrt((j2 + m2 + 1) * (j2 - m2)) * above[pivot])
            flip = (lowered > 0) != (vec[pivot].sign > 0)
        out[tM] = {k: (-v if flip else v) for k, v in vec.items()}
    return out


def cg_by_diagonalization(j1: Label, m1: Label, j2: Label, m2: Label, J: Label, M: Label) -> Surd:
    t1, tm1, t2, tm2, tJ, tM = (HalfInt.of(v).twice for v in (j1, m1, j2, m2, J, M))
    if tm1 + tm2 != tM or not abs(t1 - t2) <= tJ <= t1 + t2 or (t1 + t2 + tJ) % 2:
        return ZERO
    if abs(tm1) > t1 or abs(tm2) > t2 or abs(tM) > tJ or (t1 + tm1) % 2 or (t2 + tm2) % 2:
        return ZERO
    return _coupled_multiplet(t1, t2, tJ)[tM].get(tm1, ZERO)


def three_j(j1: Label, j2: Label, j3: Label, m1: Label, m2: Label, m3: Label) -> Surd:
    return _three_j(*(HalfInt.of(v).twice for v in (j1, j2, j3, m1, m2, m3)))


@lru_cache(maxsize=None)
def _three_j(t1: int, t2: int, t3: int, tm1: int, tm2: int, tm3: int) -> Surd:
    if tm1 + tm2 + tm3 != 0:
        return ZERO
    cg = clebsch_gordan(HalfInt(t1), HalfInt(tm1), HalfInt(t2), HalfInt(tm2), HalfInt(t3), HalfInt(-tm3))
    if not cg:
        return ZERO
    phase = -1 if ((t1 - t2 - tm3) // 2) % 2 else 1
    return cg * Surd.sqrt(Fraction(1, t3 + 1)) * phase


def _ms(t: int) -> range:
    return range(-t, t + 1, 2)


def six_j_by_contraction(*labels: Label) -> Surd:
    """``{j1 j2 j3; j4 j5 j6}`` as a signed sum of four 3-j products."""
    t1, t2, t3, t4, t5, t6 = (HalfInt.of(v).twice for v in labels)
    terms = []
    for a1 in _ms(t1):
        for a2 in _ms(t2):
            a3 = -a1 - a2
            if abs(a3) > t3:
                continue
            first = _three_j(t1, t2, t3, -a1, -a2, -a3)
            if not first:
                continue
            for a5 in _ms(t5):
                a6 = a5 - a1
                a4 = a6 - a2
                if abs(a6) > t6 or abs(a4) > t4:
                    continue
                rest = (
                    _three_j(t1, t5, t6, a1, -a5, a6)
                    * _three_j(t4, t2, t6, a4, a2, -a6)
                    * _three_j(t4, t5, t3, -a4, a5, a3)
                )
                if not rest:
                    continue
                doubled = sum(t - a for t, a in zip((t1, t2, t3, t4, t5, t6), (a1, a2, a3, a4, a5, a6)))
                sign = -1 if (doubled // 2) % 2 else 1
                terms.append(first * rest * sign)
    return surd_sum(terms)
