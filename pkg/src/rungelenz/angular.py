"""Exact Clebsch-Gordan coefficients, 6-j symbols and SO(4) ladder elements.

All results are :class:`~rungelenz.exact.Surd` values in the Condon-Shortley
convention.  Angular-momentum labels may be given as ints, Fractions,
half-integer floats or :class:`~rungelenz.exact.HalfInt`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Literal, Union

from .errors import InvalidLabels
from .exact import ZERO, HalfInt, Surd, surd_sum

Label = Union[HalfInt, int, Fraction, float, str]
Branch = Literal["plus", "minus"]


@dataclass(frozen=True)
class CouplingKey:
    """Labels of ``<j1 m1; j2 m2 | J M>``."""

    j1: HalfInt
    m1: HalfInt
    j2: HalfInt
    m2: HalfInt
    J: HalfInt
    M: HalfInt

    @classmethod
    def of(cls, j1: Label, m1: Label, j2: Label, m2: Label, J: Label, M: Label) -> "CouplingKey":
        return cls(*(HalfInt.of(v) for v in (j1, m1, j2, m2, J, M)))

    def is_valid(self) -> bool:
        for j, m in ((self.j1, self.m1), (self.j2, self.m2), (self.J, self.M)):
            if j.twice < 0 or abs(m.twice) > j.twice or (j.twice + m.twice) % 2:
                return False
        return True


@dataclass(frozen=True)
class SixJKey:
    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    j4: HalfInt
    j5: HalfInt
    j6: HalfInt

    @classmethod
    def of(cls, *labels: Label) -> "SixJKey":
        if len(labels) != 6:
            raise TypeError("a 6-j symbol takes exactly six labels")
        return cls(*(HalfInt.of(v) for v in labels))


def _triad_ok(a: int, b: int, c: int) -> bool:
    # arguments are doubled labels
    if min(a, b, c) < 0 or (a + b + c) % 2:
        return False
    return abs(a - b) <= c <= a + b


@lru_cache(maxsize=None)
def _cg_doubled(j1: int, m1: int, j2: int, m2: int, J: int, M: int) -> Surd:
    for j, m in ((j1, m1), (j2, m2), (J, M)):
        if j < 0 or abs(m) > j or (j + m) % 2:
            return ZERO
    if m1 + m2 != M or not _triad_ok(j1, j2, J):
        return ZERO
    # every combination below is an integer once halved
    a = (j1 + j2 - J) // 2
    b = (j1 - m1) // 2
    c = (j2 + m2) // 2
    d = (J - j2 + m1) // 2
    e = (J - j1 - m2) // 2
    radical = Fraction(
        (J + 1)
        * factorial((J + j1 - j2) // 2)
        * factorial((J - j1 + j2) // 2)
        * factorial(a),
        factorial((j1 + j2 + J) // 2 + 1),
    )
    radical *= (
        factorial((J + M) // 2)
        * factorial((J - M) // 2)
        * factorial((j1 - m1) // 2)
        * factorial((j1 + m1) // 2)
        * factorial((j2 - m2) // 2)
        * factorial((j2 + m2) // 2)
    )
    total = Fraction(0)
    for k in range(max(0, -d, -e), min(a, b, c) + 1):
        total += Fraction(
            (-1) ** k,
            factorial(k)
            * factorial(a - k)
            * factorial(b - k)
            * factorial(c - k)
            * factorial(d + k)
            * factorial(e + k),
        )
    return Surd.sqrt(radical) * total


def clebsch_gordan(j1: Label, m1: Label, j2: Label, m2: Label, J: Label, M: Label) -> Surd:
    """Exact ``<j1 m1; j2 m2 | J M>`` by the Racah sum.

    Returns zero for any forbidden coupling (``M != m1 + m2``, triangle
    violation, ``|m| > j``) rather than raising.
    """
    key = CouplingKey.of(j1, m1, j2, m2, J, M)
    return _cg_doubled(
        key.j1.twice, key.m1.twice, key.j2.twice, key.m2.twice, key.J.twice, key.M.twice
    )


def _delta_sq(a: int, b: int, c: int) -> Fraction:
    return Fraction(
        factorial((a + b - c) // 2) * factorial((a - b + c) // 2) * factorial((b + c - a) // 2),
        factorial((a + b + c) // 2 + 1),
    )


@lru_cache(maxsize=None)
def _six_j_doubled(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> Surd:
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    if not all(_triad_ok(*t) for t in triads):
        return ZERO
    lows = [sum(t) // 2 for t in triads]
    highs = [(j1 + j2 + j4 + j5) // 2, (j2 + j3 + j5 + j6) // 2, (j3 + j1 + j6 + j4) // 2]
    total = Fraction(0)
    for t in range(max(lows), min(highs) + 1):
        den = 1
        for lo in lows:
            den *= factorial(t - lo)
        for hi in highs:
            den *= factorial(hi - t)
        total += Fraction((-1) ** t * factorial(t + 1), den)
    radical = Fraction(1)
    for tri in triads:
        radical *= _delta_sq(*tri)
    return Surd.sqrt(radical) * total


def wigner_6j(j1: Label, j2: Label, j3: Label, j4: Label, j5: Label, j6: Label) -> Surd:
    """Exact ``{j1 j2 j3; j4 j5 j6}`` (Racah formula); zero for inadmissible triads."""
    key = SixJKey.of(j1, j2, j3, j4, j5, j6)
    return _six_j_doubled(
        key.j1.twice, key.j2.twice, key.j3.twice, key.j4.twice, key.j5.twice, key.j6.twice
    )


def reduced_b_element(n: int) -> Surd:
    """``<b||B(+)||b> = sqrt((n**2 - 1)/2)`` in units of hbar, with ``b = (n-1)/2``."""
    if n < 1:
        raise InvalidLabels(f"n must be >= 1, got {n}")
    return Surd.sqrt(Fraction(n * n - 1, 2))


def _check_branch(branch: str) -> None:
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def b_minus_direct(n: int, l_prime: int, l: int, branch: Branch) -> Surd:
    """``<n,l',l-1| B(branch)_- |n,l,l>`` by summing over the product basis.

    Works for every ``n`` including ``n = 1``; used as the production path
    there and as a cross-check elsewhere.
    """
    _check_labels(n, l_prime, l)
    _check_branch(branch)
    tb = n - 1  # 2b
    terms = []
    for tp in range(-tb, tb + 1, 2):
        tm = 2 * l - tp
        if abs(tm) > tb:
            continue
        ket = _cg_doubled(tb, tp, tb, tm, 2 * l, 2 * l)
        if not ket:
            continue
        if branch == "plus":
            m_low, other = tp, tm
        else:
            m_low, other = tm, tp
        # J_-|b m> = sqrt((b+m)(b-m+1)) |b m-1>, all in doubled labels
        ladder = Surd.sqrt(Fraction((tb + m_low) * (tb - m_low + 2), 4))
        if not ladder:
            continue
        if branch == "plus":
            bra = _cg_doubled(tb, m_low - 2, tb, other, 2 * l_prime, 2 * l - 2)
        else:
            bra = _cg_doubled(tb, other, tb, m_low - 2, 2 * l_prime, 2 * l - 2)
        terms.append(bra * ladder * ket)
    return surd_sum(terms)


def _check_labels(n: int, l_prime: int, l: int) -> None:
    if n < 1:
        raise InvalidLabels(f"n must be >= 1, got {n}")
    if not 0 <= l <= n - 1:
        raise InvalidLabels(f"l must satisfy 0 <= l <= n-1, got l={l}, n={n}")
    if l_prime < 0:
        raise InvalidLabels(f"l' must be non-negative, got {l_prime}")


def b_minus_element(n: int, l_prime: int, l: int, branch: Branch = "plus") -> Surd:
    """``<n,l',l-1| B(branch)_- |n,l,l>`` in units of hbar.

    For ``n >= 2`` this uses the Wigner-Eckart form with a 6-j symbol and the
    reduced element; the ``minus`` branch follows from the ``plus`` one by the
    factor ``(-1)**(l - l')``.  For ``n = 1`` the reduced-element route
    divides by ``sqrt(n**2 - 1)``, so the product-basis sum is used instead.
    """
    _check_labels(n, l_prime, l)
    _check_branch(branch)
    if n == 1:
        return b_minus_direct(n, l_prime, l, branch)
    tb = n - 1
    # phase (-1)**(-2b - l + 1); 2b = n - 1 is an integer
    phase = -1 if (-tb - l + 1) % 2 else 1
    value = (
        _cg_doubled(2 * l, 2 * l, 2, -2, 2 * l_prime, 2 * l - 2)
        * Surd.sqrt(2 * l + 1)
        * Surd.sqrt(n)
        * _six_j_doubled(tb, tb, 2 * l, 2, 2 * l_prime, tb)
        * reduced_b_element(n)
        * phase
    )
    if branch == "minus" and (l - l_prime) % 2:
        value = -value
    return value


def b_minus_closed_form(n: int, l_prime: int, l: int, branch: Branch = "plus") -> Surd:
    """Tabulated closed forms of the ``B(+-)_-`` elements, for cross-checking."""
    _check_labels(n, l_prime, l)
    _check_branch(branch)
    sign = 1 if branch == "plus" else -1
    if l_prime == l - 1:
        return Surd.sqrt(Fraction(l * (n * n - l * l), 2 * (2 * l + 1))) * (-sign)
    if l_prime == l + 1:
        return Surd.sqrt(Fraction(n * n - (l + 1) ** 2, 2 * (2 * l + 1) * (2 * l + 3))) * sign
    if l_prime == l:
        return Surd.sqrt(Fraction(l, 2))
    return ZERO


@dataclass(frozen=True)
class MasterCoefficients:
    """Coefficients of ``A'_-|n,l,l>`` on ``|n,l+1,l-1>``, ``|n,l-1,l-1>``, ``|n,l,l-1>``.

    ``down`` is ``None`` when ``l = 0`` (no ``l-1`` state); ``up`` is zero
    when ``l = n-1``, where the closed form vanishes at the shell edge.
    """

    up: Surd
    down: Surd | None
    same: Surd


def master_coefficients(n: int, l: int) -> MasterCoefficients:
    """Exact matrix elements of ``A'_- = B(+)_- - B(-)_-`` on ``|n,l,l>``.

    Multiplying by ``Z/(n a0)`` gives ``(mu/hbar^2) <A_->``.
    """

    def diff(lp: int) -> Surd:
        return b_minus_element(n, lp, l, "plus") - b_minus_element(n, lp, l, "minus")

    up = diff(l + 1) if l + 1 <= n - 1 else ZERO
    down = diff(l - 1) if l >= 1 else None
    return MasterCoefficients(up=up, down=down, same=diff(l))


def master_closed_form(n: int, l: int) -> MasterCoefficients:
    up = Surd.sqrt(Fraction(2 * (n * n - (l + 1) ** 2), (2 * l + 1) * (2 * l + 3)))
    down = -Surd.sqrt(Fraction(2 * l * (n * n - l * l), 2 * l + 1))
    return MasterCoefficients(
        up=up,
        down=down if l >= 1 else None,
        same=ZERO,
    )


__all__ = [
    "CouplingKey",
    "SixJKey",
    "clebsch_gordan",
    "wigner_6j",
    "reduced_b_element",
    "b_minus_element",
    "b_minus_direct",
    "b_minus_closed_form",
    "MasterCoefficients",
    "master_coefficients",
    "master_closed_form",
]
