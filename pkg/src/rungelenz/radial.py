"""Bound-state radial functions generated by the Runge-Lenz ladder.

A state is stored exactly as::

    R_nl(x) = prefactor * x**l * poly(x) * exp(-decay_rate * x),   x = Z r / a0

with ``poly(0) == 1`` and the prefactor in units of ``(Z/a0)**1.5``.  The
top state ``l = n-1`` is fixed by normalization; every lower ``l`` follows
from the lowering relation.  All operators act symbolically on the
(prefactor, poly, decay) triple.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .errors import GroundAngular, MixedAngular, NegativeRadius, NormalizationError
from .exact import ONE, X, Polynomial, Surd, exp_moment, integrate_exp
from .spectrum import validate_labels, validate_n


@dataclass(frozen=True)
class RadialWaveFunction:
    n: int
    l: int
    prefactor: Surd
    poly: Polynomial
    decay_rate: Fraction

    def __call__(self, x):
        return evaluate(self, x)

    def full_polynomial(self) -> Polynomial:
        """``x**l * poly(x)`` as one polynomial (prefactor not included)."""
        return self.poly.shift(self.l)

    def __str__(self) -> str:
        xl = "" if self.l == 0 else (" * x" if self.l == 1 else f" * x^{self.l}")
        return f"R_{self.n}{self.l}(x) = {self.prefactor}{xl} * ({self.poly}) * exp(-{self.decay_rate} x)"


@dataclass(frozen=True)
class ZeroFunction:
    """Result of raising the top state: the ladder annihilates it."""

    n: int
    l: int


def _canonical(n: int, l: int, prefactor: Surd, poly: Polynomial) -> RadialWaveFunction:
    lead = poly[0]
    if lead == 0:
        raise ArithmeticError(f"R_{n}{l}: polynomial factor vanishes at the origin")
    return RadialWaveFunction(n, l, prefactor * lead, poly / lead, Fraction(1, n))


def _check_norm(R: RadialWaveFunction) -> RadialWaveFunction:
    norm = overlap(R, R)
    if norm != 1:
        raise NormalizationError(f"R_{R.n}{R.l} has norm {norm}, expected 1")
    return R


def top_state(n: int) -> RadialWaveFunction:
    """``R_{n,n-1} = N_n x**(n-1) exp(-x/n)``, normalized exactly."""
    validate_n(n)
    norm_integral = exp_moment(2 * n, Fraction(2, n))
    return RadialWaveFunction(
        n=n,
        l=n - 1,
        prefactor=Surd.sqrt(1 / norm_integral),
        poly=Polynomial.constant(1),
        decay_rate=Fraction(1, n),
    )


def lower_l(R: RadialWaveFunction, check: bool = True) -> RadialWaveFunction:
    """``R_{n,l} -> R_{n,l-1}``.

    Applies ``(2l+1) l + l x d/dx - x`` to ``R/x**l`` and rescales by
    ``n / sqrt(n**2 - l**2)``.
    """
    n, l, k, p = R.n, R.l, R.decay_rate, R.poly
    if l == 0:
        raise GroundAngular(f"R_{n}0 has no lower angular state")
    validate_labels(n, l)
    dp = p.derivative() - p * k
    out = p * ((2 * l + 1) * l) + (dp * l).shift(1) - p.shift(1)
    scale = Surd.sqrt(Fraction(1, n * n - l * l)) * n
    new = _canonical(n, l - 1, R.prefactor * scale, out)
    return _check_norm(new) if check else new


def raise_l(R: RadialWaveFunction, check: bool = True) -> Union[RadialWaveFunction, ZeroFunction]:
    """``R_{n,l} -> R_{n,l+1}``, or :class:`ZeroFunction` on the top state.

    Applies ``(l+1)/x d/dx + 1/x`` to ``R/x**l`` and rescales by
    ``-n / sqrt(n**2 - (l+1)**2)``.
    """
    n, l, k, p = R.n, R.l, R.decay_rate, R.poly
    validate_labels(n, l)
    u = (p.derivative() - p * k) * (l + 1) + p
    if u.is_zero():
        return ZeroFunction(n, l + 1)
    gap = n * n - (l + 1) ** 2
    if gap <= 0:
        raise ArithmeticError(f"raising R_{n}{l} left a nonzero remainder; input is not an eigenstate")
    scale = -Surd.sqrt(Fraction(1, gap)) * n
    new = _canonical(n, l + 1, R.prefactor * scale, u.divide_by_x())
    return _check_norm(new) if check else new


@lru_cache(maxsize=None)
def _shell(n: int) -> tuple[RadialWaveFunction, ...]:
    states = [top_state(n)]
    while states[-1].l > 0:
        states.append(lower_l(states[-1]))
    return tuple(states)


def generate_shell(n: int) -> list[RadialWaveFunction]:
    """All ``R_nl`` for one ``n``, ordered ``l = n-1`` down to ``0``."""
    validate_n(n)
    return list(_shell(n))


def radial_state(n: int, l: int) -> RadialWaveFunction:
    validate_labels(n, l)
    return _shell(n)[n - 1 - l]


def evaluate(R: RadialWaveFunction, x):
    """Double-precision ``R(x)``; accepts scalars or numpy arrays."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise NegativeRadius("radius must be non-negative")
    value = float(R.prefactor) * arr**R.l * R.poly(arr) * np.exp(-float(R.decay_rate) * arr)
    return float(value) if value.ndim == 0 else value


def overlap(R1: RadialWaveFunction, R2: RadialWaveFunction) -> Surd:
    """Exact ``integral_0^inf x**2 R1 R2 dx`` for states of equal ``l``."""
    if R1.l != R2.l:
        raise MixedAngular(f"overlap needs equal l, got {R1.l} and {R2.l}")
    integrand = (R1.poly * R2.poly).shift(2 * R1.l + 2)
    return R1.prefactor * R2.prefactor * integrate_exp(integrand, R1.decay_rate + R2.decay_rate)


def ode_residual(R: RadialWaveFunction) -> Polynomial:
    """Residual of the radial equation acting on ``R/x**l``.

    The operator ``d2/dx2 + 2(l+1)/x d/dx + 2/x - 1/n**2`` is applied, the
    exponential and prefactor are cleared and the result multiplied by ``x``,
    leaving a polynomial that is zero iff ``R`` solves the equation.
    """
    p, k, l = R.poly, R.decay_rate, R.l
    dp = p.derivative()
    d2p = dp.derivative()
    energy = Fraction(1, R.n * R.n)
    return (
        (d2p - dp * (2 * k) + p * (k * k - energy)).shift(1)
        + (dp - p * k) * (2 * (l + 1))
        + p * 2
    )


def _apply_raising(q: Polynomial, k: Fraction, l: int) -> Polynomial:
    # x * [(l+1)/x d/dx + 1/x] (q e^{-kx}) / e^{-kx}
    return (q.derivative() - q * k) * (l + 1) + q


def _apply_lowering_times_x(u: Polynomial, k: Fraction, l: int) -> Polynomial:
    # x * [(2l+1) l + l x d/dx - x] ((u/x) e^{-kx}) / e^{-kx}
    return u * ((2 * l + 1) * l - l) + (u.derivative() - u * k).shift(1) * l - u.shift(1)


def factorization_residual(n: int, l: int) -> tuple[Optional[Polynomial], Optional[Polynomial]]:
    """Residuals of the two factorized radial identities on ``R_nl/x**l``.

    ``first``: lowering(l+1) after raising(l), scaled by ``1/(l+1)**2``,
    minus ``-(n**2-(l+1)**2)/(n**2 (l+1)**2)``; ``None`` when ``l = n-1``.
    ``second``: raising(l-1) after lowering(l), scaled by ``1/l**2``, minus
    ``-(n**2-l**2)/(n**2 l**2)``; ``None`` when ``l = 0``.  Both are returned
    multiplied by ``x`` with prefactor and exponential cleared.
    """
    validate_labels(n, l)
    R = radial_state(n, l)
    q, k = R.poly, R.decay_rate
    first = second = None
    if l < n - 1:
        u = _apply_raising(q, k, l)
        lhs = _apply_lowering_times_x(u, k, l + 1) / (l + 1) ** 2
        eig = Fraction(-(n * n - (l + 1) ** 2), n * n * (l + 1) ** 2)
        first = lhs - (q * eig).shift(1)
    if l > 0:
        v = q * ((2 * l + 1) * l) + (q.derivative() - q * k).shift(1) * l - q.shift(1)
        lhs = _apply_raising(v, k, l - 1) / (l * l)
        eig = Fraction(-(n * n - l * l), n * n * l * l)
        second = lhs - (q * eig).shift(1)
    return first, second


def node_count(R: RadialWaveFunction, tol: float = 1e-10) -> int:
    """Number of positive real roots of the polynomial factor."""
    coeffs = [float(c) for c in reversed(R.poly.coeffs)]
    if len(coeffs) <= 1:
        return 0
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) <= tol * np.maximum(1.0, np.abs(roots))]
    return int(np.sum(real.real > tol))


def perturbed(R: RadialWaveFunction, extra: Polynomial = X) -> RadialWaveFunction:
    """Copy of ``R`` with ``extra`` added to its polynomial factor."""
    return replace(R, poly=R.poly + extra)


def _table() -> dict[tuple[int, int], tuple[Surd, Polynomial]]:
    third = Surd.sqrt(Fraction(1, 27))  # (1/3)**1.5
    half = Surd.sqrt(Fraction(1, 8))  # (1/2)**1.5
    return {
        (1, 0): (ONE * 2, Polynomial.from_list([1])),
        (2, 1): (Surd.sqrt(Fraction(1, 3)) * half, Polynomial.from_list([1])),
        (2, 0): (half * 2, Polynomial.from_list([1, Fraction(-1, 2)])),
        (3, 2): (
            Surd.sqrt(2) * 2 / (Surd.sqrt(5) * 27) * third,
            Polynomial.from_list([1]),
        ),
        (3, 1): (
            Surd.sqrt(2) * Fraction(4, 9) * third,
            Polynomial.from_list([1, Fraction(-1, 6)]),
        ),
        (3, 0): (
            third * 2,
            Polynomial.from_list([1, Fraction(-2, 3), Fraction(2, 27)]),
        ),
    }


#: Closed forms of the six lowest states, as ``(prefactor, poly)`` with the
#: ``x**l`` factor and ``exp(-x/n)`` implied.
REFERENCE_STATES = _table()
