"""Exact arithmetic: normalized surds, half-integers and rational polynomials.

Rationals are :class:`fractions.Fraction` throughout.  A :class:`Surd` is a
number ``coeff * sqrt(radicand)`` with a squarefree radicand, so two surds
are equal exactly when their fields are equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import IncompatibleRadicands, NonPositiveRate

RationalLike = Union[int, Fraction]

_SMALL_PRIMES_LIMIT = 2000


@lru_cache(maxsize=None)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_SMALL_PRIMES_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(_SMALL_PRIMES_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=4096)
def square_split(value: int) -> tuple[int, int]:
    """Return ``(root, free)`` with ``value == root**2 * free`` and ``free`` squarefree."""
    if value <= 0:
        raise ValueError(f"square_split needs a positive integer, got {value}")
    root, free = 1, 1
    rest = value
    for p in _small_primes():
        if p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        root *= p ** (e // 2)
        if e % 2:
            free *= p
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            root *= r
        elif rest < _SMALL_PRIMES_LIMIT**2:
            free *= rest
        else:
            # cofactor has no prime below the sieve limit; factor it fully
            from sympy import factorint

            for p, e in factorint(rest).items():
                root *= p ** (e // 2)
                if e % 2:
                    free *= p
    return root, free


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Surd:
    """Exact number ``coeff * sqrt(radicand)``.

    The constructor normalizes: square factors move from the radicand into the
    coefficient and a zero coefficient forces ``radicand == 1``.
    """

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self) -> None:
        coeff = _as_fraction(self.coeff)
        radicand = int(self.radicand)
        if radicand <= 0:
            raise ValueError(f"radicand must be positive, got {radicand}")
        if coeff == 0:
            radicand = 1
        elif radicand != 1:
            root, radicand = square_split(radicand)
            coeff *= root
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def sqrt(cls, q: RationalLike) -> "Surd":
        """Non-negative square root of a non-negative rational."""
        q = _as_fraction(q)
        if q < 0:
            raise ValueError(f"square root of negative rational {q}")
        if q == 0:
            return ZERO
        # sqrt(p/d) = sqrt(p*d)/d
        return cls(Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def signed_sqrt(cls, sign: int, q: RationalLike) -> "Surd":
        root = cls.sqrt(q)
        return -root if sign < 0 else root

    @classmethod
    def coerce(cls, value: Union["Surd", RationalLike]) -> "Surd":
        if isinstance(value, Surd):
            return value
        return cls(_as_fraction(value), 1)

    # arithmetic -----------------------------------------------------------
    def __mul__(self, other: Union["Surd", RationalLike]) -> "Surd":
        if isinstance(other, Surd):
            g = math.gcd(self.radicand, other.radicand)
            # sqrt(a)*sqrt(b) = g*sqrt(a/g * b/g) with a/g, b/g coprime and squarefree
            return Surd(
                self.coeff * other.coeff * g,
                (self.radicand // g) * (other.radicand // g),
            )
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return Surd(self.coeff * q, self.radicand)

    __rmul__ = __mul__

    def __neg__(self) -> "Surd":
        return Surd(-self.coeff, self.radicand)

    def __pos__(self) -> "Surd":
        return self

    def __abs__(self) -> "Surd":
        return Surd(abs(self.coeff), self.radicand)

    def __add__(self, other: Union["Surd", RationalLike]) -> "Surd":
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        if other.coeff == 0:
            return self
        if self.coeff == 0:
            return other
        if self.radicand != other.radicand:
            raise IncompatibleRadicands(
                f"cannot add sqrt({self.radicand}) and sqrt({other.radicand}) terms"
            )
        return Surd(self.coeff + other.coeff, self.radicand)

    __radd__ = __add__

    def __sub__(self, other: Union["Surd", RationalLike]) -> "Surd":
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "Surd":
        return Surd.coerce(other) - self

    def inverse(self) -> "Surd":
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of zero surd")
        # 1/(c sqrt(s)) = sqrt(s) / (c s)
        return Surd(1 / (self.coeff * self.radicand), self.radicand)

    def __truediv__(self, other: Union["Surd", RationalLike]) -> "Surd":
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: RationalLike) -> "Surd":
        return Surd.coerce(other) * self.inverse()

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    # inspection -----------------------------------------------------------
    @property
    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def is_rational(self) -> bool:
        return self.radicand == 1

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __float__(self) -> float:
        # exact square root of the rational square, then float; avoids overflow
        # for huge coefficient/radicand pairs
        return float(self.coeff) * math.sqrt(self.radicand)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Surd):
            return self.coeff == other.coeff and self.radicand == other.radicand
        if isinstance(other, (int, Fraction)):
            return self.radicand == 1 and self.coeff == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeff, self.radicand))

    def __str__(self) -> str:
        if self.radicand == 1:
            return fraction_str(self.coeff)
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        if self.coeff == -1:
            return f"-sqrt({self.radicand})"
        return f"{fraction_str(self.coeff)}*sqrt({self.radicand})"

    def to_json(self) -> dict:
        return {"coeff": fraction_str(self.coeff), "radicand": self.radicand}

    @classmethod
    def from_json(cls, data: dict) -> "Surd":
        return cls(parse_fraction(data["coeff"]), int(data["radicand"]))


ZERO = Surd(Fraction(0), 1)
ONE = Surd(Fraction(1), 1)


@dataclass(frozen=True, order=True)
class HalfInt:
    """Integer or half-integer stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value: Union["HalfInt", int, Fraction, float, str]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        doubled = 2 * Fraction(value)
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __int__(self) -> int:
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial with rational coefficients, ascending powers."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [_as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_list(cls, coeffs: Iterable[RationalLike]) -> "Polynomial":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((Fraction(c),))

    @classmethod
    def monomial(cls, power: int, c: RationalLike = 1) -> "Polynomial":
        return cls((Fraction(0),) * power + (Fraction(c),))

    @property
    def degree(self) -> Union[int, float]:
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, power: int) -> Fraction:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "Polynomial":
        return Polynomial.constant(other) - self

    def __mul__(self, other: Union["Polynomial", RationalLike]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(tuple(out))
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return Polynomial(tuple(c * q for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, q: RationalLike) -> "Polynomial":
        q = _as_fraction(q)
        return Polynomial(tuple(c / q for c in self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Polynomial((Fraction(0),) * k + self.coeffs)

    def divide_by_x(self) -> "Polynomial":
        """Exact division by ``x``; the constant term must vanish."""
        if self[0] != 0:
            raise ArithmeticError("polynomial is not divisible by x")
        return Polynomial(self.coeffs[1:])

    def lowest_power(self) -> Union[int, float]:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return math.inf

    def __call__(self, x):
        """Horner evaluation; exact for rationals, float/array otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def to_strings(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = fraction_str(abs(c)) + ("*" + mono if mono else "")
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


X = Polynomial.monomial(1)


def exp_moment(k: int, s: RationalLike) -> Fraction:
    """Exact ``integral_0^inf x**k exp(-s x) dx = k! / s**(k+1)``."""
    s = _as_fraction(s)
    if s <= 0:
        raise NonPositiveRate(f"decay rate must be positive, got {s}")
    if k < 0:
        raise ValueError(f"moment order must be non-negative, got {k}")
    return Fraction(math.factorial(k)) / s ** (k + 1)


def integrate_exp(poly: Polynomial, s: RationalLike) -> Fraction:
    """Exact ``integral_0^inf poly(x) exp(-s x) dx``."""
    return sum(
        (c * exp_moment(k, s) for k, c in enumerate(poly.coeffs) if c != 0),
        Fraction(0),
    )


def surd_sum(terms: Sequence[Surd]) -> Surd:
    """Sum of surds that must collapse to a single radicand class.

    Groups by radicand first, so cancelling classes are tolerated; raises
    :class:`IncompatibleRadicands` if more than one class survives.
    """
    groups: dict[int, Fraction] = {}
    for t in terms:
        if t.coeff:
            groups[t.radicand] = groups.get(t.radicand, Fraction(0)) + t.coeff
    live = [(r, c) for r, c in groups.items() if c != 0]
    if not live:
        return ZERO
    if len(live) > 1:
        raise IncompatibleRadicands(f"sum spans radicands {sorted(r for r, _ in live)}")
    r, c = live[0]
    return Surd(c, r)
