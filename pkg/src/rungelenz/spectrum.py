"""Energy levels, shell bookkeeping and unit conventions.

Internally hbar = 1, lengths are measured by the dimensionless radius
``x = Z r / a0`` and energies are in Rydberg (``kappa**2 mu / (2 hbar**2)``
at Z = 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidLabels
from .exact import HalfInt


@dataclass(frozen=True)
class PhysicalScales:
    Z: int = 1
    a0: float = 1.0
    Ry: float = 1.0

    def __post_init__(self) -> None:
        if self.Z < 1:
            raise InvalidLabels(f"nuclear charge Z must be >= 1, got {self.Z}")
        if self.a0 <= 0:
            raise ValueError(f"a0 must be positive, got {self.a0}")


@dataclass(frozen=True)
class QuantumLabels:
    n: int
    l: int
    m: int = 0

    def __post_init__(self) -> None:
        validate_labels(self.n, self.l)
        if abs(self.m) > self.l:
            raise InvalidLabels(f"m must satisfy -l <= m <= l, got m={self.m}, l={self.l}")


@dataclass(frozen=True)
class ShellStructure:
    n: int
    b: HalfInt
    l_values: tuple[int, ...]
    dimension: int


def validate_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidLabels(f"n must be a positive integer, got {n!r}")


def validate_labels(n: int, l: int) -> None:
    validate_n(n)
    if not 0 <= l <= n - 1:
        raise InvalidLabels(f"l must satisfy 0 <= l <= n-1, got l={l}, n={n}")


def energy_level(n: int, scales: PhysicalScales = PhysicalScales()) -> Fraction:
    """Exact ``E_n = -Z**2 / n**2`` in Rydberg."""
    validate_n(n)
    return Fraction(-scales.Z * scales.Z, n * n)


def shell_structure(n: int) -> ShellStructure:
    validate_n(n)
    return ShellStructure(
        n=n,
        b=HalfInt(n - 1),
        l_values=tuple(range(n)),
        dimension=n * n,
    )
