"""Regular Coulomb function and the positive-energy ladder checks.

``F_l(eta, rho)`` is summed from its power series around the origin in
extended precision, so the cancellation between large terms at bigger
``rho`` never reaches the returned double.  The series is only trusted on
``0 < rho <= 30, |eta| <= 10, l <= 10``; outside that box evaluation refuses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath

from .errors import NoConvergence, NonPositiveWavenumber, OutOfDomain, StepTooLarge

RHO_MAX = 30.0
ETA_MAX = 10.0
L_MAX = 10
MAX_TERMS = 1000
REL_TOL = 1e-16


@dataclass(frozen=True)
class CoulombParams:
    l: int
    eta: float
    rho: float

    def __post_init__(self) -> None:
        _check_domain(self.l, self.eta, self.rho)


@dataclass(frozen=True)
class CoulombValue:
    F: float
    Fprime: float


def _check_domain(l: int, eta: float, rho: float) -> None:
    if not isinstance(l, int) or not 0 <= l <= L_MAX:
        raise OutOfDomain(f"l must be an integer in [0, {L_MAX}], got {l!r}")
    if not abs(eta) <= ETA_MAX:
        raise OutOfDomain(f"|eta| must be <= {ETA_MAX}, got {eta}")
    if not 0 < rho <= RHO_MAX:
        raise OutOfDomain(f"rho must lie in (0, {RHO_MAX}], got {rho}")


def _working_dps(eta: float, rho: float) -> int:
    # largest series term grows roughly like exp(rho + 2 sqrt(2 |eta| rho))
    growth = rho + 2.0 * math.sqrt(2.0 * abs(eta) * rho)
    return 25 + int(math.ceil(growth / math.log(10)))


def coulomb_normalizer(l: int, eta) -> mpmath.mpf:
    """``C_l(eta) = 2**l exp(-pi eta/2) |Gamma(l+1+i eta)| / (2l+1)!``."""
    eta = mpmath.mpf(eta)
    two_pi_eta = 2 * mpmath.pi * eta
    c = mpmath.sqrt(two_pi_eta / mpmath.expm1(two_pi_eta)) if eta != 0 else mpmath.mpf(1)
    for L in range(1, l + 1):
        c *= mpmath.sqrt(L * L + eta * eta) / (L * (2 * L + 1))
    return c


def _series(l: int, eta: float, rho: float, nderiv: int = 1) -> list:
    """``[F, F', F'', ...][:nderiv+1]`` as mpf values at the working precision."""
    _check_domain(l, eta, rho)
    with mpmath.workdps(_working_dps(eta, rho)):
        e = mpmath.mpf(eta)
        r = mpmath.mpf(rho)
        # F = C rho^(l+1) sum_j a_j rho^j,  j (j+2l+1) a_j = 2 eta a_{j-1} - a_{j-2}
        a_prev, a_cur = mpmath.mpf(0), mpmath.mpf(1)
        sums = [mpmath.mpf(0)] * (nderiv + 1)
        rpow = r ** (l + 1)  # rho^(l+1+j)
        quiet = 0
        floor = mpmath.mpf("1e-300")
        for j in range(MAX_TERMS):
            if j > 0:
                a_prev, a_cur = a_cur, (2 * e * a_cur - a_prev) / (j * (j + 2 * l + 1))
                rpow *= r
            p = l + 1 + j
            term = a_cur * rpow
            contrib = [term]
            for d in range(1, nderiv + 1):
                # d-th derivative of rho^p, divided back onto rho^p
                contrib.append(contrib[-1] * (p - d + 1) / r)
            for d in range(nderiv + 1):
                sums[d] += contrib[d]
            small = all(
                abs(c) <= REL_TOL * max(abs(s), floor) for c, s in zip(contrib, sums)
            )
            # odd coefficients vanish at eta = 0: demand two quiet terms past the peak
            quiet = quiet + 1 if (small and j > r) else 0
            if quiet >= 2:
                break
        else:
            raise NoConvergence(f"Coulomb series did not converge in {MAX_TERMS} terms")
        c = coulomb_normalizer(l, e)
        return [c * s for s in sums]


def coulomb_f(p: CoulombParams) -> CoulombValue:
    F, dF = _series(p.l, p.eta, p.rho, 1)
    return CoulombValue(float(F), float(dF))


def coulomb_f_derivatives(l: int, eta: float, rho: float) -> tuple[float, float, float]:
    """``(F, F', F'')`` from term-wise differentiation of the series."""
    return tuple(float(v) for v in _series(l, eta, rho, 2))


def coulomb_ode_residual(l: int, eta: float, rho: float) -> float:
    """``F'' + (1 - 2 eta/rho - l(l+1)/rho**2) F`` with the series derivatives."""
    F, _, d2F = _series(l, eta, rho, 2)
    with mpmath.workdps(_working_dps(eta, rho)):
        r = mpmath.mpf(rho)
        return float(d2F + (1 - 2 * mpmath.mpf(eta) / r - l * (l + 1) / r**2) * F)


def recursion_residual(l: int, eta: float, rho: float, perturb: float = 1.0) -> dict[str, Optional[float]]:
    """Residuals of the down and up Coulomb ladder relations at ``(l, eta, rho)``.

    ``down = l F'_l + (l**2/rho + eta) F_l - sqrt(l**2 + eta**2) F_{l-1}`` and
    ``up = (l+1) F'_l - ((l+1)**2/rho + eta) F_l + sqrt((l+1)**2 + eta**2) F_{l+1}``.
    ``down`` is ``None`` for ``l = 0``.  ``perturb`` scales ``F_l`` and ``F'_l``
    before use (for detector sanity checks).
    """
    F, dF = (perturb * v for v in map(float, _series(l, eta, rho, 1)))
    up_F = float(_series(l + 1, eta, rho, 0)[0])
    up = (l + 1) * dF - ((l + 1) ** 2 / rho + eta) * F + math.sqrt((l + 1) ** 2 + eta**2) * up_F
    down = None
    if l >= 1:
        low_F = float(_series(l - 1, eta, rho, 0)[0])
        down = l * dF + (l * l / rho + eta) * F - math.sqrt(l * l + eta**2) * low_F
    return {"down": down, "up": up}


def _central(g, t: float, h: float):
    with mpmath.workdps(40):
        t, h = mpmath.mpf(t), mpmath.mpf(h)
        gm, g0, gp = g(t - h), g(t), g(t + h)
        return g0, (gp - gm) / (2 * h), (gp - 2 * g0 + gm) / (h * h)


def continuum_ode_residual(l: int, nu: float, x: float, h: float) -> float:
    """Finite-difference residual of the E > 0 radial equation at ``x``.

    Builds ``g(x) = R_l/x**l = F_l(-nu, x/nu) / x**(l+1)`` and returns
    ``g'' + 2(l+1)/x g' + 2/x g + g/nu**2`` with a central stencil of step
    ``h``.  The residual is O(h**2).
    """
    if nu <= 0:
        raise OutOfDomain(f"nu must be positive, got {nu}")
    if x <= 0:
        raise OutOfDomain(f"x must be positive, got {x}")
    if h <= 0 or h > x / 10:
        raise StepTooLarge(f"step {h} must lie in (0, x/10] with x={x}")

    def g(t):
        return _series(l, -nu, t / nu, 0)[0] / t ** (l + 1)

    g0, d1, d2 = _central(g, x, h)
    return float(d2 + 2 * (l + 1) / x * d1 + 2 / x * g0 + g0 / nu**2)


def continuum_ode_residual_rho(l: int, eta: float, rho: float, h: float) -> float:
    """Same equation in the ``rho = k r`` variable, valid also at ``eta = 0``.

    With ``g = F_l(eta, rho)/rho**(l+1)`` returns
    ``g'' + 2(l+1)/rho g' - 2 eta/rho g + g``.  For ``eta = -nu < 0`` this is
    ``nu**(l+3)`` times the ``x``-form residual at ``x = nu rho`` with step
    ``nu h``.
    """
    if h <= 0 or h > rho / 10:
        raise StepTooLarge(f"step {h} must lie in (0, rho/10] with rho={rho}")

    def g(t):
        return _series(l, eta, t, 0)[0] / t ** (l + 1)

    g0, d1, d2 = _central(g, rho, h)
    return float(d2 + 2 * (l + 1) / rho * d1 - 2 * eta / rho * g0 + g0)


def nu_from_wavenumber(Z: int, k: float, a0: float = 1.0) -> float:
    if k <= 0:
        raise NonPositiveWavenumber(f"wavenumber must be positive, got {k}")
    return Z / (a0 * k)


def eta_from_energy(Z: int, k: float, a0: float = 1.0) -> float:
    """Sommerfeld parameter ``eta = -Z/(a0 k)`` for the attractive Coulomb field."""
    return -nu_from_wavenumber(Z, k, a0)
