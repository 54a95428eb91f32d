"""Verification suites with machine-readable reports.

Each suite turns one family of identities into a list of :class:`Case`
records.  A case either carries a numeric residual checked against a
tolerance or an exact-equality flag.  Reports are deterministic: cases are
sorted by id.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import mpmath
import numpy as np

from . import angular, coulomb, radial, shell
from .exact import HalfInt
from .oracles import cg_by_diagonalization, six_j_by_contraction
from .spectrum import PhysicalScales, energy_level

SUITES = ("radial", "shell", "angular", "coulomb")

RECURSION_TOL = 1e-8
CONTINUUM_TOL = 1e-5
BESSEL_TOL = 1e-10
SERIES_ODE_TOL = 1e-8
CHANNEL_TOL = 1e-12
FD_STEP = 1e-3

ETA_SAMPLES = (-2.0, -1.0, -0.5, 0.0)
RHO_SAMPLES = (0.2, 0.5, 1.0, 2.0, 5.0, 10.0)

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["suite", "cases", "summary"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "inputs", "residual", "exact_match", "tolerance", "pass"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "inputs": {"type": "object"},
                    "residual": {"type": ["number", "null"]},
                    "exact_match": {"type": ["boolean", "null"]},
                    "tolerance": {"type": ["number", "null"]},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "passed", "max_residual"],
            "additionalProperties": False,
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "passed": {"type": "integer", "minimum": 0},
                "max_residual": {"type": "number", "minimum": 0},
            },
        },
    },
}


@dataclass(frozen=True)
class Case:
    id: str
    inputs: dict
    residual: Optional[float] = None
    exact_match: Optional[bool] = None
    tolerance: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.exact_match is not None:
            return self.exact_match
        return self.residual is not None and math.isfinite(self.residual) and self.residual <= self.tolerance

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "inputs": self.inputs,
            "residual": self.residual,
            "exact_match": self.exact_match,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def numeric(case_id: str, inputs: dict, residual: float, tol: float) -> Case:
    return Case(case_id, inputs, residual=float(residual), tolerance=float(tol))


def exact(case_id: str, inputs: dict, ok: bool) -> Case:
    return Case(case_id, inputs, exact_match=bool(ok))


def summarize(cases: list[dict]) -> dict:
    residuals = [c["residual"] for c in cases if c["residual"] is not None]
    return {
        "total": len(cases),
        "passed": sum(1 for c in cases if c["pass"]),
        "max_residual": max(residuals, default=0.0),
    }


@dataclass
class VerificationReport:
    suite: str
    cases: list[Case] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json(self) -> dict:
        cases = [c.to_json() for c in sorted(self.cases, key=lambda c: c.id)]
        return {"suite": self.suite, "cases": cases, "summary": summarize(cases)}


# --- radial ---------------------------------------------------------------

def radial_cases(n_max: int) -> list[Case]:
    cases = []
    for (n, l), (pref, poly) in radial.REFERENCE_STATES.items():
        R = radial.radial_state(n, l)
        cases.append(exact(f"radial/table/R{n}{l}", {"n": n, "l": l}, R.prefactor == pref and R.poly == poly))
    for n in range(1, n_max + 1):
        for R in radial.generate_shell(n):
            l = R.l
            tag = {"n": n, "l": l}
            cases.append(exact(f"radial/ode/n={n},l={l}", tag, radial.ode_residual(R).is_zero()))
            first, second = radial.factorization_residual(n, l)
            ok = all(p is None or p.is_zero() for p in (first, second))
            cases.append(exact(f"radial/factorization/n={n},l={l}", tag, ok))
            cases.append(exact(f"radial/nodes/n={n},l={l}", tag, radial.node_count(R) == n - l - 1))
            if l < n - 1:
                upper = radial.radial_state(n, l + 1)
                cases.append(exact(f"radial/roundtrip/n={n},l={l + 1}", tag, radial.raise_l(R) == upper))
            else:
                cases.append(
                    exact(f"radial/annihilate/n={n}", tag, isinstance(radial.raise_l(R), radial.ZeroFunction))
                )
    for l in range(n_max):
        for n1, n2 in itertools.combinations_with_replacement(range(l + 1, n_max + 1), 2):
            value = radial.overlap(radial.radial_state(n1, l), radial.radial_state(n2, l))
            cases.append(
                exact(f"radial/overlap/l={l},n={n1},{n2}", {"l": l, "n1": n1, "n2": n2}, value == int(n1 == n2))
            )
    return cases


# --- shell ----------------------------------------------------------------

def shell_cases(n_max: int, tol: Optional[float] = None) -> list[Case]:
    cases = []
    for n in range(1, n_max + 1):
        S = shell.build_shell(n)
        t = tol if tol is not None else shell.default_tolerance(n)
        for name, value in shell.algebra_residuals(S).items():
            cases.append(numeric(f"shell/algebra/n={n}/{name}", {"n": n}, value, t))
        U = S.cg_transform
        cases.append(numeric(f"shell/unitary/n={n}", {"n": n}, float(np.max(np.abs(U @ U.T - np.eye(n * n)))), t))
        for l in range(n):
            got = shell.a_minus_elements(S, l)
            want = angular.master_closed_form(n, l)
            diffs = [abs(got.c_same - float(want.same))]
            for g, w in ((got.c_up, want.up), (got.c_down, want.down)):
                if (g is None) != (w is None):
                    diffs.append(math.inf)
                elif g is not None:
                    diffs.append(abs(g - float(w)))
            cases.append(numeric(f"shell/a_minus/n={n},l={l}", {"n": n, "l": l}, max(diffs), t))
            channel = max(abs(got.c_same), got.leakage)
            cases.append(numeric(f"shell/channel/n={n},l={l}", {"n": n, "l": l}, channel, CHANNEL_TOL))
        lo, hi = shell.annihilation_check(S)
        cases.append(numeric(f"shell/annihilation/n={n}", {"n": n}, max(lo, hi), CHANNEL_TOL))
    return cases


# --- angular --------------------------------------------------------------

CG_ORACLE_JMAX2 = 6  # j <= 3
SIXJ_ORACLE_JMAX2 = 6


def _cg_pair_ok(t1: int, t2: int) -> bool:
    for tJ in range(abs(t1 - t2), t1 + t2 + 1, 2):
        for tm1 in range(-t1, t1 + 1, 2):
            for tm2 in range(-t2, t2 + 1, 2):
                if abs(tm1 + tm2) > tJ:
                    continue
                labels = tuple(map(HalfInt, (t1, tm1, t2, tm2, tJ, tm1 + tm2)))
                if angular.clebsch_gordan(*labels) != cg_by_diagonalization(*labels):
                    return False
    return True


def _triads_ok(k: tuple[int, ...]) -> bool:
    a, b, c, d, e, f = k
    return all(angular._triad_ok(*t) for t in ((a, b, c), (a, e, f), (d, b, f), (d, e, c)))


def angular_cases(n_max: int) -> list[Case]:
    cases = []
    for n in range(1, n_max + 1):
        cases.append(
            exact(f"angular/reduced/n={n}", {"n": n}, angular.reduced_b_element(n).square() == (n * n - 1) / 2)
        )
        for l in range(n):
            for lp in range(max(0, l - 1), l + 3):
                for branch in ("plus", "minus"):
                    got = angular.b_minus_element(n, lp, l, branch)
                    ok = got == angular.b_minus_closed_form(n, lp, l, branch)
                    ok = ok and got == angular.b_minus_direct(n, lp, l, branch)
                    inputs = {"n": n, "l_prime": lp, "l": l, "branch": branch}
                    cases.append(exact(f"angular/group/n={n},lp={lp},l={l},{branch}", inputs, ok))
                plus = angular.b_minus_element(n, lp, l, "plus")
                minus = angular.b_minus_element(n, lp, l, "minus")
                relation = minus == (plus if (l - lp) % 2 == 0 else -plus)
                cases.append(exact(f"angular/branch/n={n},lp={lp},l={l}", {"n": n, "l_prime": lp, "l": l}, relation))
            same = angular.b_minus_element(n, l, l, "plus") + angular.b_minus_element(n, l, l, "minus")
            cases.append(exact(f"angular/sum_rule/n={n},l={l}", {"n": n, "l": l}, same.square() == 2 * l and same.sign >= 0))
            master = angular.master_coefficients(n, l)
            cases.append(exact(f"angular/master/n={n},l={l}", {"n": n, "l": l}, master == angular.master_closed_form(n, l)))
    for t1 in range(CG_ORACLE_JMAX2 + 1):
        for t2 in range(CG_ORACLE_JMAX2 + 1):
            inputs = {"j1": str(HalfInt(t1)), "j2": str(HalfInt(t2))}
            cases.append(exact(f"angular/cg_oracle/j1={HalfInt(t1)},j2={HalfInt(t2)}", inputs, _cg_pair_ok(t1, t2)))
    rows: dict[tuple[int, int, int], bool] = {}
    for key in itertools.product(range(SIXJ_ORACLE_JMAX2 + 1), repeat=6):
        if not _triads_ok(key):
            continue
        labels = tuple(map(HalfInt, key))
        ok = angular.wigner_6j(*labels) == six_j_by_contraction(*labels)
        rows[key[:3]] = rows.get(key[:3], True) and ok
    for row, ok in rows.items():
        name = ",".join(str(HalfInt(t)) for t in row)
        cases.append(exact(f"angular/sixj_oracle/{name}", {"top_row": [str(HalfInt(t)) for t in row]}, ok))
    return cases


# --- coulomb --------------------------------------------------------------

def _riccati_bessel(l: int, rho: float) -> float:
    # rho j_l(rho) = sqrt(pi rho / 2) J_{l+1/2}(rho)
    return float(mpmath.sqrt(mpmath.pi * rho / 2) * mpmath.besselj(l + mpmath.mpf(1) / 2, rho))


def continuum_residual(l: int, eta: float, rho: float, h: float = FD_STEP) -> float:
    """E > 0 radial-equation residual at an ``(eta, rho)`` sample point.

    The stencil steps in ``rho``, the variable the sample box is laid out
    in, so one form covers ``eta = 0`` as well.  For ``eta = -nu < 0`` this
    is ``nu**(l+3)`` times the ``x``-form residual at ``x = nu rho``, step
    ``nu h``.
    """
    return coulomb.continuum_ode_residual_rho(l, eta, rho, h)


def coulomb_cases(l_max: int = 5) -> list[Case]:
    cases = []
    for l in range(l_max + 1):
        for eta in ETA_SAMPLES:
            for rho in RHO_SAMPLES:
                inputs = {"l": l, "eta": eta, "rho": rho}
                tag = f"l={l},eta={eta},rho={rho}"
                res = coulomb.recursion_residual(l, eta, rho)
                worst = max(abs(v) for v in res.values() if v is not None)
                cases.append(numeric(f"coulomb/recursion/{tag}", inputs, worst, RECURSION_TOL))
                cases.append(
                    numeric(f"coulomb/series_ode/{tag}", inputs, abs(coulomb.coulomb_ode_residual(l, eta, rho)), SERIES_ODE_TOL)
                )
                cases.append(
                    numeric(f"coulomb/continuum_ode/{tag}", {**inputs, "h": FD_STEP}, abs(continuum_residual(l, eta, rho)), CONTINUUM_TOL)
                )
        for rho in RHO_SAMPLES:
            F = coulomb.coulomb_f(coulomb.CoulombParams(l, 0.0, rho)).F
            cases.append(
                numeric(f"coulomb/bessel/l={l},rho={rho}", {"l": l, "rho": rho}, abs(F - _riccati_bessel(l, rho)), BESSEL_TOL)
            )
    return cases


def spectrum_cases(n_max: int) -> list[Case]:
    return [
        exact(
            f"spectrum/energy/n={n},Z={Z}",
            {"n": n, "Z": Z},
            energy_level(n, PhysicalScales(Z=Z)) == Fraction(-Z * Z, n * n),
        )
        for n in range(1, n_max + 1)
        for Z in (1, 2)
    ]


_RUNNERS: dict[str, Callable[[int, Optional[float]], list[Case]]] = {
    "radial": lambda n_max, tol: radial_cases(n_max) + spectrum_cases(n_max),
    "shell": lambda n_max, tol: shell_cases(n_max, tol),
    "angular": lambda n_max, tol: angular_cases(n_max),
    "coulomb": lambda n_max, tol: coulomb_cases(),
}


def run_suite(suite: str, n_max: int = 6, tol: Optional[float] = None) -> VerificationReport:
    """Run one suite (or ``"all"``); ``tol`` overrides the shell tolerance."""
    if suite == "all":
        names = SUITES
    elif suite in _RUNNERS:
        names = (suite,)
    else:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report = VerificationReport(suite)
    for name in names:
        report.cases.extend(_RUNNERS[name](n_max, tol))
    return report
