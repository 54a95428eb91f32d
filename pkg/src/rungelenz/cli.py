"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error
(malformed grid, evaluation outside the valid domain).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import coulomb, verify
from .errors import InvalidLabels, NegativeRadius, OutOfDomain, StepTooLarge
from .exact import Polynomial, Surd, fraction_str
from .radial import RadialWaveFunction, evaluate, generate_shell, radial_state
from .spectrum import PhysicalScales, energy_level, shell_structure

N_CAP = 30
MAX_GRID_ROWS = 1_000_000

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


# --- grids ----------------------------------------------------------------

def parse_grid(text: str) -> list[Fraction]:
    """``"start:stop:step"`` -> exact sample points, ``floor((stop-start)/step)+1`` of them."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DataError(f"grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise DataError(f"grid entries must be numbers, got {text!r}") from None
    if step <= 0:
        raise DataError(f"grid step must be positive, got {fraction_str(step)}")
    if stop < start:
        raise DataError("grid stop must not be below start")
    count = (stop - start) // step + 1
    if count > MAX_GRID_ROWS:
        raise DataError(f"grid has {count} points, limit is {MAX_GRID_ROWS}")
    return [start + i * step for i in range(int(count))]


# --- formatting -----------------------------------------------------------

def _latex_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def latex_surd(s: Surd) -> str:
    if s.radicand == 1:
        return _latex_fraction(s.coeff)
    root = rf"\sqrt{{{s.radicand}}}"
    if s.coeff == 1:
        return root
    if s.coeff == -1:
        return "-" + root
    return _latex_fraction(s.coeff) + root


def latex_poly(p: Polynomial) -> str:
    out = ""
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        body = "x" if k == 1 else (f"x^{{{k}}}" if k else "")
        if body and mag == 1:
            text = body
        else:
            text = _latex_fraction(mag) + body
        if not out:
            out = ("-" if c < 0 else "") + text
        else:
            out += (" - " if c < 0 else " + ") + text
    return out or "0"


def latex_row(R: RadialWaveFunction) -> str:
    parts = [latex_surd(R.prefactor)]
    if R.l == 1:
        parts.append("x")
    elif R.l > 1:
        parts.append(f"x^{{{R.l}}}")
    if R.poly.degree > 0:
        parts.append(rf"\left({latex_poly(R.poly)}\right)")
    rate = "x" if R.decay_rate == 1 else f"x/{R.decay_rate.denominator}"
    parts.append(f"e^{{-{rate}}}")
    body = r"\,".join(parts)
    return rf"$R_{{{R.n}{R.l}}}$ & ${body}$ \\"


def state_json(R: RadialWaveFunction) -> dict:
    return {
        "n": R.n,
        "l": R.l,
        "prefactor": {**R.prefactor.to_json(), "decimal": float(R.prefactor)},
        "poly": R.poly.to_strings(),
        "poly_decimal": [float(c) for c in R.poly.coeffs],
        "decay_rate": fraction_str(R.decay_rate),
        "decay_rate_decimal": float(R.decay_rate),
        "text": str(R),
    }


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(["" if v is None else v for v in row] for row in rows)
    return buf.getvalue()


@contextmanager
def _output(path: Optional[str]) -> Iterator:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _emit(text: str, path: Optional[str]) -> None:
    with _output(path) as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


# --- commands -------------------------------------------------------------

def _check_n(n: int) -> None:
    if not 1 <= n <= N_CAP:
        raise UsageError(f"n must satisfy 1 <= n <= {N_CAP}, got {n}")


def cmd_generate(args: argparse.Namespace) -> int:
    _check_n(args.n)
    if args.l is not None:
        if not 0 <= args.l <= args.n - 1:
            raise UsageError(f"l must satisfy 0 <= l <= n-1 (n={args.n}), got l={args.l}")
        states = [radial_state(args.n, args.l)]
    else:
        states = generate_shell(args.n)
    fmt = args.format
    if args.grid is not None:
        if fmt not in (None, "csv"):
            raise UsageError("a --grid sweep is written as CSV only")
        xs = parse_grid(args.grid)
        if xs and xs[0] < 0:
            raise DataError("grid must not contain negative radii")
        columns = [evaluate(R, [float(x) for x in xs]) for R in states]
        rows = [[repr(float(x))] + [repr(float(col[i])) for col in columns] for i, x in enumerate(xs)]
        _emit(_csv_text(["x"] + [f"R_{R.n}{R.l}" for R in states], rows), args.out)
        return EXIT_OK
    fmt = fmt or "json"
    if fmt == "json":
        text = json.dumps({"n": args.n, "states": [state_json(R) for R in states]}, indent=2)
    elif fmt == "csv":
        header = ["n", "l", "prefactor_coeff", "prefactor_radicand", "prefactor_decimal", "poly", "decay_rate"]
        rows = [
            [R.n, R.l, fraction_str(R.prefactor.coeff), R.prefactor.radicand, repr(float(R.prefactor)),
             " ".join(R.poly.to_strings()), fraction_str(R.decay_rate)]
            for R in states
        ]
        text = _csv_text(header, rows)
    else:
        text = "\n".join(latex_row(R) for R in states)
    _emit(text, args.out)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    if args.n_max < 1:
        raise UsageError(f"--n-max must be >= 1, got {args.n_max}")
    if args.z < 1:
        raise UsageError(f"--z must be >= 1, got {args.z}")
    scales = PhysicalScales(Z=args.z)
    rows = []
    for n in range(1, args.n_max + 1):
        E = energy_level(n, scales)
        rows.append((n, fraction_str(E), float(E), shell_structure(n).dimension))
    if args.format == "json":
        text = json.dumps(
            {"Z": args.z, "unit": "Ry", "levels": [
                {"n": n, "energy": e, "energy_decimal": d, "degeneracy": g} for n, e, d, g in rows
            ]},
            indent=2,
        )
    elif args.format == "csv":
        text = _csv_text(["n", "energy_Ry", "energy_decimal", "degeneracy"], [[n, e, repr(d), g] for n, e, d, g in rows])
    else:
        lines = [f"{'n':>3}  {'E_n [Ry]':>10}  {'decimal':>14}  {'deg':>4}"]
        lines += [f"{n:>3}  {e:>10}  {d:>14.10f}  {g:>4}" for n, e, d, g in rows]
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    _check_n(args.n_max)
    if args.tol is not None and not args.tol > 0:
        raise UsageError(f"--tol must be positive, got {args.tol}")
    try:
        report = verify.run_suite(args.suite, n_max=args.n_max, tol=args.tol)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    data = report.to_json()
    text = json.dumps(data, indent=2)
    if args.report:
        _emit(text, args.report)
    _emit(text, args.out)
    s = data["summary"]
    print(f"{args.suite}: {s['passed']}/{s['total']} passed, max residual {s['max_residual']:.3e}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def _sweep_point(l: int, eta: float, rho: float, h: float) -> dict:
    val = coulomb.coulomb_f(coulomb.CoulombParams(l, eta, rho))
    row = {"rho": rho, "F": val.F, "Fprime": val.Fprime, "down": None, "up": None,
           "series_ode": coulomb.coulomb_ode_residual(l, eta, rho), "fd_ode": None}
    if l < coulomb.L_MAX:
        row.update(coulomb.recursion_residual(l, eta, rho))
    try:
        row["fd_ode"] = coulomb.continuum_ode_residual_rho(l, eta, rho, h)
    except (StepTooLarge, OutOfDomain):
        pass
    return row


def cmd_coulomb(args: argparse.Namespace) -> int:
    if not 0 <= args.l <= coulomb.L_MAX:
        raise UsageError(f"--l must satisfy 0 <= l <= {coulomb.L_MAX}, got {args.l}")
    if not abs(args.eta) <= coulomb.ETA_MAX:
        raise UsageError(f"|eta| must be <= {coulomb.ETA_MAX}, got {args.eta}")
    if not args.h > 0:
        raise UsageError(f"--h must be positive, got {args.h}")
    rhos = parse_grid(args.rho_grid)
    if rhos and (rhos[0] <= 0 or rhos[-1] > coulomb.RHO_MAX):
        raise DataError(f"rho grid must lie in (0, {coulomb.RHO_MAX:g}]")
    rows = [_sweep_point(args.l, args.eta, float(r), args.h) for r in rhos]
    if args.format == "json":
        text = json.dumps({"l": args.l, "eta": args.eta, "h": args.h, "points": rows}, indent=2)
    else:
        header = list(rows[0]) if rows else ["rho", "F", "Fprime", "down", "up", "series_ode", "fd_ode"]
        text = _csv_text(header, [[None if v is None else repr(v) for v in r.values()] for r in rows])
    _emit(text, args.out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rungelenz", description="Hydrogen ladder generator and verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="exact radial wave functions or sampled grids")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--l", type=int)
    gen.add_argument("--format", choices=("json", "csv", "latex"))
    gen.add_argument("--grid", metavar="START:STOP:STEP", help="sample R_nl(x) on a grid (CSV)")
    gen.add_argument("--out", metavar="FILE")
    gen.set_defaults(func=cmd_generate)

    lev = sub.add_parser("spectrum", help="bound-state energies and degeneracies")
    lev.add_argument("--n-max", type=int, required=True)
    lev.add_argument("--z", type=int, default=1)
    lev.add_argument("--format", choices=("table", "json", "csv"), default="table")
    lev.add_argument("--out", metavar="FILE")
    lev.set_defaults(func=cmd_spectrum)

    ver = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    ver.add_argument("--suite", required=True, help="radial, shell, angular, coulomb or all")
    ver.add_argument("--n-max", type=int, default=6)
    ver.add_argument("--tol", type=float, help="tolerance for the shell suite")
    ver.add_argument("--report", metavar="PATH", help="also write the report to PATH")
    ver.add_argument("--out", metavar="FILE")
    ver.set_defaults(func=cmd_verify)

    cou = sub.add_parser("coulomb", help="sweep F_l and its ladder residuals over a rho grid")
    cou.add_argument("--l", type=int, required=True)
    cou.add_argument("--eta", type=float, required=True)
    cou.add_argument("--rho-grid", required=True, metavar="START:STOP:STEP")
    cou.add_argument("--h", type=float, default=verify.FD_STEP, help="finite-difference step in rho")
    cou.add_argument("--format", choices=("csv", "json"), default="csv")
    cou.add_argument("--out", metavar="FILE")
    cou.set_defaults(func=cmd_coulomb)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InvalidLabels) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, NegativeRadius, OutOfDomain, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
