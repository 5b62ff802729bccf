"""Command line driver emitting the experiment tables as CSV.

Subcommands: convergence | conservation | eigenvalues | cfl | burgers.
CSV goes to stdout unless --out is given; diagnostics (spectral
abscissa, mass drift) go to stderr.  Output is byte-deterministic for
fixed flags: scientific notation with six significant digits,
eigenvalues sorted lexicographically by (Re, Im).

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from .advection import Form
from .errors import AnalysisError, ConfigurationError, DivergenceError, DomainError
from .experiments import (
    EIGEN_SCENARIOS,
    burgers_table,
    cfl_table,
    conservation_table,
    convergence_table,
    spectrum_run,
)
from .mesh import SpeedMode
from .operators import NodeFamily

_FORMS = {
    "split": Form.SPLIT_GENERAL,
    "split-simplified": Form.SPLIT_SIMPLIFIED,
    "unsplit": Form.UNSPLIT,
    "noncons": Form.NONCONS_GENERAL,
    "noncons-simplified": Form.NONCONS_SIMPLIFIED,
}
_FAMILIES = {"lobatto": NodeFamily.LOBATTO, "gauss": NodeFamily.GAUSS}
_SPEED_MODES = {"direct": SpeedMode.DIRECT, "lobatto": SpeedMode.VIA_LOBATTO}
_FLUX_CHOICES = [
    "central",
    "upwind",
    "edge-central",
    "split-central",
    "unsplit-central",
    "edge-upwind",
    "split-upwind",
    "unsplit-upwind",
    "modified-central",
    "modified-upwind",
]


def _fmt(x: float) -> str:
    return f"{x:.5e}"


def _common_flags(sub, default_form="split"):
    sub.add_argument("--form", choices=sorted(_FORMS), default=default_form)
    sub.add_argument("--flux", choices=_FLUX_CHOICES, default="central")
    sub.add_argument("--nodes", choices=sorted(_FAMILIES), default="lobatto")
    sub.add_argument(
        "--speed-disc",
        choices=sorted(_SPEED_MODES),
        default=None,
        help="speed discretisation (default: lobatto interpolation)",
    )
    sub.add_argument("--out", default=None, help="CSV output path (default stdout)")
    sub.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsbp", description="summation-by-parts discretisation experiments"
    )
    subs = parser.add_subparsers(dest="command", required=True)

    conv = subs.add_parser("convergence", help="error table for the smooth advection test")
    _common_flags(conv)
    conv.add_argument("--p", type=_int_list, default=[5])
    conv.add_argument("--N", type=_int_list, default=[16, 32, 64])

    cons = subs.add_parser("conservation", help="mass-defect table for nonnegative speed")
    _common_flags(cons)
    cons.add_argument("--p", type=_int_list, default=[3, 4])
    cons.add_argument("--N", type=_int_list, default=[8, 16, 32])

    eig = subs.add_parser("eigenvalues", help="spectrum of the assembled linear operator")
    eig.add_argument("--scenario", choices=sorted(EIGEN_SCENARIOS), required=True)
    _common_flags(eig)

    cfl = subs.add_parser("cfl", help="largest stable time step scan")
    _common_flags(cfl)
    cfl.add_argument("--p", type=_int_list, default=[3])
    cfl.add_argument("--N", type=_int_list, default=[256])

    burg = subs.add_parser("burgers", help="Burgers convergence with Godunov flux")
    burg.add_argument("--nodes", choices=sorted(_FAMILIES), default="gauss")
    burg.add_argument("--p", type=_int_list, default=[4])
    burg.add_argument("--N", type=_int_list, default=[100, 200, 400])
    burg.add_argument("--out", default=None)
    burg.add_argument("--jobs", type=int, default=1)

    return parser


def _emit(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as handle:
            handle.write(text)


def _speed_mode(args) -> SpeedMode:
    if args.speed_disc is None:
        return SpeedMode.VIA_LOBATTO
    return _SPEED_MODES[args.speed_disc]


def _order_cell(order) -> str:
    return "" if order is None else f"{order:.2f}"


def _run(args) -> None:
    if args.command == "convergence":
        rows = convergence_table(
            _FORMS[args.form], args.flux, _FAMILIES[args.nodes], _speed_mode(args),
            args.p, args.N, args.jobs,
        )
        lines = ["p,N,error,eoc"] + [
            f"{r.p},{r.n_elements},{_fmt(r.error)},{_order_cell(r.order)}" for r in rows
        ]
        _emit(lines, args.out)
    elif args.command == "conservation":
        rows = conservation_table(
            _FORMS[args.form], args.flux, _FAMILIES[args.nodes], _speed_mode(args),
            args.p, args.N, args.jobs,
        )
        lines = ["p,N,error,eoc"] + [
            f"{r.p},{r.n_elements},{_fmt(r.error)},{_order_cell(r.order)}" for r in rows
        ]
        _emit(lines, args.out)
    elif args.command == "eigenvalues":
        mode = None if args.speed_disc is None else _SPEED_MODES[args.speed_disc]
        run = spectrum_run(
            args.scenario, _FORMS[args.form], args.flux, _FAMILIES[args.nodes], mode
        )
        lines = ["re,im"] + [f"{_fmt(z.real)},{_fmt(z.imag)}" for z in run.eigenvalues]
        _emit(lines, args.out)
        print(
            f"spectral abscissa: {_fmt(run.abscissa)} (|L|_F = {_fmt(run.frobenius)})",
            file=sys.stderr,
        )
    elif args.command == "cfl":
        results = cfl_table(
            _FORMS[args.form], args.flux, _FAMILIES[args.nodes], _speed_mode(args),
            args.p, args.N, args.jobs,
        )
        lines = ["p,N,flux,form,c_max"] + [
            f"{p},{n},{args.flux},{args.form},{c:.1f}" for p, n, c in results
        ]
        _emit(lines, args.out)
    elif args.command == "burgers":
        rows = burgers_table(_FAMILIES[args.nodes], args.p, args.N, args.jobs)
        lines = ["p,N,error,eoc"] + [
            f"{r.p},{r.n_elements},{_fmt(r.error)},{_order_cell(r.order)}" for r in rows
        ]
        _emit(lines, args.out)
        drift = max(r.mass_drift for r in rows)
        print(f"max relative mass drift: {_fmt(drift)}", file=sys.stderr)
    else:  # pragma: no cover
        raise ConfigurationError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (AnalysisError, DivergenceError, DomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
