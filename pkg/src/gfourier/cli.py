"""Command-line interface: ``gfourier tables|spectrum|kernel|transform|verify``.

All data goes out as CSV on stdout or to ``--out PATH``.  Flag errors exit
with status 2 and failed verification with status 1.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from . import kernels, transform
from .exactnum import DomainError, FSpec, table_csv
from .kernels import CLIFFORD, HARMONIC, KernelSpec, required_family, spectrum
from .opalg import GaussPoly, Poly, clifford_psi, hermite_phi

SETTINGS = (HARMONIC, CLIFFORD)


class FlagError(Exception):
    """Invalid flag combination detected after parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise FlagError(f"expected comma-separated integers, got {text!r}") from None


def _float(v: float) -> str:
    return format(float(v) + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0


def _parse_spec(args) -> KernelSpec:
    family = required_family(args.m, args.setting)
    text = args.F
    if text.startswith("seq:"):
        F = FSpec.general(family, _int_list(text[4:]))
    else:
        values = _int_list(text)
        if len(values) != 4:
            raise FlagError("--F takes a,b,c,d or seq:c0,c1,...")
        F = FSpec.four_tuple(family, *values)
    try:
        return KernelSpec(args.m, args.setting, F, args.kmax_series)
    except ValueError as exc:
        raise FlagError(str(exc)) from None


def _points(text: str, m: int) -> np.ndarray:
    try:
        rows = [[float(v) for v in chunk.split(",")] for chunk in text.split(";") if chunk]
    except ValueError:
        raise FlagError(f"bad point list {text!r}") from None
    if not rows or any(len(r) != m for r in rows):
        raise FlagError(f"points must have {m} coordinates, separated by ';'")
    return np.array(rows)


def _grid(n: int, extent: float, m: int) -> np.ndarray:
    if n < 1:
        raise FlagError("--grid must be positive")
    axis = np.linspace(-extent, extent, n) if n > 1 else np.zeros(1)
    return np.array(list(itertools.product(axis, repeat=m)))


def _value_columns(m: int, dense: bool) -> list[str]:
    if not dense:
        return ["re", "im"]
    cols = []
    for blade in range(1 << m):
        name = "".join(str(i + 1) for i in range(m) if blade >> i & 1) or "0"
        cols += [f"re_e{name}", f"im_e{name}"]
    return cols


def _value_cells(row: np.ndarray, dense: bool) -> list[str]:
    row = np.atleast_1d(row)
    if not dense:
        row = row[:1]
    return [c for v in row for c in (_float(v.real), _float(v.imag))]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_tables(args) -> str:
    if args.nmax < 0 or args.xmax < 0:
        raise FlagError("--nmax and --xmax must be non-negative")
    return table_csv(args.family, args.nmax, args.xmax, selectors=args.selectors)


def cmd_spectrum(args) -> str:
    spec = _parse_spec(args)
    lines = ["j," + ",".join(str(k) for k in range(args.kmax + 1))]
    for j in range(args.jmax + 1):
        lines.append(f"{j}," + ",".join(str(spectrum(spec, j, k)) for k in range(args.kmax + 1)))
    return "\n".join(lines) + "\n"


def cmd_kernel(args) -> str:
    spec = _parse_spec(args)
    m = spec.m
    xs = _points(args.x, m) if args.x else _grid(args.grid, args.extent, m)
    ys = _points(args.y, m) if args.y else _grid(args.grid, args.extent, m)
    pairs = np.array([(x, y) for x in xs for y in ys])
    x, y = pairs[:, 0], pairs[:, 1]
    try:
        if args.path == "closed":
            vals = kernels.closed_kernel(spec, x, y)
        else:
            vals = kernels.series_kernel(spec, x, y, args.kmax_series)
    except ValueError as exc:
        raise FlagError(str(exc)) from None
    dense = spec.setting == CLIFFORD
    header = ([f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)]
              + _value_columns(m, dense))
    lines = [",".join(header)]
    for xv, yv, val in zip(x, y, vals):
        cells = [_float(v) for v in xv] + [_float(v) for v in yv] + _value_cells(val, dense)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _input_function(args, m: int, setting: str) -> GaussPoly:
    text = args.input
    if text.startswith("basis:"):
        idx = _int_list(text[6:])
        if len(idx) != 2 or min(idx) < 0:
            raise FlagError("--input basis:j,k needs two non-negative integers")
        build = hermite_phi if setting == HARMONIC else clifford_psi
        return build(idx[0], idx[1], m)
    if text.startswith("json:"):
        source = text[5:]
        path = Path(source)
        payload = path.read_text() if path.exists() else source
        try:
            f = GaussPoly(Poly.from_dict(json.loads(payload)))
        except (ValueError, KeyError, TypeError) as exc:
            raise FlagError(f"bad polynomial JSON: {exc}") from None
        if f.m != m:
            raise FlagError(f"polynomial has m={f.m}, flags say m={m}")
        return f
    raise FlagError("--input must be basis:j,k or json:PATH_OR_TEXT")


def cmd_transform(args) -> str:
    spec = _parse_spec(args)
    m = spec.m
    f = _input_function(args, m, spec.setting)
    ys = _points(args.y, m) if args.y else _grid(args.grid, args.extent, m)
    if args.method == "exact":
        vals = transform.eigen_transform(spec, f).evaluate(ys)
    else:
        if m > 3:
            raise FlagError("quadrature needs m <= 3")
        vals = transform.quad_transform(spec, f, ys)
    dense = spec.setting == CLIFFORD or not f.poly.is_scalar()
    header = [f"y{i + 1}" for i in range(m)] + _value_columns(m, dense)
    lines = [",".join(header)]
    for yv, val in zip(ys, vals):
        lines.append(",".join([_float(v) for v in yv] + _value_cells(val, dense)))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[str, int]:
    from . import verify

    modules = [args.module] if args.module else None
    results = verify.run_suite(args.suite, modules)
    lines = ["module,check,kind,status,seconds,detail"]
    for r in results:
        detail = r.detail.replace(",", ";")
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.module},{r.name},{r.kind},{status},{r.seconds:.2f},{detail}")
    passed, failed = verify.summary(results)
    lines.append(f"# passed {passed} failed {failed}")
    return "\n".join(lines) + "\n", 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_spec_flags(p):
    p.add_argument("--setting", choices=SETTINGS, default=HARMONIC)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--F", default="0,0,0,0", help="a,b,c,d or seq:c0,c1,...")
    p.add_argument("--kmax-series", type=int, default=None,
                   help="series truncation (default: automatic)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gfourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("tables", help="mod-4 tables of the E_n / D_n polynomials")
    p.add_argument("--family", choices=("E", "D"), required=True)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--xmax", type=int, default=15)
    p.add_argument("--selectors", action="store_true", help="selector rows instead")

    p = sub.add_parser("spectrum", help="eigenvalue phases mu_{j,k}")
    _add_spec_flags(p)
    p.add_argument("--jmax", type=int, default=3)
    p.add_argument("--kmax", type=int, default=7)

    p = sub.add_parser("kernel", help="kernel values on a point grid")
    _add_spec_flags(p)
    p.add_argument("--path", choices=("series", "closed"), default="series")
    p.add_argument("--grid", type=int, default=5, help="points per coordinate")
    p.add_argument("--extent", type=float, default=2.0)
    p.add_argument("--x", help="x points 'a,b;c,d' (overrides the grid)")
    p.add_argument("--y", help="y points 'a,b;c,d' (overrides the grid)")

    p = sub.add_parser("transform", help="apply a transform to a basis or JSON function")
    _add_spec_flags(p)
    p.add_argument("--input", required=True, help="basis:j,k or json:PATH_OR_TEXT")
    p.add_argument("--method", choices=("exact", "quad"), default="exact")
    p.add_argument("--y", help="sample points 'a,b;c,d'")
    p.add_argument("--grid", type=int, default=5)
    p.add_argument("--extent", type=float, default=2.0)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", choices=("all", "exact", "numeric"), default="all")
    p.add_argument("--module", choices=None)

    for name in ("tables", "spectrum", "kernel", "transform", "verify"):
        sub.choices[name].add_argument("--out", help="write output to this path")
    return parser


COMMANDS = {"tables": cmd_tables, "spectrum": cmd_spectrum, "kernel": cmd_kernel,
            "transform": cmd_transform}


def render(argv) -> str:
    """Output text of a data command (everything except ``verify``)."""
    args = build_parser().parse_args(list(argv))
    if args.command == "verify":
        raise FlagError("render() does not run the verify suite")
    return COMMANDS[args.command](args)


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            from .verify import MODULES

            if args.module and args.module not in MODULES:
                raise FlagError(f"unknown module {args.module!r}; choose from {', '.join(MODULES)}")
            text, code = cmd_verify(args)
        else:
            text, code = COMMANDS[args.command](args), 0
    except (FlagError, DomainError) as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
