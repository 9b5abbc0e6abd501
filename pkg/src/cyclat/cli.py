"""Batch command-line interface.

Subcommands parse exact lattice/field descriptions, dispatch to the
library, and emit deterministic CSV or JSON (LF line endings, header row,
exact values in the entry grammar; floating approximations only in
columns suffixed _lo/_hi).  Exit codes: 0 success, 2 domain refusal
(e.g. a non-well-rounded lattice), 64 usage or parse error, 65 scale
limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .cyclic import circulant_det_certified, circulant_det_exact, cyclic_census
from .docio import parse_document, parse_scalar_literal, serialize_scalar
from .errors import (CyclatError, DocumentError, NotWellRoundedError,
                     ScaleLimitError)
from .heights import FieldDescriptor, bounded_elements, count_wr_classes, weil_height
from .numberfield import FieldSpec, trace_lattice_report
from .planar import canonical_x, class_height
from .roots import root_report

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_SCALE = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _dec(value: Fraction, places: int, *, round_up: bool) -> str:
    """Directed decimal rendering of an exact rational."""
    scale = 10 ** places
    scaled = value * scale
    n = math.ceil(scaled) if round_up else math.floor(scaled)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{places}d}"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list[str]]) -> str:
    return "".join(",".join(row) + "\n" for row in rows)


def _parse_field(text: str) -> FieldDescriptor:
    if text == "rational":
        return FieldDescriptor.rationals()
    if text.startswith("quad:"):
        try:
            d = int(text.split(":", 1)[1])
        except ValueError:
            raise DocumentError(f"bad field {text!r}", where="--field")
        try:
            return FieldDescriptor.real_quadratic(d)
        except CyclatError as exc:
            raise DocumentError(str(exc), where="--field")
    raise DocumentError(f"bad field {text!r} (want rational or quad:D)",
                        where="--field")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_canon(args) -> int:
    with open(args.lattice, encoding="utf-8") as fh:
        lat, _ = parse_document(fh.read())
    if lat.rank != 2 or lat.ambient_dim != 2:
        raise DocumentError("canon needs a full-rank planar lattice",
                            where="basis")
    cls = canonical_x(lat)
    hv = class_height(cls)
    doc = {
        "x": serialize_scalar(cls.x),
        "field": cls.field,
        "height_lo": _dec(hv.lo, 12, round_up=False),
        "height_hi": _dec(hv.hi, 12, round_up=True),
        "wr": True,
    }
    _emit(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n",
          args.output)
    return EXIT_OK


def cmd_count(args) -> int:
    field = _parse_field(args.field)
    tmax = args.max_height
    if tmax < 1:
        raise DocumentError("--max-height must be >= 1", where="--max-height")
    rows = [["T", "count", "bound_hi"]]
    plot_rows = []
    for t in range(1, tmax + 1):
        count, bound = count_wr_classes(field, t)
        hi = _dec(bound.hi, 2, round_up=True)
        rows.append([str(t), str(count), hi])
        plot_rows.append((t, count, hi))
    _emit(_csv(rows), args.output)
    if args.plot:
        from .plotting import save_count_figure
        save_count_figure(plot_rows, args.plot)
    return EXIT_OK


def cmd_classes(args) -> int:
    field = _parse_field(args.field)
    if args.max_height < 1:
        raise DocumentError("--max-height must be >= 1", where="--max-height")
    alpha = parse_scalar_literal(args.alpha, where="--alpha")
    if alpha.sign() <= 0:
        raise DocumentError("--alpha must be positive", where="--alpha")
    xs = bounded_elements(field, alpha, args.max_height,
                          positive_only=args.positive_only)
    rows = [["x", "h_lo", "h_hi"]]
    for x in xs:
        hv = weil_height(x)
        rows.append([serialize_scalar(x),
                     _dec(hv.lo, 12, round_up=False),
                     _dec(hv.hi, 12, round_up=True)])
    _emit(_csv(rows), args.output)
    return EXIT_OK


def cmd_root_report(args) -> int:
    report = root_report(args.max_n)
    rows = [["family", "n", "dual", "det_gram", "kissing", "is_cyclic",
             "simple_status", "certificate"]]
    for r in report:
        cert = "-"
        if r.certificate is not None:
            cert = ":".join(str(f) for f in r.certificate.generator_in_lattice())
        rows.append([r.id.family, str(r.id.n), _b(r.id.dual),
                     str(r.det_gram), str(r.kissing), _b(r.cyclic),
                     r.simple_status, cert])
    _emit(_csv(rows), args.output)
    if args.plot:
        from .plotting import save_root_report_figure
        save_root_report_figure(report, args.plot)
    return EXIT_OK


def cmd_census(args) -> int:
    entries = cyclic_census(args.n, args.max_index)
    rows = [["n", "index", "hnf_columns", "is_cyclic", "is_simple",
             "generator"]]
    for e in entries:
        cols = ";".join(":".join(str(v) for v in col) for col in e.hnf_columns)
        gen = ":".join(str(v) for v in e.generator) if e.generator else "-"
        rows.append([str(e.n), str(e.index), cols, "true", _b(e.is_simple), gen])
    _emit(_csv(rows), args.output)
    if args.plot:
        from .plotting import save_census_figure
        save_census_figure(entries, args.plot)
    return EXIT_OK


def cmd_nf(args) -> int:
    if (args.cyclotomic is None) == (args.quad is None):
        raise DocumentError("choose exactly one of --cyclotomic, --quad",
                            where="nf")
    try:
        spec = (FieldSpec.cyclotomic(args.cyclotomic)
                if args.cyclotomic is not None else FieldSpec.quadratic(args.quad))
    except CyclatError as exc:
        raise DocumentError(str(exc), where="nf")
    rep = trace_lattice_report(spec)
    nib = ";".join(str(v) for v in rep.nib.theta) if rep.nib else "-"
    rows = [["field", "degree", "cyclic", "tame", "simple", "nib_certificate",
             "wr", "kissing", "det_gram"],
            [spec.label, str(rep.degree), _b(rep.cyclic), _b(rep.tame),
             _b(rep.simple), nib, _b(rep.wr.is_wr),
             str(rep.minima.kissing_number), str(rep.det_gram)]]
    _emit(_csv(rows), args.output)
    return EXIT_OK


def cmd_detcheck(args) -> int:
    try:
        c = [int(part) for part in args.c.split(",")]
    except ValueError:
        raise DocumentError(f"bad coefficient vector {args.c!r}", where="--c")
    if not c:
        raise DocumentError("empty coefficient vector", where="--c")
    certified = circulant_det_certified(c)
    exact = circulant_det_exact(c)
    status = "ok" if certified == exact else "mismatch"
    rows = [["det_interval", "det_exact", "status"],
            [str(certified), str(exact), status]]
    _emit(_csv(rows), args.output)
    return EXIT_OK if status == "ok" else 1


def _b(x: bool) -> str:
    return "true" if x else "false"


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclat",
                     description="exact toolkit for cyclic and well-rounded lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="canonical parameter of a planar WR lattice")
    p.add_argument("--lattice", required=True, help="lattice document (JSON)")
    p.add_argument("--output")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("count", help="count WR similarity classes by height")
    p.add_argument("--field", required=True, help="rational or quad:D")
    p.add_argument("--max-height", type=int, required=True)
    p.add_argument("--emit", choices=["csv"], default="csv")
    p.add_argument("--output")
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classes",
                       help="list field elements of bounded height in a disk")
    p.add_argument("--field", required=True)
    p.add_argument("--alpha", default="2-1*sqrt(3)")
    p.add_argument("--max-height", type=int, required=True)
    p.add_argument("--positive-only", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("root-report", help="cyclic classification of root lattices")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--output")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_root_report)

    p = sub.add_parser("census", help="cyclic sublattices of Z^n by index")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--output")
    p.add_argument("--plot")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("nf", help="trace-form lattice report for a number field")
    p.add_argument("--cyclotomic", type=int)
    p.add_argument("--quad", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("detcheck", help="circulant determinant, two ways")
    p.add_argument("--c", required=True, help="comma-separated integers")
    p.add_argument("--output")
    p.set_defaults(func=cmd_detcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotWellRoundedError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_DOMAIN
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ScaleLimitError as exc:
        sys.stderr.write(f"scale limit: {exc}\n")
        return EXIT_SCALE
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
