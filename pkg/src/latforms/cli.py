"""Command-line surface tying the pipeline together.

Subcommands: reduce, rootform, dist, dc7, collide, synth, project, density.
Exit codes: 0 success, 1 input error, 2 numerical failure.  Output uses
fixed 12-significant-digit formatting so identical inputs and flags give
byte-identical results; per-record processing is order-preserving.
"""

import argparse
import math
import sys

import numpy as np

from . import __version__
from .errors import (
    DegenerateFormError,
    InvalidVoformError,
    LatticeError,
    NonRealizableFormError,
    NotObtuseError,
    RecordError,
    ReductionCapError,
    UsageError,
)
from .forms import lattice_sign, detect_special, root_form, conorms_of
from .geometry import DEFAULT_REL_TOL, basis_to_superbase
from .metrics import dc7_distance, dc7_vector, find_dc7_collisions, root_metric
from .projection import accumulate_density, project_root_form
from .reconstruct import reconstruct_superbase
from .records import fmt_float, parse_records, parse_root_forms
from .reduction import reduce_to_obtuse

_NUMERICAL_ERRORS = (
    ReductionCapError,
    NotObtuseError,
    NonRealizableFormError,
    DegenerateFormError,
    InvalidVoformError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _open_input(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _parse_q(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--q expects a number or 'inf', got {text!r}") from None


def _record_pipeline(record, rel_tol):
    """reduce -> (superbase, coform, trace); errors tagged with the id."""
    try:
        sb, trace = reduce_to_obtuse(
            basis_to_superbase(record.to_basis()), rel_tol=rel_tol
        )
        return sb, conorms_of(sb), trace
    except LatticeError as exc:
        exc.args = (f"record {record.id!r}: {exc}",)
        raise


def _cmd_reduce(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    header = ["id", "steps"]
    header += [f"v{i}{c}" for i in range(4) for c in "xyz"]
    print(",".join(header), file=out)
    for rec in records:
        sb, _, trace = _record_pipeline(rec, args.tol)
        row = [rec.id, str(trace.iterations)]
        row += [fmt_float(x) for x in sb.vectors.reshape(12)]
        print(",".join(row), file=out)
    return 0


def _report_row(rec_id, sb, cf, rel_tol, primary_oriented):
    plain = root_form(cf, oriented=False, rel_tol=rel_tol)
    oriented = root_form(
        cf,
        oriented=True,
        orientation_sign=sb.orientation_sign(),
        rel_tol=rel_tol,
    )
    primary = oriented if primary_oriented else plain
    sign = lattice_sign(oriented)
    special = sorted(detect_special(plain))
    dc7 = dc7_vector(sb, rel_tol=rel_tol)
    qt, ft = project_root_form(primary)
    row = [rec_id]
    row += [fmt_float(v) for v in primary.values]
    row += [sign.value, "true" if primary_oriented else "false"]
    row += [fmt_float(v) for v in oriented.values]
    row += [";".join(special)]
    row += [fmt_float(v) for v in dc7]
    row += ["", ""] if qt is None else [fmt_float(qt.x), fmt_float(qt.y)]
    row += ["", ""] if ft is None else [fmt_float(ft.x), fmt_float(ft.y)]
    return row


_REPORT_HEADER = (
    ["id", "r23", "r13", "r12", "r01", "r02", "r03", "sign", "oriented"]
    + ["o23", "o13", "o12", "o01", "o02", "o03", "special"]
    + [f"dc7_{k}" for k in range(1, 8)]
    + ["qt_x", "qt_y", "ft_x", "ft_y"]
)


def _cmd_rootform(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    print(",".join(_REPORT_HEADER), file=out)
    for rec in records:
        sb, cf, _ = _record_pipeline(rec, args.tol)
        print(",".join(_report_row(rec.id, sb, cf, args.tol, args.oriented)), file=out)
    return 0


def _cmd_dist(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    by_id = {rec.id: rec for rec in records}
    if args.pair:
        first, _, second = args.pair.partition(",")
        if not second:
            raise UsageError("--pair expects 'idA,idB'")
        for rec_id in (first, second):
            if rec_id not in by_id:
                raise UsageError(f"record {rec_id!r} not found in input")
        pairs = [(first, second)]
    else:
        ids = [rec.id for rec in records]
        pairs = [(a, b) for k, a in enumerate(ids) for b in ids[k + 1 :]]
    forms = {}
    for rec in records:
        sb, cf, _ = _record_pipeline(rec, args.tol)
        forms[rec.id] = root_form(
            cf,
            oriented=args.oriented,
            orientation_sign=sb.orientation_sign(),
            rel_tol=args.tol,
        )
    print("id_a,id_b,distance", file=out)
    for a, b in pairs:
        d = root_metric(forms[a], forms[b], d=args.q, oriented=args.oriented)
        print(f"{a},{b},{fmt_float(d)}", file=out)
    return 0


def _cmd_dc7(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    vectors = {}
    for rec in records:
        sb, _, _ = _record_pipeline(rec, args.tol)
        vectors[rec.id] = dc7_vector(sb, rel_tol=args.tol)
    if args.distances:
        print("id_a,id_b,distance", file=out)
        ids = [rec.id for rec in records]
        for k, a in enumerate(ids):
            for b in ids[k + 1 :]:
                print(
                    f"{a},{b},{fmt_float(dc7_distance(vectors[a], vectors[b]))}",
                    file=out,
                )
    else:
        print("id," + ",".join(f"d{k}" for k in range(1, 8)), file=out)
        for rec in records:
            vals = ",".join(fmt_float(v) for v in vectors[rec.id])
            print(f"{rec.id},{vals}", file=out)
    return 0


def _cmd_collide(args, out):
    pairs = find_dc7_collisions(args.max_conorm, limit=args.limit)
    print("pair,side,p23,p13,p12,p01,p02,p03", file=out)
    for k, (cf_a, cf_b) in enumerate(pairs):
        for side, cf in (("A", cf_a), ("B", cf_b)):
            vals = ",".join(fmt_float(v) for v in cf.values)
            print(f"{k},{side},{vals}", file=out)
    return 0


def _cmd_synth(args, out):
    forms = parse_root_forms(_open_input(args.input), args.input_format)
    header = ["id"] + [f"b{r}{c}" for r in (1, 2, 3) for c in (1, 2, 3)]
    print(",".join(header), file=out)
    for rec_id, rf in forms:
        try:
            sb = reconstruct_superbase(rf)
        except LatticeError as exc:
            exc.args = (f"record {rec_id!r}: {exc}",)
            raise
        row = [rec_id] + [fmt_float(x) for x in sb.vectors[1:].reshape(9)]
        print(",".join(row), file=out)
    return 0


def _cmd_project(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    print("id,qt_x,qt_y,ft_x,ft_y", file=out)
    skipped = 0
    for rec in records:
        sb, cf, _ = _record_pipeline(rec, args.tol)
        rf = root_form(cf, rel_tol=args.tol)
        qt, ft = project_root_form(rf)
        skipped += (qt is None) + (ft is None)
        row = [rec.id]
        row += ["", ""] if qt is None else [fmt_float(qt.x), fmt_float(qt.y)]
        row += ["", ""] if ft is None else [fmt_float(ft.x), fmt_float(ft.y)]
        print(",".join(row), file=out)
    if skipped:
        print(f"skipped {skipped} degenerate projection(s)", file=sys.stderr)
    return 0


def _grid_csv(grid, out):
    print("row,col,count", file=out)
    res = grid.resolution
    for row in range(res):
        for col in range(res):
            print(f"{row},{col},{int(grid.counts[row, col])}", file=out)


def _grid_pgm(grid, out):
    res = grid.resolution
    maxval = max(1, int(grid.counts.max()))
    print("P2", file=out)
    print(f"{res} {res}", file=out)
    print(str(maxval), file=out)
    for row in range(res - 1, -1, -1):
        print(" ".join(str(int(c)) for c in grid.counts[row]), file=out)


def _grid_svg(grid, out):
    res = grid.resolution
    maxval = max(1, int(grid.counts.max()))
    size = 512
    cell = size / res
    print(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
        file=out,
    )
    print(f'<rect width="{size}" height="{size}" fill="white"/>', file=out)
    rows, cols = np.nonzero(grid.counts)
    for row, col in zip(rows.tolist(), cols.tolist()):
        opacity = grid.counts[row, col] / maxval
        x = fmt_float(col * cell)
        y = fmt_float((res - 1 - row) * cell)
        print(
            f'<rect x="{x}" y="{y}" width="{fmt_float(cell)}" '
            f'height="{fmt_float(cell)}" fill="black" '
            f'fill-opacity="{fmt_float(opacity)}"/>',
            file=out,
        )
    print("</svg>", file=out)


def _cmd_density(args, out):
    records = parse_records(_open_input(args.input), args.input_format)
    points = []
    skipped = 0
    for rec in records:
        sb, cf, _ = _record_pipeline(rec, args.tol)
        rf = root_form(cf, rel_tol=args.tol)
        qt, ft = project_root_form(rf)
        point = qt if args.kind == "qt" else ft
        if point is None:
            skipped += 1
        else:
            points.append(point)
    grid = accumulate_density(
        points, resolution=args.resolution, kind=args.kind.upper()
    )
    if skipped:
        print(f"skipped {skipped} degenerate record(s)", file=sys.stderr)
    if args.format == "csv":
        _grid_csv(grid, out)
    elif args.format == "pgm":
        _grid_pgm(grid, out)
    else:
        _grid_svg(grid, out)
    return 0


def _add_io_args(sub, with_tol=True):
    sub.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    sub.add_argument(
        "--input-format",
        choices=("csv", "json"),
        default="csv",
        help="input encoding (default csv)",
    )
    if with_tol:
        sub.add_argument(
            "--tol",
            type=float,
            default=DEFAULT_REL_TOL,
            help="relative tolerance for reduction and clamping",
        )


def build_parser():
    parser = _Parser(prog="latforms", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("reduce", help="reduce records to obtuse superbases")
    _add_io_args(sub)
    sub.set_defaults(func=_cmd_reduce)

    sub = subs.add_parser("rootform", help="invariant report per record")
    _add_io_args(sub)
    sub.add_argument(
        "--oriented",
        action="store_true",
        help="use the oriented form for the primary columns and projections",
    )
    sub.set_defaults(func=_cmd_rootform)

    sub = subs.add_parser("dist", help="root-metric distances between records")
    _add_io_args(sub)
    sub.add_argument("--q", type=_parse_q, default=2.0, help="Minkowski exponent or inf")
    sub.add_argument("--oriented", action="store_true")
    sub.add_argument("--pair", help="compare one pair 'idA,idB' instead of all pairs")
    sub.set_defaults(func=_cmd_dist)

    sub = subs.add_parser("dc7", help="DC7 vectors or pairwise DC7 distances")
    _add_io_args(sub)
    sub.add_argument("--distances", action="store_true")
    sub.set_defaults(func=_cmd_dc7)

    sub = subs.add_parser("collide", help="search integer coforms for DC7 collisions")
    sub.add_argument("--max-conorm", type=int, required=True)
    sub.add_argument("--limit", type=int, default=None)
    sub.set_defaults(func=_cmd_collide)

    sub = subs.add_parser("synth", help="reconstruct bases from root forms")
    _add_io_args(sub, with_tol=False)
    sub.set_defaults(func=_cmd_synth)

    sub = subs.add_parser("project", help="QT/FT coordinates per record")
    _add_io_args(sub)
    sub.set_defaults(func=_cmd_project)

    sub = subs.add_parser("density", help="accumulate a triangle density grid")
    _add_io_args(sub)
    sub.add_argument("--kind", choices=("qt", "ft"), default="qt")
    sub.add_argument("--resolution", type=int, default=200)
    sub.add_argument("--format", choices=("csv", "pgm", "svg"), default="csv")
    sub.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    sub.set_defaults(func=_cmd_density)

    return parser


def run_command(argv, out=None):
    """Run one CLI invocation; returns the process exit status."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        target = out
        if getattr(args, "output", None):
            with open(args.output, "w", encoding="utf-8") as fh:
                return args.func(args, fh)
        return args.func(args, target)
    except (RecordError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except LatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
