"""Command-line front end.

Exit codes: 0 ok, 1 domain violation (e.g. not a labyrinth pattern),
2 input error (I/O, parse, usage), 3 budget or materialization cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from .compose import DEFAULT_CAP, HARD_CAP, CapExceededError, compose_seq
from .curves import arc_length_lower_bound, curve_from_path, length_sequence
from .generators import SequenceSpec, SpecError, classify_arc_length, family_pattern, load_spec
from .paths import ORDER, PathType, exit_path, expand_path, matrix_product, path_matrix
from .pattern import NotALabyrinthError, PatternFormatError, read_pattern, serialize_pattern, validate, write_pattern
from .svg import render_svg

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
PATH_BUDGET = 10**7


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def format_rational(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        approx = Decimal(x.numerator) / Decimal(x.denominator)
    return f"{x.numerator}/{x.denominator} ≈ {approx}"


def _emit_json(data) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_pattern(path):
    try:
        return read_pattern(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_INPUT) from exc
    except PatternFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc


def _sequence(args) -> SequenceSpec:
    if getattr(args, "seq", None):
        try:
            return load_spec(args.seq)
        except OSError as exc:
            raise CliError(f"{args.seq}: {exc.strerror or exc}", EXIT_INPUT) from exc
        except (ValueError, PatternFormatError) as exc:
            # SpecError, JSON errors and a-rule violations are all ValueErrors
            raise CliError(f"invalid sequence spec: {exc}", EXIT_INPUT) from exc
    patterns = [_load_pattern(p) for p in args.pattern]
    for path, p in zip(args.pattern, patterns):
        report = validate(p)
        if not report.is_labyrinth:
            raise CliError(f"{path}: not a labyrinth pattern: {'; '.join(report.problems)}", EXIT_DOMAIN)
    return SequenceSpec.explicit(patterns, repeat=getattr(args, "repeat", "truncate"))


def _check_level(spec: SequenceSpec, n: int) -> None:
    if spec.available is not None and n > spec.available:
        raise CliError(f"level {n} requested but only {spec.available} patterns given", EXIT_INPUT)


def _cap(args) -> int:
    return DEFAULT_CAP if args.cap is None else args.cap


# -- commands ----------------------------------------------------------------


def cmd_validate(args) -> int:
    report = validate(_load_pattern(args.file))
    _emit_json(report.to_json())
    return EXIT_OK if report.is_labyrinth else EXIT_DOMAIN


def cmd_generate(args) -> int:
    try:
        p = family_pattern(args.family, args.value, args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    if args.output:
        write_pattern(p, args.output)
    else:
        sys.stdout.write(serialize_pattern(p) + "\n")
    return EXIT_OK


def cmd_compose(args) -> int:
    if args.seq:
        spec = _sequence(args)
        n = args.n if args.n is not None else 1
        _fits(spec, n, args)
        patterns = [spec.pattern(k) for k in range(1, n + 1)]
    else:
        patterns = [_load_pattern(p) for p in args.pattern]
        n = args.n if args.n is not None else len(patterns)
        if n > len(patterns):
            raise CliError(f"level {n} requested but only {len(patterns)} patterns given", EXIT_INPUT)
    try:
        level = compose_seq(patterns, n, cap=_cap(args))
    except CapExceededError as exc:
        raise CliError(str(exc), EXIT_BUDGET) from exc
    if args.output:
        level.write(args.output)
        _emit_json(level.sidecar())
    else:
        sys.stdout.write(serialize_pattern(level.pattern) + "\n")
    return EXIT_OK


def _fits(spec: SequenceSpec, n: int, args) -> None:
    _check_level(spec, n)
    width = math.prod(spec.widths(n))
    if width > _cap(args):
        raise CliError(f"level-{n} width {width} exceeds materialization cap {_cap(args)}", EXIT_BUDGET)


def cmd_matrix(args) -> int:
    if args.file:
        p = _load_pattern(args.file)
        report = validate(p)
        if not report.is_labyrinth:
            raise CliError(f"{args.file}: not a labyrinth pattern: {'; '.join(report.problems)}", EXIT_DOMAIN)
        M = path_matrix(p)
    else:
        spec = _sequence(args)
        _check_level(spec, args.n)
        M = matrix_product(spec.matrices(args.n))
    _emit_json(M.to_json())
    return EXIT_OK


def cmd_curve(args) -> int:
    spec = _sequence(args)
    n = args.n
    _check_level(spec, n)
    q = PathType(args.path)
    M = matrix_product(spec.matrices(n))
    cells = M.row_sums()[q.index]
    width = math.prod(spec.widths(n))
    length = length_sequence(spec, q, n)[-1]
    print(format_rational(length))
    print(f"cells={cells} m(n)={width} lower_bound={arc_length_lower_bound(cells, width)}")
    if args.output:
        if cells > args.budget:
            raise CliError(f"path has {cells} cells, above the expansion budget {args.budget}", EXIT_BUDGET)
        path = exit_path(spec.pattern(1), q)
        for k in range(2, n + 1):
            path = expand_path(path, spec.pattern(k))
        curve = curve_from_path(path)
        if args.output.endswith(".json"):
            with open(args.output, "w", encoding="utf-8") as fh:
                json.dump(curve.to_json(), fh)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(render_svg(None, curve, size=args.scale, stroke_width=args.stroke))
    return EXIT_OK


def cmd_render(args) -> int:
    spec = _sequence(args)
    n = args.n
    _fits(spec, n, args)
    patterns = [spec.pattern(k) for k in range(1, n + 1)]
    level = compose_seq(patterns, n, cap=_cap(args))
    curve = None
    if args.overlay:
        path = exit_path(patterns[0], args.overlay)
        for p in patterns[1:]:
            path = expand_path(path, p)
        curve = curve_from_path(path)
    svg = render_svg(level.pattern, curve, size=args.scale, stroke_width=args.stroke)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_classify(args) -> int:
    verdict = classify_arc_length(_sequence(args))
    _emit_json(verdict.to_json())
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _cap_value(text: str) -> int:
    value = _positive(text)
    if value > HARD_CAP:
        raise argparse.ArgumentTypeError(f"cap above hard limit {HARD_CAP}")
    return value


def _add_source(sub, required_n: bool = True):
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--seq", metavar="SPEC", help="sequence spec: JSON file or inline JSON")
    src.add_argument("--pattern", metavar="FILE", action="append", help="explicit pattern file (repeatable)")
    sub.add_argument("-n", type=_positive, required=required_n, help="level")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="labyrinth", description="Mixed labyrinth fractal toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the labyrinth properties of a .pat file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="write a pattern from one of the built-in families")
    p.add_argument("family", choices=["cross", "half_cross", "plus", "random"])
    p.add_argument("value", type=int, help="a for cross/half_cross, width m for plus/random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compose", help="materialize the level-n set")
    _add_source(p, required_n=False)
    p.add_argument("-o", "--output", help=".pat path; a .pat.json sidecar is written next to it")
    p.add_argument("--cap", type=_cap_value)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("matrix", help="path matrix of a pattern, or M(n) of a sequence")
    p.add_argument("file", nargs="?")
    p.add_argument("--seq", metavar="SPEC")
    p.add_argument("-n", type=_positive)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("curve", help="exact length of the level-n curve, optional geometry")
    _add_source(p)
    p.add_argument("--path", required=True, choices=[t.value for t in ORDER])
    p.add_argument("-o", "--output", help="out.svg or out.json")
    p.add_argument("--budget", type=_positive, default=PATH_BUDGET, help="maximum path cells to expand")
    p.add_argument("--scale", type=_positive, default=512, help="SVG size in pixels")
    p.add_argument("--stroke", type=float, default=0.004, help="stroke width in unit-square units")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("render", help="SVG of the level-n prefractal")
    _add_source(p)
    p.add_argument("-o", "--output")
    p.add_argument("--overlay", choices=[t.value for t in ORDER])
    p.add_argument("--cap", type=_cap_value)
    p.add_argument("--scale", type=_positive, default=512)
    p.add_argument("--stroke", type=float, default=0.004)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("classify", help="finite/infinite arc-length verdict for a sequence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--seq", metavar="SPEC")
    src.add_argument("--pattern", action="append", metavar="FILE")
    p.add_argument("--repeat", choices=["cycle", "truncate"], default="truncate", help="how --pattern files repeat")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "matrix":
        if bool(args.file) == bool(args.seq):
            parser.error("matrix needs exactly one of FILE or --seq")
        if args.seq and args.n is None:
            parser.error("matrix --seq needs -n")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"labyrinth: {exc}", file=sys.stderr)
        return exc.code
    except NotALabyrinthError as exc:
        print(f"labyrinth: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SpecError as exc:
        print(f"labyrinth: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
