"""liestab command line: matrix JSON in, algebra or report JSON out."""

from __future__ import annotations

import argparse
import json
import sys

from .classical import build, parse_spec
from .errors import ConfigError, LiestabError
from .exactmat import ExactMatrix
from .field import QQ, FieldSpec, parse_field
from .forms import FormClass, FormKind, Symmetry, classify_symmetry, normal_form
from .gradedalg import graded_pieces, is_witt_case, verify_der
from .harness import GridConfig, dumps, run_verify
from .liealg import derived_dims
from .stabilizer import stab, stab_bar
from .structure import verify_structure


class InputError(LiestabError):
    """Unreadable or malformed input file."""


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def read_matrix(path: str, field: FieldSpec | None = None) -> ExactMatrix:
    data = _read_json(path)
    try:
        return ExactMatrix.from_json(data, field)
    except LiestabError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(args, payload: dict | None, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        out = text + "\n"
    else:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _field_arg(text: str | None) -> FieldSpec | None:
    return parse_field(text) if text else None


def o_name(fc: FormClass) -> str:
    """Short name of o(M) for the normal form class."""
    d, m, n = fc.dim, fc.m, fc.n
    if fc.kind is FormKind.ZERO:
        return f"gl_{d}"
    inner = f"sp_{2 * n}" if fc.kind is FormKind.SYMPLECTIC else f"o_{n}(D)"
    if m == 0:
        return inner
    return f"(gl_{m} + {inner}) x Hom(k^{fc.block_size}, k^{m})"


def cmd_normal_form(args) -> int:
    M = read_matrix(args.input, _field_arg(args.field))
    fc = normal_form(M, normalize_squares=args.normalize_squares)
    F = fc.field
    text = f"{fc.kind.value}: m = {fc.m}, n = {fc.n}"
    if fc.kind is FormKind.DIAGONAL:
        text += ", D = (" + ", ".join(F.format(a) for a in fc.diag) + ")"
    _write(args, fc.to_json(), text)
    return 0


def cmd_stab(args) -> int:
    M = read_matrix(args.input, _field_arg(args.field))
    name = None
    if classify_symmetry(M) is not Symmetry.NEITHER:
        name = o_name(normal_form(M))
    suffix = f" ({name})" if name else ""
    if args.bar:
        pair = stab_bar(M)
        payload = pair.to_json()
        text = f"dim o = {pair.o.dim}{suffix}\ndim obar = {pair.obar.dim} (codim {pair.codim})"
    else:
        o = stab(M)
        payload = o.to_json()
        text = f"dim o = {o.dim}{suffix}"
    _write(args, payload, text)
    return 0


def cmd_structure(args) -> int:
    M = read_matrix(args.input, _field_arg(args.field))
    report = verify_structure(M, args.depth)
    _write(args, report.to_json(timings=not args.no_timings), report.to_text())
    return 0 if report.ok else 1


def cmd_derivations(args) -> int:
    M = read_matrix(args.input, _field_arg(args.field))
    der = graded_pieces(M)
    payload = der.to_json()
    witt = False
    if classify_symmetry(M) is not Symmetry.NEITHER:
        witt = is_witt_case(M.field, normal_form(M))
    payload["witt"] = witt
    dims = der.piece_dims
    text = f"dim g_-1 = {dims[0]}, dim g_0 = {dims[1]}, dim g_1 = {dims[2]}, dim Der = {der.total.dim}"
    if witt:
        text += " (Witt case)"
    code = 0
    if args.check:
        report = verify_der(M)
        payload["report"] = report.to_json(timings=False)
        text += "\n" + report.to_text()
        code = 0 if report.ok else 1
    _write(args, payload, text)
    return code


def cmd_classical(args) -> int:
    F = _field_arg(args.field) or QQ
    spec = parse_spec(args.spec, F)
    alg = build(spec)
    payload = alg.to_json()
    payload["spec"] = spec.label()
    series = derived_dims(alg, args.depth) if args.depth else []
    payload["derived_dims"] = series
    text = f"{spec.label()} over {F}: dim {alg.dim}"
    if series:
        text += ", derived dims " + ", ".join(map(str, series))
    _write(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    data = _read_json(args.config) if args.config else {}
    if args.field:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        data = dict(data, fields=[f.strip() for f in args.field.split(",")])
    cfg = GridConfig.from_json(data)
    report = run_verify(cfg)
    s = report["summary"]
    text = (
        f"{s['cells']} cells, {s['checks']['pass']} pass, {s['checks']['fail']} fail, "
        f"{s['checks']['n/a']} n/a, {s['checks']['flag']} flag"
    )
    if args.format == "text":
        _write(args, None, text)
    else:
        out = dumps(report, timings=not args.no_timings) + "\n"
        if args.output and args.output != "-":
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
            print(text, file=sys.stderr)
        else:
            sys.stdout.write(out)
    return 0 if s["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liestab", description="Exact stabilizer Lie algebras of bilinear forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_input=True):
        if need_input:
            p.add_argument("-i", "--input", required=True, help="matrix JSON file ('-' for stdin)")
        p.add_argument("-o", "--output", help="output file (default stdout)")
        p.add_argument("--field", help="field override, e.g. GF(3) or QQ")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("normal-form", help="congruence normal form of a symmetric or antisymmetric matrix")
    common(p)
    p.add_argument("--normalize-squares", action="store_true", help="reduce D entries modulo squares")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("stab", help="o(M), or o-bar(M) with --bar")
    common(p)
    p.add_argument("--bar", action="store_true")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("structure", help="check the structure predictions for o(M)")
    common(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("derivations", help="graded derivations of k + A1 + A2 built from M")
    common(p)
    p.add_argument("--check", action="store_true", help="also verify the derivation predictions")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("classical", help="build a classical Lie algebra, e.g. sp(6) or W(1,3)")
    common(p, need_input=False)
    p.add_argument("--spec", required=True)
    p.add_argument("--depth", type=int, default=3, help="derived series length to report (0 to skip)")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("verify", help="run the grid verification harness")
    common(p, need_input=False)
    p.add_argument("--config", help="GridConfig JSON file")
    p.add_argument("--no-timings", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LiestabError as exc:
        print(f"liestab {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
