"""Command line front end.

Exit codes: 0 success, 1 mathematical failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .algebra import SingularMatrixError, validate_algebra
from .contraction import ContractionError, LimitDataError, contract_full
from .corpus import load_corpus, run_corpus
from .pipeline import InconsistentLimitsError, integerize_diagonal

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_doc(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return jsonio.loads(text)
    except jsonio.DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_algebra(path: str, check: bool = True):
    try:
        c = jsonio.algebra_from_doc(_read_doc(path))
    except jsonio.DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None
    if check:
        report = validate_algebra(c)
        if not report.ok:
            raise InputError(f"{path}: not a Lie algebra ({report.lines()[0]})")
    return c


def _load_spec(path: str, dim: int):
    try:
        return jsonio.spec_from_doc(_read_doc(path), dim)
    except (jsonio.DocumentError, SingularMatrixError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(doc, output: str | None):
    text = jsonio.dumps(doc)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_sign(text: str) -> tuple[int, str]:
    try:
        j, rel = text.split(":")
        j = int(j)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <j>:<+|->, got {text!r}") from None
    if rel not in ("+", "-"):
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {rel!r}")
    return j, rel


def cmd_validate(args) -> int:
    c = _load_algebra(args.algebra, check=False)
    report = validate_algebra(c)
    if report.ok:
        print(f"{args.algebra}: valid Lie algebra of dimension {c.dim}")
        return OK
    for line in report.lines():
        print(line)
    return FAILED


def cmd_contract(args) -> int:
    c = _load_algebra(args.algebra)
    spec = _load_spec(args.spec, c.dim)
    try:
        result = contract_full(c, spec)
    except (LimitDataError, SingularMatrixError, TypeError) as exc:
        raise InputError(str(exc)) from None
    except ContractionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    _emit(jsonio.algebra_to_doc(result), args.output)
    return OK


def cmd_integerize(args) -> int:
    c = _load_algebra(args.algebra)
    spec = _load_spec(args.spec, c.dim)
    if args.nonneg and args.sign:
        raise InputError("--nonneg and --sign are mutually exclusive")
    mode = "nonneg" if args.nonneg else (dict(args.sign) if args.sign else None)
    if isinstance(mode, dict) and any(not 1 <= j <= c.dim for j in mode):
        raise InputError(f"--sign index out of range 1..{c.dim}")
    try:
        result = integerize_diagonal(c, spec.A, spec.family, spec.P, mode)
    except InconsistentLimitsError as exc:
        doc = jsonio.certificate_to_doc(exc.certificate, exc.system)
        print(f"error: {exc}", file=sys.stderr)
        if args.emit_certificate:
            Path(args.emit_certificate).write_text(jsonio.dumps(doc))
        else:
            sys.stdout.write(jsonio.dumps(doc))
        return FAILED
    except SingularMatrixError as exc:
        raise InputError(str(exc)) from None
    except (LimitDataError, TypeError) as exc:
        raise InputError(str(exc)) from None
    except ContractionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    _emit(jsonio.result_to_doc(result), args.output)
    return OK if result.report.ok else FAILED


def cmd_corpus(args) -> int:
    doc = _read_doc(args.corpus) if args.corpus else None
    try:
        entries = load_corpus(doc)
    except (jsonio.DocumentError, KeyError, TypeError) as exc:
        raise InputError(f"corpus: {exc}") from None
    names = set(args.filter) if args.filter else None
    rows = run_corpus(entries, names)
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name:<8} #{r.index}  -> {r.expected:<8} {r.message}")
    failed = sum(not r.ok for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed")
    return FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwcontract", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("contract", help="compute the contracted algebra")
    p.add_argument("algebra")
    p.add_argument("spec")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("integerize", help="realize with an integer signature")
    p.add_argument("algebra")
    p.add_argument("spec")
    p.add_argument("--nonneg", action="store_true", help="require every exponent >= 0")
    p.add_argument("--sign", action="append", type=_parse_sign, default=[],
                   metavar="J:+|-", help="nonnegative (+) or negative (-) j-th exponent")
    p.add_argument("--emit-certificate", metavar="PATH")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_integerize)

    p = sub.add_parser("corpus", help="run the known contractions of the corpus")
    p.add_argument("--corpus", metavar="PATH", help="corpus JSON instead of the built-in one")
    p.add_argument("--filter", action="append", metavar="NAME")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
