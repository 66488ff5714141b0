"""``saa``: command-line front end.

Exit codes: 0 ok, 1 internal error or failed selftest, 2 parse or usage
error, 3 axiom violation, 4 unsupported input, 5 not nilpotent.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .canon import CanonicalForm, Unsupported, classify, isomorphic, structure_report
from .core import Algebra, change_basis, nilpotency_class, random_nilpotent_presentation
from .errors import (
    AxiomViolation,
    FieldError,
    InvalidParams,
    NotNilpotent,
    ParseError,
    SAAError,
    WrongDimension,
)
from .families import DISPLAY, enumerate_census, instantiate_family, parse_label
from .fileformat import format_presentation, parse_presentation
from .gf import parse_field
from .symlin import random_symplectic, role_name

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_AXIOM, EXIT_UNSUPPORTED, EXIT_NOT_NILPOTENT = 0, 1, 2, 3, 4, 5
DEFAULT_SEED = 0
DEFAULT_STEPS = 40


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, AxiomViolation):
        return EXIT_AXIOM
    if isinstance(exc, NotNilpotent):
        return EXIT_NOT_NILPOTENT
    if isinstance(exc, WrongDimension):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (ParseError, FieldError, InvalidParams, OSError)):
        return EXIT_PARSE
    return EXIT_INTERNAL


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------
def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def kv_lines(pairs) -> list[str]:
    return [f"{k}: {_fmt_value(v)}" for k, v in pairs]


def parse_kv(text: str) -> dict:
    """``key: value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        out[key.strip()] = value.strip()
    return out


def report_doc(A: Algebra, fmt: str) -> str:
    rep = structure_report(A)
    pairs = [(k, v) for k, v in rep.items() if v is not None]
    lines = kv_lines(pairs)
    if fmt == "text":
        lines = ["structure report", *("  " + ln for ln in lines)]
    return "\n".join(lines) + "\n"


def canon_doc(F, cf: CanonicalForm, fmt: str) -> str:
    M = cf.witness.matrix
    rows = [" ".join(F.format_element(c) for c in row) for row in M]
    if fmt == "kv":
        lines = [f"label: {cf.label}", f"field: {F.literal()}", f"witness: {'; '.join(rows)}"]
        lines += [f"trace.{i}: {step}" for i, step in enumerate(cf.trace, start=1)]
        return "\n".join(lines) + "\n"
    width = max(len(r) for r in rows)
    lines = [f"label: {cf.label}", f"field: {F.literal()}",
             "witness (columns are the new basis vectors):"]
    lines += [f"  {role_name(i):>3} | {r:<{width}} |" for i, r in enumerate(rows)]
    lines.append("trace:")
    lines += [f"  {i:>2}. {step}" for i, step in enumerate(cf.trace, start=1)]
    return "\n".join(lines) + "\n"


def canonical_from_kv(text: str):
    """Field, label and canonical presentation from a ``canon --format=kv`` document."""
    doc = parse_kv(text)
    try:
        F = parse_field(doc["field"])
        lab = parse_label(F, doc["label"])
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    return F, lab, instantiate_family(F, lab)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def _load(path: str, field) -> Algebra:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return Algebra(parse_presentation(text, field=field))


def cmd_check(args, out) -> int:
    A = _load(args.files[0], args.field)
    nil, cls = nilpotency_class(A)
    pairs = [("status", "ok"), ("field", A.field.literal()), ("dim", A.dim),
             ("triples", len(A.presentation.triples)), ("nilpotent", nil)]
    if nil:
        pairs.append(("class", cls))
    out.write("\n".join(kv_lines(pairs)) + "\n")
    return EXIT_OK


def cmd_report(args, out) -> int:
    out.write(report_doc(_load(args.files[0], args.field), args.format))
    return EXIT_OK


def cmd_canon(args, out) -> int:
    A = _load(args.files[0], args.field)
    res = classify(A, seed=args.seed)
    if isinstance(res, Unsupported):
        lines = kv_lines([("label", "unsupported"), ("center_dim", res.center_dim)])
        out.write("\n".join(lines) + "\n")
        return EXIT_UNSUPPORTED
    out.write(canon_doc(A.field, res, args.format))
    return EXIT_OK


def cmd_iso(args, out) -> int:
    if len(args.files) != 2:
        raise ParseError("iso needs exactly two files")
    A, B = (_load(p, args.field) for p in args.files)
    if A.field != B.field:
        raise ParseError("the two files use different fields")
    verdict = isomorphic(A, B)
    labels = []
    for X in (A, B):
        res = classify(X, seed=args.seed)
        labels.append("unsupported" if isinstance(res, Unsupported) else str(res.label))
    word = verdict if isinstance(verdict, str) else ("true" if verdict else "false")
    out.write("\n".join(kv_lines([("isomorphic", word), ("label.1", labels[0]), ("label.2", labels[1])])) + "\n")
    return EXIT_UNSUPPORTED if word == "unknown" else EXIT_OK


def cmd_census(args, out) -> int:
    F = args.field if args.field is not None else parse_field("gf(3)")
    c = enumerate_census(F, workers=args.workers)
    if args.format == "kv":
        lines = [f"field: {F.literal()}"]
        for row in c.rows:
            lines.append(f"count.{DISPLAY[row.tag]}: {row.count}")
            lines.append(f"reps.{DISPLAY[row.tag]}: {' '.join(map(str, row.representatives))}")
        lines += ["count.unsupported: unknown", f"total: {c.total}"]
    else:
        lines = [f"census over {F.literal()}"]
        for row in c.rows:
            reps = " ".join(map(str, row.representatives)) or "-"
            lines.append(f"  {DISPLAY[row.tag]:<12} {row.count:>3}  {reps}")
        lines.append(f"  {'unsupported':<12} {'?':>3}  isotropic centre of dimension 2 or 4, not classified")
        lines.append(f"  {'total':<12} {c.total:>3}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_random(args, out) -> int:
    F = args.field if args.field is not None else parse_field("gf(3)")
    if args.files:
        lab = parse_label(F, args.files[0])
        A = Algebra(instantiate_family(F, lab))
        C = random_symplectic(F, A.n, seed=args.seed, steps=args.steps)
        P = change_basis(A, C).presentation
        note = f"{lab} in a random standard basis (seed {args.seed}, {args.steps} steps)"
    else:
        P = random_nilpotent_presentation(F, args.dim // 2, seed=args.seed)
        note = f"random nilpotent presentation (seed {args.seed})"
    out.write(format_presentation(P, note))
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .acceptance import run_all

    results = run_all(echo=lambda line: (out.write(line + "\n"), out.flush()))
    failed = [r for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return EXIT_INTERNAL if failed else EXIT_OK


COMMANDS = {
    "check": cmd_check, "report": cmd_report, "canon": cmd_canon, "iso": cmd_iso,
    "census": cmd_census, "random": cmd_random, "selftest": cmd_selftest,
}
_NEEDS_FILE = {"check", "report", "canon", "iso"}


def _field_arg(text: str):
    try:
        return parse_field(text)
    except SAAError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="saa", description="Nilpotent symplectic alternating algebras of dimension 10.")
    p.add_argument("--version", action="version", version=f"saa {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("files", nargs="*", help="presentation files ('-' for stdin); a label for 'random'")
    p.add_argument("--field", type=_field_arg, default=None, help="e.g. gf(5) or gf(2^3)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="transvections for 'random'")
    p.add_argument("--dim", type=int, default=10, help="dimension for 'random' without a label")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    if args.command in _NEEDS_FILE and not args.files:
        sys.stderr.write(f"saa {args.command}: missing presentation file\n")
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args, out)
    except Exception as exc:
        code = _exit_code(exc)
        sys.stderr.write(f"saa {args.command}: {type(exc).__name__}: {exc}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
