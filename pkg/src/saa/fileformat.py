"""Plain-text presentation files.

    field: gf(5)
    dim: 10
    # comment
    triple y1 y2 y3 = 1

Unlisted triples are zero.  A 3-subset may be given at most once.
"""
from __future__ import annotations

import re

from .core import Presentation
from .errors import ParseError, SAAError
from .gf import parse_element, parse_field
from .symlin import role_index

_SYMBOL = re.compile(r"^[xy]([1-9]\d*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _column(raw: str, token: str, start: int = 0) -> int:
    return raw.find(token, start) + 1


def parse_presentation(text: str, field=None) -> Presentation:
    """Parse a presentation file; ``field`` overrides the file's ``field:`` line."""
    override = field
    field = dim = None
    P = None
    seen: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("triple") and stripped[6:7].isspace():
            head, rest = "triple", ""
        else:
            head, _, rest = stripped.partition(":")
            head = head.strip()
        if head == "field":
            if field is not None:
                raise ParseError("field given twice", lineno, 1)
            try:
                field = parse_field(rest)
            except SAAError as exc:
                if override is None:
                    raise ParseError(str(exc), lineno, _column(raw, rest.strip())) from exc
                field = override
            if override is not None:
                field = override
            continue
        if head == "dim":
            if dim is not None:
                raise ParseError("dim given twice", lineno, 1)
            try:
                dim = int(rest)
            except ValueError:
                raise ParseError(f"bad dimension {rest.strip()!r}", lineno, _column(raw, rest.strip())) from None
            if dim <= 0 or dim % 2:
                raise ParseError(f"dimension must be positive and even, got {dim}", lineno, _column(raw, rest.strip()))
            continue
        if head != "triple":
            raise ParseError(f"unexpected line {line.strip()!r}", lineno, 1)
        if field is None and override is not None:
            field = override
        if field is None or dim is None:
            raise ParseError("triple before field and dim", lineno, 1)
        if P is None:
            P = Presentation(field, dim // 2)
        m = re.match(r"^\s*triple\s+(\S+)\s+(\S+)\s+(\S+)\s*=\s*(\S.*?)\s*$", line)
        if not m:
            raise ParseError("expected 'triple <b1> <b2> <b3> = <element>'", lineno, 1)
        syms = m.group(1, 2, 3)
        for k, s in enumerate(syms, start=1):
            sm = _SYMBOL.match(s)
            if not sm or int(sm.group(1)) > dim // 2:
                raise ParseError(f"bad basis symbol {s!r}", lineno, m.start(k) + 1)
        for k in (2, 3):
            if syms[k - 1] in syms[: k - 1]:
                raise ParseError(f"repeated symbol {syms[k - 1]!r}", lineno, m.start(k) + 1)
        key = tuple(sorted(role_index(s) for s in syms))
        if key in seen:
            raise ParseError(f"duplicate triple {' '.join(syms)} (first on line {seen[key]})", lineno, m.start(1) + 1)
        seen[key] = lineno
        try:
            P._set(syms, parse_element(field, m.group(4)))
        except SAAError as exc:
            raise ParseError(str(exc), lineno, m.start(4) + 1) from exc
    if field is None:
        if override is None:
            raise ParseError("missing 'field:' line")
        field = override
    if dim is None:
        raise ParseError("missing 'dim:' line")
    return P if P is not None else Presentation(field, dim // 2)


def format_presentation(P: Presentation, comment: str | None = None) -> str:
    F = P.field
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines += [f"field: {F.literal()}", f"dim: {P.dim}"]
    for (a, b, c), v in P.items():
        lines.append(f"triple {a} {b} {c} = {F.format_element(v.value)}")
    return "\n".join(lines) + "\n"


def read_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def write_presentation(path, P: Presentation, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_presentation(P, comment))
