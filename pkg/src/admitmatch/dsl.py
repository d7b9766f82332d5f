"""Plain-text profile format.

One constraint per line::

    <Compulsory_Subject::count,2,No,1>
    <Compulsory_Subject::Mathematics,50...100,No,1>
    <Residence,{On Campus, Off Campus},No,1>

Blank lines and lines starting with ``#`` are ignored. Values are classified
as a range (``a...b``), an at-least threshold (``>=k``), a text set
(``{a, b}``), a number, or free text, in that order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .model import (
    AtLeast,
    AttributeName,
    Constraint,
    Flexibility,
    Number,
    Profile,
    Range,
    Role,
    Text,
    TextSet,
)

_NUM = r"[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?"
_NUMBER_RE = re.compile(_NUM)
_RANGE_RE = re.compile(rf"({_NUM})\s*\.\.\.\s*({_NUM})")
_ATLEAST_RE = re.compile(r">=\s*(.*)")
_FORBIDDEN = set(",<>{}")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("source positions are 1-based")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, expected: str, found: str):
        self.span = span
        self.expected = expected
        self.found = found
        super().__init__(f"{span}: expected {expected}, found {found!r}")


def _split_fields(inner: str, line_no: int, col0: int):
    """Split on commas outside braces; yield (text, 1-based column)."""
    fields = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        if ch == "{":
            if depth:
                raise ParseError(SourceSpan(line_no, col0 + i), "'}'", "{")
            depth = 1
        elif ch == "}":
            if not depth:
                raise ParseError(SourceSpan(line_no, col0 + i), "',' or '>'", "}")
            depth = 0
        elif ch == "," and not depth:
            fields.append((inner[start:i], col0 + start))
            start = i + 1
    if depth:
        raise ParseError(SourceSpan(line_no, col0 + len(inner)), "'}'", "end of constraint")
    fields.append((inner[start:], col0 + start))
    return fields


def _column(raw: str, col: int) -> int:
    """Advance ``col`` past leading whitespace of ``raw``."""
    return col + (len(raw) - len(raw.lstrip()))


def _parse_value(raw: str, line_no: int, col: int):
    text = raw.strip()
    span = SourceSpan(line_no, _column(raw, col))
    if not text:
        raise ParseError(span, "attribute value", "")

    if text.startswith("{"):
        if not text.endswith("}"):
            raise ParseError(span, "'}' closing the set", text)
        members = [m.strip() for m in text[1:-1].split(",")]
        if any(not m for m in members):
            raise ParseError(span, "non-empty set member", text)
        try:
            return TextSet(tuple(members))
        except ValueError as exc:
            raise ParseError(span, "distinct set members", text) from exc

    m = _ATLEAST_RE.fullmatch(text)
    if m:
        k = m.group(1).strip()
        if not re.fullmatch(r"\+?\d+", k):
            raise ParseError(span, "non-negative integer after '>='", k)
        return AtLeast(int(k))

    if _FORBIDDEN & set(text):
        raise ParseError(span, "value without '<', '>', '{', '}'", text)

    m = _RANGE_RE.fullmatch(text)
    if m:
        lo, hi = float(m.group(1)), float(m.group(2))
        if lo > hi:
            raise ParseError(span, "range with lower bound <= upper bound", text)
        return Range(lo, hi)

    if _NUMBER_RE.fullmatch(text):
        return Number(float(text))
    return Text(text)


def _parse_line(line: str, line_no: int) -> Constraint:
    stripped = line.strip()
    col0 = _column(line, 1)
    if not stripped.startswith("<"):
        raise ParseError(SourceSpan(line_no, col0), "'<'", stripped[:1])
    if not stripped.endswith(">"):
        raise ParseError(SourceSpan(line_no, col0 + len(stripped) - 1), "'>'", stripped[-1:])

    fields = _split_fields(stripped[1:-1], line_no, col0 + 1)
    if len(fields) != 4:
        raise ParseError(
            SourceSpan(line_no, col0),
            "4 comma-separated fields <attr,value,flex,priority>",
            f"{len(fields)} fields",
        )
    (attr_raw, attr_col), (val_raw, val_col), (flex_raw, flex_col), (pri_raw, pri_col) = fields

    attr_text = attr_raw.strip()
    attr_span = SourceSpan(line_no, _column(attr_raw, attr_col))
    if not attr_text or _FORBIDDEN & set(attr_text) or attr_text.replace("::", "", 1).count(":"):
        raise ParseError(attr_span, "attribute name or category::name", attr_text)
    try:
        attribute = AttributeName.parse(attr_text)
    except ValueError as exc:
        raise ParseError(attr_span, str(exc), attr_text) from exc

    value = _parse_value(val_raw, line_no, val_col)

    try:
        flexibility = Flexibility.parse(flex_raw)
    except ValueError as exc:
        raise ParseError(SourceSpan(line_no, _column(flex_raw, flex_col)), "'Yes' or 'No'",
                         flex_raw.strip()) from exc

    pri_text = pri_raw.strip()
    pri_span = SourceSpan(line_no, _column(pri_raw, pri_col))
    if not _NUMBER_RE.fullmatch(pri_text):
        raise ParseError(pri_span, "priority in [0, 1]", pri_text)
    priority = float(pri_text)
    if not 0.0 <= priority <= 1.0:
        raise ParseError(pri_span, "priority in [0, 1]", pri_text)

    return Constraint(attribute, value, flexibility, priority)


def parse_profile(source: str, role: Role) -> Profile:
    """Parse profile text. Raises :class:`ParseError` on the first bad line."""
    constraints = []
    for line_no, line in enumerate(source.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        constraints.append(_parse_line(line, line_no))
    return Profile(role, tuple(constraints))


def constraint_spans(source: str) -> list:
    """Start position of each constraint line, aligned with the parsed order."""
    return [
        SourceSpan(line_no, _column(line, 1))
        for line_no, line in enumerate(source.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]


def load_profile(path, role: Role) -> Profile:
    return parse_profile(Path(path).read_text(encoding="utf-8"), role)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def format_number(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite number {x!r}")
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _check_text(text: str, what: str):
    if not text or text != text.strip():
        raise ValueError(f"{what} {text!r} must be non-empty with no outer whitespace")
    if _FORBIDDEN & set(text):
        raise ValueError(f"{what} {text!r} contains one of , < > {{ }}")


def render_value(value) -> str:
    if isinstance(value, Number):
        return format_number(value.value)
    if isinstance(value, Range):
        return f"{format_number(value.lo)}...{format_number(value.hi)}"
    if isinstance(value, AtLeast):
        return f">={value.n}"
    if isinstance(value, TextSet):
        for m in value.members:
            _check_text(m, "set member")
        return "{" + ", ".join(value.members) + "}"
    if isinstance(value, Text):
        _check_text(value.value, "text value")
        if not isinstance(_parse_value(value.value, 1, 1), Text):
            raise ValueError(f"text value {value.value!r} would be read back as a non-text value")
        return value.value
    raise TypeError(f"unknown attribute value {value!r}")


def render_constraint(c: Constraint) -> str:
    attr = str(c.attribute)
    for part in filter(None, (c.attribute.category, c.attribute.name)):
        _check_text(part, "attribute")
        if ":" in part:
            raise ValueError(f"attribute part {part!r} contains ':'")
    return f"<{attr},{render_value(c.value)},{c.flexibility.value},{format_number(c.priority)}>"


def render_profile(profile: Profile) -> str:
    return "".join(render_constraint(c) + "\n" for c in profile.constraints)
