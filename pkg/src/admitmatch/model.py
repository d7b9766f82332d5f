"""Constraint and profile data model.

A profile is an ordered collection of constraints. Each constraint is a
quadruple of attribute, value, flexibility and priority. Attributes may be
scoped to a category with ``::`` (``Optional_Subject::Economics``), and the
reserved member name ``count`` holds the minimum number of members of that
category that must be satisfied.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

COUNT_KEYWORD = "count"


def _fold(text: str) -> str:
    return text.strip().casefold()


@dataclass(frozen=True, eq=False)
class AttributeName:
    name: str
    category: Optional[str] = None

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValueError("attribute name must be non-empty")
        if self.category is not None and not self.category.strip():
            raise ValueError("attribute category, when given, must be non-empty")
        if self.category is None and _fold(self.name) == COUNT_KEYWORD:
            raise ValueError("'count' is only legal as a scoped name (category::count)")

    @property
    def key(self) -> tuple:
        return (None if self.category is None else _fold(self.category), _fold(self.name))

    @property
    def is_count(self) -> bool:
        return self.category is not None and _fold(self.name) == COUNT_KEYWORD

    def same_name(self, other: "AttributeName") -> bool:
        """Compare member names only, ignoring any category qualifier."""
        return _fold(self.name) == _fold(other.name)

    def in_category(self, category: str) -> bool:
        return self.category is not None and _fold(self.category) == _fold(category)

    def __eq__(self, other):
        if not isinstance(other, AttributeName):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        if self.category is None:
            return self.name
        return f"{self.category}::{self.name}"

    @classmethod
    def parse(cls, text: str) -> "AttributeName":
        if "::" in text:
            category, _, name = text.partition("::")
            return cls(name.strip(), category.strip())
        return cls(text.strip())


# ---------------------------------------------------------------------------
# Attribute values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Number:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"range lower bound {self.lo:g} exceeds upper bound {self.hi:g}")


@dataclass(frozen=True)
class AtLeast:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ValueError(f"at-least threshold must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 0:
            raise ValueError("at-least threshold must be non-negative")


@dataclass(frozen=True)
class TextSet:
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("text set must have at least one member")
        folded = [_fold(m) for m in members]
        if len(set(folded)) != len(folded):
            raise ValueError("text set members must be distinct (case-insensitive)")
        object.__setattr__(self, "members", members)

    def __contains__(self, text: str) -> bool:
        return _fold(text) in {_fold(m) for m in self.members}


@dataclass(frozen=True)
class Text:
    value: str


AttributeValue = Union[Number, Range, AtLeast, TextSet, Text]

NUMERIC_TYPES = (Number, Range)


class Flexibility(enum.Enum):
    HARD = "No"
    SOFT = "Yes"

    @classmethod
    def parse(cls, token: str) -> "Flexibility":
        token = token.strip()
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"flexibility must be 'Yes' or 'No', got {token!r}")


class Role(enum.Enum):
    REQUIREMENT = "requirement"
    SKILLS = "skills"


@dataclass(frozen=True)
class Constraint:
    attribute: AttributeName
    value: AttributeValue
    flexibility: Flexibility = Flexibility.HARD
    priority: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "priority", float(self.priority))
        if not 0.0 <= self.priority <= 1.0:
            raise ValueError(f"priority must lie in [0, 1], got {self.priority:g}")


@dataclass(frozen=True)
class Profile:
    role: Role
    constraints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    def __iter__(self):
        return iter(self.constraints)

    def __len__(self):
        return len(self.constraints)

    def get(self, attribute: AttributeName) -> Optional[Constraint]:
        for c in self.constraints:
            if c.attribute == attribute:
                return c
        return None

    def count_constraints(self) -> list:
        return [c for c in self.constraints if c.attribute.is_count]

    def categories(self) -> list:
        """Category names in order of first appearance (count or member)."""
        seen = {}
        for c in self.constraints:
            cat = c.attribute.category
            if cat is not None and _fold(cat) not in seen:
                seen[_fold(cat)] = cat.strip()
        return list(seen.values())


def category_members(profile: Profile, category: str) -> list:
    """Member constraints of ``category``, excluding its ``::count`` constraint."""
    return [
        c
        for c in profile.constraints
        if c.attribute.in_category(category) and not c.attribute.is_count
    ]


def count_threshold(value: AttributeValue) -> Optional[int]:
    """Required count S carried by a ``::count`` value, or None if unusable."""
    if isinstance(value, AtLeast):
        return value.n
    if isinstance(value, Number) and value.value.is_integer():
        return int(value.value)
    return None


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    index: int
    code: str
    message: str

    def __str__(self):
        return f"constraint {self.index}: {self.code}: {self.message}"


def validate_profile(profile: Profile) -> list:
    """Return every invariant violation in ``profile``; empty means valid.

    Count thresholds and dangling categories are only checked on requirement
    profiles, since counts on the applicant side are derived, not declared.
    """
    violations = []
    seen = {}
    for i, c in enumerate(profile.constraints):
        if c.attribute in seen:
            violations.append(
                Violation(i, "duplicate-attribute",
                          f"{c.attribute} already defined by constraint {seen[c.attribute]}")
            )
        else:
            seen[c.attribute] = i

        if isinstance(c.value, AtLeast) and not c.attribute.is_count:
            violations.append(
                Violation(i, "misplaced-at-least", f"'>=' value on non-count attribute {c.attribute}")
            )

        if profile.role is not Role.REQUIREMENT or not c.attribute.is_count:
            continue

        s = count_threshold(c.value)
        members = category_members(profile, c.attribute.category)
        if s is None:
            violations.append(
                Violation(i, "bad-count-value", f"{c.attribute} needs an integer or '>=k' value")
            )
        elif not members:
            violations.append(
                Violation(i, "dangling-count", f"category {c.attribute.category!r} has no members")
            )
        elif not 1 <= s <= len(members):
            violations.append(
                Violation(i, "count-out-of-range",
                          f"count {s} not in [1, {len(members)}] for {c.attribute.category!r}")
            )
    return violations
