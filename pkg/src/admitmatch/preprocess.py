"""Collapse composite categories into single target constraints.

For every category in the requirement profile, the member constraints are
replaced by one target constraint on each side:

* requirement side: ``(S/M) * sum(x_i)`` over the M member values, or ``S/M``
  when the members are non-numeric;
* applicant side: ``min(S, T) / max(S, N) * sum(y_j)`` over the N applicant
  constraints that name a member, T of which satisfy their member, or
  ``min(S, T) / max(S, N)`` for non-numeric categories.

Range members are represented by their upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import (
    NUMERIC_TYPES,
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
    category_members,
    count_threshold,
)


class PreprocessError(ValueError):
    pass


@dataclass(frozen=True)
class CategoryTrace:
    category: str
    S: int
    M: int
    T: int
    N: int
    Pcc: float
    Pac: float
    extracted: tuple


@dataclass(frozen=True)
class PreprocessResult:
    derived_requirement: Profile
    derived_skills: Profile
    traces: tuple


def representative_value(value) -> Optional[float]:
    if isinstance(value, Number):
        return value.value
    if isinstance(value, Range):
        return value.hi
    return None


def satisfies(applicant, requirement) -> bool:
    """Whether an applicant value meets a requirement value."""
    if isinstance(applicant, Number):
        y = applicant.value
        if isinstance(requirement, Range):
            return requirement.lo <= y <= requirement.hi
        if isinstance(requirement, AtLeast):
            return y >= requirement.n
        if isinstance(requirement, Number):
            return y >= requirement.value
        return False
    if isinstance(applicant, Text):
        if isinstance(requirement, TextSet):
            return applicant.value in requirement
        if isinstance(requirement, Text):
            return applicant.value.strip().casefold() == requirement.value.strip().casefold()
        return False
    if isinstance(applicant, TextSet) and isinstance(requirement, TextSet):
        return any(m in requirement for m in applicant.members)
    return False


def _is_numeric_category(members) -> bool:
    numeric = [isinstance(c.value, NUMERIC_TYPES) for c in members]
    if any(numeric) and not all(numeric):
        names = ", ".join(str(c.attribute) for c in members)
        raise PreprocessError(f"category mixes numeric and non-numeric members: {names}")
    return all(numeric)


def requirement_target(S: int, members) -> float:
    M = len(members)
    if not 1 <= S <= M:
        raise PreprocessError(f"count {S} outside [1, {M}]")
    if _is_numeric_category(members):
        return (S / M) * sum(representative_value(c.value) for c in members)
    return S / M


def applicant_target(S: int, members, applicant: Profile):
    """Return ``(Pac, T, N, extracted attribute names)`` for one category."""
    if S < 1:
        raise PreprocessError(f"count must be >= 1, got {S}")
    numeric = _is_numeric_category(members) if members else True

    T = 0
    total = 0.0
    extracted = []
    for c in applicant.constraints:
        if c.attribute.is_count:
            continue
        member = next((m for m in members if m.attribute.same_name(c.attribute)), None)
        if member is None:
            continue
        extracted.append(c.attribute)
        if satisfies(c.value, member.value):
            T += 1
        if numeric:
            # a non-numeric answer in a numeric category adds nothing to the sum
            total += representative_value(c.value) or 0.0

    N = len(extracted)
    if N == 0:
        return 0.0, 0, 0, ()
    scale = min(S, T) / max(S, N)
    return (scale * total if numeric else scale), T, N, tuple(extracted)


def _category_threshold(requirement: Profile, category: str, M: int) -> int:
    for c in requirement.count_constraints():
        if c.attribute.in_category(category):
            S = count_threshold(c.value)
            if S is None:
                raise PreprocessError(f"{c.attribute} needs an integer or '>=k' value")
            return S
    # category declared without a count: every member is required
    return M


def preprocess_pair(requirement: Profile, skills: Profile) -> PreprocessResult:
    req_targets, app_targets, traces = [], [], []
    extracted_all = set()

    for category in requirement.categories():
        members = category_members(requirement, category)
        if not members:
            raise PreprocessError(f"category {category!r} has no member constraints")
        M = len(members)
        S = _category_threshold(requirement, category, M)
        pcc = requirement_target(S, members)
        pac, T, N, extracted = applicant_target(S, members, skills)
        extracted_all.update(extracted)

        name = AttributeName(category)
        req_targets.append(Constraint(name, Number(pcc), Flexibility.HARD, 1.0))
        app_targets.append(Constraint(name, Number(pac), Flexibility.HARD, 1.0))
        traces.append(CategoryTrace(category, S, M, T, N, pcc, pac, extracted))

    req_rest = [c for c in requirement.constraints if c.attribute.category is None]
    app_rest = [
        c
        for c in skills.constraints
        if not c.attribute.is_count and c.attribute not in extracted_all
    ]
    return PreprocessResult(
        Profile(Role.REQUIREMENT, tuple(req_targets + req_rest)),
        Profile(Role.SKILLS, tuple(app_targets + app_rest)),
        tuple(traces),
    )
