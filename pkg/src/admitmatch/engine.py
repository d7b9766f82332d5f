"""Profile similarity.

Per-constraint similarity uses the bounded distance
``1 - |x - y| / (1 + x + y)``; the profile score is the product of the
per-constraint factors over the requirement's (preprocessed) constraints.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .model import NUMERIC_TYPES, AttributeName, Constraint, Flexibility, Profile
from .preprocess import preprocess_pair, representative_value, satisfies


class Disposition(enum.Enum):
    EXACT_MATCH = "ExactMatch"
    HARD_MISMATCH = "HardMismatch"
    SOFT_MISMATCH = "SoftMismatch"
    MISSING_COUNTERPART = "MissingCounterpart"


@dataclass(frozen=True)
class ConstraintMatch:
    attribute: AttributeName
    requirement_value: object
    applicant_value: Optional[object]
    raw_similarity: float
    applied_factor: float
    disposition: Disposition


@dataclass(frozen=True)
class MatchReport:
    score: float
    factors: tuple
    traces: tuple


def value_similarity(x: float, y: float) -> float:
    if x < 0 or y < 0:
        raise ValueError(f"similarity is defined for non-negative values, got ({x}, {y})")
    return 1.0 - abs(x - y) / (1.0 + x + y)


def nonnumeric_similarity(applicant, requirement) -> float:
    return 1.0 if satisfies(applicant, requirement) else 0.0


def _raw_similarity(requirement: Constraint, applicant: Optional[Constraint]) -> float:
    req = requirement.value
    if isinstance(req, NUMERIC_TYPES):
        rep = representative_value(req)
        if applicant is None:
            return value_similarity(0.0, rep)
        y = representative_value(applicant.value)
        if y is None:
            return 0.0
        if satisfies(applicant.value, req):
            return 1.0
        return value_similarity(y, rep)
    if applicant is None:
        return 0.0
    return nonnumeric_similarity(applicant.value, req)


def constraint_similarity(requirement: Constraint, applicant: Optional[Constraint]) -> ConstraintMatch:
    s = _raw_similarity(requirement, applicant)
    p = requirement.priority
    soft = requirement.flexibility is Flexibility.SOFT

    if applicant is not None and s == 1.0:
        factor, disposition = 1.0, Disposition.EXACT_MATCH
    else:
        factor = ((1.0 + s) / 2.0) ** p if soft else s ** p
        if applicant is None:
            disposition = Disposition.MISSING_COUNTERPART
        elif soft:
            disposition = Disposition.SOFT_MISMATCH
        else:
            disposition = Disposition.HARD_MISMATCH

    return ConstraintMatch(
        attribute=requirement.attribute,
        requirement_value=requirement.value,
        applicant_value=None if applicant is None else applicant.value,
        raw_similarity=s,
        applied_factor=factor,
        disposition=disposition,
    )


def profile_similarity(requirement: Profile, skills: Profile) -> MatchReport:
    pre = preprocess_pair(requirement, skills)
    factors = tuple(
        constraint_similarity(c, pre.derived_skills.get(c.attribute))
        for c in pre.derived_requirement.constraints
    )
    score = math.prod(f.applied_factor for f in factors)
    return MatchReport(score, factors, pre.traces)
