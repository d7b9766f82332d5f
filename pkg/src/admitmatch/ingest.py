"""Cohort CSV loading, column mapping, and eligibility screening.

Cohort files are UTF-8 CSV with a header row. The first column (or the
mapping's ``id_column``) holds applicant ids; ``Total``, ``Rank`` and
``Selected`` are recognised as metadata, every other column is a mark.

Mapping files are INI documents::

    [cohort]
    id_column = Applicant
    requirement_profile = requisites.profile

    [columns]
    Sub1 = Mathematics
    Sub2 = English_Language

``requirement_profile`` is resolved relative to the mapping file.
"""

from __future__ import annotations

import configparser
import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .dsl import load_profile
from .mcda import DecisionMatrix
from .model import (
    AttributeName,
    Constraint,
    Flexibility,
    Number,
    Profile,
    Role,
    category_members,
    count_threshold,
)
from .preprocess import applicant_target, satisfies

log = logging.getLogger(__name__)

META_COLUMNS = ("total", "rank", "selected")


class CohortError(ValueError):
    pass


@dataclass(frozen=True)
class CohortRow:
    applicant_id: str
    marks: tuple


@dataclass(frozen=True)
class CohortTable:
    header: tuple
    rows: tuple
    human_ranks: Optional[tuple] = None
    selected: Optional[tuple] = None

    @property
    def applicant_ids(self) -> list:
        return [r.applicant_id for r in self.rows]

    def records(self):
        for row in self.rows:
            yield row.applicant_id, dict(zip(self.header, row.marks))


@dataclass(frozen=True)
class AttributeMapping:
    entries: tuple
    requirement_profile_path: Optional[str] = None
    id_column: Optional[str] = None

    def attribute_for(self, column: str) -> Optional[str]:
        for col, attr in self.entries:
            if col == column:
                return attr
        return None


@dataclass(frozen=True)
class SelectionOutcome:
    applicant_id: str
    total: float
    eligible: bool
    failed_compulsory: tuple = field(default_factory=tuple)


def _parse_mark(cell: str, line_no: int, applicant: str, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise CohortError(
            f"line {line_no} (applicant {applicant}), column {column}: {cell!r} is not a number"
        ) from None
    if not math.isfinite(value):
        raise CohortError(f"line {line_no} (applicant {applicant}), column {column}: non-finite mark")
    if not 0 <= value <= 100:
        log.warning("applicant %s, column %s: mark %g outside [0, 100]", applicant, column, value)
    return value


def load_cohort(path, id_column: Optional[str] = None) -> CohortTable:
    with open(path, newline="", encoding="utf-8") as fh:
        lines = list(csv.reader(fh))
    lines = [ln for ln in lines if any(cell.strip() for cell in ln)]
    if not lines:
        raise CohortError(f"{path}: empty file, no header row")

    header = [h.strip() for h in lines[0]]
    if len(set(header)) != len(header):
        raise CohortError(f"{path}: duplicate column names in header")
    if id_column is None:
        id_idx = 0
    elif id_column in header:
        id_idx = header.index(id_column)
    else:
        raise CohortError(f"{path}: id column {id_column!r} not in header")

    meta = {h.casefold(): i for i, h in enumerate(header) if h.casefold() in META_COLUMNS}
    mark_idx = [i for i in range(len(header)) if i != id_idx and i not in meta.values()]

    rows, ranks, selected, seen = [], [], [], set()
    for line_no, cells in enumerate(lines[1:], start=2):
        if len(cells) != len(header):
            raise CohortError(f"{path}: line {line_no} has {len(cells)} cells, header has {len(header)}")
        cells = [c.strip() for c in cells]
        applicant = cells[id_idx]
        if not applicant:
            raise CohortError(f"{path}: line {line_no} has an empty applicant id")
        if applicant in seen:
            raise CohortError(f"{path}: duplicate applicant id {applicant!r} on line {line_no}")
        seen.add(applicant)
        marks = tuple(_parse_mark(cells[i], line_no, applicant, header[i]) for i in mark_idx)
        rows.append(CohortRow(applicant, marks))

        if "total" in meta:
            cell = cells[meta["total"]]
            try:
                total = float(cell)
            except ValueError:
                raise CohortError(f"{path}: line {line_no}, Total {cell!r} is not a number") from None
            if abs(total - sum(marks)) > 1e-9:
                log.info("applicant %s: Total %g differs from mark sum %g", applicant, total, sum(marks))
        if "rank" in meta:
            cell = cells[meta["rank"]]
            try:
                ranks.append(int(cell))
            except ValueError:
                raise CohortError(f"{path}: line {line_no}, Rank {cell!r} is not an integer") from None
        if "selected" in meta:
            selected.append(cells[meta["selected"]].casefold() in ("yes", "y", "true", "1"))

    return CohortTable(
        header=tuple(header[i] for i in mark_idx),
        rows=tuple(rows),
        human_ranks=tuple(ranks) if "rank" in meta else None,
        selected=tuple(selected) if "selected" in meta else None,
    )


def load_mapping(path) -> AttributeMapping:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    parser.optionxform = str  # column names are case-sensitive
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if not parser.has_section("columns"):
        raise CohortError(f"{path}: mapping needs a [columns] section")
    entries = tuple((col, attr.strip()) for col, attr in parser.items("columns"))
    if not entries:
        raise CohortError(f"{path}: [columns] section is empty")

    requirement = parser.get("cohort", "requirement_profile", fallback=None)
    if requirement:
        requirement = str((Path(path).parent / requirement).resolve())
    return AttributeMapping(entries, requirement, parser.get("cohort", "id_column", fallback=None))


def validate_mapping(mapping: AttributeMapping, requirement: Profile):
    """Raise unless every mapped attribute names a requirement constraint."""
    attrs = [c.attribute for c in requirement.constraints if not c.attribute.is_count]
    targets = [attr for _, attr in mapping.entries]
    if len(set(targets)) != len(targets):
        raise CohortError("two columns map to the same attribute")
    for column, attr in mapping.entries:
        name = AttributeName.parse(attr)
        if not any(a.same_name(name) for a in attrs):
            raise CohortError(f"column {column!r} maps to {attr!r}, which the requirement profile lacks")


def build_skills_profile(record: dict, mapping: AttributeMapping) -> Profile:
    """One hard, priority-1 number constraint per mapped column of ``record``."""
    mapped = {col for col, _ in mapping.entries}
    for column in record:
        if column not in mapped:
            log.warning("column %r is not mapped; skipped", column)
    constraints = []
    for column, attr in mapping.entries:
        if column not in record:
            raise CohortError(f"mapped column {column!r} missing from cohort")
        constraints.append(
            Constraint(AttributeName.parse(attr), Number(record[column]), Flexibility.HARD, 1.0)
        )
    return Profile(Role.SKILLS, tuple(constraints))


def build_decision_matrix(cohort: CohortTable, weights) -> DecisionMatrix:
    weights = [float(w) for w in weights]
    if len(weights) != len(cohort.header):
        raise CohortError(f"{len(weights)} weights for {len(cohort.header)} mark columns")
    return DecisionMatrix(
        applicant_ids=cohort.applicant_ids,
        criteria=cohort.header,
        scores=[list(r.marks) for r in cohort.rows],
        weights=weights,
    )


def select_applicants(cohort: CohortTable, requirement: Profile, mapping: AttributeMapping) -> list:
    """Screen every applicant: each category needs at least S satisfied members.

    Categories whose count equals their member count are compulsory; their
    unmet members are listed in ``failed_compulsory``.
    """
    counts = requirement.count_constraints()
    if not counts:
        raise CohortError("requirement profile has no ::count constraints to screen against")
    categories = []
    for c in counts:
        members = category_members(requirement, c.attribute.category)
        S = count_threshold(c.value)
        if not members or S is None:
            raise CohortError(f"unusable count constraint {c.attribute}")
        categories.append((S, members))

    outcomes = []
    for applicant, record in cohort.records():
        skills = build_skills_profile(record, mapping)
        eligible = True
        failed = []
        for S, members in categories:
            _, T, _, _ = applicant_target(S, members, skills)
            if T < S:
                eligible = False
            if S == len(members):
                for m in members:
                    answer = next((a for a in skills if a.attribute.same_name(m.attribute)), None)
                    if answer is None or not satisfies(answer.value, m.value):
                        failed.append(m.attribute.name)
        outcomes.append(SelectionOutcome(applicant, sum(record.values()), eligible, tuple(failed)))
    return outcomes


def load_requirement(mapping: AttributeMapping, override=None) -> Profile:
    path = override or mapping.requirement_profile_path
    if not path:
        raise CohortError("no requirement profile given and mapping names none")
    return load_profile(path, Role.REQUIREMENT)
