"""Cohort-level runs: score every applicant by matchmaking and the baselines."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .engine import profile_similarity
from .evaluation import RankVector, compare_methods
from .ingest import (
    CohortError,
    CohortTable,
    build_decision_matrix,
    build_skills_profile,
    validate_mapping,
)
from .mcda import Method, make_ranking, saw_scores, topsis_scores

DATA_DIR = Path(__file__).parent / "data"

# selection officer's weights for the six-subject cohort
DEFAULT_WEIGHTS = (0.20, 0.20, 0.15, 0.15, 0.15, 0.15)


@dataclass(frozen=True)
class Evaluation:
    rankings: tuple
    correlations: tuple
    human: RankVector


def resolve_weights(cohort: CohortTable, weights=None):
    if weights is not None:
        return tuple(weights)
    if len(cohort.header) == len(DEFAULT_WEIGHTS):
        return DEFAULT_WEIGHTS
    raise CohortError(f"--weights is required for a cohort with {len(cohort.header)} criteria")


def amm_ranking(cohort: CohortTable, requirement, mapping):
    validate_mapping(mapping, requirement)
    reports = {}
    for applicant, record in cohort.records():
        reports[applicant] = profile_similarity(requirement, build_skills_profile(record, mapping))
    ranking = make_ranking(Method.AMM, list(reports), [r.score for r in reports.values()])
    return ranking, reports


def human_ranks(cohort: CohortTable) -> RankVector:
    if cohort.human_ranks is None:
        raise CohortError("cohort has no Rank column")
    return RankVector(cohort.applicant_ids, cohort.human_ranks)


def evaluate(cohort: CohortTable, requirement, mapping, weights=None) -> Evaluation:
    human = human_ranks(cohort)
    matrix = build_decision_matrix(cohort, resolve_weights(cohort, weights))
    amm, _ = amm_ranking(cohort, requirement, mapping)
    rankings = (amm, saw_scores(matrix), topsis_scores(matrix))
    return Evaluation(rankings, tuple(compare_methods(human, rankings)), human)
