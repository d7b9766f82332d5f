"""Decision-matrix baselines: simple additive weighting and TOPSIS.

All criteria are treated as benefit criteria (higher marks are better).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

WEIGHT_SUM_TOL = 1e-9


class Method(enum.Enum):
    AMM = "AMM"
    SAW = "SAW"
    TOPSIS = "TOPSIS"


@dataclass(frozen=True)
class DecisionMatrix:
    applicant_ids: tuple
    criteria: tuple
    scores: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        scores = np.array(self.scores, dtype=float)
        weights = np.array(self.weights, dtype=float)
        scores.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "applicant_ids", tuple(self.applicant_ids))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "weights", weights)

        n, m = len(self.applicant_ids), len(self.criteria)
        if scores.shape != (n, m):
            raise ValueError(f"score grid has shape {scores.shape}, expected {(n, m)}")
        if len(set(self.applicant_ids)) != n:
            raise ValueError("applicant ids must be unique")
        if weights.shape != (m,):
            raise ValueError(f"{weights.size} weights given for {m} criteria")
        if np.any(weights < 0):
            raise ValueError("weights must be non-negative")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {weights.sum():.12g}, expected 1")
        if np.any(scores < 0):
            raise ValueError("scores must be non-negative")


@dataclass(frozen=True)
class RankedEntry:
    applicant_id: str
    score: float
    rank: int


@dataclass(frozen=True)
class ScoredRanking:
    """Scores and competition ranks, in input (cohort) order."""

    method: Method
    entries: tuple = field(default_factory=tuple)

    @property
    def applicant_ids(self) -> list:
        return [e.applicant_id for e in self.entries]

    @property
    def scores(self) -> list:
        return [e.score for e in self.entries]

    @property
    def ranks(self) -> list:
        return [e.rank for e in self.entries]

    def ordered(self) -> list:
        """Entries by rank; ties in applicant-id order."""
        return sorted(self.entries, key=lambda e: (e.rank, e.applicant_id))

    def by_id(self) -> dict:
        return {e.applicant_id: e for e in self.entries}


def competition_ranks(scores, rel_tol: float = 1e-12) -> list:
    """Rank descending with "1224" ties: equal scores share the smallest rank.

    Scores within ``rel_tol`` of each other count as tied, so two applicants
    reaching the same value by different float paths still share a rank.
    """
    scores = [float(s) for s in scores]
    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    ranks = [0] * len(scores)
    prev = None
    for pos, i in enumerate(order, start=1):
        if prev is not None and math.isclose(scores[i], scores[prev], rel_tol=rel_tol, abs_tol=rel_tol):
            ranks[i] = ranks[prev]
        else:
            ranks[i] = pos
        prev = i
    return ranks


def make_ranking(method: Method, applicant_ids, scores) -> ScoredRanking:
    ranks = competition_ranks(scores)
    return ScoredRanking(
        method,
        tuple(RankedEntry(a, float(s), r) for a, s, r in zip(applicant_ids, scores, ranks)),
    )


def saw_scores(m: DecisionMatrix) -> ScoredRanking:
    col_max = m.scores.max(axis=0) if len(m.applicant_ids) else np.zeros(len(m.criteria))
    if np.any(col_max <= 0):
        bad = [c for c, v in zip(m.criteria, col_max) if v <= 0]
        raise ValueError(f"criteria with zero maximum cannot be normalised: {bad}")
    scores = (m.scores / col_max) @ m.weights
    return make_ranking(Method.SAW, m.applicant_ids, scores)


def topsis_scores(m: DecisionMatrix) -> ScoredRanking:
    norms = np.sqrt((m.scores ** 2).sum(axis=0))
    if np.any(norms == 0):
        bad = [c for c, v in zip(m.criteria, norms) if v == 0]
        raise ValueError(f"criteria with all-zero scores cannot be normalised: {bad}")
    weighted = m.scores / norms * m.weights

    ideal = weighted.max(axis=0)
    anti_ideal = weighted.min(axis=0)
    d_plus = np.sqrt(((weighted - ideal) ** 2).sum(axis=1))
    d_minus = np.sqrt(((weighted - anti_ideal) ** 2).sum(axis=1))

    denom = d_plus + d_minus
    if np.any(denom == 0):
        raise ValueError("closeness undefined: all alternatives coincide with both ideals")
    return make_ranking(Method.TOPSIS, m.applicant_ids, d_minus / denom)
