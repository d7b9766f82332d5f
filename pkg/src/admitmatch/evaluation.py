"""Agreement between system rankings and a human ranking.

Correlation is Pearson's r over the rank vectors exactly as given (shared
competition ranks are not averaged). Significance comes from the simple
regression F-statistic ``r^2 (n - 2) / (1 - r^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

# 95% critical value quoted for the 25-applicant cohort
CRITICAL_F_N25 = 3.420


@dataclass(frozen=True)
class RankVector:
    applicant_ids: tuple
    ranks: tuple

    def __post_init__(self):
        object.__setattr__(self, "applicant_ids", tuple(self.applicant_ids))
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if len(self.applicant_ids) != len(self.ranks):
            raise ValueError("applicant ids and ranks differ in length")
        if len(set(self.applicant_ids)) != len(self.applicant_ids):
            raise ValueError("duplicate applicant ids in rank vector")
        if any(r < 1 for r in self.ranks):
            raise ValueError("ranks start at 1")

    @classmethod
    def from_ranking(cls, ranking) -> "RankVector":
        return cls(ranking.applicant_ids, ranking.ranks)

    def as_dict(self) -> dict:
        return dict(zip(self.applicant_ids, self.ranks))


@dataclass(frozen=True)
class CorrelationReport:
    method: str
    r: float
    f: float
    n: int
    critical_f: float

    @property
    def significant(self) -> bool:
        return self.f > self.critical_f


def rank_correlation(a: RankVector, b: RankVector) -> float:
    if set(a.applicant_ids) != set(b.applicant_ids):
        raise ValueError("rank vectors cover different applicants")
    other = b.as_dict()
    x = np.array(a.ranks, dtype=float)
    y = np.array([other[i] for i in a.applicant_ids], dtype=float)
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = dx @ dx, dy @ dy
    if sxx == 0 or syy == 0:
        raise ValueError("rank correlation undefined: a rank vector has zero variance")
    r = float(dx @ dy / math.sqrt(sxx * syy))
    if abs(abs(r) - 1.0) < 1e-12:
        return math.copysign(1.0, r)
    return r


def regression_f(r: float, n: int) -> float:
    if n < 3:
        raise ValueError("need at least 3 observations")
    if abs(r) >= 1:
        raise ValueError("F is infinite for |r| = 1")
    return r * r * (n - 2) / (1 - r * r)


def critical_f(n: int, alpha: float = 0.05) -> float:
    """Critical F(2, n-2); pinned to the quoted 3.420 for n = 25."""
    if n == 25 and alpha == 0.05:
        return CRITICAL_F_N25
    return float(stats.f.ppf(1 - alpha, 2, n - 2))


def compare_methods(human: RankVector, systems) -> list:
    """One correlation report per system ranking against ``human``."""
    n = len(human.applicant_ids)
    crit = critical_f(n)
    reports = []
    for ranking in systems:
        r = rank_correlation(human, RankVector.from_ranking(ranking))
        # perfect agreement is significant by identity
        f = math.inf if abs(r) >= 1 else regression_f(r, n)
        reports.append(CorrelationReport(ranking.method.value, r, f, n, crit))
    return reports
