"""Reproduction checks against the bundled published cohort results.

``run_checks`` recomputes everything from the raw cohort and profiles, then
compares with the golden score/rank table shipped in ``data/table2.csv``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .dsl import load_profile
from .evaluation import RankVector, rank_correlation, regression_f
from .ingest import load_cohort, load_mapping, select_applicants
from .model import Role, category_members
from .pipeline import DATA_DIR, evaluate
from .preprocess import preprocess_pair

SCORE_TOL = 5e-5
CORRELATION_TOL = 0.01
F_TOL = 1e-6
TOPSIS_RANK_AGREEMENT = 0.99
EXPECTED_R = {"AMM": 0.878, "SAW": 0.259, "TOPSIS": 0.133}
EXPECTED_REJECTED = {"001", "002", "003", "007", "025"}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def load_golden(path) -> dict:
    with open(path, newline="", encoding="utf-8") as fh:
        return {
            row["Applicant"]: {k: float(v) for k, v in row.items() if k != "Applicant"}
            for row in csv.DictReader(fh)
        }


def _score_check(name, ranking, golden, column):
    bad = []
    worst = 0.0
    for e in ranking.entries:
        err = abs(e.score - golden[e.applicant_id][column])
        worst = max(worst, err)
        if err > SCORE_TOL:
            bad.append(f"{e.applicant_id}: {e.score:.5f} vs {golden[e.applicant_id][column]:.5f}")
    detail = f"max |error| {worst:.2e} (tol {SCORE_TOL:g})"
    if bad:
        detail += "; off: " + ", ".join(bad)
    return Check(name, not bad, detail)


def _rank_check(name, ranking, golden, column):
    bad = [
        f"{e.applicant_id}: {e.rank} vs {int(golden[e.applicant_id][column])}"
        for e in ranking.entries
        if e.rank != int(golden[e.applicant_id][column])
    ]
    detail = f"{len(ranking.entries) - len(bad)}/{len(ranking.entries)} ranks equal"
    if bad:
        detail += "; off: " + ", ".join(bad)
    return Check(name, not bad, detail)


def run_checks(data_dir=DATA_DIR, weights=None) -> list:
    data_dir = Path(data_dir)
    golden = load_golden(data_dir / "table2.csv")
    mapping = load_mapping(data_dir / "table1_mapping.ini")
    cohort = load_cohort(data_dir / "table1.csv", mapping.id_column)
    requirement = load_profile(mapping.requirement_profile_path, Role.REQUIREMENT)

    result = evaluate(cohort, requirement, mapping, weights)
    amm, saw, topsis = result.rankings
    checks = [
        _score_check("amm-scores", amm, golden, "AMM"),
        _rank_check("amm-ranks", amm, golden, "AMM_Rank"),
        _score_check("saw-scores", saw, golden, "SAW"),
    ]

    published = RankVector(list(golden), [int(g["TOPSIS_Rank"]) for g in golden.values()])
    rho = rank_correlation(RankVector.from_ranking(topsis), published)
    last = topsis.by_id()["025"].rank
    checks.append(Check(
        "topsis-ranks",
        rho >= TOPSIS_RANK_AGREEMENT and last == 25,
        f"rank agreement {rho:.5f} (need >= {TOPSIS_RANK_AGREEMENT}); 025 ranked {last}",
    ))

    outcomes = select_applicants(cohort, requirement, mapping)
    rejected = {o.applicant_id for o in outcomes if not o.eligible}
    eligible = len(outcomes) - len(rejected)
    checks.append(Check(
        "eligibility",
        eligible == 20 and rejected == EXPECTED_REJECTED,
        f"{eligible} eligible; rejected {sorted(rejected)}",
    ))

    parts, ok = [], True
    for rep in result.correlations:
        want = EXPECTED_R[rep.method]
        f_ok = abs(rep.f - regression_f(rep.r, rep.n)) <= F_TOL
        sig_ok = rep.significant == (rep.method == "AMM")
        good = abs(rep.r - want) <= CORRELATION_TOL and f_ok and sig_ok
        ok &= good
        parts.append(f"{rep.method} r={rep.r:.5f} (want {want}±{CORRELATION_TOL}) F={rep.f:.5f}"
                     f"{' significant' if rep.significant else ''}")
    checks.append(Check("correlations", ok, "; ".join(parts)))

    tb3 = load_profile(data_dir / "textbox3.profile", Role.REQUIREMENT)
    tb4 = load_profile(data_dir / "textbox4.profile", Role.SKILLS)
    trace = next(t for t in preprocess_pair(tb3, tb4).traces if t.category == "Optional_Subject")
    names = {a.name for a in trace.extracted}
    members = len(category_members(tb3, "Optional_Subject"))
    checks.append(Check(
        "worked-example-trace",
        (trace.S, trace.M, trace.T, trace.N) == (3, 9, 5, 5) and members == 9
        and "Life_Sciences" not in names,
        f"S={trace.S} M={trace.M} T={trace.T} N={trace.N}; extracted {sorted(names)}",
    ))
    return checks
