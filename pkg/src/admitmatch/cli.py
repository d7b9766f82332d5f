"""Command-line interface.

Exit status: 0 success, 1 domain or validation failure, 2 I/O or usage error.
Every command builds a list of records (dicts tagged with a ``record`` kind)
which are then written as aligned tables, CSV blocks, or JSON lines.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import math
import sys
from contextlib import nullcontext
from pathlib import Path

from .dsl import ParseError, constraint_spans, load_profile, parse_profile, render_value
from .engine import profile_similarity
from .ingest import CohortError, build_decision_matrix, load_cohort, load_mapping, select_applicants
from .mcda import saw_scores, topsis_scores
from .model import Role, validate_profile
from .pipeline import DATA_DIR, amm_ranking, evaluate, resolve_weights
from .reproduce import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class DomainFailure(Exception):
    """Command ran but the inputs failed validation."""


def _num(x):
    if isinstance(x, float):
        return round(x, 5) if math.isfinite(x) else None
    return x


def _cell(x):
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.5f}"
    if x is None:
        return ""
    return str(x)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _groups(records):
    groups = {}
    for rec in records:
        groups.setdefault(rec["record"], []).append(rec)
    return groups


def _columns(rows):
    cols = []
    for row in rows:
        for k in row:
            if k != "record" and k not in cols:
                cols.append(k)
    return cols


def format_records(records, fmt: str) -> str:
    if fmt == "structured":
        return "".join(
            json.dumps({k: _num(v) for k, v in rec.items()}, ensure_ascii=False) + "\n"
            for rec in records
        )

    out = io.StringIO()
    for n, (kind, rows) in enumerate(_groups(records).items()):
        cols = _columns(rows)
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        if n:
            out.write("\n")
        if fmt == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(cols)
            writer.writerows(cells)
            continue
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        out.write(f"[{kind}]\n")
        out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    path = Path(args.profile)
    source = path.read_text(encoding="utf-8")
    role = Role(args.role)
    try:
        profile = parse_profile(source, role)
    except ParseError as exc:
        records = [{"record": "violation", "location": f"{path}:{exc.span}",
                    "code": "parse-error", "message": f"expected {exc.expected}, found {exc.found!r}"}]
        return records, EXIT_FAIL

    spans = constraint_spans(source)
    records = [
        {"record": "violation", "location": f"{path}:{spans[v.index]}", "code": v.code,
         "message": v.message}
        for v in validate_profile(profile)
    ]
    if records:
        return records, EXIT_FAIL
    return [{"record": "profile", "path": str(path), "constraints": len(profile), "status": "ok"}], EXIT_OK


def _checked_profile(path, role):
    profile = load_profile(path, role)
    violations = validate_profile(profile)
    if violations:
        raise DomainFailure(f"{path}: " + "; ".join(str(v) for v in violations))
    return profile


def cmd_match(args):
    requirement = _checked_profile(args.requirement, Role.REQUIREMENT)
    skills = _checked_profile(args.skills, Role.SKILLS)
    report = profile_similarity(requirement, skills)
    records = [{"record": "score", "score": report.score}]
    for f in report.factors:
        records.append({
            "record": "factor",
            "attribute": str(f.attribute),
            "requirement": render_value(f.requirement_value),
            "applicant": "" if f.applicant_value is None else render_value(f.applicant_value),
            "similarity": f.raw_similarity,
            "factor": f.applied_factor,
            "disposition": f.disposition.value,
        })
    for t in report.traces:
        records.append({
            "record": "category", "category": t.category, "S": t.S, "M": t.M, "T": t.T,
            "N": t.N, "Pcc": t.Pcc, "Pac": t.Pac,
            "extracted": " ".join(str(a) for a in t.extracted),
        })
    return records, EXIT_OK


def _load_cohort_inputs(cohort_path, mapping_path, requirement_path=None):
    mapping = load_mapping(mapping_path)
    requirement_path = requirement_path or mapping.requirement_profile_path
    if not requirement_path:
        raise CohortError("no requirement profile given and the mapping names none")
    requirement = _checked_profile(requirement_path, Role.REQUIREMENT)
    cohort = load_cohort(cohort_path, mapping.id_column)
    return cohort, mapping, requirement


def cmd_rank(args):
    cohort, mapping, requirement = _load_cohort_inputs(args.cohort, args.mapping, args.requirement)
    ranking, _ = amm_ranking(cohort, requirement, mapping)
    eligible = {}
    if args.eligibility:
        eligible = {o.applicant_id: o for o in select_applicants(cohort, requirement, mapping)}
    records = []
    for e in ranking.ordered():
        rec = {"record": "ranking", "applicant": e.applicant_id, "AMM": e.score, "rank": e.rank}
        if args.eligibility:
            rec["eligible"] = eligible[e.applicant_id].eligible
            rec["failed_compulsory"] = " ".join(eligible[e.applicant_id].failed_compulsory)
        records.append(rec)
    return records, EXIT_OK


def cmd_baseline(args):
    cohort = load_cohort(args.cohort)
    matrix = build_decision_matrix(cohort, resolve_weights(cohort, args.weights))
    saw, topsis = saw_scores(matrix), topsis_scores(matrix)
    t = topsis.by_id()
    return [
        {"record": "baseline", "applicant": e.applicant_id, "SAW": e.score, "SAW_rank": e.rank,
         "TOPSIS": t[e.applicant_id].score, "TOPSIS_rank": t[e.applicant_id].rank}
        for e in saw.entries
    ], EXIT_OK


def cmd_evaluate(args):
    cohort, mapping, requirement = _load_cohort_inputs(args.cohort, args.mapping, args.requirement)
    result = evaluate(cohort, requirement, mapping, args.weights)
    return _evaluation_records(result), EXIT_OK


def _evaluation_records(result):
    by_method = [(r.method.value, r.by_id()) for r in result.rankings]
    records = []
    for applicant, human in zip(result.human.applicant_ids, result.human.ranks):
        rec = {"record": "scores", "applicant": applicant, "human_rank": human}
        for name, entries in by_method:
            rec[name] = entries[applicant].score
            rec[f"{name}_rank"] = entries[applicant].rank
        records.append(rec)
    for rep in result.correlations:
        records.append({"record": "correlation", "method": rep.method, "r": rep.r, "F": rep.f,
                        "n": rep.n, "critical_F": rep.critical_f, "significant": rep.significant})
    return records


def cmd_demo(args):
    checks = run_checks(args.data_dir, weights=args.weights)
    records = [
        {"record": "check", "status": "PASS" if c.passed else "FAIL", "name": c.name, "detail": c.detail}
        for c in checks
    ]
    return records, EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _weights(text):
    try:
        return tuple(float(w) for w in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "structured"), default="table")
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
    weighted = argparse.ArgumentParser(add_help=False)
    weighted.add_argument("--weights", type=_weights, metavar="W1,W2,...",
                          help="criterion weights (default: 0.2,0.2,0.15,0.15,0.15,0.15 for six criteria)")

    parser = argparse.ArgumentParser(prog="admitmatch", description="Applicant/programme matchmaking.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a profile file")
    p.add_argument("profile")
    p.add_argument("--role", choices=[r.value for r in Role], default=Role.REQUIREMENT.value)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("match", parents=[common], help="score one skills profile against requisites")
    p.add_argument("requirement")
    p.add_argument("skills")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("rank", parents=[common], help="rank a cohort by matchmaking score")
    p.add_argument("requirement")
    p.add_argument("cohort")
    p.add_argument("mapping")
    p.add_argument("--eligibility", action="store_true", help="add the eligibility screen")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("baseline", parents=[common, weighted], help="SAW and TOPSIS scores")
    p.add_argument("cohort")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("evaluate", parents=[common, weighted], help="compare methods with human ranks")
    p.add_argument("cohort")
    p.add_argument("mapping")
    p.add_argument("--requirement", help="override the mapping's requirement profile")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("demo", parents=[common, weighted], help="reproduce the bundled cohort results")
    p.add_argument("--data-dir", default=str(DATA_DIR), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        records, status = args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, DomainFailure, configparser.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    text = format_records(records, args.format)
    try:
        with (open(args.output, "w", encoding="utf-8") if args.output else nullcontext(sys.stdout)) as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status

