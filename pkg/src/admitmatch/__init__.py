"""Constraint-based matchmaking of applicant skills profiles against programme requisites."""

from .dsl import ParseError, load_profile, parse_profile, render_profile
from .engine import MatchReport, constraint_similarity, profile_similarity, value_similarity
from .evaluation import RankVector, compare_methods, rank_correlation, regression_f
from .ingest import (
    build_decision_matrix,
    build_skills_profile,
    load_cohort,
    load_mapping,
    select_applicants,
)
from .mcda import DecisionMatrix, ScoredRanking, competition_ranks, saw_scores, topsis_scores
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
    category_members,
    validate_profile,
)
from .preprocess import preprocess_pair

__version__ = "0.1.0"
