import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import rankdata

from admitmatch.ingest import build_decision_matrix
from admitmatch.mcda import DecisionMatrix, Method, competition_ranks, saw_scores, topsis_scores

W = (0.20, 0.20, 0.15, 0.15, 0.15, 0.15)


def matrix(rows, weights=None):
    rows = [list(r) for r in rows]
    m = len(rows[0])
    weights = weights or [1 / m] * m
    return DecisionMatrix([f"a{i}" for i in range(len(rows))], [f"c{j}" for j in range(m)], rows, weights)


def saw_oracle(rows, weights):
    col_max = [max(r[j] for r in rows) for j in range(len(weights))]
    return [sum(w * x / mx for w, x, mx in zip(weights, r, col_max)) for r in rows]


def topsis_oracle(rows, weights):
    m = len(weights)
    norms = [math.sqrt(sum(r[j] ** 2 for r in rows)) for j in range(m)]
    v = [[weights[j] * r[j] / norms[j] for j in range(m)] for r in rows]
    best = [max(row[j] for row in v) for j in range(m)]
    worst = [min(row[j] for row in v) for j in range(m)]
    out = []
    for row in v:
        dp = math.sqrt(sum((a - b) ** 2 for a, b in zip(row, best)))
        dm = math.sqrt(sum((a - b) ** 2 for a, b in zip(row, worst)))
        out.append(dm / (dp + dm))
    return out


grids = st.integers(2, 7).flatmap(
    lambda m: st.lists(st.lists(st.integers(1, 100), min_size=m, max_size=m), min_size=2, max_size=12)
)


class TestDecisionMatrix:
    def test_weight_checks(self):
        with pytest.raises(ValueError):
            matrix([[1, 2]], [0.5, 0.6])
        with pytest.raises(ValueError):
            matrix([[1, 2]], [1.5, -0.5])
        with pytest.raises(ValueError):
            matrix([[1, 2]], [1.0])

    def test_negative_scores(self):
        with pytest.raises(ValueError):
            matrix([[1, -2]])

    def test_read_only(self):
        m = matrix([[1, 2]])
        with pytest.raises(ValueError):
            m.scores[0, 0] = 5


class TestCompetitionRanks:
    def test_pattern(self):
        assert competition_ranks([0.9, 0.8, 0.8, 0.7]) == [1, 2, 2, 4]
        assert competition_ranks([]) == []

    def test_float_path_ties(self):
        assert competition_ranks([0.1 + 0.2, 0.3]) == [1, 1]

    @given(st.lists(st.integers(0, 20), max_size=30))
    def test_matches_scipy_min_rank(self, xs):
        assert competition_ranks(xs) == [int(r) for r in rankdata([-x for x in xs], method="min")]


class TestSAW:
    def test_single_applicant(self):
        (e,) = saw_scores(matrix([[3, 4, 5]])).entries
        assert e.score == pytest.approx(1) and e.rank == 1

    def test_zero_column(self):
        with pytest.raises(ValueError):
            saw_scores(matrix([[0, 1], [0, 2]]))

    def test_table1_anchors(self, table1):
        ranking = saw_scores(build_decision_matrix(table1, W))
        by_id = ranking.by_id()
        assert ranking.method is Method.SAW
        assert by_id["001"].score == pytest.approx(0.86182, abs=5e-5)
        assert by_id["025"].score == pytest.approx(0.72821, abs=5e-5)
        assert by_id["025"].rank == 25

    @given(grids)
    def test_against_loop_oracle(self, rows):
        got = saw_scores(matrix(rows)).scores
        np.testing.assert_allclose(got, saw_oracle(rows, [1 / len(rows[0])] * len(rows[0])), rtol=1e-12)
        assert all(0 < s <= 1 + 1e-12 for s in got)

    @given(grids, st.data())
    def test_column_rescaling(self, rows, data):
        j = data.draw(st.integers(0, len(rows[0]) - 1))
        k = data.draw(st.floats(0.01, 100))
        scaled = [r[:j] + [r[j] * k] + r[j + 1:] for r in rows]
        np.testing.assert_allclose(saw_scores(matrix(scaled)).scores, saw_scores(matrix(rows)).scores,
                                   rtol=0, atol=1e-12)

    def test_dominant_row_scores_one(self):
        s = saw_scores(matrix([[10, 10], [5, 9], [10, 1]])).scores
        assert s[0] == pytest.approx(1)


class TestTOPSIS:
    def test_table1_values(self, table1):
        ranking = topsis_scores(build_decision_matrix(table1, W))
        by_id = ranking.by_id()
        assert by_id["025"].rank == 25
        # standard vector normalisation reproduces the published column
        assert by_id["001"].score == pytest.approx(0.66258, abs=5e-5)
        assert by_id["025"].score == pytest.approx(0.37760, abs=5e-5)

    def test_identical_applicants_tie(self):
        ranks = topsis_scores(matrix([[9, 9], [9, 9], [1, 2]])).ranks
        assert ranks == [1, 1, 3]

    def test_degenerate(self):
        with pytest.raises(ValueError):
            topsis_scores(matrix([[5, 5], [5, 5]]))

    def test_ideal_row_scores_one(self):
        assert topsis_scores(matrix([[10, 10], [5, 9], [10, 1]])).scores[0] == pytest.approx(1)

    @given(grids)
    def test_against_loop_oracle(self, rows):
        if all(r == rows[0] for r in rows):
            return
        got = topsis_scores(matrix(rows)).scores
        np.testing.assert_allclose(got, topsis_oracle(rows, [1 / len(rows[0])] * len(rows[0])), rtol=1e-9)
        assert all(-1e-12 <= s <= 1 + 1e-12 for s in got)

    @given(grids, st.randoms())
    def test_row_permutation(self, rows, rnd):
        if all(r == rows[0] for r in rows):
            return
        m = matrix(rows)
        order = list(range(len(rows)))
        rnd.shuffle(order)
        p = DecisionMatrix([m.applicant_ids[i] for i in order], m.criteria,
                           [rows[i] for i in order], m.weights)
        for fn in (saw_scores, topsis_scores):
            a, b = fn(m).by_id(), fn(p).by_id()
            for k in a:
                assert b[k].score == pytest.approx(a[k].score, rel=1e-12)
                assert b[k].rank == a[k].rank
