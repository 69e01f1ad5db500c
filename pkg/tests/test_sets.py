import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capbound.errors import ProgressionFound
from capbound.gf import PrimeField
from capbound.sets import (
    PointSet,
    SearchResult,
    cap_equivalence_check,
    greedy_progression_free,
    is_progression_free,
    max_progression_free,
    pair_sums,
    parse_point_set,
)
from oracles import has_progression, max_pf_all_subsets

F3 = PrimeField(3)
F5 = PrimeField(5)


class TestPointSet:
    def test_membership_and_size(self):
        ps = PointSet.from_points(F3, 2, [(0, 0), (1, 2)])
        assert len(ps) == 2
        assert 0 in ps and 7 in ps and 1 not in ps
        assert ps.points() == [(0, 0), (1, 2)]

    def test_validation(self):
        with pytest.raises(ValueError):
            PointSet.from_points(F3, 2, [(3, 0)])
        with pytest.raises(ValueError):
            PointSet.from_points(F3, 2, [(0, 0, 0)])
        with pytest.raises(ValueError):
            PointSet.from_indices(F3, 2, [9])
        with pytest.raises(ValueError):
            PointSet(F3, 2, 1 << 9)

    def test_set_algebra(self):
        a = PointSet.from_indices(F3, 1, [0, 1])
        b = PointSet.from_indices(F3, 1, [1, 2])
        assert (a & b).indices() == [1]
        assert (a | b).size == 3
        assert (a - b).indices() == [0]
        assert a.complement().indices() == [2]
        with pytest.raises(ValueError):
            a & PointSet.from_indices(F3, 2, [0])

    def test_json_round_trip(self):
        ps = PointSet.from_points(F5, 2, [(0, 1), (4, 4), (2, 0)])
        data = json.loads(json.dumps(ps.to_json()))
        assert PointSet.from_json(data) == ps

    def test_text_round_trip(self):
        ps = PointSet.from_points(F3, 3, [(0, 0, 0), (1, 2, 0)])
        text = ps.to_text()
        assert text.splitlines()[0] == "p=3 n=3"
        assert PointSet.from_text(text) == ps

    def test_text_comments_and_errors(self):
        parsed = PointSet.from_text("# cap\np=3 n=2\n\n0 0  # origin\n1 2\n")
        assert parsed.size == 2
        with pytest.raises(ValueError, match="header"):
            PointSet.from_text("0 0\n1 2\n")

    def test_parse_auto_detect(self):
        ps = PointSet.from_points(F3, 2, [(1, 1)])
        assert parse_point_set(json.dumps(ps.to_json())) == ps
        assert parse_point_set(ps.to_text()) == ps


class TestProgressionFree:
    def test_single_point(self):
        assert is_progression_free(PointSet.from_indices(F3, 2, [5]))[0]

    def test_line_in_z3(self):
        ok, witness = is_progression_free(PointSet.from_points(F3, 1, [(0,), (1,), (2,)]))
        assert not ok
        a, b, c = witness
        assert {a, b, c} <= {(0,), (1,), (2,)}
        assert (a[0] + b[0]) % 3 == (2 * c[0]) % 3
        assert len({a, b, c}) == 3

    def test_pair_in_z5(self):
        assert is_progression_free(PointSet.from_points(F5, 1, [(0,), (1,)]))[0]

    def test_agrees_with_oracle_recheck(self):
        import numpy as np

        rng = np.random.default_rng(41)
        for _ in range(50):
            size = int(rng.integers(0, 10))
            idxs = rng.choice(27, size=size, replace=False)
            ps = PointSet.from_indices(F3, 3, idxs)
            assert is_progression_free(ps)[0] == (not has_progression(set(ps.points()), 3))


class TestPairSums:
    def test_singleton(self):
        B, C = pair_sums(PointSet.from_points(F3, 1, [(0,)]))
        assert B.size == 0 and C.points() == [(0,)]

    def test_z5_example(self):
        B, C = pair_sums(PointSet.from_points(F5, 1, [(0,), (1,)]))
        assert B.points() == [(1,)]
        assert sorted(C.points()) == [(0,), (2,)]

    def test_disjoint_for_progression_free(self, cap9_search):
        cap = cap9_search.witness
        B, C = pair_sums(cap)
        assert (B & C).size == 0
        assert C.size == cap.size

    def test_doubles_always_full_size(self):
        ps = PointSet.from_indices(F5, 2, range(0, 25, 3))
        _, C = pair_sums(ps)
        assert C.size == ps.size


class TestMaxSearch:
    def test_tiny_cases_match_literal_oracle(self):
        assert max_progression_free(F3, 1).best_size == max_pf_all_subsets(3, 1) == 2
        assert max_progression_free(F3, 2).best_size == max_pf_all_subsets(3, 2) == 4
        assert max_progression_free(F5, 1).best_size == max_pf_all_subsets(5, 1) == 2
        assert (
            max_progression_free(PrimeField(7), 1).best_size
            == max_pf_all_subsets(7, 1)
            == 3
        )

    def test_results_are_optimal_and_verified(self):
        res = max_progression_free(F3, 2)
        assert res.optimal
        assert res.witness.size == 4
        assert is_progression_free(res.witness)[0]

    def test_known_maximum_n3(self, cap9_search):
        assert cap9_search.best_size == 9
        assert cap9_search.optimal

    def test_budget_exhaustion_is_not_an_error(self):
        res = max_progression_free(F3, 3, node_budget=20)
        assert not res.optimal
        assert res.best_size >= 1
        assert is_progression_free(res.witness)[0]

    def test_ceiling(self):
        with pytest.raises(ValueError, match="greedy"):
            max_progression_free(F3, 7)

    def test_parallel_value_matches_sequential(self):
        seq = max_progression_free(F3, 2, workers=1)
        par = max_progression_free(F3, 2, workers=2)
        assert par.best_size == seq.best_size == 4
        assert par.optimal

    def test_parallel_n3_deterministic(self, cap9_search):
        par = max_progression_free(F3, 3, workers=4)
        assert par.best_size == cap9_search.best_size == 9
        assert par.optimal
        again = max_progression_free(F3, 3, workers=4)
        assert again.best_size == 9 and again.witness == par.witness

    def test_parallel_budget_split(self):
        budgeted = max_progression_free(F3, 3, node_budget=50, workers=4)
        assert not budgeted.optimal
        assert is_progression_free(budgeted.witness)[0]

    def test_monotone_growth(self, cap9_search):
        sizes = {
            1: max_progression_free(F3, 1).best_size,
            2: max_progression_free(F3, 2).best_size,
            3: cap9_search.best_size,
        }
        assert sizes[1] <= sizes[2] <= sizes[3]
        assert sizes[2] <= 3 * sizes[1]
        assert sizes[3] <= 3 * sizes[2]

    def test_search_result_invariant(self):
        line = PointSet.from_points(F3, 1, [(0,), (1,), (2,)])
        with pytest.raises(ProgressionFound):
            SearchResult(3, line, True, 0, 0.0)
        with pytest.raises(ValueError):
            SearchResult(5, PointSet.from_indices(F3, 1, [0]), True, 0, 0.0)


class TestGreedy:
    def test_maximal_in_z3(self):
        for seed in range(5):
            assert greedy_progression_free(F3, 1, seed).size == 2

    def test_deterministic(self):
        a = greedy_progression_free(F3, 4, order_seed=123)
        b = greedy_progression_free(F3, 4, order_seed=123)
        assert a == b
        c = greedy_progression_free(F3, 4, order_seed=124)
        assert is_progression_free(c)[0]

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_always_progression_free(self, seed):
        result = greedy_progression_free(F3, 2, order_seed=seed)
        assert is_progression_free(result)[0]
        assert result.size == 4  # greedy always completes a maximal cap here


class TestCapEquivalence:
    def test_full_line(self):
        assert cap_equivalence_check(PointSet.from_points(F3, 1, [(0,), (1,), (2,)]))

    def test_small_sets(self):
        assert cap_equivalence_check(PointSet.from_indices(F3, 2, [0, 5]))
        assert cap_equivalence_check(PointSet.empty(F3, 2))

    def test_rejects_other_primes(self):
        with pytest.raises(ValueError, match="p=3"):
            cap_equivalence_check(PointSet.from_indices(F5, 1, [0]))

    @settings(max_examples=60, deadline=None)
    @given(st.sets(st.integers(0, 8), max_size=9))
    def test_random_subsets_agree(self, idxs):
        assert cap_equivalence_check(PointSet.from_indices(F3, 2, idxs))
