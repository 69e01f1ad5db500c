import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capbound.errors import HypothesisViolation
from capbound.gf import PrimeField, point_coords
from capbound.polyspace import (
    ReducedPoly,
    evaluate,
    evaluate_all,
    gram_matrix,
    indicator_poly,
    interpolate,
    poly_from_vector,
    poly_to_vector,
    shift_coefficient_matrix,
    support_split_rank_bound,
    zero_set,
)
from capbound.sets import PointSet

F3 = PrimeField(3)
F5 = PrimeField(5)


def random_poly(rng, field, n, max_terms=6):
    cap = field.p - 1
    coeffs = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        alpha = tuple(int(e) for e in rng.integers(0, cap + 1, size=n))
        coeffs[alpha] = int(rng.integers(0, field.p))
    return ReducedPoly(field, n, coeffs)


class TestReducedPoly:
    def test_normalization(self):
        f = ReducedPoly(F3, 2, {(0, 0): 3, (1, 1): 4})
        assert f.coefficient((0, 0)) == 0
        assert f.coefficient((1, 1)) == 1
        assert f.support_size() == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            ReducedPoly(F3, 2, {(3, 0): 1})
        with pytest.raises(ValueError):
            ReducedPoly(F3, 2, {(0, 0, 0): 1})

    def test_degree_sentinel(self):
        assert ReducedPoly.zero(F3, 2).degree is None
        assert ReducedPoly.constant(F3, 2, 1).degree == 0
        assert ReducedPoly(F3, 2, {(2, 1): 1}).degree == 3

    def test_add_scale(self):
        f = ReducedPoly(F3, 1, {(1,): 1})
        g = ReducedPoly(F3, 1, {(1,): 2, (0,): 1})
        assert (f + g).coefficient((1,)) == 0
        assert f.scale(2).coefficient((1,)) == 2
        assert (f - f).is_zero

    def test_text_round_trip(self):
        f = ReducedPoly(F3, 2, {(0, 0): 1, (2, 1): 2})
        text = f.to_text()
        assert text == "1 + 2*x1^2*x2^1"
        assert ReducedPoly.from_text(text, F3, 2) == f
        assert ReducedPoly.from_text("0", F3, 2).is_zero
        assert ReducedPoly.zero(F3, 2).to_text() == "0"
        # lenient parse: bare variables and implicit coefficient
        assert ReducedPoly.from_text("x1*x2 + 2", F3, 2) == ReducedPoly(
            F3, 2, {(1, 1): 1, (0, 0): 2}
        )

    def test_json_round_trip(self):
        f = ReducedPoly(F5, 2, {(4, 0): 3, (1, 2): 1})
        payload = json.loads(json.dumps(f.to_json_terms()))
        assert ReducedPoly.from_json_terms(payload, F5, 2) == f

    def test_vector_round_trip(self):
        f = ReducedPoly(F3, 2, {(1, 2): 2, (0, 0): 1})
        assert poly_from_vector(poly_to_vector(f), F3, 2) == f


class TestEvaluation:
    def test_constant(self):
        one = ReducedPoly.constant(F3, 2, 1)
        for idx in range(9):
            assert evaluate(one, point_coords(idx, 2, F3)) == 1

    def test_univariate_example(self):
        f = ReducedPoly(F3, 1, {(0,): 1, (2,): 2})  # 1 - x^2
        assert [evaluate(f, (x,)) for x in range(3)] == [1, 0, 0]
        assert evaluate_all(f) == [1, 0, 0]

    def test_product_example(self):
        f = ReducedPoly(F3, 2, {(1, 1): 1})
        assert evaluate(f, (2, 2)) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(ReducedPoly.constant(F3, 2, 1), (0,))

    def test_evaluate_all_matches_pointwise(self):
        rng = np.random.default_rng(5)
        for field, n in [(F3, 1), (F3, 2), (F3, 3), (F5, 2)]:
            f = random_poly(rng, field, n)
            table = evaluate_all(f)
            for idx in range(field.p**n):
                assert table[idx] == evaluate(f, point_coords(idx, n, field))

    def test_linearity(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            f = random_poly(rng, F3, 2)
            g = random_poly(rng, F3, 2)
            fg = [(a + b) % 3 for a, b in zip(evaluate_all(f), evaluate_all(g))]
            assert evaluate_all(f + g) == fg


class TestInterpolation:
    def test_all_ones(self):
        assert interpolate([1] * 9, F3, 2) == ReducedPoly.constant(F3, 2, 1)

    def test_point_indicator(self):
        v = [1, 0, 0]
        assert interpolate(v, F3, 1) == ReducedPoly(F3, 1, {(0,): 1, (2,): 2})

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            interpolate([0] * 8, F3, 2)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from([(3, 1), (3, 2), (5, 1), (5, 2)]), st.data())
    def test_round_trip_random(self, pn, data):
        p, n = pn
        field = PrimeField(p)
        values = data.draw(
            st.lists(st.integers(0, p - 1), min_size=p**n, max_size=p**n)
        )
        f = interpolate(values, field, n)
        assert evaluate_all(f) == values
        assert interpolate(evaluate_all(f), field, n) == f


class TestIndicator:
    def test_univariate(self):
        assert indicator_poly((0,), F3) == ReducedPoly(F3, 1, {(0,): 1, (2,): 2})

    def test_kronecker_property(self):
        for field, n in [(F3, 2), (F5, 1)]:
            for idx in range(field.p**n):
                a = point_coords(idx, n, field)
                table = evaluate_all(indicator_poly(a, field))
                expected = [1 if j == idx else 0 for j in range(field.p**n)]
                assert table == expected

    def test_degree_full(self):
        assert indicator_poly((1, 2), F3).degree == 4
        assert indicator_poly((0, 0, 0), F3).degree == 6

    def test_partition_of_unity(self):
        total = ReducedPoly.zero(F3, 2)
        for idx in range(9):
            total = total + indicator_poly(point_coords(idx, 2, F3), F3)
        assert total == ReducedPoly.constant(F3, 2, 1)

    def test_family_is_independent(self):
        # evaluation matrix of the indicator family is the identity
        rows = [
            evaluate_all(indicator_poly(point_coords(i, 2, F3), F3)) for i in range(9)
        ]
        assert np.array_equal(np.array(rows), np.eye(9, dtype=np.int64))


class TestZeroSet:
    def test_zero_polynomial(self):
        assert zero_set(ReducedPoly.zero(F3, 2)) == PointSet.full(F3, 2)

    def test_example(self):
        f = ReducedPoly(F3, 1, {(0,): 1, (2,): 2})
        assert zero_set(f).indices() == [1, 2]

    def test_univariate_root_count(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            f = random_poly(rng, F5, 1, max_terms=4)
            if f.is_zero:
                continue
            assert len(zero_set(f)) <= F5.p - 1


class TestShiftMatrix:
    def test_constant(self):
        C = shift_coefficient_matrix(ReducedPoly.constant(F3, 1, 1))
        arr = C.array
        assert arr[0, 0] == 1 and arr.sum() == 1
        assert C.rank() == 1

    def test_square_example(self):
        # (x+y)^2 = x^2 + 2xy + y^2 over GF(3)
        C = shift_coefficient_matrix(ReducedPoly(F3, 1, {(2,): 1}))
        assert C.to_lists() == [[0, 0, 1], [0, 2, 0], [1, 0, 0]]
        assert C.rank() == 3

    def test_degree_bookkeeping(self):
        rng = np.random.default_rng(3)
        from capbound.monomials import monomial_index

        for _ in range(10):
            f = random_poly(rng, F3, 2)
            if f.is_zero:
                continue
            monos, _ = monomial_index(3, 2)
            arr = shift_coefficient_matrix(f).array
            degs = {sum(alpha) for alpha, _ in f.terms()}
            for i, j in zip(*np.nonzero(arr)):
                assert sum(monos[i]) + sum(monos[j]) in degs

    def test_size_ceiling(self):
        with pytest.raises(ValueError, match="ceiling"):
            shift_coefficient_matrix(ReducedPoly.zero(F3, 7))


class TestSupportSplit:
    def test_constant(self):
        C = shift_coefficient_matrix(ReducedPoly.constant(F3, 1, 1))
        assert support_split_rank_bound(C, 0, 1, F3) == 2

    def test_square(self):
        C = shift_coefficient_matrix(ReducedPoly(F3, 1, {(2,): 1}))
        assert support_split_rank_bound(C, 1, 1, F3) == 4
        assert C.rank() <= 4

    def test_violation(self):
        # degree 2 polynomial with d = 0 violates the split hypothesis
        C = shift_coefficient_matrix(ReducedPoly(F3, 1, {(2,): 1}))
        with pytest.raises(HypothesisViolation, match="degree hypothesis violated"):
            support_split_rank_bound(C, 0, 1, F3)


class TestGramMatrix:
    def test_constant(self):
        M = gram_matrix(ReducedPoly.constant(F3, 1, 1), PointSet.full(F3, 1), PointSet.full(F3, 1))
        assert M.to_lists() == [[1, 1, 1]] * 3
        assert M.rank() == 1

    def test_square_table(self):
        M = gram_matrix(ReducedPoly(F3, 1, {(2,): 1}), PointSet.full(F3, 1), PointSet.full(F3, 1))
        assert M.to_lists() == [[0, 1, 1], [1, 1, 0], [1, 0, 1]]

    def test_rank_bounded_by_shift_rank(self):
        rng = np.random.default_rng(29)
        for _ in range(40):
            n = int(rng.integers(1, 4))
            f = random_poly(rng, F3, n)
            total = 3**n
            a = PointSet.from_indices(F3, n, rng.choice(total, size=rng.integers(1, total + 1), replace=False))
            b = PointSet.from_indices(F3, n, rng.choice(total, size=rng.integers(1, total + 1), replace=False))
            M = gram_matrix(f, a, b)
            C = shift_coefficient_matrix(f)
            assert M.rank() <= C.rank()

    def test_mismatched_spaces(self):
        with pytest.raises(ValueError):
            gram_matrix(ReducedPoly.constant(F3, 1, 1), PointSet.full(F3, 2), PointSet.full(F3, 2))
