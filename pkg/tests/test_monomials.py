import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from capbound.gf import PrimeField
from capbound.monomials import (
    dim_L,
    enumerate_monomials,
    extended_binomial,
    graded_lex_key,
    verify_duality,
)
from oracles import count_monomials_direct

F3 = PrimeField(3)
F5 = PrimeField(5)


class TestEnumeration:
    def test_univariate(self):
        assert enumerate_monomials(1, F3, 2) == [(0,), (1,), (2,)]

    def test_graded_lex_order(self):
        assert enumerate_monomials(2, F3, 1) == [(0, 0), (0, 1), (1, 0)]
        monos = enumerate_monomials(2, F3, 4)
        assert monos == sorted(monos, key=graded_lex_key)

    def test_count_example(self):
        assert len(enumerate_monomials(3, F3, 2)) == 10

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            enumerate_monomials(2, F3, 5)
        with pytest.raises(ValueError):
            enumerate_monomials(2, F3, -1)

    def test_exponent_cap(self):
        for alpha in enumerate_monomials(2, F3, 4):
            assert all(0 <= e <= 2 for e in alpha)


class TestExtendedBinomial:
    def test_examples(self):
        assert extended_binomial(2, 2, 2) == 3
        assert extended_binomial(3, 3, 2) == 7
        for n, m in [(1, 1), (4, 2), (3, 4)]:
            assert extended_binomial(n, 0, m) == 1

    def test_off_range_is_zero(self):
        assert extended_binomial(3, -1, 2) == 0
        assert extended_binomial(3, 7, 2) == 0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            extended_binomial(-1, 0, 2)
        with pytest.raises(ValueError):
            extended_binomial(2, 0, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 7), st.integers(1, 6))
    def test_row_sum_and_symmetry(self, n, m):
        row = [extended_binomial(n, k, m) for k in range(m * n + 1)]
        assert sum(row) == (m + 1) ** n
        assert row == row[::-1]


class TestDimensions:
    def test_examples(self):
        assert dim_L(3, 2, F3) == 10
        assert dim_L(3, 6, F3) == 27
        assert dim_L(3, 4, F3) == 23
        assert dim_L(3, 3, F3) == 17

    def test_matches_enumeration(self):
        for p in (3, 5):
            field = PrimeField(p)
            for n in range(1, 5):
                for d in range((p - 1) * n + 1):
                    assert dim_L(n, d, field) == len(enumerate_monomials(n, field, d))
                    assert dim_L(n, d, field) == count_monomials_direct(n, p, d)

    def test_monotone_in_degree(self):
        dims = [dim_L(4, d, F5) for d in range(4 * 4 + 1)]
        assert dims == sorted(dims)
        assert dims[-1] == 5**4

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            dim_L(3, 7, F3)


class TestDuality:
    def test_univariate(self):
        assert dim_L(1, 0, F3) + dim_L(1, 1, F3) == 3
        assert verify_duality(1, F3)

    def test_example_n3(self):
        assert dim_L(3, 2, F3) + dim_L(3, 3, F3) == 27
        assert verify_duality(3, F3)

    def test_p5(self):
        assert verify_duality(4, F5)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            verify_duality(0, F3)
