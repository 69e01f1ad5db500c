"""Monomial bases with capped exponents and their exact dimensions.

A monomial is a plain tuple of exponents, each in [0, p-1]. The canonical
order everywhere in this package is graded lexicographic: first by total
degree, then tuple-lexicographic, so matrix row/column indices are
reproducible across runs.
"""

from __future__ import annotations

from functools import lru_cache

from .gf import PrimeField

__all__ = [
    "Monomial",
    "monomial_degree",
    "graded_lex_key",
    "enumerate_monomials",
    "extended_binomial",
    "dim_L",
    "verify_duality",
    "monomial_index",
]

Monomial = tuple[int, ...]


def monomial_degree(alpha: Monomial) -> int:
    return sum(alpha)


def graded_lex_key(alpha: Monomial) -> tuple[int, Monomial]:
    return (sum(alpha), alpha)


def _exponent_vectors(n: int, cap: int, d: int):
    """All vectors in {0..cap}^n with coordinate sum <= d (unordered)."""
    if n == 0:
        yield ()
        return
    for e in range(min(cap, d) + 1):
        for rest in _exponent_vectors(n - 1, cap, d - e):
            yield (e,) + rest


def enumerate_monomials(n: int, field: PrimeField, d: int) -> list[Monomial]:
    """All monomials with exponents <= p-1 and degree <= d, graded-lex sorted."""
    cap = field.p - 1
    if not 0 <= d <= cap * n:
        raise ValueError(f"degree bound {d} out of range [0, {cap * n}]")
    return sorted(_exponent_vectors(n, cap, d), key=graded_lex_key)


@lru_cache(maxsize=None)
def _layer_counts(n: int, m: int) -> tuple[int, ...]:
    """Entry k counts vectors in {0..m}^n with coordinate sum k.

    Built by convolving n copies of the all-ones window of width m+1; exact
    big integers throughout, memoized per (n, m).
    """
    row = [1]
    for _ in range(n):
        prev = row
        row = [0] * (len(prev) + m)
        for k, v in enumerate(prev):
            for j in range(m + 1):
                row[k + j] += v
    return tuple(row)


def extended_binomial(n: int, k: int, m: int) -> int:
    """Number of vectors in {0,...,m}^n with coordinate sum k (0 off-range)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 1:
        raise ValueError("m must be at least 1")
    if k < 0 or k > m * n:
        return 0
    return _layer_counts(n, m)[k]


def dim_L(n: int, d: int, field: PrimeField) -> int:
    """Exact dimension of the degree-<=d slice of the capped-exponent space."""
    cap = field.p - 1
    if not 0 <= d <= cap * n:
        raise ValueError(f"degree bound {d} out of range [0, {cap * n}]")
    return sum(_layer_counts(n, cap)[: d + 1])


def verify_duality(n: int, field: PrimeField) -> bool:
    """Check dim(d) + dim((p-1)n - d - 1) = p^n exactly for every d.

    This is the complementation map alpha -> (p-1-alpha) on monomials, which
    pairs the degree-<=d slice with the complement of the degree-<=(p-1)n-d-1
    slice.
    """
    if n < 1:
        raise ValueError("n must be positive")
    total = field.p**n
    top = (field.p - 1) * n
    return all(
        dim_L(n, d, field) + dim_L(n, top - d - 1, field) == total for d in range(top)
    )


@lru_cache(maxsize=32)
def monomial_index(p: int, n: int) -> tuple[tuple[Monomial, ...], dict[Monomial, int]]:
    """Full graded-lex monomial list for GF(p) in n variables, plus its index map."""
    field = PrimeField(p)
    monos = tuple(enumerate_monomials(n, field, (p - 1) * n))
    return monos, {m: i for i, m in enumerate(monos)}
