"""Polynomials over GF(p) with every exponent capped at p-1.

This space restricts to functions F_p^n -> F_p bijectively (x^p = x on
points), which is what makes evaluation, interpolation and indicator
polynomials exact inverses of each other here. Coefficients are stored
sparsely; whole-space value tables and coefficient grids use dense numpy
tensors, contracted one coordinate at a time, because both the evaluation
and the interpolation kernel factor per coordinate.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import HypothesisViolation
from .gf import FpMatrix, PrimeField
from .monomials import Monomial, dim_L, graded_lex_key, monomial_index
from .sets import PointSet

__all__ = [
    "DENSE_MATRIX_CEILING",
    "ReducedPoly",
    "evaluate",
    "evaluate_all",
    "interpolate",
    "indicator_poly",
    "zero_set",
    "shift_coefficient_matrix",
    "support_split_rank_bound",
    "gram_matrix",
    "poly_to_vector",
    "poly_from_vector",
]

DENSE_MATRIX_CEILING = 2048


class ReducedPoly:
    """Immutable sparse polynomial with exponents in [0, p-1].

    The zero polynomial has degree None, a sentinel ordered below every
    degree bound by the callers that care.
    """

    __slots__ = ("field", "n", "_coeffs", "_degree")

    def __init__(self, field: PrimeField, n: int, coeffs: Mapping[Monomial, int]) -> None:
        if n < 0:
            raise ValueError("n must be nonnegative")
        cap = field.p - 1
        clean: dict[Monomial, int] = {}
        for alpha, c in coeffs.items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != n:
                raise ValueError(f"monomial {alpha} has arity {len(alpha)}, expected {n}")
            if any(e < 0 or e > cap for e in alpha):
                raise ValueError(f"monomial {alpha} has an exponent outside [0, {cap}]")
            c = int(c) % field.p
            if c:
                clean[alpha] = c
        self.field = field
        self.n = n
        self._coeffs = clean
        self._degree = max((sum(a) for a in clean), default=None)

    @classmethod
    def zero(cls, field: PrimeField, n: int) -> "ReducedPoly":
        return cls(field, n, {})

    @classmethod
    def constant(cls, field: PrimeField, n: int, c: int) -> "ReducedPoly":
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, field: PrimeField, n: int, alpha: Monomial, c: int = 1) -> "ReducedPoly":
        return cls(field, n, {tuple(alpha): c})

    @property
    def degree(self) -> int | None:
        return self._degree

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, alpha: Monomial) -> int:
        return self._coeffs.get(tuple(alpha), 0)

    def terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._coeffs.items(), key=lambda kv: graded_lex_key(kv[0]))

    def support_size(self) -> int:
        return len(self._coeffs)

    def add(self, other: "ReducedPoly") -> "ReducedPoly":
        if other.field != self.field or other.n != self.n:
            raise ValueError("polynomials live in different spaces")
        out = dict(self._coeffs)
        for alpha, c in other._coeffs.items():
            out[alpha] = (out.get(alpha, 0) + c) % self.field.p
        return ReducedPoly(self.field, self.n, out)

    __add__ = add

    def scale(self, k: int) -> "ReducedPoly":
        return ReducedPoly(
            self.field, self.n, {a: (k * c) % self.field.p for a, c in self._coeffs.items()}
        )

    def __sub__(self, other: "ReducedPoly") -> "ReducedPoly":
        return self.add(other.scale(self.field.p - 1))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ReducedPoly)
            and other.field == self.field
            and other.n == self.n
            and other._coeffs == self._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.n, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"ReducedPoly({self.to_text()!r} over GF({self.field.p}), n={self.n})"

    def to_text(self) -> str:
        """Canonical text form: `c*x1^e1*...*xn^en + ...`, graded-lex order."""
        if not self._coeffs:
            return "0"
        parts = []
        for alpha, c in self.terms():
            factors = [str(c)] + [f"x{i + 1}^{e}" for i, e in enumerate(alpha) if e]
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, field: PrimeField, n: int) -> "ReducedPoly":
        coeffs: dict[Monomial, int] = {}
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(field, n)
        for raw_term in text.split("+"):
            factors = [f.strip() for f in raw_term.strip().split("*")]
            coeff = 1
            exps = [0] * n
            seen_coeff = False
            for factor in factors:
                if not factor.startswith("x"):
                    if seen_coeff:
                        raise ValueError(f"two coefficients in term {raw_term!r}")
                    coeff = int(factor)
                    seen_coeff = True
                    continue
                var, _, exp = factor.partition("^")
                i = int(var[1:]) - 1
                if not 0 <= i < n:
                    raise ValueError(f"variable {var!r} out of range for n={n}")
                exps[i] += int(exp) if exp else 1
            alpha = tuple(exps)
            coeffs[alpha] = (coeffs.get(alpha, 0) + coeff) % field.p
        return cls(field, n, coeffs)

    def to_json_terms(self) -> list:
        return [[list(alpha), c] for alpha, c in self.terms()]

    @classmethod
    def from_json_terms(cls, data: Iterable, field: PrimeField, n: int) -> "ReducedPoly":
        coeffs: dict[Monomial, int] = {}
        for alpha, c in data:
            alpha = tuple(int(e) for e in alpha)
            coeffs[alpha] = (coeffs.get(alpha, 0) + int(c)) % field.p
        return cls(field, n, coeffs)


@lru_cache(maxsize=32)
def _vandermonde(p: int) -> np.ndarray:
    """V[v, e] = v^e mod p for v, e in [0, p-1]."""
    v = np.empty((p, p), dtype=np.int64)
    for a in range(p):
        for e in range(p):
            v[a, e] = pow(a, e, p)
    return v


@lru_cache(maxsize=32)
def _indicator_rows(p: int) -> np.ndarray:
    """U[s, e] = coefficient of x^e in 1 - (x - s)^(p-1).

    Row s is the coefficient vector of the univariate point indicator of s;
    the full indicator of a point is the per-coordinate tensor product.
    """
    u = np.zeros((p, p), dtype=np.int64)
    for s in range(p):
        u[s, 0] = 1
        for j in range(p):
            u[s, j] -= math.comb(p - 1, j) * pow(-s, p - 1 - j, p)
    return np.mod(u, p)


def evaluate(f: ReducedPoly, point: Sequence[int]) -> int:
    """Value of f at one point, by direct power products per term."""
    if len(point) != f.n:
        raise ValueError(f"point has dimension {len(point)}, expected {f.n}")
    p = f.field.p
    total = 0
    for alpha, c in f._coeffs.items():
        v = c
        for x, e in zip(point, alpha):
            if e:
                v = v * pow(x, e, p) % p
        total += v
    return total % p


def evaluate_all(f: ReducedPoly) -> list[int]:
    """Value table of f over all of F_p^n, indexed by point encoding.

    The coefficient tensor is contracted coordinate by coordinate against
    the Vandermonde matrix; linear in f by construction.
    """
    p, n = f.field.p, f.n
    if n == 0:
        return [f.coefficient(())]
    tensor = np.zeros((p,) * n, dtype=np.int64)
    for alpha, c in f._coeffs.items():
        tensor[alpha] = c
    van = _vandermonde(p)
    for _ in range(n):
        tensor = np.tensordot(tensor, van, axes=([0], [1])) % p
    return [int(x) for x in tensor.ravel(order="F")]


def interpolate(values: Sequence[int], field: PrimeField, n: int) -> ReducedPoly:
    """The unique capped-exponent polynomial with the given value table.

    This is the linear combination sum_a values[a] * indicator(a); the
    indicator coefficients factor per coordinate, so the sum is evaluated
    as n tensor contractions against the univariate indicator rows rather
    than by solving a p^n x p^n system.
    """
    p = field.p
    if len(values) != p**n:
        raise ValueError(f"value vector has length {len(values)}, expected {p**n}")
    if n == 0:
        return ReducedPoly.constant(field, 0, int(values[0]))
    tensor = np.mod(np.array(values, dtype=np.int64), p).reshape((p,) * n, order="F")
    rows = _indicator_rows(p)
    for _ in range(n):
        tensor = np.tensordot(tensor, rows, axes=([0], [0])) % p
    coeffs = {
        tuple(int(e) for e in alpha): int(tensor[tuple(alpha)])
        for alpha in np.argwhere(tensor)
    }
    return ReducedPoly(field, n, coeffs)


def indicator_poly(point: Sequence[int], field: PrimeField) -> ReducedPoly:
    """Expansion of prod_i (1 - (x_i - a_i)^(p-1)): 1 at `point`, 0 elsewhere.

    Always has the full monomial (p-1, ..., p-1) with coefficient (-1)^n,
    hence degree exactly (p-1)n.
    """
    n = len(point)
    rows = _indicator_rows(field.p)
    tensor = rows[field.validate(point[0])] if n else None
    if n == 0:
        return ReducedPoly.constant(field, 0, 1)
    for c in point[1:]:
        tensor = np.multiply.outer(tensor, rows[field.validate(c)]) % field.p
    coeffs = {
        tuple(int(e) for e in alpha): int(tensor[tuple(alpha)])
        for alpha in np.argwhere(tensor)
    }
    return ReducedPoly(field, n, coeffs)


def zero_set(f: ReducedPoly) -> PointSet:
    """All points where f vanishes, as a PointSet."""
    mask = 0
    for idx, v in enumerate(evaluate_all(f)):
        if v == 0:
            mask |= 1 << idx
    return PointSet(f.field, f.n, mask)


def _require_dense_ok(field: PrimeField, n: int) -> int:
    total = field.p**n
    if total > DENSE_MATRIX_CEILING:
        raise ValueError(
            f"p^n = {total} exceeds the dense-matrix ceiling {DENSE_MATRIX_CEILING}"
        )
    return total


def shift_coefficient_matrix(f: ReducedPoly) -> FpMatrix:
    """Coefficient grid C with f(x + y) = sum C[alpha, beta] x^alpha y^beta.

    Rows and columns are indexed by the graded-lex monomial order. Each
    term c*x^gamma of f expands through (x_i + y_i)^gamma_i with binomial
    coefficients mod p; exponents never exceed p-1, so no reduction of the
    monomials themselves is needed, and every (alpha, beta) cell receives a
    contribution from at most the single term gamma = alpha + beta.
    """
    field, n = f.field, f.n
    total = _require_dense_ok(field, n)
    monos, index = monomial_index(field.p, n)
    mat = np.zeros((total, total), dtype=np.int64)
    p = field.p
    for gamma, c in f._coeffs.items():
        for alpha in product(*(range(g + 1) for g in gamma)):
            w = c
            for g, a in zip(gamma, alpha):
                w = w * math.comb(g, a) % p
            if w:
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                mat[index[alpha], index[beta]] = w
    return FpMatrix(mat, field)


def support_split_rank_bound(C: FpMatrix, d: int, n: int, field: PrimeField) -> int:
    """Verify every nonzero C entry has a low-degree row or column; bound rank.

    For f of degree <= 2d every cell with |alpha| > d and |beta| > d must be
    zero, so the support sits in (low-degree rows) union (low-degree
    columns) and rank C <= 2 * dim of the degree-<=d slice, which is
    returned. A violation means the caller's f had degree > 2d.
    """
    monos, _ = monomial_index(field.p, n)
    degrees = np.array([sum(m) for m in monos], dtype=np.int64)
    rows, cols = np.nonzero(C.array)
    bad = (degrees[rows] > d) & (degrees[cols] > d)
    if bad.any():
        k = int(np.argmax(bad))
        raise HypothesisViolation(
            "degree hypothesis violated",
            evidence={
                "row_monomial": list(monos[int(rows[k])]),
                "col_monomial": list(monos[int(cols[k])]),
                "degree_bound": d,
            },
        )
    return 2 * dim_L(n, d, field)


def gram_matrix(f: ReducedPoly, A: PointSet, B: PointSet) -> FpMatrix:
    """Matrix of f(a + b) over a in A (rows), b in B (columns), index order."""
    if A.field != f.field or B.field != f.field or A.n != f.n or B.n != f.n:
        raise ValueError("polynomial and point sets live in different spaces")
    p, n = f.field.p, f.n
    values = np.array(evaluate_all(f), dtype=np.int64)
    a_coords = np.array(A.points(), dtype=np.int64).reshape(len(A), n)
    b_coords = np.array(B.points(), dtype=np.int64).reshape(len(B), n)
    sums = (a_coords[:, None, :] + b_coords[None, :, :]) % p
    pows = p ** np.arange(n, dtype=np.int64)
    return FpMatrix(values[sums @ pows], f.field)


def poly_to_vector(f: ReducedPoly) -> np.ndarray:
    """Coefficient vector of f over the full graded-lex monomial index."""
    total = _require_dense_ok(f.field, f.n)
    _, index = monomial_index(f.field.p, f.n)
    vec = np.zeros(total, dtype=np.int64)
    for alpha, c in f._coeffs.items():
        vec[index[alpha]] = c
    return vec


def poly_from_vector(vec: Sequence[int], field: PrimeField, n: int) -> ReducedPoly:
    monos, _ = monomial_index(field.p, n)
    if len(vec) != len(monos):
        raise ValueError(f"coefficient vector has length {len(vec)}, expected {len(monos)}")
    return ReducedPoly(field, n, {monos[i]: int(c) for i, c in enumerate(vec) if c % field.p})
