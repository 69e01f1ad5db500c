"""Exact arithmetic over GF(p): field elements, points of F_p^n, dense matrices.

Field elements are plain ints in [0, p-1]. Matrices keep their entries in
int64 numpy arrays so row operations vectorize; with p < 2^16 every
intermediate product fits in int64, so all linear algebra here is exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_MODULUS",
    "PrimeField",
    "field_arith",
    "point_index",
    "point_coords",
    "point_add",
    "point_scale",
    "FpMatrix",
    "row_space_intersection",
]

MAX_MODULUS = 1 << 16


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """GF(p) for an odd prime p with 3 <= p < 2^16.

    Elements are plain ints in [0, p-1]; instances only carry the modulus.
    Arithmetic methods assume reduced operands (that is the caller's
    contract); only inversion of zero raises.
    """

    __slots__ = ("p", "inv2")

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"modulus must be an int, got {p!r}")
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p == 2:
            raise ValueError("p = 2 is rejected: an odd prime is required")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus {p} is too large, need p < 2^16")
        self.p = p
        self.inv2 = pow(2, -1, p)

    def validate(self, a: int) -> int:
        if not isinstance(a, (int, np.integer)) or isinstance(a, bool):
            raise ValueError(f"field element must be an int, got {a!r}")
        if not 0 <= a < self.p:
            raise ValueError(f"element {a} out of range [0, {self.p - 1}]")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("not invertible")
        return pow(a, -1, self.p)

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


_BINARY_OPS = {"add", "sub", "mul"}
_UNARY_OPS = {"inv", "neg"}


def field_arith(op: str, a: int, b: int | None = None, *, field: PrimeField) -> int:
    """Dispatch one validated field operation by name.

    `op` is one of add/sub/mul/inv/neg; binary ops require `b`.
    """
    field.validate(a)
    if op in _BINARY_OPS:
        if b is None:
            raise ValueError(f"operation {op!r} needs a second operand")
        field.validate(b)
        return getattr(field, op)(a, b)
    if op in _UNARY_OPS:
        if b is not None:
            raise ValueError(f"operation {op!r} takes a single operand")
        return getattr(field, op)(a)
    raise ValueError(f"unknown field operation {op!r}")


def point_index(coords: Sequence[int], field: PrimeField) -> int:
    """Base-p encoding of a point: index = sum(coords[i] * p^i)."""
    idx = 0
    for c in reversed(coords):
        field.validate(c)
        idx = idx * field.p + c
    return idx


def point_coords(index: int, n: int, field: PrimeField) -> tuple[int, ...]:
    """Inverse of `point_index`; exact round-trip for 0 <= index < p^n."""
    if not 0 <= index < field.p**n:
        raise ValueError(f"index {index} out of range [0, {field.p**n})")
    out = []
    for _ in range(n):
        index, c = divmod(index, field.p)
        out.append(c)
    return tuple(out)


def point_add(a: Sequence[int], b: Sequence[int], field: PrimeField) -> tuple[int, ...]:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return tuple((x + y) % field.p for x, y in zip(a, b))


def point_scale(a: Sequence[int], k: int, field: PrimeField) -> tuple[int, ...]:
    return tuple((k * x) % field.p for x in a)


def _row_reduce(a: np.ndarray, p: int) -> list[int]:
    """In-place reduced row echelon form mod p; returns pivot column indices.

    Pivot choice is the first nonzero entry in column order, so the result
    is deterministic (there are no numerical concerns in exact arithmetic).
    """
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1 :, c])[0]
        if below.size:
            idx = below + r + 1
            a[idx] = (a[idx] - a[idx, c][:, None] * a[r]) % p
        pivots.append(c)
        r += 1
    for j in range(len(pivots) - 1, 0, -1):
        c = pivots[j]
        above = np.nonzero(a[:j, c])[0]
        if above.size:
            a[above] = (a[above] - a[above, c][:, None] * a[j]) % p
    return pivots


class FpMatrix:
    """Dense matrix over GF(p) with exact elimination primitives."""

    __slots__ = ("field", "_a")

    def __init__(self, entries, field: PrimeField) -> None:
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"matrix entries must be 2-dimensional, got shape {a.shape}")
        self.field = field
        self._a = np.mod(a, field.p)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeField) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field: PrimeField) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Copy of the underlying entry array (instances stay immutable)."""
        return self._a.copy()

    def entry(self, i: int, j: int) -> int:
        return int(self._a[i, j])

    def row(self, i: int) -> list[int]:
        return [int(x) for x in self._a[i]]

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self._a.T, self.field)

    def matmul(self, other: "FpMatrix") -> "FpMatrix":
        if self.field != other.field:
            raise ValueError("mixed moduli")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return FpMatrix((self._a @ other._a) % self.field.p, self.field)

    __matmul__ = matmul

    def rref(self) -> tuple["FpMatrix", tuple[int, ...]]:
        a = self._a.copy()
        pivots = _row_reduce(a, self.field.p)
        return FpMatrix(a, self.field), tuple(pivots)

    def rank(self) -> int:
        a = self._a.copy()
        return len(_row_reduce(a, self.field.p))

    def pivot_columns(self) -> list[int]:
        """Column indices whose restriction has full column rank.

        These are the leftmost pivots of left-to-right elimination, so the
        selection is deterministic and stable under row permutations (any
        rank-many independent column set stays independent).
        """
        a = self._a.copy()
        return list(_row_reduce(a, self.field.p))

    def kernel_basis(self) -> list[list[int]]:
        """Basis of {v : M v = 0}; always cols - rank(M) vectors."""
        p = self.field.p
        a = self._a.copy()
        pivots = _row_reduce(a, p)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [0] * self.cols
            v[free] = 1
            for j, pc in enumerate(pivots):
                v[pc] = int(-a[j, free]) % p
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence[int]) -> list[int] | None:
        """One solution of M x = rhs (free coordinates zero), or None."""
        if len(rhs) != self.rows:
            raise ValueError("dimension mismatch")
        p = self.field.p
        aug = np.zeros((self.rows, self.cols + 1), dtype=np.int64)
        aug[:, : self.cols] = self._a
        aug[:, self.cols] = np.mod(np.array(rhs, dtype=np.int64), p)
        pivots = _row_reduce(aug, p)
        if pivots and pivots[-1] == self.cols:
            return None
        x = [0] * self.cols
        for j, pc in enumerate(pivots):
            x[pc] = int(aug[j, self.cols])
        return x

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FpMatrix)
            and other.field == self.field
            and other._a.shape == self._a.shape
            and bool(np.array_equal(other._a, self._a))
        )

    def __repr__(self) -> str:
        return f"FpMatrix({self.rows}x{self.cols} over GF({self.field.p}))"


def row_space_intersection(
    basis1: Iterable[Sequence[int]],
    basis2: Iterable[Sequence[int]],
    field: PrimeField,
) -> list[list[int]]:
    """Basis of span(basis1) & span(basis2) via the Zassenhaus block trick.

    Row-reducing [[B1 B1], [B2 0]] leaves the intersection in the right
    halves of the rows whose left halves vanished. For independent input
    families the result has at least |B1| + |B2| - ambient vectors.
    """
    b1 = [list(v) for v in basis1]
    b2 = [list(v) for v in basis2]
    if not b1 or not b2:
        return []
    m = len(b1[0])
    if any(len(v) != m for v in b1) or any(len(v) != m for v in b2):
        raise ValueError("dimension mismatch between vector lengths")
    p = field.p
    block = np.zeros((len(b1) + len(b2), 2 * m), dtype=np.int64)
    block[: len(b1), :m] = np.mod(np.array(b1, dtype=np.int64), p)
    block[: len(b1), m:] = block[: len(b1), :m]
    block[len(b1) :, :m] = np.mod(np.array(b2, dtype=np.int64), p)
    _row_reduce(block, p)
    out = []
    for row in block:
        if not row[:m].any() and row[m:].any():
            out.append([int(x) for x in row[m:]])
    return out
