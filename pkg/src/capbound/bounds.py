"""Tail bounds and the dimension-growth exponent, with guarded comparisons.

"log" in the exponent c = 1 - 1/(18 log p) is the natural logarithm; that
is what makes p^(n(1-1/(18 log p))) equal p^n * e^(-n/18), and it matches
the headline base 3^c = 2.84 (base-2 or base-10 would give 2.71 or 2.45).

Real comparisons never decide anything close: exact big-integer dimensions
are compared against bounds in log space with at least 30 significant
digits (CAPSET_PRECISION overrides) and a 1e-9 guard margin.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .gf import PrimeField
from .monomials import dim_L, extended_binomial

__all__ = [
    "DEFAULT_PRECISION",
    "GUARD_MARGIN",
    "BoundReport",
    "precision_digits",
    "exponent_c",
    "hoeffding_bound",
    "verify_entropy_lemma",
    "low_third_dimension",
    "exact_tail_identity",
    "main_bound",
]

DEFAULT_PRECISION = 30
GUARD_MARGIN = Decimal("1e-9")


def precision_digits() -> int:
    """Working precision for real comparisons (CAPSET_PRECISION, default 30)."""
    raw = os.environ.get("CAPSET_PRECISION", "")
    try:
        digits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return digits if digits >= 1 else DEFAULT_PRECISION


def _to_decimal(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, int):
        return Decimal(x)
    if isinstance(x, Fraction):
        return Decimal(x.numerator) / Decimal(x.denominator)
    if isinstance(x, float):
        return Decimal(repr(x))
    raise ValueError(f"expected a number, got {x!r}")


def exponent_c(field: PrimeField) -> Decimal:
    """The exponent c(p) = 1 - 1/(18 ln p), strictly inside (0, 1)."""
    with localcontext() as ctx:
        ctx.prec = precision_digits()
        return 1 - 1 / (18 * Decimal(field.p).ln())


def hoeffding_bound(t, widths) -> Decimal:
    """Sub-Gaussian tail bound exp(-2 t^2 / sum(widths_i^2)) for t >= 0.

    `widths` are the ranges b_i - a_i of the bounded summands.
    """
    widths = list(widths)
    if not widths:
        raise ValueError("widths must be nonempty")
    with localcontext() as ctx:
        ctx.prec = precision_digits()
        td = _to_decimal(t)
        ws = [_to_decimal(w) for w in widths]
        if td < 0:
            raise ValueError("t must be nonnegative")
        if any(w < 0 for w in ws):
            raise ValueError("widths must be nonnegative")
        if td == 0:
            return Decimal(1)
        ssq = sum(w * w for w in ws)
        if ssq == 0:
            raise ValueError("degenerate ranges")
        return (-2 * td * td / ssq).exp()


@dataclass(frozen=True)
class BoundReport:
    """Exact dimension of the low-third degree slice versus its p^(cn) bound."""

    p: int
    n: int
    c: Decimal
    hoeffding: Decimal
    exact_dim: int
    bound_value: Decimal
    margin: Decimal
    holds: bool


def verify_entropy_lemma(field: PrimeField, n: int) -> BoundReport:
    """Check ln(dim of the degree-<=(p-1)n/3 slice) <= c * n * ln p exactly.

    Requires n to be a positive multiple of 3 (the degree cut (p-1)n/3 must
    be an integer for the statement as made). `holds` demands a margin
    above the 1e-9 guard; the bound is loose enough that no valid case sits
    anywhere near it.
    """
    if n <= 0 or n % 3 != 0:
        raise ValueError("lemma requires 3 | n")
    d = (field.p - 1) * n // 3
    exact = dim_L(n, d, field)
    with localcontext() as ctx:
        ctx.prec = precision_digits()
        lnp = Decimal(field.p).ln()
        c = 1 - 1 / (18 * lnp)
        log_bound = c * n * lnp
        margin = log_bound - Decimal(exact).ln()
        return BoundReport(
            p=field.p,
            n=n,
            c=c,
            hoeffding=(-Decimal(n) / 18).exp(),
            exact_dim=exact,
            bound_value=log_bound.exp(),
            margin=margin,
            holds=margin > GUARD_MARGIN,
        )


def low_third_dimension(field: PrimeField, n: int) -> tuple[int, int]:
    """Informational (d, dim) at d = floor((p-1)n/3), no divisibility demand."""
    if n < 1:
        raise ValueError("n must be positive")
    d = (field.p - 1) * n // 3
    return d, dim_L(n, d, field)


def exact_tail_identity(
    field: PrimeField, n: int, k: int
) -> tuple[Fraction, Decimal | None]:
    """Exact Pr[S <= k] for S a sum of n uniforms on {0..p-1}, plus its bound.

    The probability is a big rational: the layer counts divided by p^n.
    The second component is the Hoeffding bound at t = (p-1)n/2 - k, only
    meaningful below the mean (None above it).
    """
    if n < 1:
        raise ValueError("n must be positive")
    m = field.p - 1
    if not 0 <= k <= m * n:
        raise ValueError(f"k={k} out of range [0, {m * n}]")
    tail = Fraction(sum(extended_binomial(n, j, m) for j in range(k + 1)), field.p**n)
    mean_twice = m * n  # 2 * E[S]
    if 2 * k > mean_twice:
        return tail, None
    t = Fraction(mean_twice, 2) - k
    return tail, hoeffding_bound(t, [m] * n)


def main_bound(field: PrimeField, n: int) -> Decimal:
    """The concrete size bound 3 * p^(c n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with localcontext() as ctx:
        ctx.prec = precision_digits()
        lnp = Decimal(field.p).ln()
        c = 1 - 1 / (18 * lnp)
        return 3 * (c * n * lnp).exp()
