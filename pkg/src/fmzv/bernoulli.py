"""Seki-Bernoulli numbers, exactly and mod p^2, and the derived adelic constants.

The convention here is B_1 = +1/2, as produced directly by the recurrence

    sum_{j=0}^{n} C(n+1, j) B_j = n + 1.

All quantities consumed downstream are B_{p-k}/k with k odd, hence even
Bernoulli index, so the sign convention at index 1 is observably irrelevant
(the test suite asserts this).

For j <= p-2 the numbers B_j are p-integral, so the same recurrence runs
verbatim in Z/p^2Z: every division is by an integer in [1, p-1].  One table
costs O(p^2) ring multiplications and is cached per prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .modular import AdelicElement, PrimeRange, Residue, batch_inv_ints

EXACT_CAP = 60
TABLE_CAP = 10_000


@lru_cache(maxsize=1)
def _exact_values() -> list[Fraction]:
    values = [Fraction(1)]
    for n in range(1, EXACT_CAP + 1):
        acc = Fraction(n + 1) - sum(comb(n + 1, j) * values[j] for j in range(n))
        values.append(acc / (n + 1))
    return values


def bernoulli_exact(n: int) -> Fraction:
    """B_n as an exact rational (B_1 = +1/2); capped at n = 60."""
    if not 0 <= n <= EXACT_CAP:
        raise ValueError(f"exact Bernoulli index out of range [0, {EXACT_CAP}]: {n}")
    return _exact_values()[n]


@dataclass(frozen=True)
class BernoulliTable:
    """B_0 .. B_{p-2} reduced mod p^2."""

    p: int
    values: tuple[Residue, ...]

    def __getitem__(self, j: int) -> Residue:
        return self.values[j]


@lru_cache(maxsize=None)
def _table_ints(p: int) -> tuple[int, ...]:
    """Raw mod-p^2 values of B_0 .. B_{p-2}.

    Binomials come from factorial/inverse-factorial tables (all arguments
    stay below p, hence coprime to p); odd rows above 1 are skipped since
    those Bernoulli numbers vanish.
    """
    if p < 5:
        raise ValueError(f"tables require p >= 5, got {p}")
    if p > TABLE_CAP:
        raise ValueError(f"prime {p} beyond table cap {TABLE_CAP}")
    m = p * p
    fact = [1] * p
    acc = 1
    for a in range(1, p):
        acc = acc * a % m
        fact[a] = acc
    inv_fact_last = pow(fact[p - 1], -1, m)
    inv_fact = [1] * p
    inv_fact[p - 1] = inv_fact_last
    for a in range(p - 1, 0, -1):
        inv_fact[a - 1] = inv_fact[a] * a % m
    inv_small = batch_inv_ints(list(range(1, p)), p, 2)

    values = [0] * (p - 1)
    values[0] = 1
    inv2 = inv_small[1]
    values[1] = inv2
    for n in range(2, p - 1, 2):
        f = fact[n + 1]
        # j = 0 and j = 1 contributions: B_0 = 1, B_1 = 1/2
        total = (1 + (n + 1) * inv2) % m
        for j in range(2, n, 2):
            c = f * inv_fact[j] % m * inv_fact[n + 1 - j] % m
            total = (total + c * values[j]) % m
        values[n] = (n + 1 - total) * inv_small[n] % m
    return tuple(values)


def bernoulli_mod(p: int) -> BernoulliTable:
    """The table of B_0 .. B_{p-2} mod p^2 for a prime p >= 5."""
    ints = _table_ints(p)
    return BernoulliTable(p, tuple(Residue(v, p, 2) for v in ints))


def beta_at(table: tuple[int, ...] | BernoulliTable, k: int, p: int) -> int:
    """The single-prime value B_{p-k}/k mod p^2 from a Bernoulli table."""
    if isinstance(table, BernoulliTable):
        raw = table.values[p - k].value
    else:
        raw = table[p - k]
    return raw * pow(k, -1, p * p) % (p * p)


def beta(k: int, prange: PrimeRange) -> AdelicElement:
    """The adelic constant with per-prime value B_{p-k}/k mod p^2.

    Defined for integers k >= 2; primes p <= k+2 are skipped (equality in
    the adelic quotient ignores finitely many primes, and near the bound
    the table entry degenerates).
    """
    if k < 2:
        raise ValueError(f"the Bernoulli-quotient constant requires k >= 2, got {k}")
    return AdelicElement.from_function(
        prange,
        2,
        lambda p: beta_at(_table_ints(p), k, p),
        min_prime=k + 3,
        min_reason=f"p <= {k + 2} below validity threshold for k={k}",
    )


def p_element(prange: PrimeRange) -> AdelicElement:
    """The adelic element whose value at p is p mod p^2; its square is zero."""
    return AdelicElement.from_function(prange, 2, lambda p: p)
