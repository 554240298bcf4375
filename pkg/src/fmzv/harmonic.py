"""Multiple harmonic sums mod p^n and adelic evaluation of index combinations.

For an index (k_1, ..., k_r) and a prime p the strict sum runs over
1 <= n_1 < ... < n_r <= p-1 and the star sum over 1 <= n_1 <= ... <= n_r <= p-1,
each term being 1/(n_1^{k_1} ... n_r^{k_r}) mod p^n.  Evaluating these at
every prime of a range yields the per-prime components of the finite
multiple zeta value (strict) and its star variant.

The kernel is a dynamic program with states S_0..S_r, S_0 = 1: for each
n = 1..p-1 it updates S_j += S_{j-1} * n^{-k_j}, sweeping j descending for
the strict sum (so S_{j-1} predates n) and ascending for the star sum (so
S_{j-1} already includes n).  That sweep direction is the entire difference
between the two variants.  Inverses come from one batch inversion over
1..p-1 and inverse-power tables per exponent, so one evaluation costs
O(p * r) ring multiplications.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .indices import Index, IndexCombination, as_combination
from .modular import (
    AdelicElement,
    PrimeRange,
    Residue,
    batch_inv_ints,
    usable_primes,
)

BRUTE_MAX_PRIME = 50
BRUTE_MAX_DEPTH = 4


@lru_cache(maxsize=64)
def _inverse_table(p: int, n: int) -> tuple[int, ...]:
    """Entry i is the inverse of i+1 mod p^n, for i = 0..p-2."""
    return tuple(batch_inv_ints(list(range(1, p)), p, n))


@lru_cache(maxsize=512)
def _power_table(p: int, n: int, e: int) -> tuple[int, ...]:
    """Entry i is (i+1)^{-e} mod p^n; built by squaring whole tables."""
    if e == 1:
        return _inverse_table(p, n)
    m = p**n
    half = _power_table(p, n, e // 2)
    if e % 2:
        base = _inverse_table(p, n)
        return tuple(v * v % m * b % m for v, b in zip(half, base))
    return tuple(v * v % m for v in half)


@lru_cache(maxsize=None)
def _mhs_value(entries: tuple[int, ...], p: int, n: int, star: bool) -> int:
    m = p**n
    if not entries:
        return 1 % m
    r = len(entries)
    cols = [_power_table(p, n, e) for e in entries]
    S = [0] * (r + 1)
    S[0] = 1
    order = list(range(1, r + 1)) if star else list(range(r, 0, -1))
    pairs = [(j, cols[j - 1]) for j in order]
    for i in range(p - 1):
        for j, col in pairs:
            S[j] = (S[j] + S[j - 1] * col[i]) % m
    return S[r]


def mhs(i: Index | tuple, p: int, n: int = 2, star: bool = False) -> Residue:
    """The multiple harmonic sum of an index mod p^n; empty index gives 1."""
    if p < 5:
        raise ValueError(f"harmonic sums require p >= 5, got {p}")
    entries = tuple(Index(i))
    return Residue(_mhs_value(entries, p, n, bool(star)), p, n)


def mhs_bruteforce(i: Index | tuple, p: int, n: int = 2, star: bool = False) -> Residue:
    """Direct enumeration of all tuples; an independent oracle for ``mhs``.

    Cost-guarded: p <= 50 and depth <= 4.
    """
    entries = tuple(Index(i))
    if p > BRUTE_MAX_PRIME or len(entries) > BRUTE_MAX_DEPTH:
        raise ValueError(
            f"brute force limited to p <= {BRUTE_MAX_PRIME}, depth <= {BRUTE_MAX_DEPTH}"
        )
    m = p**n
    pick = itertools.combinations_with_replacement if star else itertools.combinations
    total = 0
    for tup in pick(range(1, p), len(entries)):
        term = 1
        for base, e in zip(tup, entries):
            term = term * pow(base, -e, m) % m
        total = (total + term) % m
    return Residue(total, p, n)


@dataclass(frozen=True)
class EvalRequest:
    """One adelic evaluation: a combination, the star flag, range, and power."""

    combination: IndexCombination
    star: bool
    prange: PrimeRange
    power: int = 2


def evaluate(req: EvalRequest) -> AdelicElement:
    """Evaluate a rational combination of indices at every usable prime.

    Per prime: sum coeff * mhs(index) over the terms, the coefficients
    reduced mod p^power.  A prime dividing some coefficient denominator is
    skipped with a recorded reason, never silently.
    """
    usable, skipped = usable_primes(req.prange)
    terms = req.combination.items()
    values: dict[int, Residue] = {}
    for p in usable:
        m = p**req.power
        bad = next((c for _, c in terms if c.denominator % p == 0), None)
        if bad is not None:
            skipped[p] = f"coefficient denominator of {bad} divisible by {p}"
            continue
        total = 0
        for index, coeff in terms:
            c = coeff.numerator * pow(coeff.denominator, -1, m) % m
            total = (total + c * _mhs_value(tuple(index), p, req.power, req.star)) % m
        values[p] = Residue(total, p, req.power)
    return AdelicElement(req.prange, req.power, values, skipped)


def eval_combination(
    v, prange: PrimeRange, power: int = 2, star: bool = False
) -> AdelicElement:
    """Convenience wrapper: coerce ``v`` and evaluate it over a range."""
    return evaluate(EvalRequest(as_combination(v), bool(star), prange, power))
