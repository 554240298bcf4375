"""Exact arithmetic in Z/p^nZ for n in {1, 2}, prime ranges, and adelic tables.

A ``Residue`` is the least non-negative representative of a class mod p^n
together with ``(p, n)``; arithmetic is only defined between residues with
matching ``(p, n)``.  An ``AdelicElement`` is a finite table prime -> residue
mod p^n over a declared ``PrimeRange``, with an explicit record of skipped
primes; it stands in for an element of the quotient ring
(prod_p Z/p^nZ) / (sum_p Z/p^nZ), where equality ignores finitely many primes.

The primes 2 and 3 are excluded from every adelic table (see
``usable_primes``): the Bernoulli-quotient constants and the coefficients
with denominator 2 degenerate there, and dropping finitely many primes does
not change equality in the quotient ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

# Largest prime allowed in a Residue; p**2 must stay within 64 bits.
MAX_PRIME = 2**32 - 1
# Hard cap for prime enumeration (plain sieve, desk scale).
SIEVE_CAP = 10**7

# Primes dropped from every adelic computation.
GLOBAL_SKIP = (2, 3)


class NotInvertible(ValueError):
    """Raised when inverting a residue whose value is divisible by p."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class DenominatorNotCoprime(ValueError):
    """Raised when reducing a rational whose denominator is divisible by p."""


@dataclass(frozen=True, slots=True)
class Residue:
    """Canonical representative of an element of Z/p^nZ."""

    value: int
    p: int
    n: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError(f"modulus power must be 1 or 2, got {self.n}")
        if not 2 <= self.p <= MAX_PRIME:
            raise ValueError(f"prime out of range: {self.p}")
        object.__setattr__(self, "value", self.value % self.p**self.n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def _check(self, other: "Residue") -> None:
        if self.p != other.p or self.n != other.n:
            raise ValueError(
                f"incompatible residues: mod {self.p}^{self.n} vs mod {other.p}^{other.n}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.p, self.n)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.p, self.n)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.p, self.n)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.p, self.n)

    def __pow__(self, e: int) -> "Residue":
        if e < 0:
            return self.inv() ** (-e)
        return Residue(pow(self.value, e, self.modulus), self.p, self.n)

    def inv(self) -> "Residue":
        if self.value % self.p == 0:
            raise NotInvertible(f"{self.value} is not invertible mod {self.p}^{self.n}")
        return Residue(pow(self.value, -1, self.modulus), self.p, self.n)

    def project(self) -> "Residue":
        """Reduce a mod-p^2 residue to mod p (the identity map when n = 1)."""
        return Residue(self.value % self.p, self.p, 1)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def inv(a: Residue) -> Residue:
    return a.inv()


def batch_inv(residues: Sequence[Residue]) -> list[Residue]:
    """Invert a sequence of residues sharing (p, n) with a single inversion.

    Uses the prefix-product trick: one modular inversion plus O(len)
    multiplications.  Raises ``NotInvertible`` naming the first position
    whose value is divisible by p.
    """
    if not residues:
        return []
    first = residues[0]
    p, n, m = first.p, first.n, first.modulus
    values = []
    for i, r in enumerate(residues):
        first._check(r)
        if r.value % p == 0:
            raise NotInvertible(
                f"element at position {i} is not invertible mod {p}^{n}", position=i
            )
        values.append(r.value)
    inverted = batch_inv_ints(values, p, n)
    return [Residue(v, p, n) for v in inverted]


def batch_inv_ints(values: Sequence[int], p: int, n: int) -> list[int]:
    """Prefix-product batch inversion on raw integers, all coprime to p."""
    m = p**n
    k = len(values)
    prefix = [1] * (k + 1)
    acc = 1
    for i, v in enumerate(values):
        acc = acc * v % m
        prefix[i + 1] = acc
    inv_acc = pow(acc, -1, m)
    out = [0] * k
    for i in range(k - 1, -1, -1):
        out[i] = prefix[i] * inv_acc % m
        inv_acc = inv_acc * values[i] % m
    return out


def rational_to_residue(q: Fraction | int, p: int, n: int) -> Residue:
    """Reduce an exact rational into Z/p^nZ; the denominator must be coprime to p."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorNotCoprime(f"denominator of {q} is divisible by {p}")
    m = p**n
    return Residue(q.numerator * pow(q.denominator, -1, m), p, n)


@dataclass(frozen=True)
class PrimeRange:
    """Inclusive integer bounds with an explicit set of excluded primes."""

    lo: int
    hi: int
    skip: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.lo < 2:
            raise ValueError(f"range must start at 2 or above, got {self.lo}")
        if self.hi < self.lo:
            raise ValueError(f"empty-by-construction range {self.lo}..{self.hi}")
        if self.hi > SIEVE_CAP:
            raise ValueError(f"upper bound {self.hi} exceeds sieve cap {SIEVE_CAP}")
        object.__setattr__(self, "skip", frozenset(self.skip))

    @classmethod
    def parse(cls, text: str, skip: str = "") -> "PrimeRange":
        """Parse the CLI syntax "LO..HI" with an optional "p1,p2" skip list."""
        parts = text.split("..")
        if len(parts) != 2:
            raise ValueError(f"expected LO..HI, got {text!r}")
        lo, hi = int(parts[0]), int(parts[1])
        skipped = frozenset(int(s) for s in skip.split(",") if s.strip())
        return cls(lo, hi, skipped)

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


def primes_in(r: PrimeRange) -> tuple[int, ...]:
    """Ascending primes in [lo, hi] minus the skip set."""
    if r.hi < 2:
        return ()
    sieve = bytearray(b"\x01") * (r.hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(r.hi**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * ((r.hi - i * i) // i + 1)
    return tuple(p for p in range(r.lo, r.hi + 1) if sieve[p] and p not in r.skip)


def usable_primes(r: PrimeRange) -> tuple[list[int], dict[int, str]]:
    """Primes of the range usable for adelic work, plus the skip record.

    Drops the explicit skip set silently (caller asked for that) and 2, 3
    with a recorded reason.
    """
    skipped: dict[int, str] = {}
    usable = []
    for p in primes_in(r):
        if p in GLOBAL_SKIP:
            skipped[p] = "excluded small prime"
        else:
            usable.append(p)
    return usable, skipped


@dataclass(frozen=True)
class AdelicElement:
    """A table prime -> residue mod p^power over a declared prime range.

    ``values`` has one entry per usable prime of the range that was not
    skipped; ``skipped`` records every dropped prime with a reason.
    """

    prange: PrimeRange
    power: int
    values: dict[int, Residue]
    skipped: dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_function(
        cls,
        prange: PrimeRange,
        power: int,
        fn: Callable[[int], int],
        min_prime: int = 5,
        min_reason: str = "below validity threshold",
    ) -> "AdelicElement":
        """Build a table by evaluating ``fn(p)`` at every usable prime >= min_prime."""
        usable, skipped = usable_primes(prange)
        values = {}
        for p in usable:
            if p < min_prime:
                skipped[p] = min_reason
            else:
                values[p] = Residue(fn(p), p, power)
        return cls(prange, power, values, skipped)

    @classmethod
    def zeros(cls, prange: PrimeRange, power: int) -> "AdelicElement":
        return cls.from_function(prange, power, lambda p: 0)

    def primes(self) -> list[int]:
        return sorted(self.values)

    def _merge(self, other: "AdelicElement", op) -> "AdelicElement":
        if self.prange != other.prange:
            raise ValueError("adelic elements built over different prime ranges")
        if self.power != other.power:
            raise ValueError("adelic elements with different modulus powers")
        skipped = dict(self.skipped)
        skipped.update(other.skipped)
        values = {
            p: op(self.values[p], other.values[p])
            for p in self.values
            if p in other.values
        }
        return AdelicElement(self.prange, self.power, values, skipped)

    def __add__(self, other: "AdelicElement") -> "AdelicElement":
        return self._merge(other, lambda a, b: a + b)

    def __sub__(self, other: "AdelicElement") -> "AdelicElement":
        return self._merge(other, lambda a, b: a - b)

    def __mul__(self, other: "AdelicElement") -> "AdelicElement":
        return self._merge(other, lambda a, b: a * b)

    def __neg__(self) -> "AdelicElement":
        return AdelicElement(
            self.prange,
            self.power,
            {p: -r for p, r in self.values.items()},
            dict(self.skipped),
        )

    def scale(self, q: Fraction | int) -> "AdelicElement":
        """Multiply every entry by an exact rational, skipping primes dividing its denominator."""
        q = Fraction(q)
        values = {}
        skipped = dict(self.skipped)
        for p, r in self.values.items():
            if q.denominator % p == 0:
                skipped[p] = f"coefficient denominator divisible by {p}"
            else:
                values[p] = rational_to_residue(q, p, self.power) * r
        return AdelicElement(self.prange, self.power, values, skipped)

    def project(self) -> "AdelicElement":
        """Reduce every entry mod p (the ring map from power 2 down to power 1)."""
        return AdelicElement(
            self.prange,
            1,
            {p: r.project() for p, r in self.values.items()},
            dict(self.skipped),
        )
