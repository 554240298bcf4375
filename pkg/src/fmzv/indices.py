"""Indices, binary words, and the two shuffle products.

An index is a finite tuple of positive integers (k_1, ..., k_r); its weight
is k_1 + ... + k_r and its depth is r.  Indices correspond to words over the
two-letter alphabet {x, y} via

    (k_1, ..., k_r)  <->  x^(k_r - 1) y  x^(k_{r-1} - 1) y ... x^(k_1 - 1) y,

so every word representing a nonempty index ends in y.  Note the reversal:
the last index entry contributes the leading block of the word.

Two commutative, associative, bilinear products act on exact-rational linear
combinations of indices:

* ``shuffle_sh`` -- the letter shuffle: transport both indices to words,
  shuffle all letters, transport the resulting words back to indices.
  Example: (1,2) sh (1) = 3*(1,1,2) + (1,2,1).
* ``shuffle_tilde`` -- the entry shuffle: each index entry is a single
  letter; entries are interleaved and never merged.
  Example: (2,3) tsh (1) = (1,2,3) + (2,1,3) + (2,3,1).

Both products are homogeneous in weight; the entry shuffle is additionally
homogeneous in depth.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping


class Index(tuple):
    """A finite sequence of positive integers, ordered innermost-first."""

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(int(k) for k in entries)
        if any(k < 1 for k in entries):
            raise ValueError(f"index entries must be positive, got {entries}")
        return super().__new__(cls, entries)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @classmethod
    def parse(cls, text: str) -> "Index":
        """Parse "1,3,2" (whitespace ignored); the empty string is the empty index."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(part) for part in text.split(","))

    def text(self) -> str:
        return ",".join(str(k) for k in self)

    def __repr__(self) -> str:
        return f"Index({self.text()})"


EMPTY = Index()


def index_to_word(i: Index) -> str:
    """The word x^(k_r-1)y ... x^(k_1-1)y of an index; empty index -> empty word."""
    return "".join("x" * (k - 1) + "y" for k in reversed(i))


def word_to_index(w: str) -> Index:
    """Inverse of ``index_to_word``; rejects words not ending in y."""
    if any(c not in "xy" for c in w):
        raise ValueError(f"word must be over the alphabet x, y: {w!r}")
    if w and not w.endswith("y"):
        raise ValueError(f"word does not represent an index (ends in x): {w!r}")
    entries = [len(block) + 1 for block in w.split("y")[:-1]] if w else []
    return Index(reversed(entries))


class LinearCombination:
    """A finite formal sum of terms with exact rational coefficients.

    Backed by a term -> Fraction map; zero coefficients are never stored.
    Supports addition, subtraction, negation, and scalar multiplication.
    """

    __slots__ = ("_terms",)

    @staticmethod
    def _key(term):
        return term

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        data: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for term, coeff in items:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            acc = data.get(term, 0) + coeff
            if acc:
                data[term] = acc
            else:
                del data[term]
        self._terms = data

    @classmethod
    def single(cls, term, coeff: Fraction | int = 1):
        return cls([(term, Fraction(coeff))])

    def items(self) -> list[tuple]:
        """Term/coefficient pairs in the canonical order."""
        return sorted(self._terms.items(), key=lambda tc: self._key(tc[0]))

    def __getitem__(self, term) -> Fraction:
        return self._terms.get(term, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCombination) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        data = dict(self._terms)
        for term, coeff in other._terms.items():
            acc = data.get(term, 0) + coeff
            if acc:
                data[term] = acc
            else:
                del data[term]
        out = self.__class__.__new__(self.__class__)
        out._terms = data
        return out

    def __neg__(self):
        out = self.__class__.__new__(self.__class__)
        out._terms = {t: -c for t, c in self._terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        out = self.__class__.__new__(self.__class__)
        out._terms = {} if not scalar else {t: c * scalar for t, c in self._terms.items()}
        return out

    __rmul__ = __mul__

    def coefficient_sum(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))


class IndexCombination(LinearCombination):
    """Rational linear combination of indices (the ambient space of identities)."""

    @staticmethod
    def _key(term: Index):
        return (len(term), tuple(term))

    def text(self) -> str:
        """Canonical text form: terms "c*(i)" joined by " + "."""
        if not self._terms:
            return "0"
        parts = []
        for index, coeff in self.items():
            c = str(coeff.numerator) if coeff.denominator == 1 else f"{coeff.numerator}/{coeff.denominator}"
            parts.append(f"{c}*({Index(index).text()})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"IndexCombination[{self.text()}]"


class WordCombination(LinearCombination):
    """Rational linear combination of words over {x, y}."""

    @staticmethod
    def _key(term: str):
        return (len(term), term)


def as_combination(v) -> IndexCombination:
    """Coerce an Index, bare tuple, or IndexCombination into an IndexCombination."""
    if isinstance(v, IndexCombination):
        return v
    if isinstance(v, LinearCombination):
        raise TypeError(f"expected an index combination, got {type(v).__name__}")
    return IndexCombination.single(Index(v))


def _shuffle_counts(ub: tuple[int, ...], vb: tuple[int, ...]) -> dict[int, int]:
    """Letter-shuffle two bit-packed words; keys are packed results of full length.

    Prefix dynamic program: cell (i, j) holds the shuffles of ub[:i] with
    vb[:j]; the letter appended at cell (i, j) sits at bit position i+j-1.
    """
    lu, lv = len(ub), len(vb)
    row: list[dict[int, int]] = [{0: 1}]
    code = 0
    for j in range(lv):
        code |= vb[j] << j
        row.append({code: 1})
    for i in range(1, lu + 1):
        bit_u = ub[i - 1]
        prev_code = next(iter(row[0]))
        new: list[dict[int, int]] = [{prev_code | (bit_u << (i - 1)): 1}]
        for j in range(1, lv + 1):
            pos = i + j - 1
            shifted_u = bit_u << pos
            cell = {c | shifted_u: k for c, k in row[j].items()}
            shifted_v = vb[j - 1] << pos
            get = cell.get
            for c, k in new[j - 1].items():
                cc = c | shifted_v
                cell[cc] = get(cc, 0) + k
            new.append(cell)
        row = new
    return row[lv]


@lru_cache(maxsize=4096)
def shuffle_words(u: str, v: str) -> tuple[tuple[str, int], ...]:
    """All letter-interleavings of two words with multiplicities."""
    if len(u) > len(v):
        u, v = v, u
    ub = tuple(1 if c == "y" else 0 for c in u)
    vb = tuple(1 if c == "y" else 0 for c in v)
    total = len(u) + len(v)
    counts = _shuffle_counts(ub, vb)
    decoded = []
    for code, mult in counts.items():
        word = "".join("y" if code >> i & 1 else "x" for i in range(total))
        decoded.append((word, mult))
    decoded.sort()
    return tuple(decoded)


@lru_cache(maxsize=4096)
def _shuffle_entries(u: tuple, v: tuple) -> tuple[tuple[tuple, int], ...]:
    """All entry-interleavings of two tuples with multiplicities."""
    if len(u) > len(v):
        u, v = v, u
    lu, lv = len(u), len(v)
    row: list[dict[tuple, int]] = [{v[:j]: 1} for j in range(lv + 1)]
    for i in range(1, lu + 1):
        eu = (u[i - 1],)
        new: list[dict[tuple, int]] = [{u[:i]: 1}]
        for j in range(1, lv + 1):
            cell = {t + eu: k for t, k in row[j].items()}
            ev = (v[j - 1],)
            get = cell.get
            for t, k in new[j - 1].items():
                tt = t + ev
                cell[tt] = get(tt, 0) + k
            new.append(cell)
        row = new
    return tuple(sorted(row[lv].items()))


def shuffle_sh(u, v) -> IndexCombination:
    """The letter-shuffle product, computed through the word correspondence."""
    u, v = as_combination(u), as_combination(v)
    out: dict[Index, Fraction] = {}
    for iu, cu in u.items():
        wu = index_to_word(Index(iu))
        for iv, cv in v.items():
            wv = index_to_word(Index(iv))
            c = cu * cv
            for word, mult in shuffle_words(wu, wv):
                term = word_to_index(word)
                acc = out.get(term, 0) + c * mult
                if acc:
                    out[term] = acc
                else:
                    del out[term]
    return IndexCombination(out)


def shuffle_tilde(u, v) -> IndexCombination:
    """The entry-shuffle product: index entries interleave as indivisible letters."""
    u, v = as_combination(u), as_combination(v)
    out: dict[Index, Fraction] = {}
    for iu, cu in u.items():
        for iv, cv in v.items():
            c = cu * cv
            for entries, mult in _shuffle_entries(tuple(iu), tuple(iv)):
                term = Index(entries)
                acc = out.get(term, 0) + c * mult
                if acc:
                    out[term] = acc
                else:
                    del out[term]
    return IndexCombination(out)


def repeat(pattern: Index | tuple, m: int) -> Index:
    """Concatenate m copies of a pattern, e.g. repeat((1,3), 2) = (1,3,1,3)."""
    if m < 0:
        raise ValueError(f"repetition count must be non-negative, got {m}")
    return Index(tuple(pattern) * m)


def bb_shuffle(l: int, m: int) -> IndexCombination:
    """The entry shuffle of l copies of the block (1,3) with m single 2s.

    Equals the sum, with coefficient 1 each, of the indices
    ({2}^{m_0}, 1, {2}^{m_1}, 3, ..., {2}^{m_{2l}}) over all ways of writing
    m = m_0 + ... + m_{2l} with non-negative parts.
    """
    return shuffle_tilde(repeat((1, 3), l), repeat((2,), m))


def muneta_sides(l: int, m: int) -> tuple[IndexCombination, IndexCombination]:
    """Both sides of the rescaling identity linking the two shuffle products.

    LHS: 4^l times the entry shuffle of {1,3}^l with {2}^m.  RHS: the letter
    shuffle of {2}^{l+m} with {2}^l, minus correction terms
    4^k * C(2l+m-2k, l-k) times the entry shuffle of {1,3}^k with
    {2}^{2l+m-2k} for 0 <= k < l.  The two sides are equal in the span of
    indices for all non-negative l, m.
    """
    lhs = bb_shuffle(l, m) * Fraction(4**l)
    rhs = shuffle_sh(repeat((2,), l + m), repeat((2,), l))
    for k in range(l):
        rhs = rhs - bb_shuffle(k, 2 * l + m - 2 * k) * Fraction(4**k * comb(2 * l + m - 2 * k, l - k))
    return lhs, rhs
