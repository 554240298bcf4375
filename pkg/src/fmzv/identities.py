"""Registry of verifiable identities with symbolic and prime-by-prime checkers.

Identities come in three kinds:

* ``symbolic-exact`` -- an equality of exact rationals or of rational index
  combinations, checked with zero tolerance.
* ``adelic-A1`` -- a congruence mod p, checked at every usable prime of a
  range above a per-identity threshold.
* ``adelic-A2`` -- a congruence mod p^2, checked the same way.

Adelic equality ignores finitely many primes, so each identity declares a
threshold (a function of its parameters, essentially weight + 2, raised
where a Bernoulli-quotient constant imposes its own validity bound); primes
at or below the threshold are computed and reported but never gate the
verdict.  The ``ratio_probe`` additionally tests whether an evaluation that
vanishes mod p is, across primes, one fixed rational multiple of
beta_k * p, via per-prime rational reconstruction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Callable

from .bernoulli import beta, p_element
from .harmonic import eval_combination
from .indices import (
    Index,
    IndexCombination,
    as_combination,
    bb_shuffle,
    muneta_sides,
    repeat,
    shuffle_sh,
    shuffle_tilde,
)
from .modular import AdelicElement, PrimeRange


class UnknownIdentityError(ValueError):
    """Raised for an identity id absent from the registry."""


class ParameterError(ValueError):
    """Raised when identity parameters violate their constraints."""


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, defined as 0 outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n: int, a: int, b: int, c: int) -> int:
    """n! / (a! b! c!) for a three-part split of n."""
    if min(a, b, c) < 0 or a + b + c != n:
        raise ValueError(f"parts ({a}, {b}, {c}) must be non-negative and sum to {n}")
    return factorial(n) // (factorial(a) * factorial(b) * factorial(c))


@dataclass(frozen=True)
class PrimeRecord:
    """One prime's comparison: both residue values and whether it gates."""

    p: int
    lhs: int
    rhs: int
    ok: bool
    gated: bool


@dataclass
class VerificationReport:
    """Outcome of verifying one identity instance.

    ``verdict`` is True iff no gated prime record fails; skipped primes are
    listed with reasons and never count as failures.  Symbolic instances
    have no prime records; their outcome is in ``verdict`` and ``detail``.
    """

    id: str
    params: dict
    kind: str
    prange: PrimeRange | None
    threshold: int | None
    records: list[PrimeRecord]
    skipped: dict[int, str]
    verdict: bool
    detail: str = ""

    def failures(self) -> list[PrimeRecord]:
        return [r for r in self.records if r.gated and not r.ok]

    def to_jsonable(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "params": {k: _param_str(v) for k, v in self.params.items()},
            "range": _range_jsonable(self.prange),
            "threshold": self.threshold,
            "records": [
                {"p": r.p, "lhs": r.lhs, "rhs": r.rhs, "ok": r.ok, "gated": r.gated}
                for r in self.records
            ],
            "skipped": {str(p): reason for p, reason in sorted(self.skipped.items())},
            "verdict": self.verdict,
            "detail": self.detail,
        }


def _param_str(v) -> str:
    if isinstance(v, Index):
        return v.text()
    return str(v)


def _range_jsonable(prange: PrimeRange | None):
    if prange is None:
        return None
    return {"lo": prange.lo, "hi": prange.hi, "skip": sorted(prange.skip)}


@dataclass(frozen=True)
class IdentityDescriptor:
    """A registered identity: parameter contract, threshold, and builders."""

    id: str
    kind: str  # symbolic-exact | adelic-A1 | adelic-A2
    description: str
    param_names: tuple[str, ...]
    validate: Callable[[dict], None]
    # adelic kinds: (params, prange) -> (lhs, rhs); symbolic: params -> (ok, detail)
    build: Callable = None
    check: Callable = None
    threshold: Callable[[dict], int] = None
    weight: Callable[[dict], int] = lambda params: 0


REGISTRY: dict[str, IdentityDescriptor] = {}


def register_identity(desc: IdentityDescriptor) -> None:
    REGISTRY[desc.id] = desc


def _descriptor(identity_id: str) -> IdentityDescriptor:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(f"unknown identity id: {identity_id!r}") from None


def _normalize_params(desc: IdentityDescriptor, params: dict) -> dict:
    given = set(params)
    expected = set(desc.param_names)
    if given != expected:
        raise ParameterError(
            f"identity {desc.id} takes parameters {sorted(expected)}, got {sorted(given)}"
        )
    out = {}
    for name in desc.param_names:
        v = params[name]
        if name in ("left", "right"):
            out[name] = Index.parse(v) if isinstance(v, str) else Index(v)
        else:
            out[name] = int(v)
    desc.validate(out)
    return out


def verify_symbolic(identity_id: str, params: dict) -> VerificationReport:
    """Run an exact symbolic identity check; zero tolerance."""
    desc = _descriptor(identity_id)
    if desc.kind != "symbolic-exact":
        raise ParameterError(f"identity {identity_id} is {desc.kind}, not symbolic")
    params = _normalize_params(desc, params)
    ok, detail = desc.check(params)
    return VerificationReport(
        id=desc.id,
        params=params,
        kind=desc.kind,
        prange=None,
        threshold=None,
        records=[],
        skipped={},
        verdict=ok,
        detail=detail,
    )


def verify_adelic(identity_id: str, params: dict, prange: PrimeRange) -> VerificationReport:
    """Compare both sides of a congruence at every usable prime of a range.

    Primes above ``threshold(params)`` gate the verdict; smaller primes are
    still compared and reported.  Primes missing on either side (skipped by
    a builder) are listed with their reason.
    """
    desc = _descriptor(identity_id)
    if desc.kind not in ("adelic-A1", "adelic-A2"):
        raise ParameterError(f"identity {identity_id} is {desc.kind}, not adelic")
    params = _normalize_params(desc, params)
    lhs, rhs = desc.build(params, prange)
    threshold = desc.threshold(params)
    records = []
    skipped = dict(lhs.skipped)
    skipped.update(rhs.skipped)
    for p in sorted(set(lhs.values) | set(rhs.values)):
        if p not in lhs.values or p not in rhs.values:
            continue  # one-sided skip already recorded above
        lv, rv = lhs.values[p].value, rhs.values[p].value
        records.append(PrimeRecord(p, lv, rv, lv == rv, p > threshold))
    verdict = all(r.ok for r in records if r.gated)
    return VerificationReport(
        id=desc.id,
        params=params,
        kind=desc.kind,
        prange=prange,
        threshold=threshold,
        records=records,
        skipped=skipped,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# Identity builders


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _validate_lm(params: dict, forbid_origin: bool) -> None:
    l, m = params["l"], params["m"]
    _require(l >= 0 and m >= 0, f"l, m must be non-negative, got ({l}, {m})")
    if forbid_origin:
        _require((l, m) != (0, 0), "(l, m) = (0, 0) is excluded")


def _mt_coefficient(l: int, m: int, star: bool) -> Fraction:
    """The rational multiplier of beta_{4l+2m+1} * p on the closed-form side."""
    base = Fraction((-1) ** l * 2, 4**l) * comb(l + m, l)
    if star:
        return base
    return Fraction((-1) ** m) * (base - 4 * comb(2 * l + m, 2 * l))


def _build_mt(params: dict, prange: PrimeRange, star: bool):
    l, m = params["l"], params["m"]
    k = 4 * l + 2 * m + 1
    lhs = eval_combination(bb_shuffle(l, m), prange, power=2, star=star)
    rhs = (beta(k, prange) * p_element(prange)).scale(_mt_coefficient(l, m, star))
    return lhs, rhs


def _build_zc(params: dict, prange: PrimeRange, star: bool):
    r = params["r"]
    lhs = eval_combination(repeat((2,), r), prange, power=2, star=star)
    coeff = Fraction(2) if star else Fraction((-1) ** (r - 1) * 2)
    rhs = (beta(2 * r + 1, prange) * p_element(prange)).scale(coeff)
    return lhs, rhs


def _build_two_three(params: dict, prange: PrimeRange):
    a, b = params["a"], params["b"]
    idx = Index((2,) * a + (3,) + (2,) * b)
    lhs = eval_combination(idx, prange, power=1)
    coeff = Fraction((-1) ** (a + b) * 2 * (a - b), a + 1) * binomial(
        2 * a + 2 * b + 3, 2 * b + 2
    )
    rhs = beta(2 * a + 2 * b + 3, prange).project().scale(coeff)
    return lhs, rhs


def _build_sw(params: dict, prange: PrimeRange, star: bool):
    a, b, c, l, m = (params[k] for k in ("a", "b", "c", "l", "m"))
    combo = shuffle_tilde(repeat((a, b), l), repeat((c,), m))
    lhs = eval_combination(combo, prange, power=1, star=star)
    rhs = AdelicElement.zeros(prange, 1)
    return lhs, rhs


def _build_aaa(params: dict, prange: PrimeRange):
    l, m = params["l"], params["m"]
    w = 4 * l + 2 * m
    lhs = eval_combination(
        shuffle_sh(repeat((2,), l + m), repeat((2,), l)), prange, power=2
    )
    coeff = Fraction((-1) ** m * 2) * (1 - 2 * comb(w, 2 * l))
    rhs = (beta(w + 1, prange) * p_element(prange)).scale(coeff)
    return lhs, rhs


def _build_shuffle_a2(params: dict, prange: PrimeRange):
    left, right = params["left"], params["right"]
    lhs = eval_combination(shuffle_sh(left, right), prange, power=2)
    pe = p_element(prange)
    # expansion terms: all raise-one-entry vectors with total raise 0 or 1
    rhs = eval_combination(Index(tuple(left) + tuple(reversed(right))), prange, power=2)
    for i, entry in enumerate(right):
        raised = list(right)
        raised[i] += 1
        idx = Index(tuple(left) + tuple(reversed(raised)))
        rhs = rhs + (eval_combination(idx, prange, power=2) * pe).scale(entry)
    return lhs, rhs.scale(Fraction((-1) ** right.weight))


def _build_yam(params: dict, prange: PrimeRange):
    l, m = params["l"], params["m"]
    lhs = eval_combination(bb_shuffle(l, m), prange, power=2, star=True)
    rhs = AdelicElement.zeros(prange, 2)
    uniform_star = lambda t: eval_combination(repeat((2,), t), prange, power=2, star=True)
    for i in range(l + 1):
        for k in range(2 * l - 2 * i + 1):
            u = 2 * l - 2 * i - k
            for j in range(m + 1):
                for n in range(m - j + 1):
                    v = m - j - n
                    coeff = Fraction((-1) ** (j + k) * comb(k + n, k) * comb(u + v, u))
                    term = (
                        eval_combination(bb_shuffle(i, j), prange, power=2)
                        * uniform_star(k + n)
                        * uniform_star(u + v)
                    ).scale(coeff)
                    rhs = rhs + term
    return lhs, rhs


def _build_wolstenholme(params: dict, prange: PrimeRange):
    lhs = eval_combination((1,), prange, power=2)
    return lhs, AdelicElement.zeros(prange, 2)


def _check_muneta(params: dict):
    lhs, rhs = muneta_sides(params["l"], params["m"])
    if lhs == rhs:
        return True, ""
    return False, f"difference: {(lhs - rhs).text()}"


def _check_vdm1(params: dict):
    l, m = params["l"], params["m"]
    total = sum(
        (-1) ** k * binomial(2 * l + m - 2 * k, l - k) * binomial(2 * l + m - k, k)
        for k in range(l + 1)
    )
    return total == 1, f"alternating sum = {total}, expected 1"


def _check_vdm2(params: dict):
    l, m = params["l"], params["m"]
    total = sum(
        4**k * binomial(2 * l + m - 2 * k, l - k) * binomial(2 * l + m, 2 * k)
        for k in range(l + 1)
    )
    expected = binomial(4 * l + 2 * m, 2 * l)
    return total == expected, f"weighted sum = {total}, expected C(4l+2m, 2l) = {expected}"


def _build_registry() -> None:
    register_identity(IdentityDescriptor(
        id="mt1",
        kind="adelic-A2",
        description="interleaving sum of (1,3)-blocks with 2s equals a rational "
        "multiple of beta_{4l+2m+1} * p (strict sums)",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=True),
        build=lambda ps, pr: _build_mt(ps, pr, star=False),
        threshold=lambda ps: 4 * ps["l"] + 2 * ps["m"] + 3,
        weight=lambda ps: 4 * ps["l"] + 2 * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="mt2",
        kind="adelic-A2",
        description="same interleaving sum with star sums",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=True),
        build=lambda ps, pr: _build_mt(ps, pr, star=True),
        threshold=lambda ps: 4 * ps["l"] + 2 * ps["m"] + 3,
        weight=lambda ps: 4 * ps["l"] + 2 * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="zc",
        kind="adelic-A2",
        description="uniform-2s value: zeta({2}^r) = (-1)^{r-1} 2 beta_{2r+1} p",
        param_names=("r",),
        validate=lambda ps: _require(ps["r"] >= 1, "r must be >= 1"),
        build=lambda ps, pr: _build_zc(ps, pr, star=False),
        threshold=lambda ps: 2 * ps["r"] + 3,
        weight=lambda ps: 2 * ps["r"],
    ))
    register_identity(IdentityDescriptor(
        id="zc_star",
        kind="adelic-A2",
        description="uniform-2s star value: zeta*({2}^r) = 2 beta_{2r+1} p",
        param_names=("r",),
        validate=lambda ps: _require(ps["r"] >= 1, "r must be >= 1"),
        build=lambda ps, pr: _build_zc(ps, pr, star=True),
        threshold=lambda ps: 2 * ps["r"] + 3,
        weight=lambda ps: 2 * ps["r"],
    ))
    register_identity(IdentityDescriptor(
        id="two_three",
        kind="adelic-A1",
        description="mod-p closed form for ({2}^a, 3, {2}^b)",
        param_names=("a", "b"),
        validate=lambda ps: _require(
            ps["a"] >= 0 and ps["b"] >= 0, "a, b must be non-negative"
        ),
        build=_build_two_three,
        threshold=lambda ps: 2 * ps["a"] + 2 * ps["b"] + 5,
        weight=lambda ps: 2 * ps["a"] + 2 * ps["b"] + 3,
    ))
    register_identity(IdentityDescriptor(
        id="sw",
        kind="adelic-A1",
        description="interleaving sums of odd pairs (a,b) with even c vanish mod p",
        param_names=("a", "b", "c", "l", "m"),
        validate=lambda ps: (
            _require(ps["a"] >= 1 and ps["a"] % 2 == 1, "a must be odd positive"),
            _require(ps["b"] >= 1 and ps["b"] % 2 == 1, "b must be odd positive"),
            _require(ps["c"] >= 2 and ps["c"] % 2 == 0, "c must be even positive"),
            _validate_lm(ps, forbid_origin=True),
        ),
        build=lambda ps, pr: _build_sw(ps, pr, star=False),
        threshold=lambda ps: (ps["a"] + ps["b"]) * ps["l"] + ps["c"] * ps["m"] + 2,
        weight=lambda ps: (ps["a"] + ps["b"]) * ps["l"] + ps["c"] * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="sw_star",
        kind="adelic-A1",
        description="star variant of the vanishing interleaving sums",
        param_names=("a", "b", "c", "l", "m"),
        validate=REGISTRY["sw"].validate if "sw" in REGISTRY else None,
        build=lambda ps, pr: _build_sw(ps, pr, star=True),
        threshold=lambda ps: (ps["a"] + ps["b"]) * ps["l"] + ps["c"] * ps["m"] + 2,
        weight=lambda ps: (ps["a"] + ps["b"]) * ps["l"] + ps["c"] * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="muneta",
        kind="symbolic-exact",
        description="rescaling identity linking the two shuffle products on "
        "uniform-2 blocks (exact equality of index combinations)",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=False),
        check=_check_muneta,
        weight=lambda ps: 4 * ps["l"] + 2 * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="shuffle_a2",
        kind="adelic-A2",
        description="mod-p^2 expansion of a letter-shuffle value into reversed "
        "concatenations with at most one entry raised",
        param_names=("left", "right"),
        validate=lambda ps: None,
        build=_build_shuffle_a2,
        threshold=lambda ps: ps["left"].weight + ps["right"].weight + 2,
        weight=lambda ps: ps["left"].weight + ps["right"].weight,
    ))
    register_identity(IdentityDescriptor(
        id="aaa",
        kind="adelic-A2",
        description="letter shuffle of {2}^{l+m} with {2}^l equals "
        "(-1)^m 2 (1 - 2 C(4l+2m, 2l)) beta_{4l+2m+1} p",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=True),
        build=_build_aaa,
        threshold=lambda ps: 4 * ps["l"] + 2 * ps["m"] + 3,
        weight=lambda ps: 4 * ps["l"] + 2 * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="vdm1",
        kind="symbolic-exact",
        description="alternating double-binomial sum collapses to 1",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=False),
        check=_check_vdm1,
    ))
    register_identity(IdentityDescriptor(
        id="vdm2",
        kind="symbolic-exact",
        description="4^k-weighted double-binomial sum equals C(4l+2m, 2l)",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=False),
        check=_check_vdm2,
    ))
    register_identity(IdentityDescriptor(
        id="yam",
        kind="adelic-A2",
        description="star interleaving sum expanded into strict interleaving "
        "sums times two uniform-2s star values",
        param_names=("l", "m"),
        validate=lambda ps: _validate_lm(ps, forbid_origin=False),
        build=_build_yam,
        threshold=lambda ps: 4 * ps["l"] + 2 * ps["m"] + 2,
        weight=lambda ps: 4 * ps["l"] + 2 * ps["m"],
    ))
    register_identity(IdentityDescriptor(
        id="wolstenholme",
        kind="adelic-A2",
        description="sanity congruence: the depth-1 harmonic sum vanishes mod p^2",
        param_names=(),
        validate=lambda ps: None,
        build=_build_wolstenholme,
        threshold=lambda ps: 3,
        weight=lambda ps: 1,
    ))


_build_registry()


# ---------------------------------------------------------------------------
# Rationality probe


def _icbrt(x: int) -> int:
    b = int(round(x ** (1 / 3)))
    while b**3 > x:
        b -= 1
    while (b + 1) ** 3 <= x:
        b += 1
    return b


def rational_reconstruct(t: int, p: int, bound: int) -> Fraction | None:
    """The rational num/den with |num|, den <= bound and num = t * den mod p.

    Half-extended Euclid; returns None when no within-bound representative
    exists.  Unique whenever 2 * bound^2 < p.
    """
    t %= p
    if t == 0:
        return Fraction(0)
    r0, r1 = p, t
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    den = abs(s1)
    num = r1 if s1 > 0 else -r1
    if den == 0 or den > bound or gcd(r1, den) != 1:
        return None
    return Fraction(num, den)


@dataclass(frozen=True)
class ProbeEntry:
    """Per-prime probe data: value = p * scaled, ratio residue, reconstruction."""

    p: int
    scaled: int
    beta_mod_p: int
    ratio_residue: int
    ratio: Fraction | None


@dataclass
class ProbeReport:
    """Evidence on whether an evaluation is a fixed rational multiple of beta_k * p.

    ``consistent`` requires a single rational reconstructed from at least
    ``MIN_AGREEING_PRIMES`` primes independently that then matches the ratio
    residue at every usable prime.  Diagnostic: a negative outcome is
    evidence, not proof.
    """

    combination: IndexCombination
    k: int
    star: bool
    prange: PrimeRange
    threshold: int
    entries: list[ProbeEntry]
    skipped: dict[int, str]
    candidate: Fraction | None
    support: int
    consistent: bool

    def to_jsonable(self) -> dict:
        return {
            "combination": self.combination.text(),
            "k": self.k,
            "star": self.star,
            "range": _range_jsonable(self.prange),
            "threshold": self.threshold,
            "entries": [
                {
                    "p": e.p,
                    "scaled": e.scaled,
                    "beta_mod_p": e.beta_mod_p,
                    "ratio_residue": e.ratio_residue,
                    "ratio": None if e.ratio is None else str(e.ratio),
                }
                for e in self.entries
            ],
            "skipped": {str(p): reason for p, reason in sorted(self.skipped.items())},
            "candidate": None if self.candidate is None else str(self.candidate),
            "support": self.support,
            "consistent": self.consistent,
        }


MIN_AGREEING_PRIMES = 3


def ratio_probe(
    v, k: int, prange: PrimeRange, star: bool = False
) -> ProbeReport:
    """Probe whether eval(v) equals q * beta_k * p for one rational q.

    Requires the evaluation to vanish mod p at every prime above the
    weight+2 threshold (raises otherwise); below-threshold primes are
    skipped.  At each usable prime the cofactor w (value = p * w) is divided
    by beta_k mod p and rationally reconstructed with height bound p^(1/3);
    a candidate needs at least three independently agreeing primes and must
    then match every usable prime's ratio residue.
    """
    if k < 2:
        raise ValueError(f"probe requires k >= 2, got {k}")
    vcomb = as_combination(v)
    threshold = max((Index(i).weight for i, _ in vcomb.items()), default=0) + 2
    el = eval_combination(vcomb, prange, power=2, star=star)
    beta_el = beta(k, prange)
    entries: list[ProbeEntry] = []
    skipped = dict(el.skipped)
    skipped.update(beta_el.skipped)
    for p in sorted(el.values):
        x = el.values[p].value
        if p <= threshold:
            skipped[p] = f"p <= probe threshold {threshold}"
            continue
        if x % p != 0:
            raise ValueError(
                f"probe precondition failed: evaluation has nonzero mod-p image "
                f"{x % p} at p = {p}"
            )
        if p not in beta_el.values:
            continue  # reason already recorded by the beta builder
        w = x // p
        b = beta_el.values[p].value % p
        if b == 0:
            skipped[p] = f"beta_{k} vanishes mod {p}"
            continue
        t = w * pow(b, -1, p) % p
        entries.append(ProbeEntry(p, w, b, t, rational_reconstruct(t, p, _icbrt(p))))

    counts = Counter(e.ratio for e in entries if e.ratio is not None)
    candidate, support = None, 0
    if counts:
        best, best_count = counts.most_common(1)[0]
        if best_count >= MIN_AGREEING_PRIMES:
            candidate, support = best, best_count
    consistent = candidate is not None and all(
        (candidate.numerator * pow(candidate.denominator, -1, e.p)) % e.p
        == e.ratio_residue
        for e in entries
    )
    return ProbeReport(
        combination=vcomb,
        k=k,
        star=star,
        prange=prange,
        threshold=threshold,
        entries=entries,
        skipped=skipped,
        candidate=candidate,
        support=support,
        consistent=consistent,
    )


# ---------------------------------------------------------------------------
# Suite runner


@dataclass(frozen=True)
class SuiteInstance:
    id: str
    params: tuple  # sorted (name, value) pairs; values int or Index
    prange: PrimeRange | None

    @classmethod
    def of(cls, identity_id: str, params: dict, prange: PrimeRange | None = None):
        return cls(identity_id, tuple(sorted(params.items())), prange)

    def params_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class ProbeInstance:
    index: Index
    k: int
    prange: PrimeRange
    star: bool = False


@dataclass
class SuiteConfig:
    instances: list[SuiteInstance] = field(default_factory=list)
    probes: list[ProbeInstance] = field(default_factory=list)


@dataclass
class SuiteReport:
    """All reports of a suite run; probes are diagnostic and never gate."""

    reports: list[VerificationReport]
    probes: list[ProbeReport]
    verdict: bool

    def to_jsonable(self) -> dict:
        return {
            "identities": [r.to_jsonable() for r in self.reports],
            "probes": [p.to_jsonable() for p in self.probes],
            "verdict": self.verdict,
        }


def run_identity(instance: SuiteInstance) -> VerificationReport:
    desc = _descriptor(instance.id)
    if desc.kind == "symbolic-exact":
        return verify_symbolic(instance.id, instance.params_dict())
    return verify_adelic(instance.id, instance.params_dict(), instance.prange)


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Run every configured instance in order; verdict = all identities pass."""
    reports = [run_identity(inst) for inst in config.instances]
    probes = [
        ratio_probe(pi.index, pi.k, pi.prange, pi.star) for pi in config.probes
    ]
    verdict = all(r.verdict for r in reports)
    return SuiteReport(reports, probes, verdict)


def default_config(
    max_weight: int | None = None, prange: PrimeRange | None = None
) -> SuiteConfig:
    """The stock verification grids, one per registered identity family.

    ``max_weight`` drops instances above that weight; ``prange`` overrides
    every instance's prime range.
    """
    r400 = prange or PrimeRange(5, 400)
    r300 = prange or PrimeRange(5, 300)
    r200 = prange or PrimeRange(5, 200)
    r1000 = prange or PrimeRange(5, 1000)
    rprobe = prange or PrimeRange(5, 760)

    instances: list[SuiteInstance] = []
    for l in range(5):
        for m in range(6):
            instances.append(SuiteInstance.of("muneta", {"l": l, "m": m}))
    for l in range(41):
        for m in range(41):
            instances.append(SuiteInstance.of("vdm1", {"l": l, "m": m}))
            instances.append(SuiteInstance.of("vdm2", {"l": l, "m": m}))
    for l in range(3):
        for m in range(6):
            if 1 <= 2 * l + m <= 5:
                instances.append(SuiteInstance.of("mt1", {"l": l, "m": m}, r400))
                instances.append(SuiteInstance.of("mt2", {"l": l, "m": m}, r400))
    for r in range(1, 7):
        instances.append(SuiteInstance.of("zc", {"r": r}, r400))
        instances.append(SuiteInstance.of("zc_star", {"r": r}, r400))
    for a in range(5):
        for b in range(5 - a):
            instances.append(SuiteInstance.of("two_three", {"a": a, "b": b}, r400))
    for left in _indices_up_to(weight=5, depth=2):
        for right in _indices_up_to(weight=6 - left.weight, depth=2):
            instances.append(
                SuiteInstance.of("shuffle_a2", {"left": left, "right": right}, r200)
            )
    for l in range(3):
        for m in range(5):
            if 1 <= 2 * l + m <= 4:
                instances.append(SuiteInstance.of("aaa", {"l": l, "m": m}, r300))
                instances.append(SuiteInstance.of("yam", {"l": l, "m": m}, r300))
    for a, b, c in ((1, 3, 2), (1, 5, 2), (3, 3, 4)):
        for l in range(4):
            for m in range(4 - l):
                if (l, m) == (0, 0):
                    continue
                params = {"a": a, "b": b, "c": c, "l": l, "m": m}
                instances.append(SuiteInstance.of("sw", params, r300))
                instances.append(SuiteInstance.of("sw_star", params, r300))
    instances.append(SuiteInstance.of("wolstenholme", {}, r1000))

    probes = [
        ProbeInstance(Index((1, 3)), 5, rprobe),
        ProbeInstance(repeat((2,), 3), 7, rprobe),
        ProbeInstance(Index((1, 5, 1, 5)), 13, rprobe),
    ]

    if max_weight is not None:
        kept = []
        for inst in instances:
            desc = _descriptor(inst.id)
            params = _normalize_params(desc, inst.params_dict())
            if desc.weight(params) <= max_weight:
                kept.append(inst)
        instances = kept
        probes = [pi for pi in probes if pi.index.weight <= max_weight]
    return SuiteConfig(instances, probes)


def _indices_up_to(weight: int, depth: int) -> list[Index]:
    """All indices (including the empty one) of bounded weight and depth."""
    out = [Index()]
    frontier = [Index()]
    for _ in range(depth):
        new = []
        for idx in frontier:
            for k in range(1, weight - idx.weight + 1):
                new.append(Index(tuple(idx) + (k,)))
        out.extend(new)
        frontier = new
    return sorted(out, key=lambda i: (len(i), tuple(i)))
