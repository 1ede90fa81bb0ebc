"""Length sequences of iterated self-maps and the verdicts built on them.

Every comparison here is an exact integer comparison.  Logarithms are only
rendered for display; a growth rate log(v)/n is carried as the pair (v, n).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from .algebra import Polynomial, monomials_of_degree, substitute
from .endomorphism import ContractingVerdict, Endomorphism, contracting_check, iterate
from .errors import InvariantViolation, NotFiniteLength, QUnavailable
from .local_ring import (
    DEFAULT_N_CAP,
    LocalRingPresentation,
    RegularityVerdict,
    local_length,
    regularity_check,
)


def _iroot(v: int, k: int) -> int:
    lo, hi = 1, 1 << (v.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= v:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _canonical_rate(v: int, n: int):
    """(r, k/n) with v = r^k and r not a perfect power."""
    if v == 1:
        return (1, Fraction(0))
    for e in range(v.bit_length(), 1, -1):
        r = _iroot(v, e)
        if r > 1 and r ** e == v:
            return (r, Fraction(e, n))
    return (v, Fraction(1, n))


@total_ordering
@dataclass(frozen=True)
class LogRate:
    """The real number log(value) / n, compared exactly."""

    value: int
    n: int = 1

    def __post_init__(self):
        if self.value < 1 or self.n < 1:
            raise ValueError("LogRate needs value >= 1 and n >= 1")

    def __eq__(self, other):
        if not isinstance(other, LogRate):
            return NotImplemented
        return self.value ** other.n == other.value ** self.n

    def __lt__(self, other):
        if not isinstance(other, LogRate):
            return NotImplemented
        return self.value ** other.n < other.value ** self.n

    def __hash__(self):
        return hash(_canonical_rate(self.value, self.n))

    def __float__(self):
        return math.log(self.value) / self.n

    def decimal(self) -> str:
        return f"{float(self):.12g}"

    def __str__(self):
        return f"log({self.value})/{self.n}" if self.n != 1 else f"log({self.value})"


def lambda_n(phi: Endomorphism, n: int, n_cap: int = DEFAULT_N_CAP) -> int:
    """Length of R/phi^n(m)R."""
    if n < 1:
        raise ValueError("n must be >= 1")
    hit = phi._lambda.get((n, n_cap))
    if hit is not None:
        return hit
    res = local_length(phi.ring, iterate(phi, n), n_cap)
    if not res.finite:
        raise NotFiniteLength(
            f"phi^{n}(m)R is not m-primary (no stabilization up to N = {n_cap})",
            n=n, ladder=res.ladder,
        )
    phi._lambda[(n, n_cap)] = res.length
    return res.length


@dataclass(frozen=True)
class LambdaSequence:
    values: tuple  # ((n, lambda(phi^n)), ...)
    rates: tuple  # LogRate per n
    entropy_upper_bound: LogRate
    exact_if_multiplicative: bool

    @property
    def lambdas(self) -> list:
        return [v for _, v in self.values]

    def rate_decimals(self) -> list:
        return [r.decimal() for r in self.rates]


def _sequence(phi: Endomorphism, n_max: int, n_cap: int) -> LambdaSequence:
    values = tuple((n, lambda_n(phi, n, n_cap)) for n in range(1, n_max + 1))
    rates = tuple(LogRate(v, n) for n, v in values)
    first = values[0][1]
    mult = all(v == first ** n for n, v in values)
    return LambdaSequence(values, rates, min(rates), mult)


def entropy_report(phi: Endomorphism, n_max: int, n_cap: int = DEFAULT_N_CAP) -> LambdaSequence:
    """lambda(phi^n) for n <= n_max and the certified entropy upper bound.

    The bound is min_n log(lambda(phi^n))/n; the sequence converges to its
    infimum, so every term bounds the entropy from above.  No lower bound is
    claimed.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return _sequence(phi, n_max, n_cap)


@dataclass(frozen=True)
class KunzReport:
    lambda_seq: LambdaSequence
    contracting: ContractingVerdict
    verdict: str
    witness: int | None
    n_max: int
    cross_check: RegularityVerdict

    @property
    def certificate(self) -> str:
        return {
            "CERTIFIED_NOT_REGULAR": "certified",
            "CONSISTENT_WITH_REGULAR": "evidence",
            "INCONCLUSIVE_NOT_CONTRACTING": "none",
        }[self.verdict]


def kunz_test(phi: Endomorphism, n_max: int = 3, N_max: int = 6,
              n_cap: int = DEFAULT_N_CAP) -> KunzReport:
    """Finite-n version of the Kunz criterion for a finite-length self-map.

    A strict drop lambda(phi^n) < lambda(phi)^n rules out flatness and hence
    regularity (certificate).  Without a drop, a contracting map gives only
    evidence of regularity; a non-contracting one gives nothing.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    seq = _sequence(phi, n_max, n_cap)
    cverdict = contracting_check(phi)
    cross = regularity_check(phi.ring, N_max)
    first = seq.values[0][1]
    witness = next((n for n, v in seq.values if v < first ** n), None)
    if witness is not None:
        verdict = "CERTIFIED_NOT_REGULAR"
    elif cverdict.contracting:
        verdict = "CONSISTENT_WITH_REGULAR"
    else:
        verdict = "INCONCLUSIVE_NOT_CONTRACTING"
    return KunzReport(seq, cverdict, verdict, witness, n_max, cross)


@dataclass(frozen=True)
class HKEstimate:
    q_used: Fraction
    provenance: str  # "user-supplied" or "inferred-from-multiplicativity"
    ratios: tuple  # ((n, lambda(phi^n) / q^n), ...)
    lambda_seq: LambdaSequence


def hk_estimate(phi: Endomorphism, n_max: int = 3, q=None,
                n_cap: int = DEFAULT_N_CAP) -> HKEstimate:
    """Ratios lambda(phi^n)/q^n.  Convergence is not asserted.

    Without ``q`` the sequence must be multiplicative, in which case
    q = lambda(phi); otherwise :class:`QUnavailable` is raised rather than
    guessing the limit.
    """
    seq = _sequence(phi, n_max, n_cap)
    if q is None:
        if not seq.exact_if_multiplicative:
            raise QUnavailable(
                "q was not supplied and lambda(phi^n) is not multiplicative; "
                "refusing to infer the limit"
            )
        qf = Fraction(seq.values[0][1])
        prov = "inferred-from-multiplicativity"
    else:
        qf = Fraction(q)
        if qf <= 0:
            raise ValueError("q must be positive")
        prov = "user-supplied"
    ratios = tuple((n, Fraction(v) / qf ** n) for n, v in seq.values)
    return HKEstimate(qf, prov, ratios, seq)


# -- Nagata sampler ---------------------------------------------------------

@dataclass(frozen=True)
class NagataSample:
    ideal: tuple  # generators of q
    lhs: int  # length of R/phi^n(q)R
    rhs: int  # length of R/q times lambda(phi^n)
    length_q: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _random_coeff(rng: random.Random, R: LocalRingPresentation):
    p = R.field.characteristic
    while True:
        c = rng.randint(1, p - 1) if p else rng.randint(-10, 10)
        if c:
            return c


def random_m_primary(R: LocalRingPresentation, rng: random.Random) -> list:
    """(x1^a1, ..., xn^an) plus up to two random polys without constant term.

    Exponents a_i are uniform in [1, 4]; the extra polynomials have one to
    three terms of degree 1..3 with nonzero coefficients (height <= 10 over QQ).
    """
    ring = R.poly_ring
    n = R.nvars
    gens = [g ** rng.randint(1, 4) for g in ring.gens]
    monos = [e for d in (1, 2, 3) for e in monomials_of_degree(n, d)]
    for _ in range(rng.randint(0, 2)):
        k = rng.randint(1, 3)
        chosen = rng.sample(monos, min(k, len(monos)))
        gens.append(ring.from_dict({e: _random_coeff(rng, R) for e in chosen}))
    return [g for g in gens if not g.is_zero()]


def _length(R, gens, n_cap):
    res = local_length(R, gens, n_cap)
    if not res.finite:
        raise NotFiniteLength(f"ideal ({', '.join(map(str, gens))}) is not m-primary",
                              ladder=res.ladder)
    return res.length


def nagata_sample_test(phi: Endomorphism, n: int = 1, samples: int = 16, seed: int = 0,
                       n_cap: int = DEFAULT_N_CAP) -> list:
    """Compare length(R/phi^n(q)R) with length(R/q) * lambda(phi^n) on sampled q.

    An inequality certifies that phi^n is not flat, hence R is not regular;
    agreement on every sample is evidence only.
    """
    lam = lambda_n(phi, n, n_cap)
    imgs = iterate(phi, n)
    R = phi.ring
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        q = random_m_primary(R, rng)
        len_q = _length(R, q, n_cap)
        image = [substitute(g, imgs) for g in q]
        lhs = _length(R, image, n_cap)
        out.append(NagataSample(tuple(q), lhs, len_q * lam, len_q))
    return out


def nagata_ideal_test(phi: Endomorphism, q: Sequence[Polynomial], n: int = 1,
                      n_cap: int = DEFAULT_N_CAP) -> NagataSample:
    """Same comparison for one given m-primary ideal."""
    R = phi.ring
    lam = lambda_n(phi, n, n_cap)
    imgs = iterate(phi, n)
    len_q = _length(R, q, n_cap)
    lhs = _length(R, [substitute(g, imgs) for g in q], n_cap)
    return NagataSample(tuple(q), lhs, len_q * lam, len_q)


# -- Phi^n on cyclic modules ------------------------------------------------

@dataclass(frozen=True)
class PhiCyclicResult:
    image_gens: tuple
    len_in: int
    len_out: int
    lambda_n: int

    @property
    def bound(self) -> int:
        return self.len_in * self.lambda_n

    @property
    def strict(self) -> bool:
        return self.len_out < self.bound


def phi_cyclic(phi: Endomorphism, a_gens: Sequence[Polynomial], n: int = 1,
               n_cap: int = DEFAULT_N_CAP) -> PhiCyclicResult:
    """Phi^n(R/a) = R/phi^n(a)R, with both lengths."""
    R = phi.ring
    len_in = _length(R, a_gens, n_cap)
    imgs = iterate(phi, n)
    image = tuple(substitute(g, imgs) for g in a_gens)
    len_out = _length(R, image, n_cap)
    lam = lambda_n(phi, n, n_cap)
    if len_out > len_in * lam:
        raise InvariantViolation(
            f"length {len_out} of Phi^{n}(R/a) exceeds {len_in} * {lam}"
        )
    return PhiCyclicResult(image, len_in, len_out, lam)
