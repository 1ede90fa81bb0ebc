"""Local rings (k[x]/I) localized at the origin, and their lengths.

Lengths are computed with the truncation ladder: for N = N0, N0+1, ...
take L_N = dim_k k[x]/(I + J + m^N) and stop at the first N with
L_N == L_{N+1}.  Equality means m^N lies in I + J + m^(N+1), so by
Nakayama m^N lies in (I + J) after localizing; the quotient by
I + J + m^N is then supported at the origin and its dimension is exactly
the local length of R/JR.  No local (Mora) orderings are needed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import (
    DEGREVLEX,
    FieldSpec,
    MonomialOrder,
    Polynomial,
    PolyRing,
    power_of_maximal_ideal,
)
from .errors import InvariantViolation, StructuralError
from .groebner import (
    INFINITE,
    GroebnerBasis,
    Ideal,
    buchberger,
    count_standard_monomials,
    extend_basis_leading_monomials,
    normal_form,
)

DEFAULT_N_CAP = 512


class LengthStatus(enum.Enum):
    INFINITE_OR_UNKNOWN = "INFINITE_OR_UNKNOWN"

    def __repr__(self):
        return self.value

    __str__ = __repr__


INFINITE_OR_UNKNOWN = LengthStatus.INFINITE_OR_UNKNOWN


class LocalRingPresentation:
    """R = k[x1..xn]/I localized at m = (x1..xn)."""

    def __init__(self, field: FieldSpec, variables: Sequence[str],
                 relations: Sequence[Polynomial] = (), order: MonomialOrder = DEGREVLEX):
        self.field = field
        self.variables = tuple(variables)
        self.poly_ring = PolyRing(field, self.variables, order)
        rels = []
        for g in relations:
            if not isinstance(g, Polynomial):
                raise StructuralError(f"relation {g!r} is not a Polynomial")
            if (g.ring.field, g.ring.names) != (field, self.variables):
                raise StructuralError(f"relation {g} is not in {self.poly_ring}")
            if g.ring != self.poly_ring:
                g = self.poly_ring.from_dict(g.as_dict)
            if g.constant_coeff():
                raise StructuralError(
                    f"relation {g} has a nonzero constant term; I must lie in m"
                )
            rels.append(g)
        self.relations = Ideal(rels, self.poly_ring)

    @classmethod
    def polynomial_ring(cls, characteristic: int, variables: Sequence[str], **kw):
        return cls(FieldSpec(characteristic), variables, (), **kw)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def gens(self) -> tuple:
        return self.poly_ring.gens

    def basis(self) -> GroebnerBasis:
        return self.relations.basis()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.basis())

    def __repr__(self):
        rels = ", ".join(map(str, self.relations.generators))
        return f"({self.poly_ring}/({rels}))_m" if rels else f"({self.poly_ring})_m"


@dataclass(frozen=True)
class LocalLengthResult:
    length: object  # int or INFINITE_OR_UNKNOWN
    stabilized_at: int | None
    ladder: tuple

    @property
    def finite(self) -> bool:
        return self.length is not INFINITE_OR_UNKNOWN


def _truncated_colength(R: LocalRingPresentation, B: GroebnerBasis, N: int) -> int:
    lms = extend_basis_leading_monomials(B, power_of_maximal_ideal(R.poly_ring, N))
    count = count_standard_monomials(lms, R.nvars)
    if count is INFINITE:
        raise InvariantViolation("m^N was added, the quotient must be finite")
    return count


def _check_gens(R: LocalRingPresentation, J: Sequence[Polynomial]) -> list:
    out = []
    for g in J:
        if not isinstance(g, Polynomial) or (g.ring.field, g.ring.names) != (R.field, R.variables):
            raise StructuralError(f"{g!r} is not an element of {R.poly_ring}")
        if g.ring != R.poly_ring:
            g = R.poly_ring.from_dict(g.as_dict)
        out.append(g)
    return out


def local_length(R: LocalRingPresentation, J: Sequence[Polynomial],
                 n_cap: int = DEFAULT_N_CAP, verify_extra: bool = False) -> LocalLengthResult:
    """Length of R/JR via the truncation ladder.

    The ladder starts at N = max(2, max degree of J) and stops at the first N
    with L_N == L_(N+1).  If that never happens up to ``n_cap`` the result is
    ``INFINITE_OR_UNKNOWN`` with the ladder attached.  ``verify_extra``
    computes one more rung and checks it agrees.
    """
    J = _check_gens(R, J)
    G0 = buchberger(list(R.relations.generators) + J, ring=R.poly_ring)
    N = max([2] + [g.total_degree() for g in J])
    ladder = []
    prev = None
    while N <= n_cap:
        L = _truncated_colength(R, G0, N)
        ladder.append((N, L))
        if prev is not None and L < prev:
            raise InvariantViolation(f"truncation ladder decreased: {ladder}")
        if prev == L:
            stable = N - 1
            if verify_extra:
                extra = _truncated_colength(R, G0, N + 1)
                if extra != L:
                    raise InvariantViolation(f"ladder moved after stabilizing: {ladder} then {extra}")
            return LocalLengthResult(L, stable, tuple(ladder))
        prev = L
        N += 1
    return LocalLengthResult(INFINITE_OR_UNKNOWN, None, tuple(ladder))


def truncation_ladder(R: LocalRingPresentation, J: Sequence[Polynomial], start: int, stop: int) -> list:
    """Raw ladder values L_N for N in [start, stop], no stopping rule."""
    J = _check_gens(R, J)
    G0 = buchberger(list(R.relations.generators) + J, ring=R.poly_ring)
    return [(N, _truncated_colength(R, G0, N)) for N in range(start, stop + 1)]


def hilbert_samuel(R: LocalRingPresentation, N: int) -> int:
    """Length of R/m^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _truncated_colength(R, R.basis(), N)


def embedding_dim(R: LocalRingPresentation) -> int:
    """dim_k m/(m^2 + I)."""
    return hilbert_samuel(R, 2) - 1


@dataclass(frozen=True)
class RegularityVerdict:
    """Finite comparison of the Hilbert-Samuel function with a polynomial ring's.

    ``NOT_REGULAR`` is a certificate; ``REGULAR_UP_TO_N`` is evidence only.
    """

    status: str
    witness: int | None
    embedding_dim: int
    n_max: int
    values: tuple  # (N, length of R/m^N, binomial(N-1+e, e))

    @property
    def regular(self) -> bool:
        return self.status == "REGULAR_UP_TO_N"

    @property
    def certificate(self) -> str:
        return "certified" if self.status == "NOT_REGULAR" else "evidence (semi-decision)"


def regularity_check(R: LocalRingPresentation, N_max: int = 6) -> RegularityVerdict:
    if N_max < 2:
        raise ValueError("N_max must be >= 2")
    e = embedding_dim(R)
    values = []
    for N in range(2, N_max + 1):
        got = hilbert_samuel(R, N)
        want = comb(N - 1 + e, e)
        values.append((N, got, want))
        if got != want:
            return RegularityVerdict("NOT_REGULAR", N, e, N_max, tuple(values))
    return RegularityVerdict("REGULAR_UP_TO_N", None, e, N_max, tuple(values))
