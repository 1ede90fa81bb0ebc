"""Local self-maps of a presented local ring."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Polynomial, power_of_maximal_ideal, substitute
from .errors import NotLocal, StructuralError, WellDefinednessFailure
from .groebner import buchberger, normal_form
from .local_ring import LocalRingPresentation, embedding_dim


class Endomorphism:
    """phi: R -> R given by the images of the variables.

    Construct through :func:`validate`.  Iterates are cached; the cache only
    ever gains entries and every entry is a canonical normal form, so
    concurrent fills of the same n are harmless.
    """

    def __init__(self, ring: LocalRingPresentation, images: Sequence[Polynomial]):
        self.ring = ring
        self.images = tuple(images)
        self._iterates = {1: tuple(ring.reduce(g) for g in self.images)}
        self._lambda: dict = {}

    def iterate(self, n: int, reduce: bool = True) -> tuple:
        return iterate(self, n, reduce=reduce)

    def __call__(self, f: Polynomial) -> Polynomial:
        return self.ring.reduce(substitute(f, self.images))

    def __repr__(self):
        pairs = ", ".join(f"{v} -> {g}" for v, g in zip(self.ring.variables, self.images))
        return f"Endomorphism({pairs} on {self.ring})"


def validate(ring: LocalRingPresentation, images: Sequence[Polynomial]) -> Endomorphism:
    """Check locality and that phi(I) lies in I, then build the map.

    Raises :class:`NotLocal` for an image with a constant term and
    :class:`WellDefinednessFailure` naming the first relation whose image is
    not in I.  The membership test is global; maps that preserve I only after
    localizing are rejected.
    """
    images = list(images)
    if len(images) != ring.nvars:
        raise StructuralError(f"expected {ring.nvars} images, got {len(images)}")
    conv = []
    for g in images:
        if not isinstance(g, Polynomial) or (g.ring.field, g.ring.names) != (ring.field, ring.variables):
            raise StructuralError(f"image {g!r} is not an element of {ring.poly_ring}")
        conv.append(ring.poly_ring.from_dict(g.as_dict) if g.ring != ring.poly_ring else g)
    for v, g in zip(ring.variables, conv):
        if g.constant_coeff():
            raise NotLocal(v, g)
    B = ring.basis()
    for rel in ring.relations.generators:
        nf = normal_form(substitute(rel, conv), B)
        if not nf.is_zero():
            raise WellDefinednessFailure(rel, nf)
    return Endomorphism(ring, conv)


def iterate(phi: Endomorphism, n: int, reduce: bool = True) -> tuple:
    """Images of the variables under phi^n, reduced modulo I.

    ``iterate(phi, 0)`` is the identity.  With ``reduce=False`` the raw
    composite (no normal forms anywhere) is returned and not cached.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return phi.ring.gens
    if not reduce:
        imgs = phi.images
        for _ in range(n - 1):
            imgs = tuple(substitute(g, imgs) for g in phi.images)
        return imgs
    cache = phi._iterates
    if n in cache:
        return cache[n]
    top = max(k for k in cache if k <= n)
    prev = cache[top]
    first = cache[1]
    for k in range(top + 1, n + 1):
        # phi^k(x_i) = phi^(k-1)(phi(x_i))
        prev = tuple(phi.ring.reduce(substitute(g, prev)) for g in first)
        cache[k] = prev
    return prev


def compose(first: Sequence[Polynomial], then: Sequence[Polynomial]) -> tuple:
    """Images of (then o first): substitute ``then`` into ``first``."""
    return tuple(substitute(g, then) for g in first)


@dataclass(frozen=True)
class ContractingVerdict:
    contracting: bool
    embedding_dim: int
    witness: str | None = None  # variable whose image escapes m^2

    @property
    def label(self) -> str:
        return "CONTRACTING" if self.contracting else "NOT_CONTRACTING"


def contracting_check(phi: Endomorphism) -> ContractingVerdict:
    """phi is contracting iff phi^e(m)R lies in m^2, e = edim R."""
    R = phi.ring
    e = embedding_dim(R)
    B = buchberger(list(R.relations.generators) + power_of_maximal_ideal(R.poly_ring, 2),
                   ring=R.poly_ring)
    for v, g in zip(R.variables, iterate(phi, e)):
        if not normal_form(g, B).is_zero():
            return ContractingVerdict(False, e, v)
    return ContractingVerdict(True, e)
