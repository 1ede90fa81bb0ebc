"""Buchberger's algorithm, normal forms and standard monomials.

The engine works on plain ``{exponent tuple: coefficient}`` dicts and wraps
results back into :class:`~entrolab.algebra.Polynomial` at the boundary.
Pair selection uses the normal strategy (smallest lcm first) with
Buchberger's product and chain criteria.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    coprime,
    divides,
    mono_lcm,
)
from .errors import CapacityError, StructuralError

DEFAULT_CAP = 2_000_000


class Unbounded(enum.Enum):
    INFINITE = "INFINITE"

    def __repr__(self):
        return self.value

    __str__ = __repr__


INFINITE = Unbounded.INFINITE


# -- low-level engine -------------------------------------------------------

class _Engine:
    """Arithmetic context for one (field, order) pair."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.p = ring.field.characteristic
        self.key = ring.order.key
        self.inv = ring.field.inv

    def lead(self, d: dict):
        key = self.key
        return max(d, key=key)

    def make_monic(self, d: dict):
        """Return (lm, tail terms, full dict) for a nonzero dict, scaled monic."""
        lm = self.lead(d)
        c = d[lm]
        if c != 1:
            inv = self.inv(c)
            p = self.p
            d = {e: (v * inv % p if p else v * inv) for e, v in d.items()}
        tail = tuple((e, v) for e, v in d.items() if e != lm)
        return lm, tail, d

    def reduce(self, d: dict, lms: Sequence, tails: Sequence, full: bool = True) -> dict:
        """Normal form of ``d`` modulo monic polys with leading monomials ``lms``."""
        if not d:
            return {}
        p = self.p
        key = self.key
        d = dict(d)
        heap = [(tuple(-k for k in key(e)), e) for e in d]
        heapq.heapify(heap)
        rem = {}
        nlm = len(lms)
        while heap:
            _, e = heapq.heappop(heap)
            c = d.pop(e, None)
            if c is None:
                continue
            j = 0
            while j < nlm:
                m = lms[j]
                for a, b in zip(m, e):
                    if a > b:
                        break
                else:
                    break
                j += 1
            if j == nlm:
                rem[e] = c
                if not full:
                    rem.update(d)
                    return rem
                continue
            q = tuple(b - a for a, b in zip(lms[j], e))
            for ge, gc in tails[j]:
                ne = tuple(x + y for x, y in zip(ge, q))
                old = d.get(ne)
                if old is None:
                    v = -c * gc
                    if p:
                        v %= p
                    d[ne] = v
                    heapq.heappush(heap, (tuple(-k for k in key(ne)), ne))
                else:
                    v = old - c * gc
                    if p:
                        v %= p
                    if v:
                        d[ne] = v
                    else:
                        del d[ne]
        return rem

    def spoly(self, lm_i, tail_i, lm_j, tail_j) -> dict:
        """S-polynomial of two monic polys; leading terms cancel by design."""
        p = self.p
        lcm = mono_lcm(lm_i, lm_j)
        ui = tuple(a - b for a, b in zip(lcm, lm_i))
        uj = tuple(a - b for a, b in zip(lcm, lm_j))
        out: dict = {}
        for e, c in tail_i:
            ne = tuple(x + y for x, y in zip(e, ui))
            out[ne] = out.get(ne, 0) + c
        for e, c in tail_j:
            ne = tuple(x + y for x, y in zip(e, uj))
            out[ne] = out.get(ne, 0) - c
        if p:
            return {e: c % p for e, c in out.items() if c % p}
        return {e: c for e, c in out.items() if c}


def _core(engine: _Engine, known: list, extra: list):
    """Buchberger completion.

    ``known`` is a list of monic ``(lm, tail)`` pairs that already form a
    Groebner basis (their mutual S-pairs are skipped); ``extra`` holds raw
    dicts to be added.  Returns the (non-reduced) list of ``(lm, tail)``.
    """
    key = engine.key
    lms = [lm for lm, _ in known]
    tails = [t for _, t in known]
    heap: list = []
    live: set = set()

    def add(d):
        d = engine.reduce(d, lms, tails)
        if not d:
            return
        lm, tail, _ = engine.make_monic(d)
        k = len(lms)
        lms.append(lm)
        tails.append(tail)
        for i in range(k):
            if not tails[i] and not tail:
                continue  # S-pair of two monomials is identically zero
            lcm = mono_lcm(lms[i], lm)
            heapq.heappush(heap, (sum(lcm), key(lcm), i, k))
            live.add((i, k))

    # smaller inputs first so later ones reduce against them
    for d in sorted((d for d in extra if d), key=lambda d: key(engine.lead(d))):
        add(d)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        live.discard((i, j))
        a, b = lms[i], lms[j]
        if coprime(a, b):
            continue
        lcm = mono_lcm(a, b)
        skip = False
        for k in range(len(lms)):
            if k == i or k == j:
                continue
            if (min(i, k), max(i, k)) in live or (min(j, k), max(j, k)) in live:
                continue
            if divides(lms[k], lcm):
                skip = True
                break
        if skip:
            continue
        s = engine.spoly(a, tails[i], b, tails[j])
        if s:
            add(s)
    return list(zip(lms, tails))


def _minimal(engine: _Engine, basis: list) -> list:
    """Drop elements whose leading monomial is divisible by another's."""
    key = engine.key
    basis = sorted(basis, key=lambda t: key(t[0]))
    keep: list = []
    for lm, tail in basis:
        if any(divides(m, lm) for m, _ in keep):
            continue
        keep.append((lm, tail))
    return keep


def _interreduce(engine: _Engine, basis: list) -> list:
    basis = _minimal(engine, basis)
    lms = [lm for lm, _ in basis]
    tails = [t for _, t in basis]
    out = []
    for i, (lm, tail) in enumerate(basis):
        others_l = lms[:i] + lms[i + 1:]
        others_t = tails[:i] + tails[i + 1:]
        red = engine.reduce(dict(tail), others_l, others_t)
        out.append((lm, tuple(sorted(red.items(), key=lambda t: engine.key(t[0]), reverse=True))))
    return out


# -- public types -----------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis, sorted ascending by leading monomial."""

    ring: PolyRing
    elements: tuple

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def leading_monomials(self) -> list:
        return [g.leading_monomial for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(g.leading_monomial == zero for g in self.elements)

    def is_zero_dimensional(self) -> bool:
        return _zero_dimensional(self.leading_monomials, self.ring.nvars)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def _engine_parts(self):
        lms = [g.leading_monomial for g in self.elements]
        tails = [g.terms[1:] for g in self.elements]
        return lms, tails


def _to_basis(engine: _Engine, pairs: list) -> GroebnerBasis:
    ring = engine.ring
    key = engine.key
    one = ring.field.convert(1)
    elems = []
    for lm, tail in sorted(pairs, key=lambda t: key(t[0])):
        elems.append(ring._wrap({lm: one, **dict(tail)}))
    return GroebnerBasis(ring, tuple(elems))


def _check_ring(gens: Sequence[Polynomial], ring: PolyRing | None) -> PolyRing:
    if ring is None:
        if not gens:
            raise StructuralError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if not isinstance(g, Polynomial):
            raise StructuralError(f"{g!r} is not a Polynomial")
        if (g.ring.field, g.ring.names) != (ring.field, ring.names):
            raise StructuralError(f"generator {g} is not in {ring}")
    return ring


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    An all-zero (or empty) generator list yields the empty basis of (0).
    """
    ring = _check_ring(gens, ring)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    engine = _Engine(ring)
    raw = [g.as_dict for g in gens if not g.is_zero()]
    if not raw:
        return GroebnerBasis(ring, ())
    basis = _core(engine, [], raw)
    return _to_basis(engine, _interreduce(engine, basis))


def normal_form(f: Polynomial, B: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``B``."""
    if (f.ring.field, f.ring.names) != (B.ring.field, B.ring.names):
        raise StructuralError(f"{f} is not in {B.ring}")
    engine = _Engine(B.ring)
    lms, tails = B._engine_parts()
    return f.ring._wrap(engine.reduce(f.as_dict, lms, tails))


# -- standard monomials -----------------------------------------------------

def _zero_dimensional(lms: Sequence, nvars: int) -> bool:
    found = [False] * nvars
    for m in lms:
        nz = [i for i, v in enumerate(m) if v]
        if not nz:
            return True
        if len(nz) == 1:
            found[nz[0]] = True
    return all(found)


def _minimize_monomials(lms) -> list:
    ms = sorted(set(lms), key=sum)
    keep: list = []
    for m in ms:
        if not any(divides(k, m) for k in keep):
            keep.append(m)
    return keep


def count_standard_monomials(lms: Sequence, nvars: int):
    """Number of monomials outside the monomial ideal generated by ``lms``.

    Returns ``INFINITE`` unless every variable has a pure power among ``lms``.
    Works slice by slice along the first variable, so it never lists monomials.
    """
    lms = [tuple(m) for m in lms]
    if not _zero_dimensional(lms, nvars):
        return INFINITE
    return _count(tuple(_minimize_monomials(lms)), nvars, {})


def _count(lms: tuple, nvars: int, memo: dict) -> int:
    if not lms:
        raise AssertionError("unreachable: zero-dimensional ideal with no generators")
    if nvars == 0 or any(not any(m) for m in lms):
        return 0
    if nvars == 1:
        return min(m[0] for m in lms)
    hit = memo.get((lms, nvars))
    if hit is not None:
        return hit
    bound = min(m[0] for m in lms if not any(m[1:]))
    by_first = sorted(lms, key=lambda m: m[0])
    total = 0
    if nvars == 2:
        # running minimum of the y-exponent over generators with x-exponent <= a
        cur = None
        idx = 0
        a = 0
        while a < bound:
            while idx < len(by_first) and by_first[idx][0] <= a:
                v = by_first[idx][1]
                cur = v if cur is None or v < cur else cur
                idx += 1
            nxt = by_first[idx][0] if idx < len(by_first) else bound
            nxt = min(nxt, bound)
            total += cur * (nxt - a)
            a = nxt
    else:
        idx = 0
        a = 0
        sub: list = []
        while a < bound:
            while idx < len(by_first) and by_first[idx][0] <= a:
                sub.append(by_first[idx][1:])
                idx += 1
            nxt = by_first[idx][0] if idx < len(by_first) else bound
            nxt = min(nxt, bound)
            sub = _minimize_monomials(sub)
            total += _count(tuple(sorted(sub)), nvars - 1, memo) * (nxt - a)
            a = nxt
    memo[(lms, nvars)] = total
    return total


def _enumerate(lms: list, nvars: int, prefix: tuple, out: list):
    if any(not any(m) for m in lms):
        return
    if nvars == 0:
        out.append(prefix)
        return
    bound = min(m[0] for m in lms if not any(m[1:]))
    for a in range(bound):
        sub = _minimize_monomials([m[1:] for m in lms if m[0] <= a])
        _enumerate(sub, nvars - 1, prefix + (a,), out)


def standard_monomials(B: GroebnerBasis, cap: int = DEFAULT_CAP):
    """Monomials not divisible by any leading monomial of ``B``.

    Returns ``INFINITE`` for a positive-dimensional ideal and raises
    :class:`CapacityError` when there are more than ``cap`` of them.
    """
    lms = B.leading_monomials
    n = B.ring.nvars
    if not lms:
        return INFINITE if n else [()]
    count = count_standard_monomials(lms, n)
    if count is INFINITE:
        return INFINITE
    if count > cap:
        raise CapacityError(cap)
    out: list = []
    _enumerate(_minimize_monomials(lms), n, (), out)
    key = B.order.key
    out.sort(key=key)
    return out


# -- ideals -----------------------------------------------------------------

class Ideal:
    """Ideal of a polynomial ring with a lazily computed, cached basis.

    The cache is filled at most once per instance; a racing second fill
    computes the same canonical basis, so no locking is needed.
    """

    def __init__(self, generators: Sequence[Polynomial], ring: PolyRing | None = None):
        generators = list(generators)
        ring = _check_ring(generators, ring)
        self.ring = ring
        self.generators = tuple(g for g in generators if not g.is_zero())
        self._basis = None

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def cached_basis(self) -> GroebnerBasis | None:
        return self._basis

    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            self._basis = buchberger(self.generators, ring=self.ring)
        return self._basis

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + tuple(other.generators), self.ring)

    def contains(self, f: Polynomial) -> bool:
        return self.basis().contains(f)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators))})"


def colength(I: Ideal, cap: int = DEFAULT_CAP):
    """dim_k of k[x]/I, or ``INFINITE``."""
    B = I.basis()
    if not B.elements:
        return INFINITE if I.ring.nvars else 1
    count = count_standard_monomials(B.leading_monomials, I.ring.nvars)
    if count is not INFINITE and count > cap:
        raise CapacityError(cap)
    return count


def extend_basis_leading_monomials(B: GroebnerBasis, extra: Sequence[Polynomial]) -> list:
    """Leading monomials of a Groebner basis of ``B + (extra)``.

    Skips final interreduction, which the leading-term ideal does not need;
    the S-pairs inside ``B`` are known to reduce to zero and are not revisited.
    Used by the truncation ladder, where ``extra`` is a large monomial block.
    """
    engine = _Engine(B.ring)
    extra = [e for e in extra if not e.is_zero()]
    mono = [e for e in extra if e.is_monomial()]
    rest = [e for e in extra if not e.is_monomial()]
    # a set of monomials is already a Groebner basis
    known = [(m.leading_monomial, ()) for m in mono]
    pending = [g.as_dict for g in B.elements] + [g.as_dict for g in rest]
    basis = _core(engine, known, pending)
    return [lm for lm, _ in basis]
