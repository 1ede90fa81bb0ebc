"""Exact coefficient fields, monomial orders and multivariate polynomials.

Coefficients are plain Python ints reduced mod p (for GF(p)) or
:class:`fractions.Fraction` (for QQ).  Monomials are dense exponent tuples.
A :class:`Polynomial` keeps its terms sorted strictly descending under the
ring's monomial order, so two polynomials are equal iff their term tuples
are identical.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import StructuralError

Monomial = tuple  # tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: QQ when ``characteristic == 0``, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or p < 0 or (p != 0 and not _is_prime(p)):
            raise StructuralError(f"characteristic must be 0 or a prime, got {p!r}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def convert(self, c):
        """Coerce an int or Fraction into this field."""
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise ZeroDivisionError(f"{c} has no image in GF({p})")
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        raise TypeError(f"cannot convert {c!r} to a field element")

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return Fraction(1) / c

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex or lex, with an optional variable precedence.

    ``precedence`` lists variable indices from largest to smallest; ``None``
    means the natural order x0 > x1 > ...
    """

    kind: str = "degrevlex"
    precedence: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise StructuralError(f"unknown monomial order {self.kind!r}")
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))
            if sorted(self.precedence) != list(range(len(self.precedence))):
                raise StructuralError(f"precedence {self.precedence} is not a permutation")

    @cached_property
    def key(self) -> Callable[[Monomial], tuple]:
        """Sort key: ``key(a) < key(b)`` iff a < b in this order."""
        perm = self.precedence
        if self.kind == "lex":
            if perm is None:
                return lambda e: e
            return lambda e: tuple(e[i] for i in perm)
        if perm is None:
            return lambda e: (sum(e),) + tuple(-v for v in reversed(e))
        rev = tuple(reversed(perm))
        return lambda e: (sum(e),) + tuple(-e[i] for i in rev)

    def check_arity(self, nvars: int):
        if self.precedence is not None and len(self.precedence) != nvars:
            raise StructuralError(
                f"order precedence has {len(self.precedence)} entries for {nvars} variables"
            )


DEGREVLEX = MonomialOrder()


# -- monomial helpers -------------------------------------------------------

def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# -- dict-level arithmetic (shared with the Groebner engine) ---------------

def dict_add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def dict_mul(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    if p:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def dict_pow(a: dict, n: int, p: int, nvars: int) -> dict:
    result = {(0,) * nvars: 1 if p else Fraction(1)}
    if len(a) == 1:
        (e, c), = a.items()
        c = pow(c, n, p) if p else c ** n
        return {tuple(v * n for v in e): c} if c else {}
    base = a
    while n:
        if n & 1:
            result = dict_mul(result, base, p)
        n >>= 1
        if n:
            base = dict_mul(base, base, p)
    return result


# -- rings and polynomials --------------------------------------------------

@dataclass(frozen=True)
class PolyRing:
    """k[x1..xn] with a fixed monomial order."""

    field: FieldSpec
    names: tuple
    order: MonomialOrder = field(default=DEGREVLEX)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise StructuralError(f"variable names are not distinct: {self.names}")
        self.order.check_arity(len(self.names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def gens(self) -> tuple:
        n = self.nvars
        return tuple(
            self.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)
        )

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return self.from_dict({(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise StructuralError(f"monomial {tuple(exps)} has wrong arity for {self.nvars} variables")
        return self.from_dict({tuple(exps): c})

    def from_dict(self, d: dict) -> "Polynomial":
        conv = self.field.convert
        clean = {}
        for e, c in d.items():
            c = conv(c)
            if c:
                clean[tuple(e)] = c
        return self._wrap(clean)

    def _wrap(self, d: dict) -> "Polynomial":
        """Trusted constructor: ``d`` already holds nonzero field elements."""
        key = self.order.key
        return Polynomial(self, tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True)))

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def __str__(self):
        return f"{self.field}[{', '.join(self.names)}]"


class Polynomial:
    """Immutable polynomial in canonical (sorted, zero-free) form."""

    __slots__ = ("ring", "terms", "_dict", "_hash")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self.terms = terms
        self._dict = None
        self._hash = None

    # -- accessors
    @property
    def as_dict(self) -> dict:
        if self._dict is None:
            self._dict = dict(self.terms)
        return self._dict

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def leading_monomial(self) -> Monomial:
        return self.terms[0][0]

    @property
    def leading_coeff(self):
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def valuation(self) -> int:
        """Lowest total degree of a term (order of vanishing at the origin)."""
        return min((sum(e) for e, _ in self.terms), default=-1)

    def constant_coeff(self):
        return self.as_dict.get((0,) * self.ring.nvars, 0)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coeff)
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, tuple((e, v * c % p) for e, v in self.terms))
        return Polynomial(self.ring, tuple((e, v * c) for e, v in self.terms))

    def normalized(self) -> "Polynomial":
        return self.ring.from_dict(self.as_dict)

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"operands live in different rings: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring._wrap(dict_add(self.as_dict, other.as_dict, self.ring.field.characteristic))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring._wrap(dict_add(self.as_dict, other.as_dict, self.ring.field.characteristic, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring._wrap(dict_mul(self.as_dict, other.as_dict, self.ring.field.characteristic))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return self.ring._wrap(
            dict_pow(self.as_dict, n, self.ring.field.characteristic, self.ring.nvars)
        )

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r} in {self.ring})"


def format_polynomial(f: Polynomial) -> str:
    """Render with ``*`` and ``^``; output re-parses to the same polynomial."""
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for i, (e, c) in enumerate(f.terms):
        mono = "*".join(
            name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if not isinstance(a, Polynomial) or not isinstance(b, Polynomial):
        raise StructuralError("poly_arith expects two polynomials")
    if a.ring != b.ring:
        raise StructuralError(f"operands live in different rings: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace each variable x_i of ``f`` by ``images[i]`` and expand.

    The result lives in the ring of the images (which must share ``f``'s field).
    """
    images = list(images)
    if len(images) != f.ring.nvars:
        raise StructuralError(
            f"substitute needs {f.ring.nvars} images, got {len(images)}"
        )
    if not images:
        return f
    target = images[0].ring
    for g in images:
        if g.ring != target:
            raise StructuralError("images live in different rings")
    if target.field != f.ring.field:
        raise StructuralError(f"field mismatch: {f.ring.field} vs {target.field}")
    p = target.field.characteristic
    n = target.nvars
    img = [g.as_dict for g in images]
    powers: list[dict] = [{1: d} for d in img]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            half = power(i, k // 2)
            sq = dict_mul(half, half, p)
            cache[k] = dict_mul(sq, img[i], p) if k % 2 else sq
        return cache[k]

    one = (0,) * n
    out: dict = {}
    for e, c in f.terms:
        term = {one: c}
        for i, k in enumerate(e):
            if k:
                term = dict_mul(term, power(i, k), p)
                if not term:
                    break
        out = dict_add(out, term, p)
    return target._wrap(out)


def monomials_of_degree(nvars: int, degree: int) -> list:
    """All exponent tuples of the given total degree."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


def power_of_maximal_ideal(ring: PolyRing, degree: int) -> list:
    """Monomial generators of (x1, ..., xn)^degree."""
    one = ring.field.convert(1)
    return [ring._wrap({e: one}) for e in monomials_of_degree(ring.nvars, degree)]


def gens_from_iterable(ring: PolyRing, items: Iterable) -> list:
    out = []
    for g in items:
        if not isinstance(g, Polynomial) or g.ring != ring:
            raise StructuralError(f"{g!r} is not a polynomial of {ring}")
        out.append(g)
    return out
