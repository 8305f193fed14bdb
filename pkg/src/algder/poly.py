"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import MissingImageError, UnknownVariableError, VariableSetError

Monomial = tuple  # tuple[int, ...], one exponent per ring variable


def grlex_key(mono: Monomial):
    """Ascending graded-lexicographic sort key."""
    return (sum(mono), mono)


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class Poly:
    """Element of Q[x1, ..., xn].

    Terms live in a dict ``{exponent tuple: Fraction}`` with zero coefficients
    dropped and keys stored in ascending graded-lex order. Instances are
    treated as immutable values.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Iterable[str], terms: Mapping[Monomial, object] | None = None):
        self.ring = tuple(ring)
        n = len(self.ring)
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != n:
                    raise VariableSetError(f"monomial {mono} does not match ring {self.ring}")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = as_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self.terms = {m: clean[m] for m in sorted(clean, key=grlex_key)}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ring, terms):
        # trusted path: terms already exact, nonzero and well-shaped
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = {m: terms[m] for m in sorted(terms, key=grlex_key)}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring) -> Poly:
        return cls(ring)

    @classmethod
    def const(cls, ring, c) -> Poly:
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def var(cls, ring, name: str) -> Poly:
        ring = tuple(ring)
        i = _index(ring, name)
        mono = tuple(1 if j == i else 0 for j in range(len(ring)))
        return cls(ring, {mono: 1})

    @classmethod
    def monomial(cls, ring, exponents, c=1) -> Poly:
        return cls(ring, {tuple(exponents): c})

    @classmethod
    def gens(cls, ring) -> list[Poly]:
        ring = tuple(ring)
        return [cls.var(ring, v) for v in ring]

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = _index(self.ring, name)
        return max((m[i] for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return next(reversed(self.terms))

    def sorted_terms(self, descending=True) -> list[tuple[Monomial, Fraction]]:
        items = list(self.terms.items())
        return items[::-1] if descending else items

    def renormalize(self) -> Poly:
        return Poly(self.ring, self.terms)

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise VariableSetError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> Poly:
        c = as_fraction(c)
        if not c:
            return Poly._raw(self.ring, {})
        return Poly._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(1 / as_fraction(c))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, name: str) -> Poly:
        return diff(self, name)

    def substitute(self, images: Mapping[str, Poly]) -> Poly:
        return substitute(self, images)

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({str(self)!r}, ring={self.ring})"


def _index(ring, name) -> int:
    try:
        return ring.index(name)
    except ValueError:
        raise UnknownVariableError(f"unknown variable {name!r} for ring {ring}") from None


def mul(p: Poly, q: Poly) -> Poly:
    if p.ring != q.ring:
        raise VariableSetError(f"ring mismatch: {p.ring} vs {q.ring}")
    out: dict = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return Poly._raw(p.ring, {m: c for m, c in out.items() if c})


def diff(p: Poly, name: str) -> Poly:
    """Formal partial derivative with respect to ``name``."""
    i = _index(p.ring, name)
    out = {}
    for m, c in p.terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return Poly._raw(p.ring, out)


def substitute(p: Poly, images: Mapping[str, Poly]) -> Poly:
    """Image of ``p`` under the endomorphism sending each variable to ``images[v]``."""
    imgs = []
    for v in p.ring:
        if v not in images:
            raise MissingImageError(f"no image given for variable {v!r}")
        img = images[v]
        if not isinstance(img, Poly):
            img = Poly.const(p.ring, img)
        imgs.append(img)
    target = imgs[0].ring if imgs else p.ring
    for img in imgs:
        if img.ring != target:
            raise VariableSetError("images must share one ring")
    powers: list[dict[int, Poly]] = [{0: Poly.const(target, 1)} for _ in imgs]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            k = max(k for k in cache if k < e)
            acc = cache[k]
            for j in range(k + 1, e + 1):
                acc = acc * imgs[i]
                cache[j] = acc
        return cache[e]

    total = Poly.zero(target)
    for m, c in p.terms.items():
        term = Poly.const(target, c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = total + term
    return total
