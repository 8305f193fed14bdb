"""Derivations on Q[x1..xn], their powers, and truncated exponential series.

A derivation is fixed by the images of the variables and acts through the
Leibniz rule: ``D(p) = sum_i D(x_i) * dp/dx_i``. Diagonal derivations
``sum_i w_i x_i d/dx_i`` may carry formal weights; those can only be
decomposed (see :func:`algder.spectral.decompose_diagonal`), never applied
to produce a rational polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from .eigenvalue import Eigenvalue
from .errors import UnsupportedScalarError, VariableSetError
from .poly import Poly, as_fraction, diff

DEFAULT_ORDER = 8

LinearOperator = Callable[[Poly], Poly]


class Derivation:
    """A derivation of kind ``"general"`` (variable images) or ``"diagonal"`` (weights)."""

    __slots__ = ("ring", "kind", "images", "weights", "weight_symbols")

    def __init__(self, ring, kind, images=None, weights=None, weight_symbols=()):
        self.ring = tuple(ring)
        self.kind = kind
        self.weight_symbols = tuple(weight_symbols)
        self.images = None
        self.weights = None
        if kind == "general":
            missing = [v for v in self.ring if v not in images]
            if missing:
                raise VariableSetError(f"no image for variables {missing}")
            extra = set(images) - set(self.ring)
            if extra:
                raise VariableSetError(f"images given for unknown variables {sorted(extra)}")
            imgs = {}
            for v in self.ring:
                img = images[v]
                if not isinstance(img, Poly):
                    img = Poly.const(self.ring, img)
                if img.ring != self.ring:
                    raise VariableSetError(f"image of {v} lives in ring {img.ring}, expected {self.ring}")
                imgs[v] = img
            self.images = imgs
        elif kind == "diagonal":
            missing = [v for v in self.ring if v not in weights]
            if missing:
                raise VariableSetError(f"no weight for variables {missing}")
            self.weights = {v: Eigenvalue.coerce(weights[v]) for v in self.ring}
        else:
            raise ValueError(f"unknown derivation kind {kind!r}")

    @classmethod
    def general(cls, ring, images: Mapping[str, Poly]) -> Derivation:
        return cls(ring, "general", images=images)

    @classmethod
    def diagonal(cls, ring, weights: Mapping[str, object], weight_symbols: Sequence[str] = ()) -> Derivation:
        return cls(ring, "diagonal", weights=weights, weight_symbols=weight_symbols)

    @classmethod
    def euler(cls, ring) -> Derivation:
        ring = tuple(ring)
        return cls.general(ring, {v: Poly.var(ring, v) for v in ring})

    @classmethod
    def partial(cls, ring, name) -> Derivation:
        ring = tuple(ring)
        Poly.var(ring, name)  # validates the name
        return cls.general(ring, {v: Poly.const(ring, 1 if v == name else 0) for v in ring})

    @property
    def is_general(self) -> bool:
        return self.kind == "general"

    @property
    def is_rational(self) -> bool:
        return self.kind == "general" or all(w.is_rational for w in self.weights.values())

    def to_general(self) -> Derivation:
        if self.kind == "general":
            return self
        if not self.is_rational:
            raise UnsupportedScalarError("diagonal derivation with formal weights has no rational form")
        return Derivation.general(
            self.ring,
            {v: Poly.var(self.ring, v).scale(self.weights[v].constant) for v in self.ring},
        )

    def image(self, name) -> Poly:
        return self.to_general().images[name]

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (self.ring, self.kind, self.images, self.weights) == (other.ring, other.kind, other.images, other.weights)

    def __hash__(self):
        return hash((self.ring, self.kind))

    def __repr__(self):
        if self.kind == "general":
            body = ", ".join(f"{v} -> {self.images[v]}" for v in self.ring)
        else:
            body = ", ".join(f"{v}: {self.weights[v].format(self.weight_symbols or None)}" for v in self.ring)
        return f"Derivation({self.kind}; {body})"


def _check_ring(d: Derivation, p: Poly):
    if p.ring != d.ring:
        raise VariableSetError(f"polynomial ring {p.ring} does not match derivation ring {d.ring}")


def apply(d: Derivation, p: Poly) -> Poly:
    """D(p)."""
    _check_ring(d, p)
    if d.kind == "diagonal":
        if not d.is_rational:
            raise UnsupportedScalarError("cannot apply a derivation with formal weights to a rational polynomial")
        ws = [d.weights[v].constant for v in d.ring]
        out = {}
        for m, c in p.terms.items():
            s = sum((e * w for e, w in zip(m, ws)), Fraction(0))
            if s:
                out[m] = c * s
        return Poly._raw(p.ring, out)
    total = Poly.zero(p.ring)
    for v in d.ring:
        img = d.images[v]
        if img:
            dp = diff(p, v)
            if dp:
                total = total + img * dp
    return total


def apply_power(d: Derivation, p: Poly, n: int) -> Poly:
    """D^n(p); n = 0 is the identity."""
    if n < 0:
        raise ValueError("power must be non-negative")
    _check_ring(d, p)
    for _ in range(n):
        if not p:
            break
        p = apply(d, p)
    return p


def shifted(d: Derivation, lam) -> LinearOperator:
    """The linear map q -> D(q) - lam*q.

    Not a derivation (it fails Leibniz for lam != 0), so it is returned as a
    plain callable.
    """
    lam = Eigenvalue.coerce(lam).rational_value()

    def delta(q: Poly) -> Poly:
        return apply(d, q) - q.scale(lam)

    return delta


@dataclass(frozen=True)
class ScalarSeries:
    """Rational power series in t truncated after t^order."""

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other):
        if isinstance(other, ScalarSeries):
            n = min(self.order, other.order)
            out = [sum((self.coefficients[i] * other.coefficients[k - i] for i in range(k + 1)), Fraction(0))
                   for k in range(n + 1)]
            return ScalarSeries(tuple(out))
        if isinstance(other, TruncatedSeries):
            return other.scalar_mul(self)
        return NotImplemented


@dataclass(frozen=True)
class TruncatedSeries:
    """Series in t with polynomial coefficients, truncated after t^order."""

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def ring(self):
        return self.coefficients[0].ring

    def __getitem__(self, n) -> Poly:
        return self.coefficients[n]

    def __mul__(self, other):
        if isinstance(other, ScalarSeries):
            return self.scalar_mul(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = Poly.zero(self.ring)
            for i in range(k + 1):
                a, b = self.coefficients[i], other.coefficients[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return TruncatedSeries(tuple(out))

    def scalar_mul(self, s: ScalarSeries) -> TruncatedSeries:
        n = min(self.order, s.order)
        out = []
        for k in range(n + 1):
            acc = Poly.zero(self.ring)
            for i in range(k + 1):
                c = s.coefficients[i]
                if c:
                    acc = acc + self.coefficients[k - i].scale(c)
            out.append(acc)
        return TruncatedSeries(tuple(out))

    def is_polynomial_in_t(self) -> bool:
        """True when the last coefficient vanishes (a necessary condition only)."""
        return not self.coefficients[-1]


def operator_series(op: LinearOperator, p: Poly, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """sum_{n<=order} op^n(p) t^n / n! for any linear operator."""
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = []
    cur = p
    for n in range(order + 1):
        coeffs.append(cur.scale(Fraction(1, factorial(n))))
        if n < order:
            cur = op(cur) if cur else cur
    return TruncatedSeries(tuple(coeffs))


def phi_truncated(d: Derivation, p: Poly, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """phi_D(p) modulo t^(order+1)."""
    _check_ring(d, p)
    return operator_series(lambda q: apply(d, q), p, order)


def exp_truncated(lam, order: int = DEFAULT_ORDER) -> ScalarSeries:
    """exp(lam*t) modulo t^(order+1); ``lam`` must be rational."""
    if order < 0:
        raise ValueError("order must be non-negative")
    lam = Eigenvalue.coerce(lam).rational_value() if not isinstance(lam, (int, Fraction)) else as_fraction(lam)
    return ScalarSeries(tuple(lam ** n / factorial(n) for n in range(order + 1)))
