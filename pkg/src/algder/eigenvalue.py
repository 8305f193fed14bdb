"""Eigenvalues: a rational constant plus rational coordinates on formal weights."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from itertools import zip_longest
from numbers import Rational
from typing import Sequence

from .errors import UnsupportedScalarError


def _strip(ws) -> tuple:
    ws = [Fraction(w) for w in ws]
    while ws and not ws[-1]:
        ws.pop()
    return tuple(ws)


@total_ordering
class Eigenvalue:
    """``constant + sum(weights[i] * w_i)`` for declared weight symbols ``w_i``.

    Trailing zero coordinates are dropped so that values built against
    different numbers of declared symbols still compare equal. Ordering is
    lexicographic on ``(constant, w_1, w_2, ...)``.
    """

    __slots__ = ("constant", "weights")

    def __init__(self, constant=0, weights: Sequence = ()):
        if isinstance(constant, Eigenvalue):
            constant, weights = constant.constant, constant.weights
        self.constant = Fraction(constant)
        self.weights = _strip(weights)

    @classmethod
    def coerce(cls, value) -> Eigenvalue:
        if isinstance(value, Eigenvalue):
            return value
        if isinstance(value, (int, Rational, str)):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as an eigenvalue")

    @classmethod
    def symbol(cls, index: int) -> Eigenvalue:
        """The formal weight ``w_index`` (0-based)."""
        return cls(0, [0] * index + [1])

    @property
    def is_rational(self) -> bool:
        return not self.weights

    def rational_value(self) -> Fraction:
        if self.weights:
            raise UnsupportedScalarError(f"eigenvalue {self.format()} has a formal weight part")
        return self.constant

    def is_zero(self) -> bool:
        return not self.constant and not self.weights

    def _key(self):
        return (self.constant, self.weights)

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = Eigenvalue(other)
        if not isinstance(other, Eigenvalue):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if not self.weights:
            return hash(self.constant)
        return hash(self._key())

    def __lt__(self, other):
        other = Eigenvalue.coerce(other)
        if self.constant != other.constant:
            return self.constant < other.constant
        for a, b in zip_longest(self.weights, other.weights, fillvalue=Fraction(0)):
            if a != b:
                return a < b
        return False

    def __add__(self, other):
        other = Eigenvalue.coerce(other)
        ws = [a + b for a, b in zip_longest(self.weights, other.weights, fillvalue=Fraction(0))]
        return Eigenvalue(self.constant + other.constant, ws)

    __radd__ = __add__

    def __neg__(self):
        return Eigenvalue(-self.constant, [-w for w in self.weights])

    def __sub__(self, other):
        return self + (-Eigenvalue.coerce(other))

    def __mul__(self, c):
        if not isinstance(c, (int, Rational)):
            return NotImplemented
        c = Fraction(c)
        return Eigenvalue(self.constant * c, [w * c for w in self.weights])

    __rmul__ = __mul__

    def format(self, symbols: Sequence[str] | None = None) -> str:
        if symbols is None:
            symbols = [f"w{i + 1}" for i in range(len(self.weights))]
        if len(symbols) < len(self.weights):
            raise ValueError("not enough weight symbols to format eigenvalue")
        parts = []
        for name, c in zip(symbols, self.weights):
            if not c:
                continue
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" if c < 0 else "+", body))
        if self.constant or not parts:
            parts.append(("-" if self.constant < 0 else "+", str(abs(self.constant))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Eigenvalue({self.format()!r})"
