"""Exact linear algebra over Q.

Dense matrices of Fractions, reduced row echelon form, kernels, characteristic
polynomials (Hessenberg reduction) and splitting of univariate polynomials
into rational linear factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Sequence

from .errors import NonSquareMatrixError

__all__ = [
    "QMatrix",
    "UniPoly",
    "RootMultiset",
    "rref",
    "kernel",
    "rank",
    "char_poly",
    "rational_root_split",
]


class QMatrix:
    """Dense rational matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [Fraction(0)] * (rows * cols)
        else:
            if len(entries) != rows * cols:
                raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
            self.entries = [Fraction(e) for e in entries]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> QMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls(rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i * self.cols + j] = Fraction(value)

    def row(self, i) -> list[Fraction]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j) -> list[Fraction]:
        return self.entries[j::self.cols] if self.cols else []

    def to_lists(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def copy(self) -> QMatrix:
        return QMatrix(self.rows, self.cols, self.entries)

    def transpose(self) -> QMatrix:
        return QMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __add__(self, other: QMatrix) -> QMatrix:
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: QMatrix) -> QMatrix:
        self._same_shape(other)
        return QMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return QMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> QMatrix:
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(self.row(i), vec) if a and b), Fraction(0)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows))
        return f"QMatrix([{body}])"


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = m.to_lists()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return QMatrix(m.rows, m.cols, [x for row in a for x in row]), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def kernel(m: QMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial over Q; ``coeffs`` ascending, no trailing zeros."""

    coeffs: tuple = ()

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def linear(cls, root) -> UniPoly:
        """X - root."""
        return cls([-Fraction(root), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return UniPoly([c / self.lead for c in self.coeffs])

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __rsub__(self, other):
        return _as_uni(other) - self

    def __mul__(self, other):
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_uni(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation at a scalar or a square QMatrix."""
        if isinstance(x, QMatrix):
            if not x.is_square:
                raise NonSquareMatrixError("matrix must be square")
            acc = QMatrix.zeros(x.rows, x.cols)
            ident = QMatrix.identity(x.rows)
            for c in reversed(self.coeffs):
                acc = acc @ x + ident.scale(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_uni(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def uni_gcdex(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (s, t, g) with s*a + t*b = g = monic gcd(a, b)."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.lead
    if lead and lead != 1:
        inv = 1 / lead
        return s0 * inv, t0 * inv, r0 * inv
    return s0, t0, r0


def char_poly(m: QMatrix) -> UniPoly:
    """det(X*I - m), computed exactly via reduction to upper Hessenberg form."""
    if not m.is_square:
        raise NonSquareMatrixError(f"char_poly needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    h = m.to_lists()
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1]), None)
        if piv is None:
            continue
        if piv != k:
            h[piv], h[k] = h[k], h[piv]
            for row in h:
                row[piv], row[k] = row[k], row[piv]
        inv = 1 / h[k][k - 1]
        for i in range(k + 1, n):
            u = h[i][k - 1] * inv
            if not u:
                continue
            h[i] = [a - u * b for a, b in zip(h[i], h[k])]
            for row in h:
                row[k] += u * row[i]
    # p_j = char poly of the leading j x j block
    polys = [UniPoly([1])]
    for j in range(1, n + 1):
        p = UniPoly([-h[j - 1][j - 1], 1]) * polys[j - 1]
        t = Fraction(1)
        for i in range(1, j):
            t *= h[j - i][j - i - 1]
            if not t:
                break
            c = t * h[j - i - 1][j - 1]
            if c:
                p = p - polys[j - i - 1] * c
        polys.append(p)
    return polys[n]


@dataclass
class RootMultiset:
    """Rational roots with multiplicities plus the factor that does not split."""

    roots: dict = field(default_factory=dict)
    residual: UniPoly = field(default_factory=lambda: UniPoly([1]))

    @property
    def splits(self) -> bool:
        return self.residual.degree <= 0

    def reconstruct(self) -> UniPoly:
        out = self.residual
        for r, k in self.roots.items():
            out = out * UniPoly.linear(r) ** k
        return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _primitive_integer(p: UniPoly) -> list[int]:
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints]


def rational_root_split(p: UniPoly) -> RootMultiset:
    """All rational roots of ``p`` with multiplicities.

    Candidates come from the squarefree part (rational root theorem on its
    primitive integer form); multiplicities by repeated exact deflation of
    ``p`` itself.
    """
    if p.is_zero():
        raise ValueError("cannot split the zero polynomial")
    residual = p
    roots: dict = {}
    while residual.degree > 0 and residual.coeffs[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        residual = UniPoly(residual.coeffs[1:])
    if residual.degree <= 0:
        return RootMultiset(roots, residual)
    sqfree = residual // uni_gcd(residual, residual.derivative())
    ints = _primitive_integer(sqfree)
    lead_divs = _divisors(ints[-1])
    cands = set()
    for a in _divisors(ints[0]):
        for b in lead_divs:
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for r in sorted(cands):
        lin = UniPoly.linear(r)
        while residual.degree > 0:
            q, rem = divmod(residual, lin)
            if not rem.is_zero():
                break
            roots[r] = roots.get(r, 0) + 1
            residual = q
    return RootMultiset(dict(sorted(roots.items())), residual)
