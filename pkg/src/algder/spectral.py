"""Generalized-eigenspace structure of a derivation on a polynomial ring.

For an element ``p`` the iterates ``p, D(p), D^2(p), ...`` span a D-stable
space ``V``; when ``V`` is finite dimensional the iterates up to the first
dependent one form a basis, D acts on it as a companion matrix, and the
relation ``D^n(p) = sum c_k D^k(p)`` is the minimal polynomial of ``p``.
Splitting that polynomial over Q and taking CRT idempotents yields the
components of ``p`` in each ``B_lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .derivation import Derivation, apply
from .eigenvalue import Eigenvalue
from .errors import CapExceeded, NonRationalSpectrum, NotAlgebraicUpToCaps, VariableSetError
from .linalg import QMatrix, UniPoly, rational_root_split, uni_gcdex
from .poly import Poly, grlex_key

__all__ = [
    "Caps",
    "KrylovSpace",
    "Part",
    "Decomposition",
    "Nilpotent",
    "NotNilpotent",
    "Undetermined",
    "LocalNilpotence",
    "krylov_space",
    "is_algebraic_element",
    "decompose_element",
    "decompose_diagonal",
    "mu_height",
    "is_nilpotent_element",
    "is_locally_nilpotent",
    "spectrum_and_monoid",
    "shifted_height",
]


@dataclass(frozen=True)
class Caps:
    max_krylov_dim: int = 256
    max_degree: int = 512
    max_iterations: int = 1024

    def __post_init__(self):
        for name in ("max_krylov_dim", "max_degree", "max_iterations"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_CAPS = Caps()


@dataclass
class KrylovSpace:
    """Cyclic basis ``p, D(p), ..., D^(n-1)(p)`` and the matrix of D on it.

    ``relation`` is the monic minimal polynomial of ``p`` under D, which is
    also the characteristic polynomial of ``matrix``.
    """

    generator: Poly
    basis: list
    matrix: QMatrix
    relation: UniPoly

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coords) -> Poly:
        out = Poly.zero(self.generator.ring)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out


def krylov_space(d: Derivation, p: Poly, caps: Caps | None = None) -> KrylovSpace:
    """Close the span of D-iterates of ``p`` or raise :class:`CapExceeded`."""
    caps = caps or DEFAULT_CAPS
    if not p:
        raise ValueError("Krylov space of the zero polynomial is not defined")
    d = d.to_general()
    if p.ring != d.ring:
        raise VariableSetError(f"polynomial ring {p.ring} does not match derivation ring {d.ring}")
    if p.degree() > caps.max_degree:
        raise CapExceeded("degree", caps.max_degree)

    basis = [p]
    # echelon rows keyed by pivot (their grlex-leading monomial):
    # (row terms, combination of iterates as {index: coeff})
    rows: dict = {}

    def reduce(vec: dict, combo: dict):
        while vec:
            lead = max(vec, key=grlex_key)
            if lead not in rows:
                return vec, combo, lead
            rterms, rcombo = rows[lead]
            f = vec[lead] / rterms[lead]
            for m, c in rterms.items():
                s = vec.get(m, 0) - f * c
                if s:
                    vec[m] = s
                else:
                    vec.pop(m, None)
            for k, c in rcombo.items():
                s = combo.get(k, 0) - f * c
                if s:
                    combo[k] = s
                else:
                    combo.pop(k, None)
        return vec, combo, None

    vec, combo, lead = reduce(dict(p.terms), {0: Fraction(1)})
    rows[lead] = (vec, combo)
    current = p
    iterations = 0
    while True:
        iterations += 1
        if iterations > caps.max_iterations:
            raise CapExceeded("iterations", caps.max_iterations)
        current = apply(d, current)
        if current.degree() > caps.max_degree:
            raise CapExceeded("degree", caps.max_degree)
        n = len(basis)
        vec, combo, lead = reduce(dict(current.terms), {n: Fraction(1)})
        if not vec:
            break
        if n + 1 > caps.max_krylov_dim:
            raise CapExceeded("dim", caps.max_krylov_dim)
        basis.append(current)
        rows[lead] = (vec, combo)

    n = len(basis)
    # combo encodes sum_k combo[k] D^k(p) = 0 with combo[n] = 1
    relation = UniPoly([combo.get(k, 0) for k in range(n + 1)])
    entries = [Fraction(0)] * (n * n)
    for j in range(n - 1):
        entries[(j + 1) * n + j] = Fraction(1)
    for i in range(n):
        entries[i * n + n - 1] = -relation.coeffs[i] if i < len(relation.coeffs) else Fraction(0)
    return KrylovSpace(p, basis, QMatrix(n, n, entries), relation)


def is_algebraic_element(d: Derivation, p: Poly, caps: Caps | None = None) -> int | None:
    """Dimension of the Krylov space of ``p``, or None when a cap was hit first.

    ``None`` means "unknown up to caps"; it never certifies that ``p`` is
    not algebraic.
    """
    if d.kind == "diagonal":
        return len(decompose_diagonal(d, p)) if p else 1
    if not p:
        return 0
    try:
        return krylov_space(d, p, caps).dim
    except CapExceeded:
        return None


@dataclass(frozen=True)
class Part:
    lam: Eigenvalue
    component: Poly
    height: int


@dataclass(frozen=True)
class Decomposition:
    """Parts ``(lambda, component, height)`` with lambdas strictly increasing."""

    parts: tuple = field(default_factory=tuple)

    def __iter__(self) -> Iterator[Part]:
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i) -> Part:
        return self.parts[i]

    @property
    def lambdas(self) -> list:
        return [pt.lam for pt in self.parts]

    def total(self) -> Poly:
        it = iter(self.parts)
        acc = next(it).component
        for pt in it:
            acc = acc + pt.component
        return acc

    def component(self, lam) -> Poly | None:
        lam = Eigenvalue.coerce(lam)
        for pt in self.parts:
            if pt.lam == lam:
                return pt.component
        return None

    def is_single_at(self, lam) -> bool:
        return len(self.parts) == 1 and self.parts[0].lam == Eigenvalue.coerce(lam)


def shifted_height(d: Derivation, c: Poly, lam, limit: int | None = None) -> int | None:
    """The r with (D-lam)^r(c) != 0 and (D-lam)^(r+1)(c) == 0, by direct iteration.

    Returns None if no such r <= ``limit`` exists.
    """
    lam = Eigenvalue.coerce(lam).rational_value()
    r = 0
    cur = c
    while True:
        nxt = apply(d, cur) - cur.scale(lam)
        if not nxt:
            return r
        r += 1
        if limit is not None and r > limit:
            return None
        cur = nxt


def _idempotents(relation: UniPoly, roots: dict) -> dict:
    """CRT idempotents e_i = 1 mod (X-l_i)^m_i, 0 mod the other factors, reduced mod ``relation``."""
    out = {}
    if len(roots) == 1:
        (lam,) = roots
        return {lam: UniPoly([1])}
    for lam, mult in roots.items():
        f = UniPoly.linear(lam) ** mult
        g = relation // f
        s, _, h = uni_gcdex(g, f)
        assert h.degree == 0, "factors of a split polynomial must be coprime"
        out[lam] = (s * g) % relation
    return out


def decompose_element(d: Derivation, p: Poly, caps: Caps | None = None) -> Decomposition:
    """p = sum of components in distinct generalized eigenspaces B_lambda."""
    if not p:
        raise ValueError("the zero polynomial lies in every B_lambda and has no decomposition")
    if d.kind == "diagonal":
        return decompose_diagonal(d, p)
    try:
        ks = krylov_space(d, p, caps)
    except CapExceeded as exc:
        raise NotAlgebraicUpToCaps(exc.cap, exc.limit) from exc
    split = rational_root_split(ks.relation)
    if not split.splits:
        raise NonRationalSpectrum(split.residual, split.roots)
    idem = _idempotents(ks.relation, split.roots)
    parts = []
    for lam in sorted(split.roots):
        comp = ks.combine(idem[lam].coeffs)
        height = shifted_height(d, comp, lam, limit=split.roots[lam])
        parts.append(Part(Eigenvalue(lam), comp, height))
    return Decomposition(tuple(parts))


def decompose_diagonal(d: Derivation, p: Poly) -> Decomposition:
    """Group the monomials of ``p`` by weight; every part has height 0."""
    if d.kind != "diagonal":
        raise ValueError("decompose_diagonal needs a diagonal derivation")
    if p.ring != d.ring:
        raise VariableSetError(f"polynomial ring {p.ring} does not match derivation ring {d.ring}")
    if not p:
        raise ValueError("the zero polynomial lies in every B_lambda and has no decomposition")
    ws = [d.weights[v] for v in d.ring]
    groups: dict = {}
    for m, c in p.terms.items():
        lam = Eigenvalue(0)
        for e, w in zip(m, ws):
            if e:
                lam = lam + w * e
        groups.setdefault(lam, {})[m] = c
    return Decomposition(tuple(Part(lam, Poly(p.ring, groups[lam]), 0) for lam in sorted(groups)))


def mu_height(d: Derivation, p: Poly, mu, caps: Caps | None = None) -> int | None:
    """mu-height of ``p``, or None when ``p`` is not in B_mu."""
    dec = decompose_element(d, p, caps)
    if dec.is_single_at(mu):
        return dec[0].height
    return None


@dataclass(frozen=True)
class Nilpotent:
    index: int  # D^index(p) != 0, D^(index+1)(p) == 0


@dataclass(frozen=True)
class NotNilpotent:
    # None when every nonzero eigenvalue is irrational (no rational witness)
    witness: Eigenvalue | None


@dataclass(frozen=True)
class Undetermined:
    cap: str


def is_nilpotent_element(d: Derivation, p: Poly, caps: Caps | None = None):
    """Nilpotent(r), NotNilpotent(lambda) or Undetermined(cap) for a nonzero ``p``."""
    if not p:
        raise ValueError("nilpotence index of the zero polynomial is not defined")
    if d.kind == "diagonal":
        dec = decompose_diagonal(d, p)
        if dec.is_single_at(0):
            return Nilpotent(0)
        return NotNilpotent(next(pt.lam for pt in dec if not pt.lam.is_zero()))
    try:
        ks = krylov_space(d, p, caps)
    except CapExceeded as exc:
        return Undetermined(exc.cap)
    rel = ks.relation
    if not any(rel.coeffs[:-1]):
        return Nilpotent(rel.degree - 1)
    split = rational_root_split(rel)
    nonzero = [lam for lam in split.roots if lam]
    if nonzero:
        return NotNilpotent(Eigenvalue(min(nonzero)))
    return NotNilpotent(None)


@dataclass(frozen=True)
class LocalNilpotence:
    """``value`` is True, False, or None (undetermined); ``witness`` names a variable."""

    value: bool | None
    witness: str | None
    verdicts: dict

    def __bool__(self):
        return self.value is True


def is_locally_nilpotent(d: Derivation, caps: Caps | None = None) -> LocalNilpotence:
    """Certify local nilpotence from the variables: the nilpotent elements form a subalgebra."""
    verdicts = {}
    for v in d.ring:
        verdicts[v] = is_nilpotent_element(d, Poly.var(d.ring, v), caps)
    for v in d.ring:
        if isinstance(verdicts[v], NotNilpotent):
            return LocalNilpotence(False, v, verdicts)
    if all(isinstance(x, Nilpotent) for x in verdicts.values()):
        return LocalNilpotence(True, None, verdicts)
    return LocalNilpotence(None, None, verdicts)


def spectrum_and_monoid(d: Derivation, caps: Caps | None = None, sum_bound: int = 3):
    """Eigenvalues of each variable and their sums of 1..sum_bound terms.

    Returns ``(generator_eigenvalues, monoid_sample)`` where the first maps
    each variable to a sorted tuple and the second is a sorted list.
    """
    if sum_bound < 1:
        raise ValueError("sum_bound must be positive")
    gens = {}
    for v in d.ring:
        dec = decompose_element(d, Poly.var(d.ring, v), caps)
        gens[v] = tuple(dec.lambdas)
    observed = sorted({lam for lams in gens.values() for lam in lams})
    sample = set(observed)
    frontier = set(observed)
    for _ in range(sum_bound - 1):
        frontier = {a + b for a in frontier for b in observed}
        sample |= frontier
    return gens, sorted(sample)
