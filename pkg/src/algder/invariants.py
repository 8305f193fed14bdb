"""Finite linear group actions on Q[x1..xr], Reynolds averaging, and the
descent of the Euler derivation to the invariant ring."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .derivation import Derivation, apply
from .errors import (
    GroupTooLargeError,
    NonInvertibleGeneratorError,
    NonSquareMatrixError,
    NotInvariantError,
    VariableSetError,
)
from .linalg import QMatrix, rank
from .poly import Poly, substitute

DEFAULT_GROUP_CAP = 4096


@dataclass(frozen=True)
class MatrixGroup:
    """A finite subgroup of GL(r, Q) with its elements enumerated."""

    dimension: int
    generators: tuple
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.elements


def enumerate_group(generators: Sequence[QMatrix], cap: int = DEFAULT_GROUP_CAP) -> MatrixGroup:
    """Breadth-first closure from the identity, generators tried in the given order."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    r = gens[0].rows
    for g in gens:
        if not g.is_square or g.rows != r:
            raise NonSquareMatrixError(f"generators must all be {r}x{r}")
        if rank(g) != r:
            raise NonInvertibleGeneratorError(f"generator {g.to_lists()} is singular")
    ident = QMatrix.identity(r)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        h = queue.popleft()
        for g in gens:
            k = g @ h
            if k not in seen:
                if len(order) >= cap:
                    raise GroupTooLargeError(cap)
                seen.add(k)
                order.append(k)
                queue.append(k)
    return MatrixGroup(r, gens, tuple(order))


def act(g: QMatrix, p: Poly) -> Poly:
    """Linear action: x_i goes to g(e_i) = sum_j g[j, i] x_j.

    This is a left action, act(g @ h, p) == act(g, act(h, p)).
    """
    r = len(p.ring)
    if not g.is_square or g.rows != r:
        raise VariableSetError(f"{g.rows}x{g.cols} matrix cannot act on {r} variables")
    xs = Poly.gens(p.ring)
    images = {}
    for i, v in enumerate(p.ring):
        img = Poly.zero(p.ring)
        for j in range(r):
            c = g[j, i]
            if c:
                img = img + xs[j].scale(c)
        images[v] = img
    return substitute(p, images)


def reynolds(group: MatrixGroup, p: Poly) -> Poly:
    """Average of ``p`` over the group; always invariant."""
    total = Poly.zero(p.ring)
    for g in group:
        total = total + act(g, p)
    return total.scale(Fraction(1, group.order))


def is_invariant(group: MatrixGroup, p: Poly) -> bool:
    return all(act(g, p) == p for g in group.generators)


@dataclass(frozen=True)
class EulerDescentReport:
    invariant: Poly
    image: Poly
    image_invariant: bool
    degree: int | None  # set when the invariant is homogeneous
    degree_map_holds: bool | None

    @property
    def passed(self) -> bool:
        return self.image_invariant and self.degree_map_holds is not False

    @property
    def nontrivial(self) -> bool:
        return bool(self.image)


def check_euler_descends(group: MatrixGroup, p: Poly) -> EulerDescentReport:
    """Check that the Euler derivation maps the invariant ``p`` into the invariant ring.

    Raises NotInvariantError naming the first group element that moves ``p``.
    """
    for g in group:
        if act(g, p) != p:
            raise NotInvariantError(g)
    euler = Derivation.euler(p.ring)
    image = apply(euler, p)
    image_invariant = all(act(g, image) == image for g in group)
    degree = None
    holds = None
    if p and p.is_homogeneous():
        degree = p.degree()
        holds = image == p.scale(degree)
    return EulerDescentReport(p, image, image_invariant, degree, holds)


def minus_identity(r: int = 2) -> QMatrix:
    return QMatrix.identity(r).scale(-1)


def rotation_quarter() -> QMatrix:
    return QMatrix.from_rows([[0, -1], [1, 0]])


def swap() -> QMatrix:
    return QMatrix.from_rows([[0, 1], [1, 0]])


def standard_groups() -> dict:
    """The order-2 sign group, the order-4 rotation group and the swap group on Q^2."""
    return {
        "minus-identity": enumerate_group([minus_identity(2)]),
        "rotation-4": enumerate_group([rotation_quarter()]),
        "swap": enumerate_group([swap()]),
    }
