import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algder import Derivation, Poly, QMatrix, act, apply, check_euler_descends, enumerate_group, reynolds
from algder.errors import (
    GroupTooLargeError,
    NonInvertibleGeneratorError,
    NotInvariantError,
    VariableSetError,
)
from algder.invariants import is_invariant, minus_identity, rotation_quarter, standard_groups, swap
from conftest import RING, polys

x, y = Poly.gens(RING)
GROUPS = standard_groups()
groups = st.sampled_from(sorted(GROUPS)).map(GROUPS.get)
EULER = Derivation.euler(RING)


def test_enumerate_examples():
    g = enumerate_group([minus_identity()])
    assert g.order == 2 and g.elements == (QMatrix.identity(2), minus_identity())
    r = enumerate_group([rotation_quarter()])
    assert r.order == 4
    assert r.elements[1] == rotation_quarter()
    assert enumerate_group([swap()]).order == 2


def test_enumerate_closure():
    for group in GROUPS.values():
        assert QMatrix.identity(2) in group
        for a in group:
            for b in group:
                assert a @ b in group


def test_enumerate_errors():
    with pytest.raises(GroupTooLargeError):
        enumerate_group([QMatrix.from_rows([[1, 1], [0, 1]])], cap=50)
    with pytest.raises(NonInvertibleGeneratorError):
        enumerate_group([QMatrix.from_rows([[1, 2], [2, 4]])])


def test_act_examples():
    assert act(swap(), x**2 - y**2) == y**2 - x**2
    assert act(minus_identity(), x * y) == x * y
    p = x**3 - 2 * x * y + 5
    assert act(QMatrix.identity(2), p) == p
    # x goes to the first column (0, 1) -> y; y goes to the second column (-1, 0) -> -x
    assert act(rotation_quarter(), x) == y
    assert act(rotation_quarter(), y) == -x


def test_act_dimension_mismatch():
    with pytest.raises(VariableSetError):
        act(QMatrix.identity(3), x)


def test_reynolds_examples():
    g = GROUPS["minus-identity"]
    assert reynolds(g, x**2) == x**2
    assert reynolds(g, x) == 0
    assert reynolds(GROUPS["swap"], x) == (x + y) / 2


def test_euler_descends_examples():
    rep = check_euler_descends(GROUPS["minus-identity"], x * y)
    assert rep.image == 2 * x * y and rep.image_invariant and rep.degree == 2 and rep.passed
    rep = check_euler_descends(GROUPS["swap"], x + y)
    assert rep.image == x + y and rep.degree == 1 and rep.passed
    p = x**2 + y**2
    rep = check_euler_descends(GROUPS["rotation-4"], p)
    assert rep.image == 2 * p and rep.passed and rep.nontrivial


def test_euler_descends_rejects_non_invariant():
    with pytest.raises(NotInvariantError) as exc:
        check_euler_descends(GROUPS["minus-identity"], x)
    assert exc.value.witness == minus_identity()


def test_euler_descends_inhomogeneous():
    p = x**2 + y**2 + 3
    rep = check_euler_descends(GROUPS["rotation-4"], p)
    assert rep.degree is None and rep.degree_map_holds is None and rep.passed


@given(groups, polys())
@settings(max_examples=60)
def test_act_is_left_action(group, p):
    for g in group:
        for h in group:
            assert act(g @ h, p) == act(g, act(h, p))


@given(groups, polys(max_exp=4, max_terms=5))
@settings(max_examples=60)
def test_reynolds_is_projector(group, p):
    r = reynolds(group, p)
    assert reynolds(group, r) == r
    assert all(act(g, r) == r for g in group)
    assert is_invariant(group, r)


@given(groups, polys(max_exp=4, max_terms=5))
@settings(max_examples=60)
def test_euler_descends_on_reynolds_images(group, p):
    r = reynolds(group, p)
    if r:
        assert check_euler_descends(group, r).passed


@given(groups, polys(max_exp=4, max_terms=5))
@settings(max_examples=60)
def test_euler_commutes_with_action(group, p):
    for g in group:
        assert act(g, apply(EULER, p)) == apply(EULER, act(g, p))
