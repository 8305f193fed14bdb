import random

import pytest

from algder import Derivation, Eigenvalue, Poly
from algder.verifier import (
    SUITES,
    SuiteReport,
    check_decomposition_laws,
    check_factorially_closed_sample,
    check_phi_shift,
    check_translation_fingerprint,
    fixture_derivations,
    random_poly,
    random_univariate,
    run_suites,
)
from conftest import RING

x, y = Poly.gens(RING)
FIX = fixture_derivations()


def test_random_poly_deterministic():
    a = random_poly(1, RING, 2, 3)
    assert a == random_poly(1, RING, 2, 3)
    assert a.degree() <= 2 and 1 <= len(a.terms) <= 3
    assert random_poly(2, RING, 2, 3) != a
    assert random_poly(random.Random(1), RING, 2, 3) == a


def test_random_poly_bounds_checked():
    with pytest.raises(ValueError):
        random_poly(0, RING, 2, 0)


def test_random_univariate_is_in_one_variable():
    for s in range(20):
        f = random_univariate(s, RING, "x", 4)
        assert f and f.degree_in("y") == 0 and f.degree() <= 4


def test_phi_shift_examples():
    assert check_phi_shift(FIX["x*dx+dy"], x * y, 1, 5)
    for d in FIX.values():
        assert check_phi_shift(d, Poly.const(RING, 1), 0, 3)
    assert check_phi_shift(FIX["euler"], x, 1, 6)


def test_decomposition_laws_examples():
    rng = random.Random(7)
    d = FIX["x*dx+dy"]
    rep = check_decomposition_laws(d, random_poly(rng), random_poly(rng))
    assert rep.passed and rep.cases > 0
    rep = check_decomposition_laws(FIX["euler"], 1 + x, 1 + x)
    assert rep.passed and rep.cases > 0
    formal = Derivation.diagonal(RING, {"x": Eigenvalue.symbol(0), "y": Eigenvalue.symbol(1)})
    rep = check_decomposition_laws(formal, x**2 * y, x * y**3)
    assert rep.passed and rep.cases > 0


def test_decomposition_laws_skips_non_rational():
    rot = Derivation.general(RING, {"x": y, "y": -x})
    rep = check_decomposition_laws(rot, x, y)
    assert rep.passed and rep.cases == 0 and len(rep.skipped) == 1


def test_factorially_closed_examples():
    ys = [(y + 1, y**2), (2 * y - 3, y**3 + y)]
    rep = check_factorially_closed_sample(FIX["x*dx+dy"], ys)
    assert rep.passed and rep.cases == 4
    rep = check_factorially_closed_sample(FIX["y*dy"], [(x + 1, x**2)])
    assert rep.passed and rep.cases == 2
    rep = check_factorially_closed_sample(FIX["y*dy"], [(x, y)])
    assert rep.cases == 0 and rep.skipped == ["D=D; a=x; b=y: product not in B_0"]


def test_translation_fingerprint_passes():
    rep = check_translation_fingerprint(seed=3)
    assert rep.passed
    assert rep.cases == 36 + 20 * 4


def test_report_records_failures():
    rep = SuiteReport("demo", seed=5)
    assert rep.check(True, "a", "ok")
    assert not rep.check(False, "b", "ok", lambda: "bad")
    assert not rep.passed
    assert rep.to_dict() == {
        "suite": "demo",
        "seed": 5,
        "cases": 2,
        "passed": False,
        "failures": [{"input": "b", "expected": "ok", "observed": "bad"}],
        "skipped": [],
    }
    assert rep.summary() == "FAIL demo: 2 cases, 1 failures, 0 skipped (seed 5)"


def test_suites_are_reproducible():
    for name in ("phi-shift", "scaling-fingerprint", "diagonal"):
        a = run_suites(name, seed=11)[0].to_dict()
        b = run_suites(name, seed=11)[0].to_dict()
        assert a == b and a["passed"] and a["seed"] == 11


def test_run_suites_all_pass():
    reports = run_suites("all", seed=42)
    assert [r.name for r in reports] == list(SUITES)
    for r in reports:
        assert r.passed, r.failures[:3]
        assert r.cases > 0


def test_run_suites_unknown():
    with pytest.raises(KeyError):
        run_suites("nope")
