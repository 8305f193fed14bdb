from fractions import Fraction

import pytest
import sympy
from hypothesis import settings
from hypothesis import strategies as st

from algder import Poly

settings.register_profile("algder", deadline=None)
settings.load_profile("algder")

RING = ("x", "y")
RING3 = ("x", "y", "z")

coefficients = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.sampled_from([1, 1, 1, 2, 3]),
)


def polys(ring=RING, max_exp=3, max_terms=4):
    mono = st.tuples(*[st.integers(min_value=0, max_value=max_exp) for _ in ring])
    return st.dictionaries(mono, coefficients, max_size=max_terms).map(lambda t: Poly(ring, t))


def nonzero_polys(ring=RING, max_exp=3, max_terms=4):
    return polys(ring, max_exp, max_terms).filter(bool)


def to_sympy(p: Poly):
    syms = sympy.symbols(p.ring)
    expr = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, ring) -> Poly:
    syms = sympy.symbols(ring)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Poly(ring, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


# -- acceptance reporting ----------------------------------------------------

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], "error"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def ring():
    return RING
