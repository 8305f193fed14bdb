"""Seeded property suites over concrete derivations.

Every suite returns a :class:`SuiteReport`; failures are data, never
exceptions, and each failure carries enough text to reproduce the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Iterable

from .derivation import Derivation, apply, exp_truncated, operator_series, phi_truncated, shifted
from .eigenvalue import Eigenvalue
from .errors import CapExceeded, NonRationalSpectrum
from .invariants import act, check_euler_descends, reynolds, standard_groups
from .poly import Poly
from .spectral import (
    Caps,
    Nilpotent,
    NotNilpotent,
    decompose_diagonal,
    decompose_element,
    is_nilpotent_element,
    mu_height,
)

RING = ("x", "y")
LAMBDA_POOL = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))
COEFF_POOL = tuple([Fraction(k) for k in range(-9, 10) if k] + [Fraction(k, 2) for k in range(-9, 10, 2)])


@dataclass
class Failure:
    input: str
    expected: str
    observed: str


@dataclass
class SuiteReport:
    name: str
    seed: int | None = None
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, input: str, expected: str, observed: Callable[[], str] | str = "violated"):
        self.cases += 1
        if not ok:
            self.failures.append(Failure(input, expected, observed() if callable(observed) else observed))
        return ok

    def skip(self, input: str, reason: str):
        self.skipped.append(f"{input}: {reason}")

    def merge(self, other: SuiteReport):
        self.cases += other.cases
        self.failures.extend(other.failures)
        self.skipped.extend(other.skipped)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failures": [vars(f) for f in self.failures],
            "skipped": list(self.skipped),
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.cases} cases, {len(self.failures)} failures, {len(self.skipped)} skipped"
        if self.seed is not None:
            line += f" (seed {self.seed})"
        return line


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_poly(seed, ring=RING, max_degree: int = 3, max_terms: int = 4) -> Poly:
    """Deterministic sparse polynomial; never zero."""
    if max_degree < 0 or max_terms <= 0:
        raise ValueError("bounds must be positive")
    rng = _rng(seed)
    ring = tuple(ring)
    n = len(ring)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        mono = [0] * n
        for _ in range(deg):
            mono[rng.randrange(n)] += 1
        terms[tuple(mono)] = rng.choice(COEFF_POOL)
    return Poly(ring, terms)


def random_univariate(seed, ring, var: str, max_degree: int = 4) -> Poly:
    """Random nonzero polynomial in the single variable ``var``."""
    rng = _rng(seed)
    i = ring.index(var)
    deg = rng.randint(0, max_degree)
    terms = {}
    for e in range(deg + 1):
        if e == deg or rng.random() < 0.6:
            mono = tuple(e if j == i else 0 for j in range(len(ring)))
            terms[mono] = rng.choice(COEFF_POOL)
    return Poly(tuple(ring), terms)


def fixture_derivations(ring=RING) -> dict:
    """Two-variable derivations used throughout the suites."""
    x, y = (Poly.var(ring, v) for v in ring)
    one = Poly.const(ring, 1)
    zero = Poly.zero(ring)
    return {
        "euler": Derivation.general(ring, {"x": x, "y": y}),
        "x*dx+dy": Derivation.general(ring, {"x": x, "y": one}),
        "y*dy": Derivation.general(ring, {"x": zero, "y": y}),
        "dx": Derivation.general(ring, {"x": one, "y": zero}),
        "dx+y*dy": Derivation.general(ring, {"x": one, "y": y}),
    }


def non_algebraic_derivation(n: int) -> Derivation:
    """D = x^(n-1) y^n (x d/dx - y d/dy)."""
    ring = RING
    x, y = (Poly.var(ring, v) for v in ring)
    f = x ** (n - 1) * y ** n
    return Derivation.general(ring, {"x": f * x, "y": -(f * y)})


# -- individual checks -------------------------------------------------------


def check_phi_shift(d: Derivation, p: Poly, lam, order: int = 8) -> bool:
    """phi_D(p) == exp(lam t) * phi_{D - lam}(p), coefficientwise up to t^order."""
    lhs = phi_truncated(d, p, order)
    rhs = exp_truncated(lam, order) * operator_series(shifted(d, lam), p, order)
    return lhs.coefficients == rhs.coefficients


def _monomial_weight(d: Derivation, m) -> Eigenvalue:
    lam = Eigenvalue(0)
    for v, e in zip(d.ring, m):
        lam = lam + d.weights[v] * e
    return lam


def _annihilation_holds(d: Derivation, c: Poly, lam: Eigenvalue, h: int) -> bool:
    if not d.is_rational:
        # formal weights: (D - lam) scales each monomial by its weight minus lam
        return h == 0 and bool(c) and all(_monomial_weight(d, m) == lam for m in c.terms)
    delta = shifted(d, lam)
    cur = c
    for _ in range(h):
        cur = delta(cur)
    return bool(cur) and not delta(cur)


def _describe(d_name, *polys) -> str:
    return f"D={d_name}; " + "; ".join(f"{k}={v}" for k, v in polys)


def check_decomposition_laws(d: Derivation, p: Poly, q: Poly, caps: Caps | None = None, name: str = "D") -> SuiteReport:
    """Reconstruction, annihilation, uniqueness, D-stability, product grading, B_0 closure."""
    report = SuiteReport("decomposition-laws")
    decs = {}
    for label, f in (("p", p), ("q", q)):
        try:
            decs[label] = decompose_element(d, f, caps)
        except (CapExceeded, NonRationalSpectrum) as exc:
            report.skip(_describe(name, (label, f)), f"{exc.kind}")
            return report
    for label, f in (("p", p), ("q", q)):
        dec = decs[label]
        where = _describe(name, (label, f))
        report.check(dec.total() == f, where, "components sum to input", lambda: str(dec.total()))
        lams = dec.lambdas
        report.check(all(a < b for a, b in zip(lams, lams[1:])), where, "lambdas strictly increasing", str(lams))
        for pt in dec:
            pw = _describe(name, (label, f), ("lambda", pt.lam), ("component", pt.component))
            report.check(bool(pt.component), pw, "component nonzero")
            report.check(_annihilation_holds(d, pt.component, pt.lam, pt.height), pw,
                         f"(D-lambda)^{pt.height} != 0 and (D-lambda)^{pt.height + 1} == 0")
            again = decompose_element(d, pt.component, caps)
            report.check(len(again) == 1 and again[0] == pt, pw, "component decomposes to itself",
                         lambda: str([(a.lam, str(a.component), a.height) for a in again]))
            # with formal weights D(c) = lam*c is not a rational polynomial; stability follows from annihilation
            image = apply(d, pt.component) if d.is_rational else None
            if image:
                dimg = decompose_element(d, image, caps)
                report.check(dimg.is_single_at(pt.lam), pw, f"D(component) in B_{pt.lam}", lambda: str(dimg.lambdas))
    for a, b in product(decs["p"], decs["q"]):
        prod = a.component * b.component
        where = _describe(name, ("c_lambda", a.component), ("c_mu", b.component))
        dprod = decompose_element(d, prod, caps)
        report.check(dprod.is_single_at(a.lam + b.lam), where, f"product in B_{a.lam + b.lam}", lambda: str(dprod.lambdas))
    zp, zq = decs["p"].component(0), decs["q"].component(0)
    if zp is not None and zq is not None:
        where = _describe(name, ("a0", zp), ("b0", zq))
        s = zp + zq
        if s:
            report.check(decompose_element(d, s, caps).is_single_at(0), where, "sum of B_0 elements in B_0")
        report.check(decompose_element(d, zp * zq, caps).is_single_at(0), where, "product of B_0 elements in B_0")
    return report


def check_factorially_closed_sample(d: Derivation, pairs: Iterable, caps: Caps | None = None, name: str = "D") -> SuiteReport:
    """For ab in B_0, both a and b must lie in B_0; pairs with ab outside B_0 are skipped."""
    report = SuiteReport("factorially-closed")
    for a, b in pairs:
        where = _describe(name, ("a", a), ("b", b))
        prod = a * b
        if not prod:
            report.skip(where, "zero product")
            continue
        if not decompose_element(d, prod, caps).is_single_at(0):
            report.skip(where, "product not in B_0")
            continue
        report.check(decompose_element(d, a, caps).is_single_at(0), where, "a in B_0")
        report.check(decompose_element(d, b, caps).is_single_at(0), where, "b in B_0")
    return report


def check_translation_fingerprint(seed: int = 0, samples: int = 20) -> SuiteReport:
    """D = d/dx + y d/dy: x^m y^n is nilpotent iff n = 0, and the n-height of f(x) y^n is deg f."""
    report = SuiteReport("translation-fingerprint", seed)
    d = fixture_derivations()["dx+y*dy"]
    for m, n in product(range(6), repeat=2):
        p = Poly.monomial(RING, (m, n))
        verdict = is_nilpotent_element(d, p)
        expected = Nilpotent(m) if n == 0 else NotNilpotent(Eigenvalue(n))
        report.check(verdict == expected, f"x^{m}*y^{n}", str(expected), str(verdict))
    rng = _rng(seed)
    y = Poly.var(RING, "y")
    for k in range(samples):
        f = random_univariate(rng, RING, "x", 4)
        for n in range(4):
            p = f * y ** n
            h = mu_height(d, p, n)
            report.check(h == f.degree(), f"sample {k}: f={f}, n={n}", f"height {f.degree()}", str(h))
    return report


def check_scaling_fingerprint(seed: int = 0, samples: int = 20) -> SuiteReport:
    """D = y d/dy: x^m y^n is a single part at n of height 0; B_0 = Q[x] is factorially closed."""
    report = SuiteReport("scaling-fingerprint", seed)
    d = fixture_derivations()["y*dy"]
    for m, n in product(range(6), repeat=2):
        p = Poly.monomial(RING, (m, n))
        dec = decompose_element(d, p)
        ok = dec.is_single_at(n) and dec[0].height == 0 and dec[0].component == p
        report.check(ok, f"x^{m}*y^{n}", f"single part at {n}, height 0", str([(pt.lam, pt.height) for pt in dec]))
    rng = _rng(seed)
    pairs = [(random_univariate(rng, RING, "x", 3), random_univariate(rng, RING, "x", 3)) for _ in range(samples)]
    pairs.append((Poly.var(RING, "x") + 1, Poly.var(RING, "x") ** 2))
    pairs.append((Poly.var(RING, "x") * Poly.var(RING, "y"), Poly.const(RING, 1)))
    report.merge(check_factorially_closed_sample(d, pairs, name="y*dy"))
    return report


def check_diagonal(seed: int = 0, samples: int = 50) -> SuiteReport:
    """Formal weights: monomials are eigenvectors; weights (1,1) reproduce the Euler decomposition."""
    report = SuiteReport("diagonal", seed)
    w1, w2 = Eigenvalue.symbol(0), Eigenvalue.symbol(1)
    formal = Derivation.diagonal(RING, {"x": w1, "y": w2}, ("w1", "w2"))
    for m1, m2 in product(range(6), repeat=2):
        p = Poly.monomial(RING, (m1, m2))
        dec = decompose_diagonal(formal, p)
        expected = w1 * m1 + w2 * m2
        report.check(dec.is_single_at(expected) and dec[0].height == 0, f"x^{m1}*y^{m2}",
                     f"single part at {expected}", str(dec.lambdas))
    unit = Derivation.diagonal(RING, {"x": 1, "y": 1})
    euler = fixture_derivations()["euler"]
    rng = _rng(seed)
    for k in range(samples):
        p = random_poly(rng, RING, 4, 5)
        report.check(decompose_diagonal(unit, p) == decompose_element(euler, p), f"sample {k}: p={p}",
                     "diagonal (1,1) decomposition equals Euler decomposition")
    return report


def check_phi_shift_suite(seed: int = 0, cases: int = 200, order: int = 8) -> SuiteReport:
    report = SuiteReport("phi-shift", seed)
    pool = fixture_derivations()
    names = ["euler", "x*dx+dy", "y*dy", "dx"]
    rng = _rng(seed)
    for k in range(cases):
        name = names[k % len(names)]
        p = random_poly(rng, RING, 3, 4)
        lam = rng.choice(LAMBDA_POOL)
        report.check(check_phi_shift(pool[name], p, lam, order), f"case {k}: D={name}; p={p}; lambda={lam}; N={order}",
                     "phi_D = exp(lambda t) phi_(D-lambda)")
    return report


def check_decomposition_suite(seed: int = 0, pairs: int = 100, caps: Caps | None = None) -> SuiteReport:
    report = SuiteReport("decomposition-laws", seed)
    rng = _rng(seed)
    for name, d in fixture_derivations().items():
        for _ in range(pairs):
            p = random_poly(rng, RING, 3, 4)
            q = random_poly(rng, RING, 3, 4)
            report.merge(check_decomposition_laws(d, p, q, caps, name=name))
    return report


def check_factorially_closed_suite(seed: int = 0, samples: int = 20) -> SuiteReport:
    """Curated fixtures where the total-order hypothesis holds (Lambda >= 0 in Z)."""
    report = SuiteReport("factorially-closed", seed)
    rng = _rng(seed)
    pools = fixture_derivations()
    # x d/dx + d/dy: B_0 = Q[y]
    pairs = [(random_univariate(rng, RING, "y", 3), random_univariate(rng, RING, "y", 3)) for _ in range(samples)]
    pairs += [(random_poly(rng, RING, 2, 3), random_poly(rng, RING, 2, 3)) for _ in range(samples)]
    report.merge(check_factorially_closed_sample(pools["x*dx+dy"], pairs, name="x*dx+dy"))
    # y d/dy: B_0 = Q[x]
    pairs = [(random_univariate(rng, RING, "x", 3), random_univariate(rng, RING, "x", 3)) for _ in range(samples)]
    pairs.append((Poly.var(RING, "x") + 1, Poly.var(RING, "x") ** 2))
    report.merge(check_factorially_closed_sample(pools["y*dy"], pairs, name="y*dy"))
    return report


def check_invariant_descent_suite(seed: int = 0, samples: int = 50) -> SuiteReport:
    """Euler derivation on invariants: invariance preserved, D(f) = n f on degree-n invariants."""
    report = SuiteReport("invariant-descent", seed)
    rng = _rng(seed)
    euler = Derivation.euler(RING)
    for gname, group in standard_groups().items():
        found = 0
        attempts = 0
        while found < samples and attempts < 20 * samples:
            attempts += 1
            f = reynolds(group, random_poly(rng, RING, 4, 5))
            if not f:
                continue
            found += 1
            pieces = [f] + _homogeneous_parts(f)
            for piece in pieces:
                rep = check_euler_descends(group, piece)
                report.check(rep.passed, f"group={gname}; f={piece}", "D(f) invariant and D(f) = deg*f when homogeneous")
        report.check(found == samples, f"group={gname}", f"{samples} nonzero Reynolds images", str(found))
        for _ in range(samples):
            p = random_poly(rng, RING, 4, 5)
            for g in group:
                report.check(act(g, apply(euler, p)) == apply(euler, act(g, p)), f"group={gname}; g={g.to_lists()}; p={p}",
                             "act(g, D(p)) == D(act(g, p))")
    return report


def _homogeneous_parts(f: Poly) -> list:
    parts: dict = {}
    for m, c in f.terms.items():
        parts.setdefault(sum(m), {})[m] = c
    if len(parts) == 1:
        return []
    return [Poly(f.ring, t) for _, t in sorted(parts.items())]


def check_examples() -> SuiteReport:
    """Golden values from the Euler, x d/dx + d/dy and non-algebraic examples."""
    report = SuiteReport("examples")
    ring3 = ("x", "y", "z")
    euler3 = Derivation.euler(ring3)
    for mono in product(range(7), repeat=3):
        if sum(mono) > 6:
            continue
        p = Poly.monomial(ring3, mono)
        dec = decompose_element(euler3, p)
        report.check(dec.is_single_at(sum(mono)) and dec[0].height == 0, f"euler3 x^{mono}", f"single part at {sum(mono)}")
    d = fixture_derivations()["x*dx+dy"]
    for n, m in product(range(7), repeat=2):
        got = apply(d, Poly.monomial(RING, (n, m)))
        want = Poly.monomial(RING, (n, m), n) + (Poly.monomial(RING, (n, m - 1), m) if m else 0)
        report.check(got == want, f"x*dx+dy on x^{n}*y^{m}", str(want), str(got))
    for n in (1, 2):
        dn = non_algebraic_derivation(n)
        cur = Poly.var(RING, "y")
        for k in range(1, 7):
            cur = apply(dn, cur)
            want = Poly.monomial(RING, (k * (n - 1), k * n + 1), (-1) ** k * factorial(k))
            report.check(cur == want, f"non-algebraic n={n}: D^{k}(y)", str(want), str(cur))
    return report


SUITES = {
    "examples": lambda seed: check_examples(),
    "phi-shift": lambda seed: check_phi_shift_suite(seed),
    "decomposition-laws": lambda seed: check_decomposition_suite(seed),
    "factorially-closed": lambda seed: check_factorially_closed_suite(seed),
    "translation-fingerprint": lambda seed: check_translation_fingerprint(seed),
    "scaling-fingerprint": lambda seed: check_scaling_fingerprint(seed),
    "diagonal": lambda seed: check_diagonal(seed),
    "invariant-descent": lambda seed: check_invariant_descent_suite(seed),
}


def run_suites(name: str = "all", seed: int = 0) -> list:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    reports = []
    for n in names:
        rep = SUITES[n](seed)
        rep.seed = seed if rep.seed is None else rep.seed
        reports.append(rep)
    return reports
