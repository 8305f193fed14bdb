"""Expression parser, canonical printer and spec-file loaders.

Grammar (no implicit multiplication)::

    expr     := ["+" | "-"] term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" integer)?
    base     := rational | variable | "(" expr ")"
    rational := integer ("/" positive-integer)?
    variable := lowercase letter followed by letters/digits
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import yaml

from .derivation import Derivation
from .eigenvalue import Eigenvalue
from .errors import ParseError, UnknownVariableError
from .linalg import QMatrix
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))")
_VARIABLE = re.compile(r"[a-z][A-Za-z0-9]*\Z")
_RATIONAL = re.compile(r"(-?\d+)(?:/(\d+))?\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: tuple):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self) -> Poly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"unexpected {tok[1]!r}")
        return result

    def expr(self) -> Poly:
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.advance()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if tok[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok[0] == "op" and exp_tok[1] == "-":
                self.fail("negative exponent", exp_tok)
            if exp_tok[0] != "int":
                self.fail("exponent must be a non-negative integer", exp_tok)
            self.advance()
            return base ** int(exp_tok[1])
        return base

    def base(self) -> Poly:
        tok = self.peek()
        kind, value, pos = tok
        if kind == "int":
            self.advance()
            num = int(value)
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok[0] != "int" or int(den_tok[1]) == 0:
                    self.fail("denominator must be a positive integer", den_tok)
                self.advance()
                return Poly.const(self.ring, Fraction(num, int(den_tok[1])))
            return Poly.const(self.ring, num)
        if kind == "name":
            if value not in self.ring:
                raise ParseError(f"unknown variable {value!r}", pos, self.text)
            self.advance()
            return Poly.var(self.ring, value)
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.fail(f"unexpected {value or 'end of input'!r}")


def parse_poly(text: str, ring: Sequence[str]) -> Poly:
    """Parse ``text`` into a canonical Poly over ``ring``."""
    ring = tuple(ring)
    for v in ring:
        if not _VARIABLE.match(v):
            raise ParseError(f"invalid variable name {v!r}")
    return _Parser(text, ring).parse()


def format_rational(c: Fraction) -> str:
    return str(c)


def format_poly(p: Poly) -> str:
    """Canonical text: descending graded-lex, explicit ``*`` and ``^``."""
    if not p.terms:
        return "0"
    pieces = []
    for mono, c in p.sorted_terms(descending=True):
        factors = []
        for name, e in zip(p.ring, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        pieces.append((c < 0, body))
    neg, body = pieces[0]
    out = ("-" if neg else "") + body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def parse_eigenvalue(text, symbols: Sequence[str] = ()) -> Eigenvalue:
    """Parse a rational affine combination of weight symbols."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Eigenvalue(text)
    if not isinstance(text, str):
        raise ParseError(f"weight must be given as an exact string, got {type(text).__name__}")
    symbols = tuple(symbols)
    p = parse_poly(text, symbols)
    if p.degree() > 1:
        raise ParseError(f"weight expression {text!r} is not affine in the weight symbols")
    weights = []
    for i in range(len(symbols)):
        mono = tuple(1 if j == i else 0 for j in range(len(symbols)))
        weights.append(p.coefficient(mono))
    return Eigenvalue(p.constant_value(), weights)


def format_eigenvalue(lam: Eigenvalue, symbols: Sequence[str] = ()) -> str:
    return lam.format(list(symbols) if symbols else None)


@dataclass
class DerivationSpec:
    """Deserialized derivation file."""

    vars: list
    mode: str
    images: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    weight_symbols: list = field(default_factory=list)

    def build(self) -> Derivation:
        ring = tuple(self.vars)
        if self.mode == "general":
            return Derivation.general(ring, {v: parse_poly(self.images[v], ring) for v in ring})
        ws = {v: parse_eigenvalue(self.weights[v], self.weight_symbols) for v in ring}
        return Derivation.diagonal(ring, ws, self.weight_symbols)


def _exact_string(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: coefficients must be exact strings or integers, got {value!r}")
    if isinstance(value, int):
        return str(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected an expression string, got {type(value).__name__}")
    return value


def _load_yaml(source):
    if isinstance(source, (str, Path)) and Path(source).exists():
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raise FileNotFoundError(str(source))
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed spec file: {exc}".splitlines()[0]) from exc
    if not isinstance(data, dict):
        raise ParseError("spec file must be a mapping")
    return data


def parse_derivation_spec(data: dict) -> DerivationSpec:
    vars_ = data.get("vars")
    if not isinstance(vars_, list) or not vars_ or not all(isinstance(v, str) for v in vars_):
        raise ParseError("spec needs a non-empty 'vars' list of names")
    for v in vars_:
        if not _VARIABLE.match(v):
            raise ParseError(f"invalid variable name {v!r}")
    if len(set(vars_)) != len(vars_):
        raise ParseError("duplicate variable names")
    mode = data.get("mode", "general")
    if mode not in ("general", "diagonal"):
        raise ParseError(f"mode must be 'general' or 'diagonal', got {mode!r}")
    if mode == "general":
        images = data.get("images") or {}
        missing = [v for v in vars_ if v not in images]
        if missing:
            raise UnknownVariableError(f"no image for variables {missing}")
        extra = sorted(set(images) - set(vars_))
        if extra:
            raise UnknownVariableError(f"images for undeclared variables {extra}")
        imgs = {v: _exact_string(images[v], f"image of {v}") for v in vars_}
        return DerivationSpec(list(vars_), mode, images=imgs)
    symbols = list(data.get("weight_symbols") or [])
    for s in symbols:
        if not isinstance(s, str) or not _VARIABLE.match(s):
            raise ParseError(f"invalid weight symbol {s!r}")
    weights = data.get("weights") or {}
    missing = [v for v in vars_ if v not in weights]
    if missing:
        raise UnknownVariableError(f"no weight for variables {missing}")
    ws = {v: _exact_string(weights[v], f"weight of {v}") for v in vars_}
    return DerivationSpec(list(vars_), mode, weights=ws, weight_symbols=symbols)


def load_derivation_spec(source) -> DerivationSpec:
    """Read a derivation file (path or YAML text)."""
    return parse_derivation_spec(_load_yaml(source))


def load_derivation(source) -> Derivation:
    return load_derivation_spec(source).build()


@dataclass
class GroupSpec:
    dimension: int
    generators: list

    def matrices(self) -> list:
        return [QMatrix.from_rows([[Fraction(e) for e in row] for row in g]) for g in self.generators]


def parse_group_spec(data: dict) -> GroupSpec:
    dim = data.get("dimension")
    if not isinstance(dim, int) or dim <= 0:
        raise ParseError("group spec needs a positive integer 'dimension'")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ParseError("group spec needs a non-empty 'generators' list")
    out = []
    for k, g in enumerate(gens):
        if not isinstance(g, list) or len(g) != dim or any(not isinstance(r, list) or len(r) != dim for r in g):
            raise ParseError(f"generator {k} is not a {dim}x{dim} matrix")
        rows = []
        for row in g:
            entries = []
            for e in row:
                s = _exact_string(e, f"generator {k}")
                m = _RATIONAL.match(s.strip())
                if not m or (m.group(2) is not None and int(m.group(2)) == 0):
                    raise ParseError(f"generator {k}: {s!r} is not an exact rational p/q")
                entries.append(str(Fraction(s.strip())))
            rows.append(entries)
        out.append(rows)
    return GroupSpec(dim, out)


def load_group_spec(source) -> GroupSpec:
    return parse_group_spec(_load_yaml(source))
