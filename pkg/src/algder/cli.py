"""Command-line surface.

Exit codes: 0 success, 1 domain error or inconclusive result (caps hit,
non-rational spectrum, failed suite), 2 usage error (bad flags, unreadable
files, malformed expressions). Error lines go to stderr as
``error[<kind>]: <detail>`` on a single line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .derivation import DEFAULT_ORDER, phi_truncated
from .eigenvalue import Eigenvalue
from .errors import AlgderError, CapExceeded, ParseError
from .invariants import check_euler_descends, enumerate_group, reynolds
from .parsing import format_poly, load_derivation_spec, load_group_spec, parse_eigenvalue, parse_poly
from .poly import Poly
from .spectral import (
    Caps,
    Nilpotent,
    NotNilpotent,
    decompose_element,
    is_locally_nilpotent,
    is_nilpotent_element,
    krylov_space,
    mu_height,
    spectrum_and_monoid,
)
from .verifier import SUITES, run_suites


class UsageError(Exception):
    pass


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algder", description="Locally finite derivations on Q[x1..xn].")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--cap-dim", type=int, default=Caps.max_krylov_dim)
    common.add_argument("--cap-deg", type=int, default=Caps.max_degree)
    common.add_argument("--cap-iter", type=int, default=Caps.max_iterations)

    with_spec = argparse.ArgumentParser(add_help=False, parents=[common])
    with_spec.add_argument("--spec", required=True, help="derivation spec file (YAML)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[with_spec], help="generalized-eigenspace decomposition")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("algebraic", parents=[with_spec], help="Krylov dimension of an element")
    p.add_argument("--poly", required=True)

    p = sub.add_parser("nilpotent", parents=[with_spec], help="nilpotence of an element or of D")
    p.add_argument("--poly", help="element to test; omit to test local nilpotence of D")

    p = sub.add_parser("height", parents=[with_spec], help="mu-height of an element")
    p.add_argument("--poly", required=True)
    p.add_argument("--mu", required=True, help="eigenvalue expression")

    p = sub.add_parser("phi", parents=[with_spec], help="truncated exponential series phi_D")
    p.add_argument("--poly", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("spectrum", parents=[with_spec], help="generator eigenvalues and monoid sample")
    p.add_argument("--sum-bound", type=int, default=3)

    p = sub.add_parser("invariants", parents=[common], help="Euler derivation on Reynolds invariants")
    p.add_argument("--group", required=True, help="group spec file (YAML)")
    p.add_argument("--max-deg", type=int, default=4)

    p = sub.add_parser("check", parents=[common], help="run property suites")
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    return parser


def _caps(args) -> Caps:
    try:
        return Caps(args.cap_dim, args.cap_deg, args.cap_iter)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_spec(path):
    try:
        spec = load_derivation_spec(path)
        return spec, spec.build()
    except FileNotFoundError:
        raise UsageError(f"cannot read spec file {path!r}") from None
    except (ParseError, AlgderError) as exc:
        raise UsageError(f"invalid spec file {path!r}: {exc}") from None


def _parse_poly_arg(text, ring) -> Poly:
    try:
        return parse_poly(text, ring)
    except ParseError as exc:
        raise UsageError(f"--poly: {exc}") from None


def _lam(lam: Eigenvalue, symbols) -> str:
    return lam.format(list(symbols) if symbols else None)


def _emit(args, data: dict, lines: list, out):
    if args.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _cmd_decompose(args, out):
    spec, d = _load_spec(args.spec)
    p = _parse_poly_arg(args.poly, d.ring)
    if not p:
        raise UsageError("--poly: the zero polynomial has no decomposition")
    dec = decompose_element(d, p, _caps(args))
    syms = spec.weight_symbols
    parts = [{"lambda": _lam(pt.lam, syms), "component": format_poly(pt.component), "height": pt.height} for pt in dec]
    lines = [f"lambda={x['lambda']} height={x['height']}: {x['component']}" for x in parts]
    _emit(args, {"input": format_poly(p), "parts": parts}, lines, out)
    return 0


def _cmd_algebraic(args, out):
    spec, d = _load_spec(args.spec)
    p = _parse_poly_arg(args.poly, d.ring)
    if not p:
        _emit(args, {"result": "finite", "dim": 0}, ["finite dim=0"], out)
        return 0
    if d.kind == "diagonal":
        n = len(decompose_element(d, p))
        _emit(args, {"result": "finite", "dim": n}, [f"finite dim={n}"], out)
        return 0
    try:
        ks = krylov_space(d, p, _caps(args))
    except CapExceeded as exc:
        _emit(args, {"result": "unknown-up-to-caps", "cap": exc.cap},
              [f"unknown-up-to-caps (cap={exc.cap})"], out)
        return 1
    _emit(args, {"result": "finite", "dim": ks.dim, "minimal_polynomial": str(ks.relation)},
          [f"finite dim={ks.dim}", f"minimal polynomial: {ks.relation}"], out)
    return 0


def _verdict_dict(v, syms):
    if isinstance(v, Nilpotent):
        return {"verdict": "nilpotent", "index": v.index}
    if isinstance(v, NotNilpotent):
        return {"verdict": "not-nilpotent", "witness": None if v.witness is None else _lam(v.witness, syms)}
    return {"verdict": "undetermined", "cap": v.cap}


def _verdict_line(vd):
    if vd["verdict"] == "nilpotent":
        return f"nilpotent index={vd['index']}"
    if vd["verdict"] == "not-nilpotent":
        return f"not-nilpotent witness={vd['witness'] if vd['witness'] is not None else 'irrational'}"
    return f"undetermined (cap={vd['cap']})"


def _cmd_nilpotent(args, out):
    spec, d = _load_spec(args.spec)
    caps = _caps(args)
    syms = spec.weight_symbols
    if args.poly is None:
        res = is_locally_nilpotent(d, caps)
        verdicts = {v: _verdict_dict(x, syms) for v, x in res.verdicts.items()}
        label = {True: "locally-nilpotent", False: "not-locally-nilpotent", None: "undetermined"}[res.value]
        lines = [label + (f" witness={res.witness}" if res.witness else "")]
        lines += [f"  {v}: {_verdict_line(vd)}" for v, vd in verdicts.items()]
        _emit(args, {"result": label, "witness": res.witness, "variables": verdicts}, lines, out)
        return 1 if res.value is None else 0
    p = _parse_poly_arg(args.poly, d.ring)
    if not p:
        raise UsageError("--poly: nilpotence of the zero polynomial is not defined")
    vd = _verdict_dict(is_nilpotent_element(d, p, caps), syms)
    _emit(args, vd, [_verdict_line(vd)], out)
    return 1 if vd["verdict"] == "undetermined" else 0


def _cmd_height(args, out):
    spec, d = _load_spec(args.spec)
    p = _parse_poly_arg(args.poly, d.ring)
    if not p:
        raise UsageError("--poly: the zero polynomial has no height")
    try:
        mu = parse_eigenvalue(args.mu, spec.weight_symbols)
    except ParseError as exc:
        raise UsageError(f"--mu: {exc}") from None
    h = mu_height(d, p, mu, _caps(args))
    mu_text = _lam(mu, spec.weight_symbols)
    if h is None:
        _emit(args, {"mu": mu_text, "height": None}, [f"not-in-B_mu (mu={mu_text})"], out)
    else:
        _emit(args, {"mu": mu_text, "height": h}, [f"height={h} (mu={mu_text})"], out)
    return 0


def _cmd_phi(args, out):
    _, d = _load_spec(args.spec)
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    p = _parse_poly_arg(args.poly, d.ring)
    series = phi_truncated(d, p, args.order)
    coeffs = [format_poly(c) for c in series.coefficients]
    lines = [f"t^{n}: {c}" for n, c in enumerate(coeffs)]
    _emit(args, {"order": args.order, "coefficients": coeffs}, lines, out)
    return 0


def _cmd_spectrum(args, out):
    spec, d = _load_spec(args.spec)
    if args.sum_bound < 1:
        raise UsageError("--sum-bound must be positive")
    gens, sample = spectrum_and_monoid(d, _caps(args), args.sum_bound)
    syms = spec.weight_symbols
    g = {v: [_lam(x, syms) for x in lams] for v, lams in gens.items()}
    s = [_lam(x, syms) for x in sample]
    lines = [f"{v}: {{{', '.join(lams)}}}" for v, lams in g.items()]
    lines.append(f"monoid sample (sums of <= {args.sum_bound}): {{{', '.join(s)}}}")
    _emit(args, {"generators": g, "monoid_sample": s, "sum_bound": args.sum_bound}, lines, out)
    return 0


def _cmd_invariants(args, out):
    try:
        gspec = load_group_spec(args.group)
        group = enumerate_group(gspec.matrices())
    except FileNotFoundError:
        raise UsageError(f"cannot read group file {args.group!r}") from None
    except ParseError as exc:
        raise UsageError(f"invalid group file {args.group!r}: {exc}") from None
    if args.max_deg < 0:
        raise UsageError("--max-deg must be non-negative")
    ring = tuple(f"x{i + 1}" for i in range(group.dimension))
    seen = set()
    rows = []
    ok = True
    for deg in range(args.max_deg + 1):
        for mono in _monomials(len(ring), deg):
            f = reynolds(group, Poly.monomial(ring, mono))
            if not f:
                continue
            f = f.scale(1 / f.sorted_terms()[0][1])
            if f in seen:
                continue
            seen.add(f)
            rep = check_euler_descends(group, f)
            ok &= rep.passed
            rows.append({"invariant": format_poly(f), "image": format_poly(rep.image), "degree": rep.degree,
                         "image_invariant": rep.image_invariant, "degree_map_holds": rep.degree_map_holds})
    lines = [f"group order {group.order}; {len(rows)} invariants up to degree {args.max_deg}"]
    for r in rows:
        lines.append(f"D({r['invariant']}) = {r['image']}  [invariant={str(r['image_invariant']).lower()}, "
                     f"D(f)={r['degree']}*f: {str(r['degree_map_holds']).lower()}]")
    lines.append("euler-descends: " + ("pass" if ok else "fail"))
    _emit(args, {"group_order": group.order, "invariants": rows, "passed": ok}, lines, out)
    return 0 if ok else 1


def _monomials(n, deg):
    if n == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _monomials(n - 1, deg - first):
            yield (first,) + rest


def _cmd_check(args, out):
    reports = run_suites(args.suite, args.seed)
    ok = all(r.passed for r in reports)
    lines = [r.summary() for r in reports]
    for r in reports:
        for f in r.failures:
            lines.append(f"  {r.name}: input [{f.input}] expected [{f.expected}] observed [{f.observed}]")
    _emit(args, {"seed": args.seed, "passed": ok, "suites": [r.to_dict() for r in reports]}, lines, out)
    return 0 if ok else 1


COMMANDS = {
    "decompose": _cmd_decompose,
    "algebraic": _cmd_algebraic,
    "nilpotent": _cmd_nilpotent,
    "height": _cmd_height,
    "phi": _cmd_phi,
    "spectrum": _cmd_spectrum,
    "invariants": _cmd_invariants,
    "check": _cmd_check,
}


def run(argv=None, out=None, err=None) -> int:
    """Execute one command line; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error[usage]: {_one_line(exc)}\n")
        return 2
    except AlgderError as exc:
        err.write(f"error[{exc.kind}]: {_one_line(exc)}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
