"""Command line interface.

Exit codes: 0 success, 1 invalid input, 2 internal assertion, 3 verification
mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .barvinok import unimodular_decompose
from .cones import RationalSimplex, vertex_cones
from .engine import (WeightPoly, ehrhart_quasipolynomial, ehrhart_residue_poly,
                     mixed_sum_constant_2d, weight_from_monomials)
from .exact_linalg import as_fraction, vsub
from .exceptions import BadArgs, EhrhartError, InvalidInput, ParseError, ValidationError
from .oracle import slice_sum_oracle_2d, weighted_sum_oracle
from .serialization import format_rational, vector_to_json
from .suites import (key_invariant_suite, mu2d_suite, oracle_table, patchwork_suite,
                     series_identity_suite)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass
class ProblemFile:
    dimension: int
    vertices: tuple
    weight: WeightPoly
    r: int | None = None
    residue: int | None = None
    seed: int = 0
    order_pad: int = 2
    simplex: RationalSimplex = field(init=False, repr=False)

    def __post_init__(self):
        self.simplex = RationalSimplex(self.vertices)


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected an integer or a rational string, got {value!r}")
    try:
        return as_fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: cannot parse {value!r} as a rational") from exc


def _int(value, where: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ValidationError(f"{where}: must be >= {minimum}")
    return value


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array")
    return value


def _parse_weight(spec, d: int) -> WeightPoly:
    if spec is None:
        return WeightPoly.one(d)
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ParseError("weight: expected an object with 'monomials' or 'linear_forms'")
    (kind, items), = spec.items()
    items = _list(items, f"weight.{kind}")
    if kind == "monomials":
        monos = []
        for i, item in enumerate(items):
            where = f"weight.monomials[{i}]"
            if not isinstance(item, dict):
                raise ParseError(f"{where}: expected an object")
            exps = [_int(e, f"{where}.exponents", 0) for e in _list(item.get("exponents"), f"{where}.exponents")]
            monos.append((_rational(item.get("coef", 1), f"{where}.coef"), exps))
        return weight_from_monomials(monos, d)
    if kind == "linear_forms":
        terms = []
        for i, item in enumerate(items):
            where = f"weight.linear_forms[{i}]"
            if not isinstance(item, dict):
                raise ParseError(f"{where}: expected an object")
            form = [_rational(x, f"{where}.form") for x in _list(item.get("form"), f"{where}.form")]
            if len(form) != d:
                raise ValidationError(f"{where}.form: expected {d} entries")
            terms.append((_rational(item.get("coef", 1), f"{where}.coef"), form,
                          _int(item.get("power"), f"{where}.power", 0)))
        if not terms:
            raise ValidationError("weight.linear_forms: empty")
        return WeightPoly(tuple(terms))
    raise ParseError(f"weight: unknown kind {kind!r}")


def parse_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    d = _int(data.get("dimension"), "dimension", 1)
    rows = _list(data.get("vertices"), "vertices")
    if len(rows) != d + 1:
        raise ValidationError(f"vertices: a {d}-simplex needs {d + 1} vertices, got {len(rows)}")
    vertices = []
    for i, row in enumerate(rows):
        row = _list(row, f"vertices[{i}]")
        if len(row) != d:
            raise ValidationError(f"vertices[{i}]: expected {d} coordinates, got {len(row)}")
        vertices.append(tuple(_rational(x, f"vertices[{i}][{j}]") for j, x in enumerate(row)))
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("options: expected an object")
    r = options.get("r")
    residue = options.get("residue")
    return ProblemFile(
        dimension=d,
        vertices=tuple(vertices),
        weight=_parse_weight(data.get("weight"), d),
        r=None if r is None else _int(r, "options.r", 0),
        residue=None if residue is None else _int(residue, "options.residue", 0),
        seed=_int(options.get("seed", 0), "options.seed"),
        order_pad=_int(options.get("order_pad", 2), "options.order_pad", 0),
    )


def _load(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text)


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _cmd_count(args, out) -> int:
    prob = _load(args.file)
    qp = ehrhart_quasipolynomial(prob.simplex, prob.weight, "exact", None, prob.seed, prob.order_pad)
    value = qp.evaluate(args.n)
    result = {"n": args.n, "value": format_rational(value)}
    code = EXIT_OK
    if args.check:
        expected = weighted_sum_oracle(prob.simplex, prob.weight, args.n)
        result["oracle"] = format_rational(expected)
        result["check"] = "pass" if expected == value else "fail"
        code = EXIT_OK if expected == value else EXIT_MISMATCH
    _emit(result, out)
    return code


def _cmd_ehrhart(args, out) -> int:
    prob = _load(args.file)
    if prob.residue is not None:
        coeffs = ehrhart_residue_poly(prob.simplex, prob.weight, prob.residue, "exact", None,
                                      prob.seed, prob.order_pad)
        _emit({"period": prob.simplex.period, "k": prob.residue,
               "u_coeffs": [format_rational(c) for c in coeffs]}, out)
        return EXIT_OK
    qp = ehrhart_quasipolynomial(prob.simplex, prob.weight, "exact", None, prob.seed, prob.order_pad)
    _emit(qp.to_json(), out)
    return EXIT_OK


def _cmd_top(args, out) -> int:
    prob = _load(args.file)
    r = args.r if args.r is not None else prob.r
    if r is None:
        raise BadArgs("top needs -r or options.r")
    qp = ehrhart_quasipolynomial(prob.simplex, prob.weight, "top", r, prob.seed, prob.order_pad)
    _emit(qp.to_json(), out)
    return EXIT_OK


def _cmd_mixed_sum(args, out) -> int:
    prob = _load(args.file)
    if prob.dimension != 2:
        raise BadArgs("mixed-sum works for plane triangles only")
    face = sorted(set(args.face_indices))
    if len(face) != 2 or not all(0 <= i <= 2 for i in face):
        raise BadArgs("--face-indices must name the two vertices of an edge (0-based)")
    p = prob.simplex
    direction = vsub(p.vertices[face[1]], p.vertices[face[0]])
    value = mixed_sum_constant_2d(p, direction, args.n, prob.seed)
    expected = slice_sum_oracle_2d(p, direction, args.n)
    _emit({"n": args.n, "face": face, "direction": vector_to_json(direction),
           "value": format_rational(value), "oracle": format_rational(expected),
           "check": "pass" if value == expected else "fail"}, out)
    return EXIT_OK if value == expected else EXIT_MISMATCH


def _cmd_decompose(args, out) -> int:
    prob = _load(args.file)
    cones = vertex_cones(prob.simplex)
    if not 0 <= args.vertex < len(cones):
        raise BadArgs(f"--vertex must lie in 0..{len(cones) - 1}")
    a = cones[args.vertex]
    signed = unimodular_decompose(a.generators)
    _emit({"vertex": vector_to_json(a.vertex),
           "generators": [vector_to_json(g) for g in a.generators],
           "cones": [{"sign": c.sign, "vertex": vector_to_json(a.vertex),
                      "generators": [vector_to_json(g) for g in signed.ambient_generators(i)]}
                     for i, c in enumerate(signed.cones)]}, out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    ok = True
    if args.mu2d:
        passed, worst = mu2d_suite(args.cones, args.order, args.seed)
        out.write(f"mu2d\tmax_abs_residual\t{format_rational(worst)}\n")
        ok &= passed
    if args.suite:
        for name, check in (("series_identities", series_identity_suite),
                            ("patchwork", patchwork_suite),
                            ("key_invariant", lambda: key_invariant_suite(seed=args.seed))):
            passed, detail = check()
            out.write(f"{name}\t{'pass' if passed else 'fail'}\t{detail}\n")
            ok &= passed
    if args.file:
        prob = _load(args.file)
        p = prob.simplex
        top = 3 * p.period * (p.dim + 1)
        rows = oracle_table(p, prob.weight, range(top + 1), prob.seed)
        out.write("n\toracle\tengine\tequal\n")
        for n, expected, got, equal in rows:
            out.write(f"{n}\t{format_rational(expected)}\t{format_rational(got)}\t{str(equal).lower()}\n")
            ok &= equal
    if not (args.mu2d or args.suite or args.file):
        raise BadArgs("verify needs FILE, --mu2d or --suite")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ehrhart-barvinok",
                                     description="Exact weighted Ehrhart quasi-polynomials of rational simplices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="weighted lattice point count of N*p")
    p.add_argument("file")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check against brute force")
    p.set_defaults(run=_cmd_count)

    p = sub.add_parser("ehrhart", help="full quasi-polynomial")
    p.add_argument("file")
    p.set_defaults(run=_cmd_ehrhart)

    p = sub.add_parser("top", help="top r+1 coefficients per residue")
    p.add_argument("file")
    p.add_argument("-r", type=int)
    p.set_defaults(run=_cmd_top)

    p = sub.add_parser("mixed-sum", help="S^L(N*p) at 0 for L along an edge (plane only)")
    p.add_argument("file")
    p.add_argument("--face-indices", type=int, nargs="+", required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(run=_cmd_mixed_sum)

    p = sub.add_parser("decompose", help="signed unimodular decomposition of a vertex cone")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.set_defaults(run=_cmd_decompose)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("file", nargs="?")
    p.add_argument("--mu2d", action="store_true")
    p.add_argument("--suite", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cones", type=int, default=10)
    p.add_argument("--order", type=int, default=6)
    p.set_defaults(run=_cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "n", 0) is not None and getattr(args, "n", 0) < 0:
        err.write("error: -n must be non-negative\n")
        return EXIT_INPUT
    try:
        return args.run(args, out)
    except InvalidInput as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (AssertionError, EhrhartError) as exc:
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
