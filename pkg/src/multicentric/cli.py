"""Command-line front end.

Reads one JSON problem file (see :mod:`multicentric.problem`), runs a
subcommand and writes a JSON result. Exit codes: 0 success, 2 invalid input
or configuration, 3 numerical failure (including a failed ``verify`` run).
"""

import argparse
import json
import sys
from datetime import datetime, timezone

import numpy as np

from .algebra2d import polyprod2_matrix, polyprod2_scalar
from .calculus import (calc_pair, calc_single, check_commute, horner2_matrix,
                       horner_matrix, suggest_polynomial, verify_diagonalizable)
from .exceptions import (ConfigError, NotCommuting, NumericalFailure, ParseError,
                         ValidationError)
from .function_space import (Disc, DomainSpec, FactorDomain, equivalence_bound, op_norm,
                             sup_norm)
from .gelfand import PreimageGrid, decompose_poly_1d, decompose_poly_2d, spectrum
from .poly import MonicPolynomial, delta_basis, eval_poly_matrix
from .problem import ProblemSpec, parse_complex, parse_complex_list, parse_element
from .verification import CHECKS, point_bound, run_suite

COMMANDS = ("delta", "polyprod", "norm", "spectrum", "calc", "verify")

#: JSON schema of the ``verify`` report
REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "timestamp", "seed", "roots1", "roots2", "checks", "all_passed"],
    "properties": {
        "command": {"const": "verify"},
        "timestamp": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "roots1": {"$ref": "#/definitions/complex_list"},
        "roots2": {"$ref": "#/definitions/complex_list"},
        "injected": {"type": ["string", "null"]},
        "all_passed": {"type": "boolean"},
        "error": {"type": "string"},
        "checks": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "max_error", "tolerance", "passed", "samples"],
                "properties": {
                    "name": {"type": "string"},
                    "max_error": {"type": "number", "minimum": 0},
                    "tolerance": {"type": "number", "minimum": 0},
                    "passed": {"type": "boolean"},
                    "samples": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
    },
    "definitions": {
        "complex_list": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"},
                      "minItems": 2, "maxItems": 2},
        },
    },
}


def to_json(x):
    """Convert numpy/complex values to JSON-ready data; complex -> [re, im]."""
    if isinstance(x, dict):
        return {k: to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if isinstance(x, np.ndarray):
        return to_json(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_finite(x.real), _finite(x.imag)]
    if isinstance(x, (float, np.floating)):
        return _finite(x)
    return x


def _finite(v):
    v = float(v)
    return v if np.isfinite(v) else None


def poly_string(coeffs):
    """Human-readable form of descending coefficients, e.g. ``z^2 - 1``."""
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        c = complex(c)
        if c == 0:
            continue
        power = n - i
        mono = "" if power == 0 else ("z" if power == 1 else f"z^{power}")
        if c.imag == 0:
            sign = "-" if c.real < 0 else "+"
            mag = abs(c.real)
            num = "" if (mag == 1 and mono) else f"{mag:g}"
        else:
            sign, num = "+", f"({c.real:g}{c.imag:+g}j)"
        parts.append((sign, num + mono))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    return text + "".join(f" {s} {t}" for s, t in parts[1:])


def _poly_summary(p):
    return {"roots": p.roots, "coefficients": p.coefficients,
            "polynomial": poly_string(p.coefficients)}


def _resolve_value(problem, name, w1, w2):
    if name in problem.elements_obj:
        return problem.element(name)(w1, w2)
    if name in problem.matrices_obj:
        return problem.matrix(name)
    raise ConfigError(f"{name!r} is neither an element nor a matrix")


def _element_name(problem):
    name = problem.param("element")
    if name is None:
        names = problem.element_names()
        if not names:
            raise ConfigError("no elements given")
        name = names[0]
    return name


def cmd_delta(problem, args):
    which = int(problem.param("factor", 1))
    if which not in (1, 2):
        raise ConfigError("params.factor must be 1 or 2")
    p = problem.polynomial(which)
    if problem.points is None:
        raise ConfigError("points are required")
    z = parse_complex_list(problem.points, "points")
    D = delta_basis(p, z)
    return {"roots": p.roots,
            "rows": [{"z": zi, "delta": row} for zi, row in zip(z, D)]}


def cmd_polyprod(problem, args):
    p1, p2 = problem.polynomial(1), problem.polynomial(2)
    w1 = parse_complex(problem.param("w1", 0), "params.w1")
    w2 = parse_complex(problem.param("w2", 0), "params.w2")
    F = _resolve_value(problem, problem.param("f", "f"), w1, w2)
    G = _resolve_value(problem, problem.param("g", "g"), w1, w2)
    result = polyprod2_scalar(p1, p2, w1, w2, F, G)
    out = {"w1": w1, "w2": w2, "result": result}
    if args.cross_check:
        other = polyprod2_matrix(p1, p2, w1, w2, F, G)
        dev = float(np.abs(result - other).max())
        scale = point_bound(p1, p2, w1, w2) * max(np.abs(F).max() * np.abs(G).max(), 1e-300)
        tol = problem.tolerances["cross_check"]
        out["cross_check"] = {"max_deviation": dev, "relative_deviation": dev / scale,
                              "tolerance": tol, "passed": dev / scale <= tol}
    return out


def cmd_norm(problem, args):
    p1, p2 = problem.polynomial(1), problem.polynomial(2)
    domain = problem.domain()
    f = problem.element(_element_name(problem))
    s = sup_norm(f, domain)
    o = op_norm(p1, p2, f, domain)
    C = equivalence_bound(p1, p2, domain)
    slack = 1e-12 * max(o, 1.0)
    return {"sup_norm": s, "op_norm": o, "equivalence_bound": C,
            "inequality_holds": bool(s <= o + slack and o <= C * s + slack)}


def cmd_spectrum(problem, args):
    p1, p2 = problem.polynomial(1), problem.polynomial(2)
    domain = problem.domain()
    f = problem.element(_element_name(problem))
    sp = spectrum(f, p1, p2, PreimageGrid.from_domain(p1, p2, domain))
    return {"count": len(sp),
            "values": [{"z1": a, "z2": b, "value": v}
                       for a, b, v in zip(sp.z1, sp.z2, sp.values)]}


def _rel_fro(X, Y):
    return float(np.linalg.norm(X - Y) / max(np.linalg.norm(Y), 1e-300))


def cmd_calc(problem, args):
    A = problem.matrix(problem.param("A", "A"))
    B_name = problem.param("B", "B")
    B = problem.matrix(B_name) if B_name in problem.matrices_obj else None
    method = problem.param("method", "auto")
    if method not in ("auto", "eig", "matrix"):
        raise ConfigError(f"unknown method {method!r}")
    tol = problem.tolerances
    out = {}
    if B is not None:
        check = check_commute(A, B, tol["commute"])
        out["commute_residual"] = check.residual
        if not check.commute:
            raise NotCommuting(f"||AB - BA||_F = {check.residual:.3g}")

    mats = {1: A} if B is None else {1: A, 2: B}
    suggested = {}
    if args.suggest_p:
        for which, M in mats.items():
            q = suggest_polynomial(M, cond_threshold=tol["cond_threshold"],
                                   cluster_tol=tol["cluster"], rank_tol=tol["rank"])
            suggested[which] = q
        out["suggested"] = {
            f"p{which}": {**_poly_summary(q), "diagonalizable": verify_diagonalizable(
                eval_poly_matrix(q, mats[which]), tol["cond_threshold"])}
            for which, q in suggested.items()}

    def polynomial(which):
        roots = problem.roots1 if which == 1 else problem.roots2
        if roots is not None:
            return MonicPolynomial.from_roots(roots, tol["separation"])
        if which not in suggested:
            raise ConfigError(f"roots{which} is required without --suggest-p")
        return suggested[which]

    p1 = polynomial(1)
    p2 = None if B is None else polynomial(2)
    out["p1"] = _poly_summary(p1)
    if p2 is not None:
        out["p2"] = _poly_summary(p2)

    phi = problem.param("phi")
    if phi is not None:
        if B is None:
            phi = parse_complex_list(phi, "params.phi")
            f = decompose_poly_1d(phi, p1)
            direct = horner_matrix(phi, A)
        else:
            if not isinstance(phi, list):
                raise ParseError("expected a nested list phi[a1][a2]", "params.phi")
            rows = [parse_complex_list(r, f"params.phi[{i}]") for i, r in enumerate(phi)]
            width = max((r.size for r in rows), default=0)
            phi = np.zeros((len(rows), width), dtype=complex)
            for i, r in enumerate(rows):
                phi[i, :r.size] = r
            f = decompose_poly_2d(phi, p1, p2)
            direct = horner2_matrix(phi, A, B)
    elif problem.element_names() or problem.param("element") is not None:
        direct = None
        if B is None:
            f = _single_element(problem, p1)
        else:
            f = problem.element(_element_name(problem))
    else:
        return out

    def run(m):
        if B is None:
            return calc_single(f, p1, A, m, tol["cond_threshold"])
        return calc_pair(f, p1, p2, A, B, m, tol["commute"], tol["cond_threshold"],
                         random_state=args.seed)

    holomorphic = _is_holomorphic(f)
    path = method if method != "auto" else ("matrix" if holomorphic else "eig")
    result = run(path)
    diag = {"path": path}
    if holomorphic:
        other = "eig" if path == "matrix" else "matrix"
        try:
            diag["path_deviation"] = _rel_fro(run(other), result)
        except NumericalFailure as e:
            diag["path_deviation"] = None
            diag["other_path_error"] = type(e).__name__
    if direct is not None:
        diag["horner_residual"] = _rel_fro(result, direct)
        diag["roundtrip_passed"] = diag["horner_residual"] <= tol["roundtrip"]
    out["result"] = result
    out["diagnostics"] = diag
    return out


def _single_element(problem, p):
    """Element for a single matrix: shape ``(d, 1)`` with no ``w2`` dependence."""
    name = _element_name(problem)
    obj = dict(problem.elements_obj[name])
    obj.setdefault("shape", [p.degree, 1])
    f = parse_element(obj, None, f"elements.{name}")
    if f.shape != (p.degree, 1) or np.any(f.coeffs[:, :, :, :, 1:, :]) or np.any(f.coeffs[:, :, :, :, :, 1:]):
        raise ConfigError(f"element {name!r} must have shape [{p.degree}, 1] and no w2 terms")
    return f.coeffs[:, 0, :, :, 0, 0]


def _is_holomorphic(f):
    if isinstance(f, np.ndarray):
        return f.ndim == 2 or not np.any(f[:, :, 1:])
    return f.is_holomorphic


DEFAULT_VERIFY_ROOTS = ([0.0, 1.0], [-1.0, 1j, 1.0])


def cmd_verify(problem, args):
    p1 = (problem.polynomial(1) if problem.roots1 is not None
          else MonicPolynomial.from_roots(DEFAULT_VERIFY_ROOTS[0]))
    p2 = (problem.polynomial(2) if problem.roots2 is not None
          else MonicPolynomial.from_roots(DEFAULT_VERIFY_ROOTS[1]))
    if problem.domain_obj is not None:
        domain = problem.domain()
    else:
        unit = FactorDomain.from_discs([Disc(0, 1)])
        domain = DomainSpec(unit, unit)
    overrides = {k: v for k, v in problem.tolerances.items() if k in CHECKS}
    results = run_suite(p1, p2, domain, seed=args.seed, inject=args.inject_failure,
                        tolerances=overrides)
    out = {"seed": args.seed, "roots1": p1.roots, "roots2": p2.roots,
           "injected": args.inject_failure,
           "checks": [r.to_dict() for r in results],
           "all_passed": all(r.passed for r in results)}
    if not out["all_passed"]:
        out["error"] = "VerificationFailed"
    return out


HANDLERS = {"delta": cmd_delta, "polyprod": cmd_polyprod, "norm": cmd_norm,
            "spectrum": cmd_spectrum, "calc": cmd_calc, "verify": cmd_verify}


def _seed(text):
    seed = int(text)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _tolerance(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected name=value")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="multicentric",
        description="Multicentric tensor-product algebra and functional calculus")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="problem file (JSON), or - for stdin")
    parser.add_argument("--output", help="write the JSON result here instead of stdout")
    parser.add_argument("--seed", type=_seed, default=0)
    parser.add_argument("--cross-check", action="store_true",
                        help="polyprod: also evaluate the matrix form and report the deviation")
    parser.add_argument("--suggest-p", action="store_true",
                        help="calc: construct polynomials that remove Jordan blocks")
    parser.add_argument("--tolerance", type=_tolerance, action="append", default=[],
                        metavar="NAME=VALUE")
    parser.add_argument("--inject-failure", metavar="CHECK", default=None,
                        help="verify: force the named check to fail")
    return parser


def load_problem(args):
    if args.input is None:
        if args.command != "verify":
            raise ConfigError("--input is required")
        text = "{}"
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(f"cannot read {args.input}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}") from None
    return ProblemSpec.from_dict(data, dict(args.tolerance))


def run(args):
    """Run one command; returns ``(payload, exit_code)``."""
    try:
        if args.inject_failure is not None and args.inject_failure not in CHECKS:
            raise ConfigError(f"unknown check {args.inject_failure!r}")
        problem = load_problem(args)
        payload = HANDLERS[args.command](problem, args)
        code = 3 if "error" in payload else 0
    except ValidationError as e:
        payload, code = {"error": type(e).__name__, "message": str(e)}, 2
    except NumericalFailure as e:
        payload, code = {"error": type(e).__name__, "message": str(e)}, 3
    payload = {"command": args.command, **payload,
               "timestamp": datetime.now(timezone.utc).isoformat()}
    return payload, code


def main(argv=None):
    args = build_parser().parse_args(argv)
    payload, code = run(args)
    text = json.dumps(to_json(payload), indent=2, allow_nan=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code
