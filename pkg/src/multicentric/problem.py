"""JSON problem files.

Complex numbers are either plain numbers or ``[re, im]`` pairs, matrices are
row-major nested lists, and elements are sparse term lists::

    {
      "roots1": [[0, 0], [1, 0]],
      "roots2": [0, 1],
      "domain": {"factor1": {"discs": [{"center": [0, 0], "radius": 1}],
                             "resolution": 0.25},
                 "factor2": {"discs": [{"center": 0, "radius": 1}]}},
      "elements": {"f": {"terms": [{"component": [0, 0],
                                    "powers": [1, 0, 0, 0],
                                    "value": [1, 0]}]}},
      "matrices": {"A": [[1, 0], [0, 2]]},
      "params": {...},
      "tolerances": {"commute": 1e-10}
    }

Component and power indices are 0-based. Tolerance names are the keys of
``DEFAULT_TOLERANCES`` plus the check names of the ``verify`` suite.
"""

import numbers
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigError, ParseError
from .function_space import Disc, DomainSpec, FactorDomain, PolyCoeffFunction
from .poly import MonicPolynomial
from .verification import CHECKS

DEFAULT_TOLERANCES = {
    "separation": None,
    "commute": 1e-10,
    "cond_threshold": 1e8,
    "invert_cond": 1e12,
    "cluster": 1e-6,
    "rank": 1e-8,
    "cross_check": 1e-12,
    "roundtrip": 1e-7,
}


def parse_complex(x, path):
    if isinstance(x, bool):
        raise ParseError("expected a number or [re, im]", path)
    if isinstance(x, numbers.Real):
        return complex(float(x))
    if (isinstance(x, (list, tuple)) and len(x) == 2
            and all(isinstance(v, numbers.Real) and not isinstance(v, bool) for v in x)):
        return complex(float(x[0]), float(x[1]))
    raise ParseError(f"malformed complex literal {x!r}", path)


def parse_complex_list(xs, path):
    if not isinstance(xs, list):
        raise ParseError("expected a list", path)
    return np.array([parse_complex(x, f"{path}[{i}]") for i, x in enumerate(xs)],
                    dtype=complex)


def parse_matrix(rows, path):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("expected a non-empty list of rows", path)
    out = [parse_complex_list(r, f"{path}[{i}]") for i, r in enumerate(rows)]
    if len({r.size for r in out}) != 1:
        raise ParseError("rows have different lengths", path)
    return np.vstack(out)


def parse_factor(obj, path):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    discs = obj.get("discs", [])
    if not isinstance(discs, list):
        raise ParseError("expected a list", f"{path}.discs")
    parsed = []
    for i, d in enumerate(discs):
        p = f"{path}.discs[{i}]"
        if not isinstance(d, dict) or "center" not in d or "radius" not in d:
            raise ParseError("disc needs 'center' and 'radius'", p)
        r = d["radius"]
        if isinstance(r, bool) or not isinstance(r, numbers.Real):
            raise ParseError("radius must be a number", f"{p}.radius")
        parsed.append(Disc(parse_complex(d["center"], f"{p}.center"), float(r)))
    if not parsed:
        raise ConfigError(f"{path}: domain has no discs, so its grid is empty")
    resolution = obj.get("resolution")
    if "grid" in obj:
        grid = parse_complex_list(obj["grid"], f"{path}.grid")
        if grid.size == 0:
            raise ConfigError(f"{path}: grid is empty")
        if resolution is None:
            raise ParseError("an explicit grid needs 'resolution'", path)
        return FactorDomain(tuple(parsed), grid, float(resolution))
    return FactorDomain.from_discs(parsed, resolution)


def parse_domain(obj, path="domain"):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    for key in ("factor1", "factor2"):
        if key not in obj:
            raise ParseError(f"missing '{key}'", path)
    return DomainSpec(parse_factor(obj["factor1"], f"{path}.factor1"),
                      parse_factor(obj["factor2"], f"{path}.factor2"))


def parse_element(obj, shape, path):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    if "shape" in obj:
        shape = tuple(obj["shape"])
    if shape is None:
        raise ParseError("element shape unknown (give 'shape' or both root lists)", path)
    terms = []
    for i, t in enumerate(obj.get("terms", [])):
        p = f"{path}.terms[{i}]"
        try:
            comp, powers = tuple(t["component"]), tuple(t["powers"])
        except (KeyError, TypeError):
            raise ParseError("term needs 'component' and 'powers'", p) from None
        if len(comp) != 2 or len(powers) != 4 or not all(
                isinstance(v, int) and not isinstance(v, bool) and v >= 0
                for v in comp + powers):
            raise ParseError("component must be [j, k] and powers [a1, b1, a2, b2]", p)
        if comp[0] >= shape[0] or comp[1] >= shape[1]:
            raise ParseError(f"component {list(comp)} outside shape {list(shape)}", p)
        terms.append((comp, powers, parse_complex(t.get("value", 1), f"{p}.value")))
    degrees = tuple(obj["degrees"]) if "degrees" in obj else None
    f = PolyCoeffFunction.from_terms(terms, shape, degrees)
    if "constant" in obj:
        const = parse_matrix(obj["constant"], f"{path}.constant")
        if const.shape != tuple(shape):
            raise ParseError(f"constant must be {list(shape)}", f"{path}.constant")
        f = f + PolyCoeffFunction.constant(const)
    return f


@dataclass
class ProblemSpec:
    roots1: object = None
    roots2: object = None
    domain_obj: object = None
    elements_obj: dict = field(default_factory=dict)
    matrices_obj: dict = field(default_factory=dict)
    points: object = None
    params: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @classmethod
    def from_dict(cls, data, overrides=None):
        if not isinstance(data, dict):
            raise ParseError("problem file must contain a JSON object", "$")
        tol = dict(DEFAULT_TOLERANCES)
        for src, prefix in ((data.get("tolerances", {}), "tolerances"), (overrides or {}, "--tolerance")):
            if not isinstance(src, dict):
                raise ParseError("expected an object", prefix)
            for k, v in src.items():
                if k not in DEFAULT_TOLERANCES and k not in CHECKS:
                    raise ConfigError(f"unknown tolerance {k!r}")
                if isinstance(v, bool) or not isinstance(v, numbers.Real):
                    raise ParseError("tolerance must be a number", f"{prefix}.{k}")
                tol[k] = float(v)
        roots1 = data.get("roots1", data.get("roots"))
        out = cls(
            roots1=None if roots1 is None else parse_complex_list(roots1, "roots1"),
            roots2=None if data.get("roots2") is None else parse_complex_list(data["roots2"], "roots2"),
            domain_obj=data.get("domain"),
            elements_obj=data.get("elements", {}),
            matrices_obj=data.get("matrices", {}),
            points=data.get("points"),
            params=data.get("params", {}),
            tolerances=tol,
        )
        for name in ("elements_obj", "matrices_obj", "params"):
            if not isinstance(getattr(out, name), dict):
                raise ParseError("expected an object", name.replace("_obj", ""))
        return out

    def polynomial(self, which):
        roots = self.roots1 if which == 1 else self.roots2
        if roots is None:
            raise ConfigError(f"roots{which} is required")
        return MonicPolynomial.from_roots(roots, self.tolerances["separation"])

    def domain(self):
        if self.domain_obj is None:
            raise ConfigError("domain is required")
        return parse_domain(self.domain_obj)

    def element_names(self):
        return list(self.elements_obj)

    def element(self, name):
        if name not in self.elements_obj:
            raise ConfigError(f"unknown element {name!r}")
        shape = None
        if self.roots1 is not None and self.roots2 is not None:
            shape = (self.roots1.size, self.roots2.size)
        f = parse_element(self.elements_obj[name], shape, f"elements.{name}")
        if shape is not None and f.shape != shape:
            raise ConfigError(f"element {name!r} has shape {f.shape}, roots give {shape}")
        return f

    def matrix(self, name):
        if name not in self.matrices_obj:
            raise ConfigError(f"unknown matrix {name!r}")
        return parse_matrix(self.matrices_obj[name], f"matrices.{name}")

    def param(self, key, default=None):
        return self.params.get(key, default)
