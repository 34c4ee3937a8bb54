"""Randomized property checks for a given pair of polynomials and a domain.

Backs the ``verify`` CLI command. Every check returns the worst relative
error it observed; errors are scaled by the magnitude of the terms that
enter each identity, so cancellation does not register as failure.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .algebra1d import polyprod_point
from .algebra2d import polyprod2_matrix, polyprod2_scalar
from .calculus import calc_pair, horner2_matrix, suggest_polynomial
from .exceptions import ConfigError
from .function_space import GridFunction, equivalence_bound, op_norm, polyprod_elements, sup_norm
from .gelfand import decompose_poly_2d
from .poly import delta_basis, eval_poly, eval_poly_matrix


@dataclass
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    passed: bool
    samples: int

    def to_dict(self):
        return asdict(self)


def crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_disc_points(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def _probe_radius(p):
    return 1.5 * max(1.0, float(np.max(np.abs(p.roots))))


def point_bound(p1, p2, w1, w2):
    S1 = np.abs(p1.sigma).sum(axis=1).max()
    S2 = np.abs(p2.sigma).sum(axis=1).max()
    a, b = np.abs(w1) * S1, np.abs(w2) * S2
    return 1 + 4 * a + 4 * b + 16 * a * b


def check_partition_of_unity(p1, p2, domain, rng, n):
    err = 0.0
    for p in (p1, p2):
        z = random_disc_points(rng, n, _probe_radius(p))
        D = delta_basis(p, z)
        err = max(err, np.max(np.abs(D.sum(-1) - 1) / np.maximum(1, np.abs(D).sum(-1))))
    return err


def check_delta_identities(p1, p2, domain, rng, n):
    err = 0.0
    for p in (p1, p2):
        z = random_disc_points(rng, n, _probe_radius(p))
        w = eval_poly(p, z)
        D = delta_basis(p, z)
        s = p.sigma
        for j in range(p.degree):
            for l in range(p.degree):
                if j == l:
                    terms = w[:, None] * (s[j][None, :] * D[:, [j]] + s[:, j][None, :] * D)
                    lhs = D[:, j] ** 2
                    rhs = D[:, j] - terms.sum(-1)
                    scale = np.maximum.reduce([np.abs(lhs), np.abs(D[:, j]),
                                               np.abs(terms).sum(-1)])
                else:
                    a = w * s[j, l] * D[:, j]
                    b = w * s[l, j] * D[:, l]
                    lhs = D[:, j] * D[:, l]
                    rhs = a + b
                    scale = np.maximum.reduce([np.abs(lhs), np.abs(a), np.abs(b)])
                err = max(err, np.max(np.abs(lhs - rhs) / np.maximum(scale, 1e-300)))
    return err


def check_polyprod_forms(p1, p2, domain, rng, n):
    d = (p1.degree, p2.degree)
    err = 0.0
    for _ in range(n):
        w1, w2 = crandn(rng, 2)
        F, G = crandn(rng, *d), crandn(rng, *d)
        a = polyprod2_scalar(p1, p2, w1, w2, F, G)
        b = polyprod2_matrix(p1, p2, w1, w2, F, G)
        scale = point_bound(p1, p2, w1, w2) * np.abs(F).max() * np.abs(G).max()
        err = max(err, np.abs(a - b).max() / scale)
    return err


def check_commutativity(p1, p2, domain, rng, n):
    d = (p1.degree, p2.degree)
    w1, w2 = crandn(rng, 2, n)
    F, G = crandn(rng, n, *d), crandn(rng, n, *d)
    return float(np.max(np.abs(polyprod2_scalar(p1, p2, w1, w2, F, G)
                               - polyprod2_scalar(p1, p2, w1, w2, G, F))))


def check_associativity(p1, p2, domain, rng, n):
    err = 0.0
    for p in (p1, p2):
        w = crandn(rng, n)
        a, b, c = (crandn(rng, n, p.degree) for _ in range(3))
        left = polyprod_point(p, w, polyprod_point(p, w, a, b), c)
        right = polyprod_point(p, w, a, polyprod_point(p, w, b, c))
        S = np.abs(p.sigma).sum(axis=1).max()
        scale = (1 + 4 * np.abs(w) * S) ** 2 * (np.abs(a).max(-1) * np.abs(b).max(-1)
                                                * np.abs(c).max(-1))
        err = max(err, np.max(np.abs(left - right).max(-1) / scale))
    return err


def check_homomorphism(p1, p2, domain, rng, n):
    d = (p1.degree, p2.degree)
    z1 = random_disc_points(rng, n, _probe_radius(p1))
    z2 = random_disc_points(rng, n, _probe_radius(p2))
    w1, w2 = eval_poly(p1, z1), eval_poly(p2, z2)
    F, G = crandn(rng, n, *d), crandn(rng, n, *d)
    D1, D2 = delta_basis(p1, z1), delta_basis(p2, z2)

    def L(H):
        return np.einsum("nj,nk,njk->n", D1, D2, H)

    lf, lg = L(F), L(G)
    lfg = L(polyprod2_scalar(p1, p2, w1, w2, F, G))
    weight = np.abs(D1).sum(-1) * np.abs(D2).sum(-1)
    scale = (weight * point_bound(p1, p2, w1, w2) * np.abs(F).max((1, 2))
             * np.abs(G).max((1, 2)) + np.abs(lf * lg))
    return float(np.max(np.abs(lfg - lf * lg) / scale))


def check_character_normalization(p1, p2, domain, rng, n):
    z1 = random_disc_points(rng, n, _probe_radius(p1))
    z2 = random_disc_points(rng, n, _probe_radius(p2))
    D1, D2 = delta_basis(p1, z1), delta_basis(p2, z2)
    total = D1.sum(-1) * D2.sum(-1)
    scale = np.maximum(1, np.abs(D1).sum(-1) * np.abs(D2).sum(-1))
    return float(np.max(np.abs(total - 1) / scale))


def _random_element(p1, p2, domain, rng):
    return GridFunction(domain, crandn(rng, *domain.shape, p1.degree, p2.degree))


def check_norm_equivalence(p1, p2, domain, rng, n):
    C = equivalence_bound(p1, p2, domain)
    err = 0.0
    for _ in range(n):
        f = _random_element(p1, p2, domain, rng)
        s, o = sup_norm(f), op_norm(p1, p2, f, domain)
        err = max(err, (s - o) / s, (o - C * s) / (C * s))
    return max(err, 0.0)


def check_submultiplicativity(p1, p2, domain, rng, n):
    err = 0.0
    for _ in range(n):
        f = _random_element(p1, p2, domain, rng)
        g = _random_element(p1, p2, domain, rng)
        fg = polyprod_elements(p1, p2, f, g, domain)
        bound = op_norm(p1, p2, f, domain) * op_norm(p1, p2, g, domain)
        err = max(err, (op_norm(p1, p2, fg, domain) - bound) / bound)
    return max(err, 0.0)


def check_calc_roundtrip(p1, p2, domain, rng, n):
    err = 0.0
    for _ in range(max(1, n // 10)):
        size = int(rng.integers(2, 7))
        S = crandn(rng, size, size) + 2 * np.eye(size)
        Sinv = np.linalg.inv(S)
        A = S @ np.diag(crandn(rng, size)) @ Sinv
        B = S @ np.diag(crandn(rng, size)) @ Sinv
        phi = crandn(rng, 4, 4) * (np.add.outer(np.arange(4), np.arange(4)) <= 4)
        direct = horner2_matrix(phi, A, B)
        got = calc_pair(decompose_poly_2d(phi, p1, p2), p1, p2, A, B, tol=1e-8)
        err = max(err, np.linalg.norm(got - direct) / np.linalg.norm(direct))
    return err


def check_jordan_removal(p1, p2, domain, rng, n):
    worst = 0.0
    for lam in (0.0, 1 + 1j):
        for s in (2, 3, 4):
            J = lam * np.eye(s) + np.eye(s, k=1)
            p = suggest_polynomial(J, 1.0)
            P = eval_poly_matrix(p, J)
            # p(J) must collapse to a multiple of the identity
            worst = max(worst, np.abs(P - P[0, 0] * np.eye(s)).max() / max(1, abs(P[0, 0])))
    return worst


#: name -> (check, tolerance, sample count)
CHECKS = {
    "partition_of_unity": (check_partition_of_unity, 1e-10, 1000),
    "delta_identities": (check_delta_identities, 1e-9, 200),
    "polyprod_forms": (check_polyprod_forms, 1e-12, 200),
    "commutativity": (check_commutativity, 0.0, 200),
    "associativity": (check_associativity, 1e-10, 200),
    "homomorphism": (check_homomorphism, 1e-9, 500),
    "character_normalization": (check_character_normalization, 1e-10, 1000),
    "norm_equivalence": (check_norm_equivalence, 1e-12, 20),
    "submultiplicativity": (check_submultiplicativity, 1e-9, 20),
    "calc_roundtrip": (check_calc_roundtrip, 1e-7, 50),
    "jordan_removal": (check_jordan_removal, 1e-12, 1),
}


def run_suite(p1, p2, domain, seed=0, inject=None, tolerances=None):
    """Run every check; ``inject`` names a check whose error is forced above tolerance."""
    if inject is not None and inject not in CHECKS:
        raise ConfigError(f"unknown check {inject!r}")
    tolerances = tolerances or {}
    results = []
    for i, (name, (fn, tol, n)) in enumerate(CHECKS.items()):
        rng = np.random.default_rng([seed, i])
        tol = float(tolerances.get(name, tol))
        err = float(fn(p1, p2, domain, rng, n))
        if name == inject:
            err = max(err, 2 * tol, 1.0)
        results.append(CheckResult(name, err, tol, bool(err <= tol), n))
    return results
