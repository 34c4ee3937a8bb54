"""Functional calculus for single matrices and commuting pairs.

``phi(A) = sum_j delta_j(A) f_j(p(A))`` and
``phi(A, B) = sum_{j,k} delta1_j(A) delta2_k(B) f_jk(p1(A), p2(B))``.

Two evaluation routes exist for both: through an eigen-decomposition
(``method="eig"``, handles conjugate monomials) and through polynomial
evaluation on matrices (``method="matrix"``, holomorphic only, no
diagonalizability needed).
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.sparse.csgraph import connected_components

from ._validation import as_square_matrix
from .exceptions import (ConjugateNotSupported, ConstructionFailed, Defective,
                         DimensionMismatch, DuplicateRoots, NotCommuting,
                         RandomCombinationFailed)
from .function_space import PolyCoeffFunction
from .gelfand import _as_1d_coeffs, multicentric_eval, multicentric_eval_1d
from .poly import MonicPolynomial, companion_roots, eval_poly_matrix

COND_THRESHOLD = 1e8
COMMUTE_TOL = 1e-10
CLUSTER_TOL = 1e-6
RANK_TOL = 1e-8


def _fro(A):
    return float(np.linalg.norm(A, "fro"))


class CommuteCheck(NamedTuple):
    commute: bool
    residual: float


def check_commute(A, B, tol=COMMUTE_TOL):
    """``||AB - BA||_F`` compared against ``tol * ||A||_F * ||B||_F``."""
    A = as_square_matrix(A, "A")
    B = as_square_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    residual = _fro(A @ B - B @ A)
    return CommuteCheck(residual <= tol * _fro(A) * _fro(B), residual)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """``A = T diag(D) T^{-1}``."""

    T: np.ndarray
    D: np.ndarray
    cond_T: float

    def reconstruct(self):
        return _similarity(self.T, self.D)


@dataclass(frozen=True, eq=False)
class SimultaneousDiagonalization:
    """``A = S diag(D1) S^{-1}`` and ``B = S diag(D2) S^{-1}``."""

    S: np.ndarray
    D1: np.ndarray
    D2: np.ndarray


def _similarity(T, values):
    # T diag(values) T^{-1} without forming the inverse
    return np.linalg.solve(T.T, (T * values).T).T


def cluster_eigenvalues(vals, radius):
    """Groups of indices whose eigenvalues chain together within ``radius``."""
    vals = np.asarray(vals)
    if vals.size == 0:
        return []
    adj = np.abs(vals[:, None] - vals[None, :]) <= radius
    n, labels = connected_components(adj, directed=False)
    return [np.flatnonzero(labels == i) for i in range(n)]


def eig_diagonalize(A, cond_threshold=COND_THRESHOLD, cluster_tol=CLUSTER_TOL,
                    rank_tol=RANK_TOL):
    """Diagonalize ``A`` or raise :class:`Defective`.

    The plain eigenvector matrix is tried first. When it is too ill
    conditioned, eigenvalues are grouped (radius ``cluster_tol * ||A||``) and
    each group gets an orthonormal basis of the numerical null space of
    ``A - mean * I``; this recovers well-conditioned bases for repeated
    semisimple eigenvalues that carry rounding-level coupling.
    """
    A = as_square_matrix(A, "A")
    n = A.shape[0]
    scale = _fro(A) or 1.0
    vals, T = np.linalg.eig(A)
    cond = np.linalg.cond(T)
    if cond <= cond_threshold and _fro(A @ T - T * vals) <= 1e-8 * scale:
        return EigenDecomposition(T, vals, float(cond))

    cols, D = [], []
    eye = np.eye(n)
    for members in cluster_eigenvalues(vals, cluster_tol * scale):
        m = members.size
        lam = vals[members].mean()
        _, s, Vh = np.linalg.svd(A - lam * eye)
        if s[n - m] > rank_tol * scale:
            raise Defective(
                f"eigenvalue {lam:.6g} has geometric multiplicity below {m}")
        cols.append(Vh[n - m:].conj().T)
        D.extend([lam] * m)
    T = np.hstack(cols)
    D = np.asarray(D)
    cond = np.linalg.cond(T)
    if not cond <= cond_threshold or _fro(A @ T - T * D) > 1e-8 * scale:
        raise Defective(f"eigenvector matrix condition {cond:.3g} exceeds {cond_threshold:.3g}")
    return EigenDecomposition(T, D, float(cond))


def verify_diagonalizable(A, cond_threshold=COND_THRESHOLD):
    try:
        eig_diagonalize(A, cond_threshold)
    except Defective:
        return False
    return True


def simultaneous_diagonalize(A, B, tol=COMMUTE_TOL, cond_threshold=COND_THRESHOLD,
                             max_tries=5, random_state=None):
    """Common eigenbasis of two commuting diagonalizable matrices.

    Diagonalizes a random combination ``mu A + nu B`` and accepts its
    eigenvectors once they diagonalize both matrices.
    """
    A = as_square_matrix(A, "A")
    B = as_square_matrix(B, "B")
    check = check_commute(A, B, tol)
    if not check.commute:
        raise NotCommuting(f"||AB - BA||_F = {check.residual:.3g}")
    eig_diagonalize(A, cond_threshold)
    eig_diagonalize(B, cond_threshold)

    rng = np.random.default_rng(random_state)
    nA, nB = _fro(A) or 1.0, _fro(B) or 1.0
    budget = 1e-7 * (nA + nB)
    for _ in range(max_tries):
        mu, nu = rng.normal(size=2) + 1j * rng.normal(size=2)
        try:
            S = eig_diagonalize(mu * A / nA + nu * B / nB, cond_threshold).T
        except Defective:
            continue
        D1 = np.diag(np.linalg.solve(S, A @ S))
        D2 = np.diag(np.linalg.solve(S, B @ S))
        if _fro(A @ S - S * D1) <= budget and _fro(B @ S - S * D2) <= budget:
            return SimultaneousDiagonalization(S, D1, D2)
    raise RandomCombinationFailed(f"no common eigenbasis found in {max_tries} tries")


def horner_matrix(coeffs, A):
    """``sum_a coeffs[a] A**a`` for ascending coefficients."""
    A = np.asarray(A, dtype=complex)
    eye = np.eye(A.shape[0], dtype=complex)
    out = np.zeros_like(eye)
    for c in np.asarray(coeffs)[::-1]:
        out = out @ A + c * eye
    return out


def horner2_matrix(coeffs, A, B):
    """``sum_{a1,a2} coeffs[a1, a2] A**a1 B**a2`` for commuting ``A``, ``B``."""
    A = np.asarray(A, dtype=complex)
    out = np.zeros(A.shape, dtype=complex)
    for row in np.asarray(coeffs)[::-1]:
        out = out @ A + horner_matrix(row, B)
    return out


def delta_matrices(p, A):
    """Stack of ``delta_j(A) = prod_{l != j} (A - lambda_l I) / p'(lambda_j)``."""
    eye = np.eye(A.shape[0], dtype=complex)
    out = []
    for j in range(p.degree):
        M = eye.copy()
        for l, lam in enumerate(p.roots):
            if l != j:
                M = M @ (A - lam * eye)
        out.append(M / p.derivative_at_roots[j])
    return out


def _pick_method(method, holomorphic):
    if method == "auto":
        return "matrix" if holomorphic else "eig"
    if method not in ("eig", "matrix"):
        raise ValueError(f"unknown method {method!r}")
    if method == "matrix" and not holomorphic:
        raise ConjugateNotSupported("the matrix route cannot apply conj to a matrix")
    return method


def calc_single(f, p, A, method="auto", cond_threshold=COND_THRESHOLD):
    """``phi(A)`` for ``phi = sum_j delta_j f_j(p)``.

    ``f`` has shape ``(d, N+1)`` (holomorphic, ascending in ``w``) or
    ``(d, N+1, N+1)`` with the last axis indexing powers of ``conj(w)``.
    """
    A = as_square_matrix(A, "A")
    f = _as_1d_coeffs(f)
    if f.shape[0] != p.degree:
        raise DimensionMismatch(f"f has {f.shape[0]} components, p has degree {p.degree}")
    method = _pick_method(method, not np.any(f[:, :, 1:]))
    if method == "eig":
        dec = eig_diagonalize(A, cond_threshold)
        return _similarity(dec.T, multicentric_eval_1d(f, p, dec.D))
    P = eval_poly_matrix(p, A)
    return sum(dj @ horner_matrix(f[j, :, 0], P)
               for j, dj in enumerate(delta_matrices(p, A)))


def calc_pair(f, p1, p2, A, B, method="auto", tol=COMMUTE_TOL,
              cond_threshold=COND_THRESHOLD, random_state=None):
    """``phi(A, B)`` for a commuting pair and an element ``f`` of shape ``(d1, d2)``."""
    A = as_square_matrix(A, "A")
    B = as_square_matrix(B, "B")
    if not isinstance(f, PolyCoeffFunction):
        raise TypeError("calc_pair expects a PolyCoeffFunction")
    if f.shape != (p1.degree, p2.degree):
        raise DimensionMismatch(
            f"element shape {f.shape} does not match degrees {(p1.degree, p2.degree)}")
    check = check_commute(A, B, tol)
    if not check.commute:
        raise NotCommuting(f"||AB - BA||_F = {check.residual:.3g}")
    method = _pick_method(method, f.is_holomorphic)
    if method == "eig":
        sd = simultaneous_diagonalize(A, B, tol, cond_threshold, random_state=random_state)
        return _similarity(sd.S, multicentric_eval(f, p1, p2, sd.D1, sd.D2))
    c = f.holomorphic_coeffs()
    P1 = eval_poly_matrix(p1, A)
    P2 = eval_poly_matrix(p2, B)
    d1s = delta_matrices(p1, A)
    d2s = delta_matrices(p2, B)
    out = np.zeros(A.shape, dtype=complex)
    for j, dj in enumerate(d1s):
        for k, dk in enumerate(d2s):
            out += dj @ dk @ horner2_matrix(c[j, k], P1, P2)
    return out


class JordanInfo(NamedTuple):
    eigenvalue: complex
    multiplicity: int
    block_size: int


def jordan_structure(A, cluster_tol=CLUSTER_TOL, rank_tol=RANK_TOL):
    """Eigenvalue clusters with their largest Jordan block size.

    The block size is the smallest ``k`` at which ``rank((A - lam I)^k)``
    drops to ``n - multiplicity``.
    """
    A = as_square_matrix(A, "A")
    n = A.shape[0]
    scale = _fro(A) or 1.0
    vals = np.linalg.eigvals(A)
    out = []
    for members in cluster_eigenvalues(vals, cluster_tol * scale):
        m = members.size
        lam = vals[members].mean()
        N = A - lam * np.eye(n)
        power = np.eye(n, dtype=complex)
        size = m
        for k in range(1, m + 1):
            power = power @ N
            if np.linalg.matrix_rank(power, tol=rank_tol * max(scale, 1.0) ** k) <= n - m:
                size = k
                break
        out.append(JordanInfo(complex(lam), m, size))
    return out


def suggest_polynomial(A, c=1.0, max_tries=5, cond_threshold=COND_THRESHOLD,
                       cluster_tol=CLUSTER_TOL, rank_tol=RANK_TOL):
    """Monic ``p`` with simple roots such that ``p(A)`` is diagonalizable.

    With ``q(z) = prod_i (z - lam_i)**(s_i - 1)`` over eigenvalues with
    largest block ``s_i``, ``p`` is the monic antiderivative of ``q`` shifted
    by ``-c``: ``p'`` vanishes to order ``s_i - 1`` at every ``lam_i``, which
    annihilates the nilpotent part of ``p(A)``. ``c`` is doubled whenever the
    roots collide or the check on ``p(A)`` fails.
    """
    if c == 0:
        raise ValueError("c must be nonzero")
    A = as_square_matrix(A, "A")
    q = np.array([1.0 + 0j])
    for info in jordan_structure(A, cluster_tol, rank_tol):
        q = np.polymul(q, np.poly([info.eigenvalue] * (info.block_size - 1)))
    base = np.polyint((q.size) * q)
    for _ in range(max_tries):
        coeffs = base.astype(complex)
        coeffs[-1] -= c
        try:
            p = MonicPolynomial.from_roots(companion_roots(coeffs))
        except DuplicateRoots:
            c *= 2
            continue
        if verify_diagonalizable(eval_poly_matrix(p, A), cond_threshold):
            return p
        c *= 2
    raise ConstructionFailed(f"no admissible polynomial after {max_tries} attempts")
