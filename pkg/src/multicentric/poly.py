"""Monic polynomials given by their roots, and the data derived from them.

Everything downstream is driven by a :class:`MonicPolynomial`
``p(z) = prod_j (z - lambda_j)`` with pairwise distinct roots. From it we get
the Lagrange basis at the roots (``delta_basis``), the coupling
coefficients ``sigma[j, l] = 1 / (p'(lambda_l) (lambda_j - lambda_l))`` and
the critical values of ``p``.

Indices are 0-based throughout the package.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from ._validation import as_complex_array, as_square_matrix, check_index, check_nonnegative
from .exceptions import DuplicateRoots, EmptyRoots, RootFindingFailed

#: default separation tolerance, relative to the root-set diameter
DEFAULT_SEPARATION_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class RootSet:
    """Ordered, pairwise distinct complex roots."""

    roots: np.ndarray
    separation_tolerance: float = 0.0

    def __len__(self):
        return self.roots.shape[0]


@dataclass(frozen=True, eq=False)
class MonicPolynomial:
    """``p(z) = prod_j (z - roots[j])``.

    The product form is the primary representation; coefficients are only
    expanded when a companion matrix is needed.
    """

    root_set: RootSet

    @classmethod
    def from_roots(cls, roots, tol=None):
        return cls(make_root_set(roots, tol))

    @property
    def roots(self):
        return self.root_set.roots

    @property
    def degree(self):
        return len(self.root_set)

    def __call__(self, z):
        return eval_poly(self, z)

    def __repr__(self):
        return f"MonicPolynomial(roots={self.roots.tolist()!r})"

    @cached_property
    def derivative_at_roots(self):
        """Vector of ``p'(lambda_l)`` for every root."""
        diff = self.roots[:, None] - self.roots[None, :]
        np.fill_diagonal(diff, 1.0)
        return np.prod(diff, axis=1)

    @cached_property
    def sigma(self):
        return sigma_table(self)

    @cached_property
    def coefficients(self):
        """Expanded coefficients, highest power first (``numpy.poly`` order)."""
        return np.poly(self.roots).astype(complex)


def make_root_set(roots, tol=None):
    """Validate ``roots`` and wrap them in a :class:`RootSet`.

    Parameters
    ----------
    roots : sequence of complex
    tol : float, optional
        Minimum admissible distance between two roots. Defaults to
        ``1e-9`` times the diameter of the root set.

    Raises
    ------
    EmptyRoots, DuplicateRoots
    """
    arr = as_complex_array(roots, "roots").ravel()
    if arr.size == 0:
        raise EmptyRoots("a root set needs at least one root")
    dist = np.abs(arr[:, None] - arr[None, :])
    if tol is None:
        tol = DEFAULT_SEPARATION_RTOL * float(dist.max())
    tol = check_nonnegative(tol, "tol")
    if arr.size > 1:
        np.fill_diagonal(dist, np.inf)
        j, l = np.unravel_index(np.argmin(dist), dist.shape)
        if not dist[j, l] > tol:
            raise DuplicateRoots(
                f"roots {j} and {l} are {dist[j, l]:.3g} apart (tolerance {tol:.3g})")
    arr.setflags(write=False)
    return RootSet(arr, tol)


def eval_poly(p, z):
    """Evaluate ``p`` at ``z`` (scalar or array) by the product form."""
    z = np.asarray(z, dtype=complex)
    return np.prod(z[..., None] - p.roots, axis=-1)


def derivative_at_root(p, l):
    """``p'(lambda_l) = prod_{j != l} (lambda_l - lambda_j)``."""
    check_index(l, p.degree, "l")
    return p.derivative_at_roots[l]


def delta_basis(p, z):
    """Lagrange basis at the roots of ``p``, evaluated at ``z``.

    ``delta_j(z) = prod_{l != j} (z - lambda_l) / p'(lambda_j)``. For array
    ``z`` the basis index is the last axis of the result.
    """
    z = np.asarray(z, dtype=complex)
    d = p.degree
    diff = z[..., None] - p.roots
    factors = np.broadcast_to(diff[..., None, :], diff.shape[:-1] + (d, d)).copy()
    idx = np.arange(d)
    factors[..., idx, idx] = 1.0
    return np.prod(factors, axis=-1) / p.derivative_at_roots


def sigma_table(p):
    """Matrix of ``sigma[j, l] = 1 / (p'(lambda_l) (lambda_j - lambda_l))``, zero diagonal."""
    lam = p.roots
    diff = lam[:, None] - lam[None, :]
    np.fill_diagonal(diff, 1.0)
    sig = 1.0 / (p.derivative_at_roots[None, :] * diff)
    np.fill_diagonal(sig, 0.0)
    return sig


class CouplingData(NamedTuple):
    L: np.ndarray
    l_vec: np.ndarray


def coupling(p):
    """Return ``L`` (``1/(lambda_j - lambda_l)`` off the diagonal) and ``l = 1/p'(lambda)``."""
    lam = p.roots
    diff = lam[:, None] - lam[None, :]
    np.fill_diagonal(diff, 1.0)
    L = 1.0 / diff
    np.fill_diagonal(L, 0.0)
    return CouplingData(L, 1.0 / p.derivative_at_roots)


def companion_roots(coeffs):
    """Roots of a polynomial (highest power first) as companion-matrix eigenvalues."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "f")
    if c.size == 0:
        raise RootFindingFailed("zero polynomial has no isolated roots")
    n = c.size - 1
    if n == 0:
        return np.empty(0, dtype=complex)
    c = c / c[0]
    # a real companion matrix keeps exact real roots (e.g. z**2 - 1) exact
    dtype = float if not np.any(c.imag) else complex
    comp = np.zeros((n, n), dtype=dtype)
    comp[0, :] = -c[1:].real if dtype is float else -c[1:]
    comp[np.arange(1, n), np.arange(n - 1)] = 1.0
    try:
        vals = np.linalg.eigvals(comp).astype(complex)
    except np.linalg.LinAlgError as exc:
        raise RootFindingFailed(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise RootFindingFailed("eigensolver returned non-finite values")
    return _polish(c, vals)


def _polish(c, z, steps=2):
    """Newton steps on each root, kept only where the residual shrinks."""
    dc = np.polyder(c)
    for _ in range(steps):
        f = np.polyval(c, z)
        df = np.polyval(dc, z)
        ok = df != 0
        cand = z.copy()
        cand[ok] = z[ok] - f[ok] / df[ok]
        better = np.abs(np.polyval(c, cand)) < np.abs(f)
        z = np.where(better, cand, z)
    return z


def critical_points(p):
    """Zeros of ``p'``; empty for degree 1."""
    if p.degree < 2:
        return np.empty(0, dtype=complex)
    return companion_roots(np.polyder(p.coefficients))


def critical_values(p):
    """Values ``p(c)`` at the zeros ``c`` of ``p'``."""
    return eval_poly(p, critical_points(p))


def preimages(p, w):
    """All ``d`` solutions of ``p(z) = w``."""
    c = p.coefficients.copy()
    c[-1] -= w
    return companion_roots(c)


def eval_poly_matrix(p, A):
    """``p(A) = prod_j (A - lambda_j I)``."""
    A = as_square_matrix(A, "A")
    eye = np.eye(A.shape[0], dtype=complex)
    out = eye.copy()
    for lam in p.roots:
        out = out @ (A - lam * eye)
    return out
