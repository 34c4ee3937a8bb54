"""Multicentric representation, characters and the Gelfand transform.

An element ``f`` with values in C^{d1 x d2} represents the scalar function

    phi(z1, z2) = sum_{j,k} delta1_j(z1) delta2_k(z2) f_jk(p1(z1), p2(z2))

on ``K1 x K2 = p1^{-1}(M1) x p2^{-1}(M2)``. Evaluation at a fixed
``(z1, z2)`` is a character of the algebra, and ``phi`` is the Gelfand
transform of ``f``.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import as_complex_array
from .exceptions import ConfigError
from .function_space import PolyCoeffFunction, sample
from .poly import critical_values, delta_basis, eval_poly, preimages


@dataclass(frozen=True, eq=False)
class Character:
    """Evaluation functional at ``(z1, z2)`` with cached basis weights."""

    z1: complex
    z2: complex
    delta1: np.ndarray
    delta2: np.ndarray
    w1: complex
    w2: complex

    def __call__(self, f):
        return character_apply(self, f)

    @property
    def weight_sum(self):
        return complex(self.delta1.sum() * self.delta2.sum())


def make_character(p1, p2, z1, z2, w1=None, w2=None):
    """Character at ``(z1, z2)``.

    ``w1``/``w2`` override ``p_i(z_i)``; pass the generating grid point when
    the element is only known on a grid.
    """
    return Character(
        complex(z1), complex(z2),
        delta_basis(p1, z1), delta_basis(p2, z2),
        complex(eval_poly(p1, z1) if w1 is None else w1),
        complex(eval_poly(p2, z2) if w2 is None else w2),
    )


def character_apply(chi, f):
    F = f(chi.w1, chi.w2)
    return complex(chi.delta1 @ F @ chi.delta2)


def multicentric_eval(f, p1, p2, z1, z2):
    """Evaluate the scalar function represented by ``f`` at ``(z1, z2)``.

    Broadcasts over ``z1``, ``z2``. Grid functions need ``p_i(z_i)`` to hit
    a grid point exactly.
    """
    z1, z2 = np.broadcast_arrays(np.asarray(z1, dtype=complex),
                                 np.asarray(z2, dtype=complex))
    F = f(eval_poly(p1, z1), eval_poly(p2, z2))
    return np.einsum("...j,...k,...jk->...", delta_basis(p1, z1), delta_basis(p2, z2), F)


def _as_1d_coeffs(f):
    f = as_complex_array(f, "f")
    if f.ndim == 1:
        f = f[:, None]
    if f.ndim == 2:
        f = f[:, :, None]
    if f.ndim != 3:
        raise ValueError("one-variable coefficients must have shape (d, N+1) or (d, N+1, N+1)")
    return f


def eval_coeffs_1d(f, w):
    """Evaluate ``f[j, a, b] w**a conj(w)**b`` (or holomorphic ``f[j, a]``)."""
    f = _as_1d_coeffs(f)
    w = np.asarray(w, dtype=complex)
    P = w[..., None] ** np.arange(f.shape[1])
    Q = np.conj(w)[..., None] ** np.arange(f.shape[2])
    return np.einsum("jab,...a,...b->...j", f, P, Q)


def multicentric_eval_1d(f, p, z):
    """``sum_j delta_j(z) f_j(p(z))`` for one-variable coefficient arrays."""
    z = np.asarray(z, dtype=complex)
    return np.sum(delta_basis(p, z) * eval_coeffs_1d(f, eval_poly(p, z)), axis=-1)


@dataclass(frozen=True, eq=False)
class PreimageGrid:
    """Sampled ``K1 x K2``: all preimages of every grid point of each factor.

    ``index1[a]`` is the position in ``domain.factor1.grid`` of the point
    ``w`` for which ``z1[a]`` solves ``p1(z) = w``; likewise for factor 2.
    """

    domain: object
    z1: np.ndarray
    index1: np.ndarray
    z2: np.ndarray
    index2: np.ndarray

    @classmethod
    def from_domain(cls, p1, p2, domain):
        z1, i1 = _fibers(p1, domain.factor1)
        z2, i2 = _fibers(p2, domain.factor2)
        return cls(domain, z1, i1, z2, i2)


def _fibers(p, factor):
    zs, idx = [], []
    for i, w in enumerate(factor.grid):
        z = preimages(p, w)
        zs.append(z)
        idx.append(np.full(z.size, i))
    z = np.concatenate(zs)
    idx = np.concatenate(idx)
    resid = np.abs(eval_poly(p, z) - factor.grid[idx])
    if resid.size and resid.max() > factor.resolution:
        raise ConfigError(
            f"preimage residual {resid.max():.3g} exceeds grid resolution {factor.resolution:.3g}")
    return z, idx


@dataclass(frozen=True, eq=False)
class GelfandTransform:
    """Values ``values[a, b]`` of the transform at ``(z1[a], z2[b])``."""

    z1: np.ndarray
    z2: np.ndarray
    values: np.ndarray

    def as_dict(self):
        return {(complex(a), complex(b)): complex(self.values[i, j])
                for i, a in enumerate(self.z1) for j, b in enumerate(self.z2)}


def gelfand_transform(f, p1, p2, K):
    """Gelfand transform of ``f`` sampled on the preimage grid ``K``.

    ``f`` is evaluated at the generating grid points, so grid functions and
    polynomial elements are treated identically.
    """
    F = sample(f, K.domain).samples[K.index1][:, K.index2]
    values = np.einsum("aj,bk,abjk->ab", delta_basis(p1, K.z1), delta_basis(p2, K.z2), F)
    return GelfandTransform(K.z1, K.z2, values)


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """Multiset of transform values with their generating points."""

    values: np.ndarray
    z1: np.ndarray
    z2: np.ndarray

    def __len__(self):
        return self.values.size


def spectrum(f, p1, p2, K):
    """Spectrum of ``f`` as the set of its Gelfand transform values over ``K``."""
    T = gelfand_transform(f, p1, p2, K)
    Z1, Z2 = np.meshgrid(T.z1, T.z2, indexing="ij")
    return SpectrumSet(T.values.ravel(), Z1.ravel(), Z2.ravel())


def _divmod_monic(c, div):
    """Divide ``c`` (ascending, along axis 0) by a monic ``div`` (ascending)."""
    d = div.size - 1
    n = c.shape[0]
    if n <= d:
        r = np.zeros((d,) + c.shape[1:], dtype=complex)
        r[:n] = c
        return np.zeros((0,) + c.shape[1:], dtype=complex), r
    r = c.astype(complex, copy=True)
    q = np.zeros((n - d,) + c.shape[1:], dtype=complex)
    shape = (-1,) + (1,) * (c.ndim - 1)
    for i in range(n - 1, d - 1, -1):
        lead = r[i].copy()
        q[i - d] = lead
        r[i - d:i + 1] -= lead[None] * div.reshape(shape)
    return q, r[:d]


def padic_expand(c, p):
    """Digits ``r_m`` (each of degree < d) with ``phi = sum_m r_m p**m``.

    ``c`` holds ascending coefficients along axis 0; any trailing axes are
    carried along. Returns an array of shape ``(M, d) + c.shape[1:]``.
    """
    div = p.coefficients[::-1]
    c = np.asarray(c, dtype=complex)
    digits = []
    while True:
        c, r = _divmod_monic(c, div)
        digits.append(r)
        if c.shape[0] == 0:
            break
    return np.stack(digits)


def decompose_poly_1d(phi, p):
    """Coefficients ``f[j, m]`` with ``phi(z) = sum_j delta_j(z) f_j(p(z))``.

    ``phi`` is given by ascending coefficients in ``z``; each ``f_j`` is a
    polynomial in ``w`` with ascending coefficients ``f[j, :]``.
    """
    phi = as_complex_array(phi, "phi").ravel()
    digits = padic_expand(phi, p)                       # [m, i]
    V = p.roots[:, None] ** np.arange(p.degree)          # [j, i]
    return (V @ digits.T)


def decompose_poly_2d(phi, p1, p2):
    """Holomorphic :class:`PolyCoeffFunction` representing a bivariate polynomial.

    ``phi[a1, a2]`` is the coefficient of ``z1**a1 * z2**a2``.
    """
    phi = as_complex_array(phi, "phi")
    if phi.ndim != 2:
        raise ValueError("phi must be a 2-d coefficient array")
    V1 = p1.roots[:, None] ** np.arange(p1.degree)
    V2 = p2.roots[:, None] ** np.arange(p2.degree)
    D1 = padic_expand(phi, p1)                           # [m1, i, a2]
    F1 = np.einsum("ji,mia->jma", V1, D1)                # [j, m1, a2]
    D2 = padic_expand(np.moveaxis(F1, 2, 0), p2)         # [m2, i, j, m1]
    c = np.einsum("ki,nijm->jkmn", V2, D2)               # [j, k, m1, m2]
    return PolyCoeffFunction.from_holomorphic(c)


class Verdict(str, enum.Enum):
    SEMISIMPLE = "semisimple"
    NOT_SEMISIMPLE = "not_semisimple"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SemisimplicityResult:
    verdict: Verdict
    witness: Optional[complex]
    critical_values: tuple


def semisimplicity_check(p, factor):
    """Decide whether the one-variable algebra over ``factor`` is semisimple.

    A critical value of ``p`` is isolated in the disc union when it sits on a
    radius-0 disc and outside every positive-radius disc. Critical values
    within ``factor.resolution`` of a positive-radius boundary cannot be
    classified and yield ``INCONCLUSIVE``.
    """
    cvals = critical_values(p)
    tol = factor.resolution
    discs = [d for d in factor.discs if d.radius > 0]
    points = [d for d in factor.discs if d.radius == 0]
    witness = None
    unsure = None
    for c in cvals:
        dist = [abs(c - d.center) - d.radius for d in discs]
        if any(x < -tol for x in dist):
            continue
        if any(abs(x) <= tol for x in dist):
            unsure = c if unsure is None else unsure
            continue
        if any(abs(c - d.center) <= tol for d in points):
            witness = c
            break
    cv = tuple(complex(c) for c in cvals)
    if witness is not None:
        return SemisimplicityResult(Verdict.NOT_SEMISIMPLE, complex(witness), cv)
    if unsure is not None:
        return SemisimplicityResult(Verdict.INCONCLUSIVE, complex(unsure), cv)
    return SemisimplicityResult(Verdict.SEMISIMPLE, None, cv)
