"""Algebra elements as functions on M1 x M2, and their norms.

The compacts ``M1``, ``M2`` are finite unions of closed discs. Each carries an
explicit sampling grid, and every norm is a maximum over that grid.

Two element representations are provided:

* :class:`PolyCoeffFunction`: polynomials in ``w1, conj(w1), w2, conj(w2)``
  for every component, evaluable anywhere;
* :class:`GridFunction`: samples on the product grid, evaluable only at grid
  points.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ._validation import as_complex_array
from .algebra2d import mult_matrix2, polyprod2_scalar
from .exceptions import ConfigError, ConjugateNotSupported, DimensionMismatch, PointNotOnGrid

_OP_NORM_CHUNK = 128
#: refuse to build grids larger than this many points per disc
MAX_GRID_POINTS = 1_000_000


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ConfigError(f"disc radius must be nonnegative, got {self.radius}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))


def ring_grid(disc, spacing):
    """Concentric rings covering ``disc`` with roughly ``spacing`` between points."""
    if disc.radius == 0:
        return np.array([disc.center])
    n = max(1, math.ceil(disc.radius / spacing))
    if 4 * n * n > MAX_GRID_POINTS:
        raise ConfigError(f"spacing {spacing:.3g} would need about {4 * n * n:.3g} grid points")
    pts = [disc.center]
    for i in range(1, n + 1):
        r = disc.radius * i / n
        m = math.ceil(2 * math.pi * i)
        theta = 2 * np.pi * np.arange(m) / m
        pts.extend(disc.center + r * np.exp(1j * theta))
    return np.asarray(pts, dtype=complex)


@dataclass(frozen=True, eq=False)
class FactorDomain:
    """One factor ``M_i``: a union of closed discs with a sampling grid.

    ``resolution`` is the grid spacing; it doubles as the distance tolerance
    for membership questions (preimage checks, critical-value isolation).
    """

    discs: Tuple[Disc, ...]
    grid: np.ndarray
    resolution: float

    def __post_init__(self):
        grid = as_complex_array(self.grid, "grid").ravel()
        if grid.size == 0:
            raise ConfigError("domain grid is empty")
        if not self.discs:
            raise ConfigError("domain needs at least one disc")
        if not self.resolution > 0:
            raise ConfigError("resolution must be positive")
        slack = 1e-12 * max(1.0, float(np.max(np.abs(grid))))
        if not np.all(self.contains(grid, slack)):
            raise ConfigError("grid points must lie in the disc union")
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "discs", tuple(self.discs))

    @classmethod
    def from_discs(cls, discs, resolution=None):
        discs = tuple(d if isinstance(d, Disc) else Disc(*d) for d in discs)
        if not discs:
            raise ConfigError("domain needs at least one disc")
        if resolution is None:
            rmax = max(d.radius for d in discs)
            resolution = rmax / 4 if rmax > 0 else 1e-8
        grid = np.concatenate([ring_grid(d, resolution) for d in discs])
        return cls(discs, grid, float(resolution))

    def contains(self, w, tol=0.0):
        w = np.asarray(w, dtype=complex)
        inside = np.zeros(w.shape, dtype=bool)
        for d in self.discs:
            inside |= np.abs(w - d.center) <= d.radius + tol
        return inside

    @property
    def max_modulus(self):
        return float(np.max(np.abs(self.grid)))


@dataclass(frozen=True, eq=False)
class DomainSpec:
    factor1: FactorDomain
    factor2: FactorDomain

    @property
    def shape(self):
        return (self.factor1.grid.size, self.factor2.grid.size)

    def mesh(self):
        """Grid coordinates ``(W1, W2)``, each of shape ``(n1, n2)``."""
        return np.meshgrid(self.factor1.grid, self.factor2.grid, indexing="ij")


def _grid_index(grid, w):
    hits = np.flatnonzero(grid == complex(w))
    if hits.size == 0:
        raise PointNotOnGrid(f"{complex(w)} is not a grid point")
    return int(hits[0])


@dataclass(frozen=True, eq=False)
class PolyCoeffFunction:
    """Componentwise polynomials in ``w1, conj(w1), w2, conj(w2)``.

    ``coeffs[j, k, a1, b1, a2, b2]`` multiplies
    ``w1**a1 * conj(w1)**b1 * w2**a2 * conj(w2)**b2`` in component ``(j, k)``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_complex_array(self.coeffs, "coeffs")
        if c.ndim != 6 or c.shape[2] != c.shape[3] or c.shape[4] != c.shape[5]:
            raise DimensionMismatch(
                f"coeffs must have shape (d1, d2, N1+1, N1+1, N2+1, N2+1), got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    @property
    def shape(self):
        return self.coeffs.shape[:2]

    @property
    def degrees(self):
        return (self.coeffs.shape[2] - 1, self.coeffs.shape[4] - 1)

    @property
    def is_holomorphic(self):
        c = self.coeffs
        return not (np.any(c[:, :, :, 1:]) or np.any(c[..., 1:]))

    @classmethod
    def zeros(cls, d1, d2, degrees=(0, 0)):
        n1, n2 = degrees[0] + 1, degrees[1] + 1
        return cls(np.zeros((d1, d2, n1, n1, n2, n2), dtype=complex))

    @classmethod
    def constant(cls, F, degrees=(0, 0)):
        F = as_complex_array(F, "F")
        if F.ndim != 2:
            raise DimensionMismatch("constant value must be a d1 x d2 matrix")
        out = cls.zeros(*F.shape, degrees=degrees)
        out.coeffs[:, :, 0, 0, 0, 0] = F
        return out

    @classmethod
    def unit(cls, d1, d2):
        return cls.constant(np.ones((d1, d2)))

    @classmethod
    def from_holomorphic(cls, c):
        """Build from ``c[j, k, a1, a2]`` (no conjugate monomials)."""
        c = as_complex_array(c, "coefficients")
        d1, d2, n1, n2 = c.shape
        out = cls.zeros(d1, d2, (n1 - 1, n2 - 1))
        out.coeffs[:, :, :, 0, :, 0] = c
        return out

    @classmethod
    def from_terms(cls, terms, shape, degrees=None):
        """Build from sparse ``(component, powers, value)`` triples."""
        terms = [(tuple(c), tuple(pw), complex(v)) for c, pw, v in terms]
        if degrees is None:
            n1 = max([max(pw[0], pw[1]) for _, pw, _ in terms] or [0])
            n2 = max([max(pw[2], pw[3]) for _, pw, _ in terms] or [0])
            degrees = (n1, n2)
        out = cls.zeros(*shape, degrees=degrees)
        for (j, k), (a1, b1, a2, b2), v in terms:
            try:
                out.coeffs[j, k, a1, b1, a2, b2] += v
            except IndexError:
                raise DimensionMismatch(
                    f"term component {(j, k)} / powers {(a1, b1, a2, b2)} exceeds "
                    f"shape {tuple(shape)} / degrees {tuple(degrees)}") from None
        return out

    def holomorphic_coeffs(self):
        """``c[j, k, a1, a2]``; raises if any conjugate monomial is present."""
        if not self.is_holomorphic:
            raise ConjugateNotSupported("element carries conjugate monomials")
        return self.coeffs[:, :, :, 0, :, 0]

    def __call__(self, w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, dtype=complex),
                                     np.asarray(w2, dtype=complex))
        n1, n2 = self.coeffs.shape[2], self.coeffs.shape[4]
        P1 = w1[..., None] ** np.arange(n1)
        Q1 = np.conj(w1)[..., None] ** np.arange(n1)
        P2 = w2[..., None] ** np.arange(n2)
        Q2 = np.conj(w2)[..., None] ** np.arange(n2)
        return np.einsum("jkabcd,...a,...b,...c,...d->...jk",
                         self.coeffs, P1, Q1, P2, Q2)

    def _padded(self, degrees):
        (n1, n2), (m1, m2) = self.degrees, degrees
        c = np.zeros(self.shape + (m1 + 1, m1 + 1, m2 + 1, m2 + 1), dtype=complex)
        c[:, :, :n1 + 1, :n1 + 1, :n2 + 1, :n2 + 1] = self.coeffs
        return c

    def __add__(self, other):
        if not isinstance(other, PolyCoeffFunction):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch("component shapes differ")
        deg = tuple(max(a, b) for a, b in zip(self.degrees, other.degrees))
        return PolyCoeffFunction(self._padded(deg) + other._padded(deg))

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return PolyCoeffFunction(alpha * self.coeffs)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples ``samples[i1, i2] = f(grid1[i1], grid2[i2])`` on a product grid."""

    domain: DomainSpec
    samples: np.ndarray

    def __post_init__(self):
        s = as_complex_array(self.samples, "samples")
        if s.ndim != 4 or s.shape[:2] != self.domain.shape:
            raise DimensionMismatch(
                f"samples must have shape {self.domain.shape} + (d1, d2), got {s.shape}")
        object.__setattr__(self, "samples", s)

    @property
    def shape(self):
        return self.samples.shape[2:]

    def index_of(self, w1, w2):
        return (_grid_index(self.domain.factor1.grid, w1),
                _grid_index(self.domain.factor2.grid, w2))

    def __call__(self, w1, w2):
        w1, w2 = np.broadcast_arrays(np.asarray(w1, dtype=complex),
                                     np.asarray(w2, dtype=complex))
        out = np.empty(w1.shape + self.shape, dtype=complex)
        for idx in np.ndindex(w1.shape):
            out[idx] = self.samples[self.index_of(w1[idx], w2[idx])]
        return out


@dataclass(frozen=True, eq=False)
class GridSlice:
    """One-variable restriction of a grid function: the free factor's grid
    and values ``values[i] = f(grid[i], fixed)`` (or the mirrored order)."""

    grid: np.ndarray
    values: np.ndarray
    fixed: complex
    free_factor: int

    def __call__(self, w):
        return self.values[_grid_index(self.grid, w)]


def eval_element(f, w1, w2):
    """Value of ``f`` at ``(w1, w2)``; grid functions require a grid point."""
    return f(w1, w2)


def sample(f, domain):
    """Sample any element representation on the grid of ``domain``."""
    if isinstance(f, GridFunction):
        if f.domain is not domain and f.domain.shape != domain.shape:
            raise DimensionMismatch("grid function lives on a different domain")
        return f
    W1, W2 = domain.mesh()
    return GridFunction(domain, f(W1, W2))


def polyprod_elements(p1, p2, f, g, domain):
    """Pointwise polyproduct of two elements over the grid of ``domain``."""
    F = sample(f, domain).samples
    G = sample(g, domain).samples
    if F.shape != G.shape:
        raise DimensionMismatch(f"element shapes differ: {F.shape[2:]} vs {G.shape[2:]}")
    W1, W2 = domain.mesh()
    return GridFunction(domain, polyprod2_scalar(p1, p2, W1, W2, F, G))


def sup_norm(f, domain=None):
    """``max_{j,k} max_grid |f_jk|``."""
    if domain is None:
        domain = f.domain
    return float(np.max(np.abs(sample(f, domain).samples)))


def pointwise_op_norms(p1, p2, f, domain):
    """Infinity-induced norm of the multiplication matrix at every grid point.

    Since the product acts pointwise, ``sup_{|g| <= 1} |f * g|`` decouples
    into independent maximizations per grid point, each solved by the
    maximal absolute row sum.
    """
    F = sample(f, domain).samples
    W1, W2 = domain.mesh()
    F = F.reshape((-1,) + F.shape[2:])
    W1, W2 = W1.ravel(), W2.ravel()
    out = np.empty(W1.size)
    for s in range(0, W1.size, _OP_NORM_CHUNK):
        sl = slice(s, s + _OP_NORM_CHUNK)
        M = mult_matrix2(p1, p2, W1[sl], W2[sl], F[sl])
        out[sl] = np.abs(M).sum(axis=-1).max(axis=-1)
    return out.reshape(domain.shape)


def op_norm(p1, p2, f, domain):
    """Operator norm ``sup_{|g|_inf <= 1} |f * g|_inf`` over the grid."""
    return float(np.max(pointwise_op_norms(p1, p2, f, domain)))


def equivalence_bound(p1, p2, domain):
    """Explicit ``C`` with ``op_norm(f) <= C * sup_norm(f)`` on ``domain``.

    Every difference of two components is bounded by ``2 |f|``, and every
    second difference by ``4 |f|``, giving
    ``1 + 4 W1 S1 + 4 W2 S2 + 16 W1 W2 S1 S2`` with ``W_i`` the largest grid
    modulus and ``S_i`` the largest absolute row sum of the sigma table.
    """
    W1 = domain.factor1.max_modulus
    W2 = domain.factor2.max_modulus
    S1 = float(np.abs(p1.sigma).sum(axis=1).max())
    S2 = float(np.abs(p2.sigma).sum(axis=1).max())
    return 1 + 4 * W1 * S1 + 4 * W2 * S2 + 16 * W1 * W2 * S1 * S2


def slice_w2(f, y0, domain=None):
    """Fix the second argument: ``w1 -> f(w1, y0)`` over the first grid."""
    g = sample(f, domain if domain is not None else f.domain)
    i2 = _grid_index(g.domain.factor2.grid, y0)
    return GridSlice(g.domain.factor1.grid, g.samples[:, i2], complex(y0), 1)


def slice_w1(f, x0, domain=None):
    """Fix the first argument: ``w2 -> f(x0, w2)`` over the second grid."""
    g = sample(f, domain if domain is not None else f.domain)
    i1 = _grid_index(g.domain.factor1.grid, x0)
    return GridSlice(g.domain.factor2.grid, g.samples[i1], complex(x0), 2)


def monomial_design(w1, w2, degrees, conjugate=True):
    """Design matrix of monomials, columns ordered like ``coeffs[a1, b1, a2, b2]``."""
    w1 = np.asarray(w1, dtype=complex).ravel()
    w2 = np.asarray(w2, dtype=complex).ravel()
    n1, n2 = degrees[0] + 1, degrees[1] + 1
    nb1, nb2 = (n1, n2) if conjugate else (1, 1)
    P1 = w1[:, None] ** np.arange(n1)
    Q1 = np.conj(w1)[:, None] ** np.arange(nb1)
    P2 = w2[:, None] ** np.arange(n2)
    Q2 = np.conj(w2)[:, None] ** np.arange(nb2)
    X = np.einsum("na,nb,nc,nd->nabcd", P1, Q1, P2, Q2)
    return X.reshape(w1.size, -1), (n1, nb1, n2, nb2)


def fit_poly_coeffs(w1, w2, values, degrees, conjugate=True):
    """Least-squares :class:`PolyCoeffFunction` through sampled values.

    ``values`` has shape ``(n, d1, d2)`` (or ``(n,)`` for a scalar
    component). Underdetermined systems get the minimum-norm solution.
    """
    Y = as_complex_array(values, "values")
    if Y.ndim == 1:
        Y = Y[:, None, None]
    X, (n1, nb1, n2, nb2) = monomial_design(w1, w2, degrees, conjugate)
    if X.shape[0] != Y.shape[0]:
        raise DimensionMismatch("number of points and values differ")
    d1, d2 = Y.shape[1:]
    sol, *_ = np.linalg.lstsq(X, Y.reshape(len(Y), -1), rcond=None)
    c = sol.T.reshape(d1, d2, n1, nb1, n2, nb2)
    out = PolyCoeffFunction.zeros(d1, d2, degrees)
    out.coeffs[:, :, :, :nb1, :, :nb2] = c
    return out
