"""One-variable polyproduct on C^d.

For a fixed point ``w`` the product of ``a, b`` in C^d is

    (a * b)_j = a_j b_j - w sum_{l != j} sigma[j, l] (a_j - a_l)(b_j - b_l)

with ``sigma`` from :func:`multicentric.poly.sigma_table`. All functions
broadcast over leading axes, so ``w`` of shape ``(n,)`` with ``a`` of shape
``(n, d)`` evaluates the product pointwise on ``n`` points at once.
"""

import numpy as np

from ._validation import as_complex_array, check_index, check_trailing_shape
from .exceptions import NotInvertible
from .poly import coupling

#: condition number above which a multiplication matrix counts as singular
INVERT_COND_THRESHOLD = 1e12


def _value(p, a, name):
    return check_trailing_shape(as_complex_array(a, name), (p.degree,), name)


def sym_mul(x, y):
    """Elementwise complex product that is bit-for-bit symmetric in its arguments.

    Native complex multiplication may fuse one of the imaginary-part products
    into an FMA, which breaks exact commutativity.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    xr, xi, yr, yi = x.real, x.imag, y.real, y.imag
    out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=complex)
    out.real = xr * yr - xi * yi
    out.imag = xr * yi + xi * yr
    return out


def box(a):
    """Pairwise differences ``box(a)[..., i, j] = a_i - a_j``."""
    a = np.asarray(a, dtype=complex)
    return a[..., :, None] - a[..., None, :]


def polyprod_point(p, w, a, b):
    """Polyproduct of two values of C^d at the point ``w``."""
    a = _value(p, a, "a")
    b = _value(p, b, "b")
    w = np.asarray(w, dtype=complex)
    cross = np.sum(p.sigma * sym_mul(box(a), box(b)), axis=-1)
    return sym_mul(a, b) - w[..., None] * cross


def polyprod_point_matrix_form(p, w, a, b):
    """Same product written as ``a o b - w (L o box(a) o box(b)) l``.

    Kept as an independent evaluation route for cross-checking.
    """
    a = _value(p, a, "a")
    b = _value(p, b, "b")
    w = np.asarray(w, dtype=complex)
    L, l_vec = coupling(p)
    return a * b - w[..., None] * ((L * box(a) * box(b)) @ l_vec)


def basis_product_1d(p, w, i, j):
    """Product of coordinate vectors ``e_i * e_j`` at the point ``w``."""
    d = p.degree
    check_index(i, d, "i")
    check_index(j, d, "j")
    sig = p.sigma
    out = np.zeros(d, dtype=complex)
    if i == j:
        out[i] = 1.0
        for m in range(d):
            if m != i:
                out[i] -= w * sig[i, m]
                out[m] -= w * sig[m, i]
    else:
        out[i] = w * sig[i, j]
        out[j] = w * sig[j, i]
    return out


def mult_matrix(p, w, a):
    """Matrix ``M`` with ``M @ b == polyprod_point(p, w, a, b)`` for all ``b``."""
    a = _value(p, a, "a")
    w = np.asarray(w, dtype=complex)
    off = w[..., None, None] * p.sigma * box(a)
    d = p.degree
    idx = np.arange(d)
    M = off.copy()
    M[..., idx, idx] = a - off.sum(axis=-1)
    return M


def inverse_point(p, w, a, cond_threshold=INVERT_COND_THRESHOLD):
    """Solve ``a * x = 1`` in the algebra at the point ``w``.

    Raises
    ------
    NotInvertible
        If the multiplication matrix of ``a`` has condition number above
        ``cond_threshold``.
    """
    M = mult_matrix(p, w, a)
    if M.ndim != 2:
        raise ValueError("inverse_point works on a single point")
    if not np.linalg.cond(M) <= cond_threshold:
        raise NotInvertible("element is not invertible at this point")
    return np.linalg.solve(M, np.ones(p.degree, dtype=complex))


def power_point(p, w, a, n):
    """``a`` raised to the ``n``-th polyproduct power, by repeated squaring."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = _value(p, a, "a")
    result = np.ones_like(a)
    base = a
    while n:
        if n & 1:
            result = polyprod_point(p, w, result, base)
        n >>= 1
        if n:
            base = polyprod_point(p, w, base, base)
    return result
