"""Two-variable polyproduct on C^{d1 x d2}.

Values of an algebra element at a point ``(w1, w2)`` are ``d1 x d2``
matrices. :func:`polyprod2_scalar` is the reference definition, written
component by component:

    (F * G)_{jk} = F_jk G_jk
        - w1 sum_{l != j} s1[j, l] (F_jk - F_lk)(G_jk - G_lk)
        - w2 sum_{m != k} s2[k, m] (F_jk - F_jm)(G_jk - G_jm)
        + w1 w2 sum_{l != j, m != k} s1[j, l] s2[k, m]
                ((F_jk - F_jm) - (F_lk - F_lm)) ((G_jk - G_jm) - (G_lk - G_lm))

where ``s1``, ``s2`` are the sigma tables of ``p1`` and ``p2``.
:func:`polyprod2_matrix` evaluates the same product through the boxed
matrix/Kronecker layout and serves as a cross-check.

Flattening (``vec``) is column-major: entry ``(j, k)`` goes to ``j + d1*k``.
"""

import numpy as np

from ._validation import as_complex_array, check_index, check_trailing_shape
from .algebra1d import INVERT_COND_THRESHOLD, basis_product_1d, box, sym_mul
from .exceptions import NotInvertible
from .poly import coupling


def _value(p1, p2, F, name):
    return check_trailing_shape(as_complex_array(F, name), (p1.degree, p2.degree), name)


def vec(F):
    """Column-major flattening of the trailing ``d1 x d2`` axes."""
    F = np.asarray(F)
    return np.swapaxes(F, -1, -2).reshape(F.shape[:-2] + (-1,))


def unvec(v, d1, d2):
    v = np.asarray(v)
    return np.swapaxes(v.reshape(v.shape[:-1] + (d2, d1)), -1, -2)


def box_col(F, k):
    """Boxing of column ``k``: ``out[i, j] = F[i, k] - F[j, k]``."""
    F = np.asarray(F, dtype=complex)
    check_index(k, F.shape[1], "k")
    return box(F[:, k])


def box_row(F, j):
    """Boxing of row ``j``: ``out[k, m] = F[j, k] - F[j, m]``."""
    F = np.asarray(F, dtype=complex)
    check_index(j, F.shape[0], "j")
    return box(F[j, :])


def box_double(F, j):
    """Second-difference matrix for row ``j``, shape ``(d1*d2, d2)``.

    Column ``k`` stacks ``d2`` blocks of length ``d1``; entry ``i`` of block
    ``m`` is ``(F[j, k] - F[j, m]) - (F[i, k] - F[i, m])``. The block
    ``m == k`` vanishes identically.
    """
    F = np.asarray(F, dtype=complex)
    d1, d2 = F.shape
    check_index(j, d1, "j")
    row = box(F[j, :])                                # [k, m]
    rows = box(F)                                     # [i, k, m]
    blocks = row[None, :, :] - rows                   # [i, k, m]
    return blocks.transpose(2, 0, 1).reshape(d2 * d1, d2)


def polyprod2_scalar(p1, p2, w1, w2, F, G):
    """Polyproduct of two ``d1 x d2`` values at ``(w1, w2)``.

    Broadcasts over leading axes of ``w1``, ``w2``, ``F`` and ``G``.
    """
    F = _value(p1, p2, F, "F")
    G = _value(p1, p2, G, "G")
    w1 = np.asarray(w1, dtype=complex)[..., None, None]
    w2 = np.asarray(w2, dtype=complex)[..., None, None]
    s1, s2 = p1.sigma, p2.sigma

    # [..., j, l, k]
    d1F = F[..., :, None, :] - F[..., None, :, :]
    d1G = G[..., :, None, :] - G[..., None, :, :]
    # [..., j, k, m]
    d2F = F[..., :, :, None] - F[..., :, None, :]
    d2G = G[..., :, :, None] - G[..., :, None, :]
    # [..., j, l, k, m]
    ddF = d2F[..., :, None, :, :] - d2F[..., None, :, :, :]
    ddG = d2G[..., :, None, :, :] - d2G[..., None, :, :, :]

    # broadcast-and-sum with sym_mul keeps F * G == G * F bit for bit
    t1 = (s1[:, :, None] * sym_mul(d1F, d1G)).sum(axis=-2)
    t2 = (s2 * sym_mul(d2F, d2G)).sum(axis=-1)
    s12 = s1[:, :, None, None] * s2[None, None, :, :]
    t12 = (s12 * sym_mul(ddF, ddG)).sum(axis=(-3, -1))
    return sym_mul(F, G) - w1 * t1 - w2 * t2 + w1 * w2 * t12


def polyprod2_matrix(p1, p2, w1, w2, F, G):
    """Polyproduct of two values via boxed matrices and Kronecker products.

    For each component ``(j, k)`` this evaluates

    * the ``j``-th entry of ``(L1 o box_col(F, k) o box_col(G, k)) l1``,
    * the ``k``-th entry of ``l2^T (L2^T o box_row(F, j) o box_row(G, j))``,
    * the ``k``-th entry of
      ``(l2 kron l1)^T ((L2^T kron L1[j]^T) o box_double(F, j) o box_double(G, j))``,

    and combines them with weights ``-w1``, ``-w2``, ``+w1 w2``. Single point
    only.
    """
    F = _value(p1, p2, F, "F")
    G = _value(p1, p2, G, "G")
    d1, d2 = p1.degree, p2.degree
    L1, l1 = coupling(p1)
    L2, l2 = coupling(p2)
    ll = np.kron(l2, l1)
    out = F * G
    for j in range(d1):
        row_term = l2 @ (L2.T * box_row(F, j) * box_row(G, j))
        weights = np.kron(L2.T, L1[j][:, None])
        double_term = ll @ (weights * box_double(F, j) * box_double(G, j))
        for k in range(d2):
            col_term = (L1 * box_col(F, k) * box_col(G, k)) @ l1
            out[j, k] += (-w1 * col_term[j] - w2 * row_term[k]
                          + w1 * w2 * double_term[k])
    return out


def basis_product_2d(p1, p2, w1, w2, jk, lm):
    """``(e_j x e_k) * (e_l x e_m) = (e_j * e_l) x (e_k * e_m)``."""
    j, k = jk
    l, m = lm
    return np.outer(basis_product_1d(p1, w1, j, l), basis_product_1d(p2, w2, k, m))


def mult_matrix2(p1, p2, w1, w2, F):
    """Matrix of ``G -> F * G`` acting on ``vec(G)``; shape ``(..., d1*d2, d1*d2)``.

    Broadcasts over leading axes of ``w1``, ``w2`` and ``F``.
    """
    F = _value(p1, p2, F, "F")
    d1, d2 = p1.degree, p2.degree
    n = d1 * d2
    # indicator matrices ordered as vec(): E[c] has a 1 at unvec(c)
    E = unvec(np.eye(n, dtype=complex), d1, d2)
    w1 = np.asarray(w1, dtype=complex)[..., None]
    w2 = np.asarray(w2, dtype=complex)[..., None]
    cols = polyprod2_scalar(p1, p2, w1, w2, F[..., None, :, :], E)
    # cols[..., c, :, :] = F * E[c]  ->  column c of the matrix
    return np.swapaxes(vec(cols), -1, -2)


def inverse_point2(p1, p2, w1, w2, F, cond_threshold=INVERT_COND_THRESHOLD):
    """Solve ``F * X = 1`` at a single point ``(w1, w2)``."""
    M = mult_matrix2(p1, p2, w1, w2, F)
    if M.ndim != 2:
        raise ValueError("inverse_point2 works on a single point")
    if not np.linalg.cond(M) <= cond_threshold:
        raise NotInvertible("element is not invertible at this point")
    x = np.linalg.solve(M, np.ones(M.shape[0], dtype=complex))
    return unvec(x, p1.degree, p2.degree)
