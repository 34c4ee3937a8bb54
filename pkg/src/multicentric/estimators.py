"""scikit-learn style wrappers.

These estimators carry their configuration as constructor parameters (so
``get_params``/``set_params``/``clone`` work) and store fitted state in
trailing-underscore attributes.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_complex_array, as_square_matrix
from .calculus import (CLUSTER_TOL, COMMUTE_TOL, COND_THRESHOLD, RANK_TOL,
                       calc_pair, calc_single, check_commute, eig_diagonalize,
                       jordan_structure, simultaneous_diagonalize, suggest_polynomial)
from .exceptions import Defective, DimensionMismatch, NotCommuting
from .function_space import fit_poly_coeffs
from .gelfand import decompose_poly_1d, decompose_poly_2d
from .poly import MonicPolynomial, eval_poly_matrix


class JordanRemover(TransformerMixin, BaseEstimator):
    """Learn a polynomial ``p`` with simple roots such that ``p(A)`` is diagonalizable.

    ``fit(A)`` inspects the Jordan structure of ``A``; ``transform(X)``
    returns ``p(X)``.

    Parameters
    ----------
    c : complex, default=1.0
        Shift applied to the antiderivative; rescaled on failure.
    max_tries : int, default=5
    cond_threshold : float, default=1e8
    cluster_tol, rank_tol : float
        Relative tolerances for eigenvalue grouping and rank decisions.
    """

    def __init__(self, c=1.0, max_tries=5, cond_threshold=COND_THRESHOLD,
                 cluster_tol=CLUSTER_TOL, rank_tol=RANK_TOL):
        self.c = c
        self.max_tries = max_tries
        self.cond_threshold = cond_threshold
        self.cluster_tol = cluster_tol
        self.rank_tol = rank_tol

    def fit(self, X, y=None):
        A = as_square_matrix(X, "X")
        self.jordan_structure_ = jordan_structure(A, self.cluster_tol, self.rank_tol)
        self.polynomial_ = suggest_polynomial(
            A, self.c, self.max_tries, self.cond_threshold, self.cluster_tol, self.rank_tol)
        self.n_features_in_ = A.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "polynomial_")
        A = as_square_matrix(X, "X")
        if A.shape[1] != self.n_features_in_:
            raise DimensionMismatch(f"expected {self.n_features_in_} columns, got {A.shape[1]}")
        return eval_poly_matrix(self.polynomial_, A)


class MulticentricCalculus(BaseEstimator):
    """Functional calculus bound to a matrix ``A`` or a commuting pair ``(A, B)``.

    ``fit`` validates the matrices, fixes the polynomials (given roots or
    :func:`suggest_polynomial`) and caches a diagonalization when one
    exists. ``transform(f)`` evaluates the calculus for an element ``f``:
    a :class:`PolyCoeffFunction` for pairs, a ``(d, N+1[, N+1])``
    coefficient array for a single matrix.
    """

    def __init__(self, roots1=None, roots2=None, method="auto",
                 commute_tol=COMMUTE_TOL, cond_threshold=COND_THRESHOLD,
                 random_state=None):
        self.roots1 = roots1
        self.roots2 = roots2
        self.method = method
        self.commute_tol = commute_tol
        self.cond_threshold = cond_threshold
        self.random_state = random_state

    def _poly(self, roots, A):
        if roots is None:
            return suggest_polynomial(A, cond_threshold=self.cond_threshold)
        return MonicPolynomial.from_roots(roots)

    def fit(self, A, B=None):
        A = as_square_matrix(A, "A")
        self.A_ = A
        self.B_ = None if B is None else as_square_matrix(B, "B")
        if self.B_ is not None:
            check = check_commute(A, self.B_, self.commute_tol)
            self.commute_residual_ = check.residual
            if not check.commute:
                raise NotCommuting(f"||AB - BA||_F = {check.residual:.3g}")
        self.p1_ = self._poly(self.roots1, A)
        self.p2_ = None if self.B_ is None else self._poly(self.roots2, self.B_)
        try:
            if self.B_ is None:
                self.decomposition_ = eig_diagonalize(A, self.cond_threshold)
            else:
                self.decomposition_ = simultaneous_diagonalize(
                    A, self.B_, self.commute_tol, self.cond_threshold,
                    random_state=self.random_state)
        except Defective:
            self.decomposition_ = None
        return self

    def transform(self, f):
        check_is_fitted(self, "p1_")
        if self.B_ is None:
            return calc_single(f, self.p1_, self.A_, self.method, self.cond_threshold)
        return calc_pair(f, self.p1_, self.p2_, self.A_, self.B_, self.method,
                         self.commute_tol, self.cond_threshold, self.random_state)

    def transform_polynomial(self, phi):
        """Evaluate a polynomial ``phi`` given by ascending coefficients."""
        check_is_fitted(self, "p1_")
        if self.B_ is None:
            return self.transform(decompose_poly_1d(phi, self.p1_))
        return self.transform(decompose_poly_2d(phi, self.p1_, self.p2_))


class PolyCoeffRegressor(BaseEstimator):
    """Least-squares fit of a :class:`PolyCoeffFunction` to sampled values.

    ``X`` is an ``(n, 2)`` complex array of points ``(w1, w2)``; ``y`` is
    ``(n,)`` or ``(n, d1, d2)``.
    """

    def __init__(self, degree1=3, degree2=3, conjugate=True):
        self.degree1 = degree1
        self.degree2 = degree2
        self.conjugate = conjugate

    def fit(self, X, y):
        X = as_complex_array(X, "X")
        if X.ndim != 2 or X.shape[1] != 2:
            raise DimensionMismatch(f"X must have shape (n, 2), got {X.shape}")
        y = as_complex_array(y, "y")
        self.scalar_output_ = y.ndim == 1
        self.element_ = fit_poly_coeffs(X[:, 0], X[:, 1], y,
                                        (self.degree1, self.degree2), self.conjugate)
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "element_")
        X = as_complex_array(X, "X")
        out = self.element_(X[:, 0], X[:, 1])
        return out[:, 0, 0] if self.scalar_output_ else out
