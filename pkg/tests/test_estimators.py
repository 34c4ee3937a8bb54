import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from multicentric import (JordanRemover, MulticentricCalculus, NotCommuting, PolyCoeffFunction,
                          PolyCoeffRegressor)

from oracles import bivariate_direct, crandn

J2 = np.array([[0.0, 1.0], [0.0, 0.0]])


def test_jordan_remover():
    est = JordanRemover(c=1.0)
    assert est.get_params()["c"] == 1.0
    out = est.fit_transform(J2)
    np.testing.assert_array_equal(out, -np.eye(2))
    np.testing.assert_array_equal(est.polynomial_.coefficients, [1, 0, -1])
    assert [(i.multiplicity, i.block_size) for i in est.jordan_structure_] == [(2, 2)]


def test_jordan_remover_unfitted_and_clone():
    est = JordanRemover(c=2.0, max_tries=3)
    with pytest.raises(NotFittedError):
        est.transform(J2)
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert not hasattr(twin, "polynomial_")


def commuting_pair(seed=0, n=4):
    rng = np.random.default_rng(seed)
    S = crandn(rng, n, n) + 2 * np.eye(n)
    Sinv = np.linalg.inv(S)
    return S @ np.diag(crandn(rng, n)) @ Sinv, S @ np.diag(crandn(rng, n)) @ Sinv


def test_calculus_pair():
    A, B = commuting_pair()
    est = MulticentricCalculus(roots1=[0, 1], roots2=[1j, -1, 2], random_state=0).fit(A, B)
    phi = np.array([[1, 2], [0, -1], [3, 0]], dtype=complex)
    np.testing.assert_allclose(est.transform_polynomial(phi), bivariate_direct(phi, A, B), rtol=1e-8)
    np.testing.assert_allclose(est.transform(PolyCoeffFunction.unit(2, 3)), np.eye(4), atol=1e-10)
    assert est.decomposition_ is not None
    assert est.commute_residual_ < 1e-10


def test_calculus_single_with_suggested_polynomial():
    est = MulticentricCalculus().fit(J2)
    assert est.decomposition_ is None
    np.testing.assert_allclose(est.transform_polynomial([1, 1]), np.eye(2) + J2, atol=1e-14)


def test_calculus_rejects_noncommuting():
    with pytest.raises(NotCommuting):
        MulticentricCalculus(roots1=[0, 1], roots2=[0, 1]).fit(J2, np.diag([1.0, 2.0]))


def test_calculus_params_roundtrip():
    est = MulticentricCalculus(roots1=[0, 1], method="eig", commute_tol=1e-8)
    twin = clone(est).set_params(method="matrix")
    assert twin.get_params()["method"] == "matrix"
    assert twin.get_params()["commute_tol"] == 1e-8


def test_regressor():
    rng = np.random.default_rng(1)
    X = crandn(rng, 80, 2)
    y = 2 * X[:, 0] * np.conj(X[:, 1]) - 1j
    reg = PolyCoeffRegressor(degree1=1, degree2=1).fit(X, y)
    Xt = crandn(rng, 5, 2)
    np.testing.assert_allclose(reg.predict(Xt), 2 * Xt[:, 0] * np.conj(Xt[:, 1]) - 1j, atol=1e-10)
    assert reg.predict(Xt).shape == (5,)


def test_regressor_validates_shape():
    with pytest.raises(ValueError):
        PolyCoeffRegressor().fit(np.zeros((4, 3)), np.zeros(4))
