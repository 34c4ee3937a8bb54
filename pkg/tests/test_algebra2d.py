import numpy as np
import pytest

from multicentric import (IndexOutOfRange, MonicPolynomial, NotInvertible, basis_product_2d,
                          box_col, box_double, box_row, inverse_point2, mult_matrix2,
                          polyprod2_matrix, polyprod2_scalar, polyprod_point, unvec, vec)

from oracles import crandn, polyprod2_oracle, sigma_oracle

P01 = MonicPolynomial.from_roots([0, 1])


def random_pair(rng, d1, d2):
    return (MonicPolynomial.from_roots(crandn(rng, d1)),
            MonicPolynomial.from_roots(crandn(rng, d2)))


def test_vec_is_column_major():
    F = np.arange(6).reshape(2, 3)
    np.testing.assert_array_equal(vec(F), [0, 3, 1, 4, 2, 5])
    np.testing.assert_array_equal(unvec(vec(F), 2, 3), F)


class TestBoxing:
    def test_box_col(self):
        F = np.array([[2, 5], [0, 5]])
        np.testing.assert_array_equal(box_col(F, 0), [[0, 2], [-2, 0]])
        np.testing.assert_array_equal(box_col(F, 1), np.zeros((2, 2)))

    def test_box_row(self):
        F = np.array([[1, 4, 6], [0, 0, 0]])
        np.testing.assert_array_equal(box_row(F, 0), [[0, -3, -5], [3, 0, -2], [5, 2, 0]])

    def test_index_checked(self):
        with pytest.raises(IndexOutOfRange):
            box_col(np.zeros((2, 2)), 2)

    def test_box_double_shape_and_constant(self):
        assert box_double(np.ones((3, 4)), 1).shape == (12, 4)
        np.testing.assert_array_equal(box_double(np.ones((3, 4)), 1), 0)

    def test_box_double_separable(self):
        rng = np.random.default_rng(0)
        u, v = crandn(rng, 3), crandn(rng, 4)
        X = box_double(np.outer(u, v), 1)
        for k in range(4):
            for m in range(4):
                for i in range(3):
                    assert X[m * 3 + i, k] == pytest.approx((u[1] - u[i]) * (v[k] - v[m]))

    def test_box_double_2x2_by_hand(self):
        F = np.array([[1, 2], [3, 5]])
        # row j = 0; block m, entry i: (F[0,k] - F[0,m]) - (F[i,k] - F[i,m])
        expected = np.array([[0, 0], [0, -1], [0, 0], [1, 0]])
        np.testing.assert_array_equal(box_double(F, 0), expected)


class TestPolyprod2:
    def test_unit_and_hadamard(self):
        rng = np.random.default_rng(1)
        p1, p2 = random_pair(rng, 3, 2)
        F, G = crandn(rng, 3, 2), crandn(rng, 3, 2)
        for fn in (polyprod2_scalar, polyprod2_matrix):
            np.testing.assert_allclose(fn(p1, p2, 0.3, -1j, np.ones((3, 2)), G), G, atol=1e-12)
            np.testing.assert_allclose(fn(p1, p2, 0, 0, F, G), F * G)

    def test_against_oracle(self):
        rng = np.random.default_rng(2)
        for d1, d2 in ((2, 2), (3, 4), (5, 2), (1, 3)):
            r1, r2 = crandn(rng, d1), crandn(rng, d2)
            p1, p2 = MonicPolynomial.from_roots(r1), MonicPolynomial.from_roots(r2)
            w1, w2 = crandn(rng, 2)
            F, G = crandn(rng, d1, d2), crandn(rng, d1, d2)
            ref = polyprod2_oracle(sigma_oracle(r1), sigma_oracle(r2), w1, w2, F, G)
            np.testing.assert_allclose(polyprod2_scalar(p1, p2, w1, w2, F, G), ref, rtol=1e-11)
            np.testing.assert_allclose(polyprod2_matrix(p1, p2, w1, w2, F, G), ref, rtol=1e-11)

    def test_tensor_factorization(self):
        rng = np.random.default_rng(3)
        p1, p2 = random_pair(rng, 3, 4)
        w1, w2 = crandn(rng, 2)
        a, c, b, e = crandn(rng, 3), crandn(rng, 3), crandn(rng, 4), crandn(rng, 4)
        got = polyprod2_scalar(p1, p2, w1, w2, np.outer(a, b), np.outer(c, e))
        ref = np.outer(polyprod_point(p1, w1, a, c), polyprod_point(p2, w2, b, e))
        np.testing.assert_allclose(got, ref, rtol=1e-11)

    def test_broadcasts(self):
        rng = np.random.default_rng(4)
        p1, p2 = random_pair(rng, 2, 3)
        w1, w2 = crandn(rng, 7), crandn(rng, 7)
        F, G = crandn(rng, 7, 2, 3), crandn(rng, 7, 2, 3)
        out = polyprod2_scalar(p1, p2, w1, w2, F, G)
        for i in range(7):
            np.testing.assert_allclose(out[i], polyprod2_scalar(p1, p2, w1[i], w2[i], F[i], G[i]))


class TestBasisProduct2d:
    def test_zero_point_gives_indicator(self):
        rng = np.random.default_rng(5)
        p1, p2 = random_pair(rng, 2, 3)
        E = np.zeros((2, 3))
        E[1, 2] = 1
        np.testing.assert_array_equal(basis_product_2d(p1, p2, 0, 0, (1, 2), (1, 2)), E)

    def test_hand_value(self):
        w1, w2 = 0.5, 2j
        got = basis_product_2d(P01, P01, w1, w2, (0, 0), (0, 0))
        np.testing.assert_allclose(got, np.outer([1 + w1, w1], [1 + w2, w2]))

    def test_unit_acts_neutrally(self):
        rng = np.random.default_rng(6)
        p1, p2 = random_pair(rng, 2, 3)
        w1, w2 = crandn(rng, 2)
        total = sum(basis_product_2d(p1, p2, w1, w2, (j, k), (1, 0))
                    for j in range(2) for k in range(3))
        E = np.zeros((2, 3))
        E[1, 0] = 1
        np.testing.assert_allclose(total, E, atol=1e-12)


class TestMultMatrix2:
    def test_special_cases(self):
        rng = np.random.default_rng(7)
        p1, p2 = random_pair(rng, 2, 3)
        F = crandn(rng, 2, 3)
        np.testing.assert_allclose(mult_matrix2(p1, p2, 1, 1j, np.ones((2, 3))), np.eye(6),
                                   atol=1e-12)
        np.testing.assert_array_equal(mult_matrix2(p1, p2, 0, 0, F), np.diag(vec(F)))

    def test_random(self):
        rng = np.random.default_rng(8)
        p1, p2 = random_pair(rng, 3, 2)
        w1, w2 = crandn(rng, 2)
        F, G = crandn(rng, 3, 2), crandn(rng, 3, 2)
        np.testing.assert_allclose(mult_matrix2(p1, p2, w1, w2, F) @ vec(G),
                                   vec(polyprod2_scalar(p1, p2, w1, w2, F, G)), rtol=1e-12)


class TestInverse2:
    def test_cases(self):
        rng = np.random.default_rng(9)
        p1, p2 = random_pair(rng, 2, 3)
        F = crandn(rng, 2, 3)
        np.testing.assert_allclose(inverse_point2(p1, p2, 0.2, 0.1, np.ones((2, 3))),
                                   np.ones((2, 3)), atol=1e-12)
        np.testing.assert_allclose(inverse_point2(p1, p2, 0, 0, F), 1 / F)
        X = inverse_point2(p1, p2, 0.1j, 0.2, F)
        np.testing.assert_allclose(polyprod2_scalar(p1, p2, 0.1j, 0.2, F, X), np.ones((2, 3)),
                                   atol=1e-9)

    def test_singular(self):
        with pytest.raises(NotInvertible):
            inverse_point2(P01, P01, 0, 0, np.array([[1, 0], [1, 1]]))
