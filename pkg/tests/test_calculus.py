import numpy as np
import pytest

from multicentric import (ConjugateNotSupported, Defective, MonicPolynomial, NotCommuting,
                          PolyCoeffFunction, calc_pair, calc_single, check_commute,
                          decompose_poly_1d, decompose_poly_2d, eig_diagonalize, jordan_structure,
                          simultaneous_diagonalize, suggest_polynomial, verify_diagonalizable)
from multicentric.calculus import horner2_matrix, horner_matrix
from multicentric.poly import eval_poly_matrix

from oracles import bivariate_direct, crandn

J2 = np.array([[0.0, 1.0], [0.0, 0.0]])


def diagonalizable(rng, n, values=None):
    S = crandn(rng, n, n) / np.sqrt(n) + 1.5 * np.eye(n)
    D = crandn(rng, n) if values is None else values
    return S @ np.diag(D) @ np.linalg.inv(S)


class TestCommute:
    def test_identity_and_diagonal(self):
        rng = np.random.default_rng(0)
        A = crandn(rng, 4, 4)
        c = check_commute(A, np.eye(4))
        assert c.commute and c.residual == 0
        assert check_commute(np.diag(crandn(rng, 3)), np.diag(crandn(rng, 3))).commute

    def test_non_commuting(self):
        c = check_commute(J2, np.diag([1.0, 2.0]))
        assert not c.commute
        assert c.residual == pytest.approx(1.0)


class TestDiagonalization:
    def test_diagonal_input(self):
        dec = eig_diagonalize(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(dec.reconstruct(), np.diag([3.0, 1.0, 2.0]), atol=1e-14)
        np.testing.assert_allclose(np.abs(dec.T), np.abs(dec.T) > 0.5)

    def test_jordan_block(self):
        with pytest.raises(Defective):
            eig_diagonalize(J2)

    def test_normal_matrix_well_conditioned(self):
        rng = np.random.default_rng(1)
        Q, _ = np.linalg.qr(crandn(rng, 5, 5))
        A = Q @ np.diag(crandn(rng, 5)) @ Q.conj().T
        assert eig_diagonalize(A).cond_T == pytest.approx(1, rel=1e-8)

    def test_repeated_eigenvalue_is_not_defective(self):
        rng = np.random.default_rng(2)
        A = diagonalizable(rng, 4, np.array([1.0, 1.0, 2.0, 3.0]))
        dec = eig_diagonalize(A)
        np.testing.assert_allclose(dec.reconstruct(), A, atol=1e-10)

    def test_verify(self):
        assert verify_diagonalizable(np.eye(3))
        assert not verify_diagonalizable(J2)
        assert verify_diagonalizable(-np.eye(2))


class TestSimultaneous:
    def test_diagonal_pair(self):
        sd = simultaneous_diagonalize(np.diag([1.0, 2.0]), np.diag([5.0, 7.0]), random_state=0)
        np.testing.assert_allclose(np.abs(sd.S), np.eye(2), atol=1e-12)

    def test_polynomial_in_first(self):
        rng = np.random.default_rng(3)
        A = diagonalizable(rng, 5)
        B = A @ A - 2 * A + np.eye(5)
        sd = simultaneous_diagonalize(A, B, random_state=1)
        Sinv = np.linalg.inv(sd.S)
        np.testing.assert_allclose(sd.S @ np.diag(sd.D1) @ Sinv, A, atol=1e-9)
        np.testing.assert_allclose(sd.S @ np.diag(sd.D2) @ Sinv, B, atol=1e-9)

    def test_normal_and_adjoint(self):
        rng = np.random.default_rng(4)
        Q, _ = np.linalg.qr(crandn(rng, 4, 4))
        A = Q @ np.diag(crandn(rng, 4)) @ Q.conj().T
        sd = simultaneous_diagonalize(A, A.conj().T, random_state=2)
        np.testing.assert_allclose(sd.D2, np.conj(sd.D1), atol=1e-10)

    def test_shared_eigenvalue_in_first(self):
        rng = np.random.default_rng(5)
        S = crandn(rng, 4, 4) + 2 * np.eye(4)
        Sinv = np.linalg.inv(S)
        A = S @ np.diag([1.0, 1.0, 2.0, 2.0]) @ Sinv
        B = S @ np.diag([3.0, 4.0, 3.0, 4.0]) @ Sinv
        sd = simultaneous_diagonalize(A, B, random_state=3)
        pairs = sorted(zip(np.round(sd.D1.real, 8), np.round(sd.D2.real, 8)))
        assert pairs == [(1, 3), (1, 4), (2, 3), (2, 4)]

    def test_not_commuting(self):
        with pytest.raises(NotCommuting):
            simultaneous_diagonalize(J2, np.diag([1.0, 2.0]))


class TestCalcSingle:
    @pytest.mark.parametrize("method", ["eig", "matrix"])
    def test_identity_square_unit(self, method):
        rng = np.random.default_rng(6)
        A = diagonalizable(rng, 4)
        p = MonicPolynomial.from_roots(crandn(rng, 3))
        np.testing.assert_allclose(calc_single(decompose_poly_1d([0, 1], p), p, A, method), A,
                                   atol=1e-8)
        np.testing.assert_allclose(calc_single(decompose_poly_1d([0, 0, 1], p), p, A, method),
                                   A @ A, atol=1e-8)
        np.testing.assert_allclose(calc_single(np.ones((3, 1)), p, A, method), np.eye(4), atol=1e-8)

    def test_matrix_path_handles_jordan_block(self):
        p = MonicPolynomial.from_roots([-1, 1])
        phi = [1, 2, 3]
        np.testing.assert_allclose(calc_single(decompose_poly_1d(phi, p), p, J2), horner_matrix(phi, J2),
                                   atol=1e-14)
        with pytest.raises(Defective):
            calc_single(decompose_poly_1d(phi, p), p, J2, method="eig")

    def test_conjugate_needs_eig(self):
        rng = np.random.default_rng(7)
        A = diagonalizable(rng, 3, np.array([0.5, 1j, -1]))
        p = MonicPolynomial.from_roots([0, 1])
        f = np.zeros((2, 2, 2), dtype=complex)
        f[:, 0, 1] = 1          # f_j(w) = conj(w)
        with pytest.raises(ConjugateNotSupported):
            calc_single(f, p, A, method="matrix")
        dec = eig_diagonalize(A)
        vals = np.conj(dec.D * (dec.D - 1))
        expected = dec.T @ np.diag(vals) @ np.linalg.inv(dec.T)
        np.testing.assert_allclose(calc_single(f, p, A), expected, atol=1e-10)


class TestCalcPair:
    def setup_method(self):
        rng = np.random.default_rng(8)
        S = crandn(rng, 5, 5) + 2 * np.eye(5)
        Sinv = np.linalg.inv(S)
        self.A = S @ np.diag(crandn(rng, 5)) @ Sinv
        self.B = S @ np.diag(crandn(rng, 5)) @ Sinv
        self.p1 = MonicPolynomial.from_roots(crandn(rng, 2))
        self.p2 = MonicPolynomial.from_roots(crandn(rng, 3))

    @pytest.mark.parametrize("method", ["eig", "matrix"])
    def test_roundtrips(self, method):
        A, B, p1, p2 = self.A, self.B, self.p1, self.p2
        z1 = decompose_poly_2d(np.array([[0], [1]]), p1, p2)
        z1z2 = decompose_poly_2d(np.array([[0, 0], [0, 1]]), p1, p2)
        np.testing.assert_allclose(calc_pair(z1, p1, p2, A, B, method, random_state=0), A, atol=1e-8)
        np.testing.assert_allclose(calc_pair(z1z2, p1, p2, A, B, method, random_state=0), A @ B,
                                   atol=1e-8)
        np.testing.assert_allclose(calc_pair(PolyCoeffFunction.unit(2, 3), p1, p2, A, B, method,
                                             random_state=0), np.eye(5), atol=1e-8)

    def test_not_commuting(self):
        f = PolyCoeffFunction.unit(2, 3)
        with pytest.raises(NotCommuting):
            calc_pair(f, self.p1, self.p2, J2, np.diag([1.0, 2.0]))

    def test_horner2(self):
        rng = np.random.default_rng(9)
        phi = crandn(rng, 3, 4)
        np.testing.assert_allclose(horner2_matrix(phi, self.A, self.B),
                                   bivariate_direct(phi, self.A, self.B), rtol=1e-10)


class TestJordan:
    def test_structure(self):
        A = np.zeros((4, 4))
        A[0, 1] = 1
        A[3, 3] = 5
        info = sorted(jordan_structure(A), key=lambda x: abs(x.eigenvalue))
        assert [(i.multiplicity, i.block_size) for i in info] == [(3, 2), (1, 1)]

    def test_hand_case(self):
        p = suggest_polynomial(J2, c=1.0)
        np.testing.assert_array_equal(p.coefficients, [1, 0, -1])
        np.testing.assert_array_equal(eval_poly_matrix(p, J2), -np.eye(2))

    def test_diagonalizable_input(self):
        p = suggest_polynomial(np.diag([1.0, 2.0]), c=1.0)
        np.testing.assert_array_equal(p.coefficients, [1, -1])

    def test_block_plus_eigenvalue(self):
        A = np.zeros((3, 3))
        A[0, 1] = 1
        A[2, 2] = 5
        p = suggest_polynomial(A)
        np.testing.assert_allclose(p.coefficients, [1, 0, -1])
        np.testing.assert_allclose(eval_poly_matrix(p, A), np.diag([-1, -1, 24]), atol=1e-13)

    @pytest.mark.parametrize("lam", [0, 1 + 1j, -2])
    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_removes_blocks(self, lam, s):
        J = lam * np.eye(s) + np.eye(s, k=1)
        p = suggest_polynomial(J)
        assert verify_diagonalizable(eval_poly_matrix(p, J))

    def test_zero_shift_rejected(self):
        with pytest.raises(ValueError):
            suggest_polynomial(J2, c=0)
