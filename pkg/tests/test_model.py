import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flockspectra import (DegenerateCoupling, DimensionTooSmall,
                          build_full_matrix, build_laplacian,
                          build_reduced_matrix, is_decentralized, make_params)


class TestMakeParams:
    def test_tau_one_when_a_equals_c(self):
        p = make_params(1, 1, 2, 0, 0, 10)
        assert p.tau == 1.0

    def test_tau_half(self):
        p = make_params(1, 4, 5, 3, 1, 50)
        assert p.tau == 0.5

    def test_zero_coupling_rejected(self):
        with pytest.raises(DegenerateCoupling):
            make_params(0, 1, 1, 0, 0, 10)

    def test_negative_coupling_rejected(self):
        with pytest.raises(DegenerateCoupling):
            make_params(1, -2, 1, 0, 0, 10)

    def test_small_dimension_rejected(self):
        with pytest.raises(DimensionTooSmall):
            make_params(1, 1, 2, 0, 0, 1)


class TestIsDecentralized:
    def test_true_case(self):
        assert is_decentralized(make_params(1, 1, 2, 0.5, 0.5, 5))

    def test_false_when_c_not_e_plus_d(self):
        assert not is_decentralized(make_params(1, 1, 2, 0, 0, 5))

    def test_true_asymmetric(self):
        assert is_decentralized(make_params(1, 2, 3, 1, 1, 5))

    def test_tolerance_overload(self):
        p = make_params(1, 1, 2 + 1e-12, 0.5, 0.5, 5)
        assert not is_decentralized(p)
        assert is_decentralized(p, tol=1e-9)


class TestBuildFullMatrix:
    def test_direct_transcription(self):
        A = build_full_matrix(make_params(1, 1, 2, 3, 4, 2))
        assert np.array_equal(A, [[2, 0, 0], [1, 0, 1], [0, 5, 3]])

    def test_zero_boundary(self):
        A = build_full_matrix(make_params(1, 1, 0, 0, 0, 2))
        assert np.array_equal(A, [[0, 0, 0], [1, 0, 1], [0, 1, 0]])

    def test_decentralized_row_sums_equal_b(self):
        p = make_params(1, 1, 2, 0.5, 0.5, 3)
        A = build_full_matrix(p)
        assert A[-1, -2] == 1.5 and A[-1, -1] == 0.5
        assert np.allclose(A.sum(axis=1), p.b)


class TestBuildReducedMatrix:
    def test_two_by_two(self):
        Q = build_reduced_matrix(make_params(1, 1, 9, 3, 4, 2))
        assert np.array_equal(Q, [[0, 1], [5, 3]])

    def test_zeroed_last_row(self):
        Q = build_reduced_matrix(make_params(1, 1, 9, 0, -1, 3))
        assert np.array_equal(Q, [[0, 1, 0], [1, 0, 1], [0, 0, 0]])

    def test_asymmetric_couplings(self):
        Q = build_reduced_matrix(make_params(4, 1, 9, 1, 0, 3))
        assert np.array_equal(Q, [[0, 1, 0], [4, 0, 1], [0, 4, 1]])

    def test_trailing_submatrix_of_full(self):
        p = make_params(2, 3, 1, -1, 0.7, 6)
        assert np.array_equal(build_reduced_matrix(p),
                              build_full_matrix(p)[1:, 1:])


class TestBuildLaplacian:
    def test_decentralized_shift_form(self):
        p = make_params(1, 1, 2, 0.5, 0.5, 2)
        L = build_laplacian(p)
        assert np.allclose(L, [[0, 0, 0], [-1, 2, -1], [0, -1.5, 1.5]])
        A = build_full_matrix(p)
        assert np.allclose(L, (p.a + p.c) * np.eye(3) - A)

    def test_annihilates_constant_vector(self):
        p = make_params(1, 2, 3, 1, 1, 8)
        assert np.allclose(build_laplacian(p) @ np.ones(9), 0)

    def test_non_decentralized_row_sums(self):
        p = make_params(1, 1, 0, 0, 0, 2)
        L = build_laplacian(p)
        D = np.diag([0, 2, 1])
        assert np.array_equal(L, D - build_full_matrix(p))


@settings(max_examples=50, deadline=None)
@given(a=st.floats(0.1, 10), c=st.floats(0.1, 10), b=st.floats(-5, 5),
       d=st.floats(-5, 5), e=st.floats(-5, 5), n=st.integers(2, 30))
def test_structural_zeros(a, c, b, d, e, n):
    A = build_full_matrix(make_params(a, c, b, d, e, n))
    mask = np.zeros_like(A, dtype=bool)
    mask[0, 0] = True
    for k in range(1, n):
        mask[k, k - 1] = mask[k, k + 1] = True
    mask[n, n - 1] = mask[n, n] = True
    assert np.all(A[~mask] == 0.0)
