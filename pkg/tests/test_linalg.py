import numpy as np
import pytest

from permutwirl import linalg, states
from permutwirl.errors import DimMismatchError, NonSquareError, NotHermitianError


def test_kron_identity():
    np.testing.assert_array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_pauli_antidiagonal():
    got = linalg.kron(states.SIGMA_1, states.SIGMA_1)
    expected = np.fliplr(np.eye(4))
    np.testing.assert_allclose(got, expected, atol=0)


def test_kron_matches_block_index_formula():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    got = linalg.kron(a, b)
    # independent oracle: entry-by-entry block layout
    expected = np.empty((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            expected[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = a[i, j] * b
    np.testing.assert_allclose(got, expected, atol=1e-15)


def test_kron_associativity_and_mixed_product():
    rng = np.random.default_rng(6)
    a, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
    b, d = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(2))
    assert linalg.max_abs_diff(
        linalg.kron(linalg.kron(a, b), c), linalg.kron(a, linalg.kron(b, c))
    ) <= 1e-12
    assert linalg.max_abs_diff(
        linalg.kron(a, b) @ linalg.kron(c, d), linalg.kron(a @ c, b @ d)
    ) <= 1e-12


def test_trace_of_kron_factorizes():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    assert abs(linalg.trace(linalg.kron(a, b)) - linalg.trace(a) * linalg.trace(b)) <= 1e-12


def test_dagger():
    rng = np.random.default_rng(8)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    np.testing.assert_array_equal(linalg.dagger(linalg.dagger(a)), a)
    np.testing.assert_array_equal(linalg.dagger(np.eye(4)), np.eye(4))
    np.testing.assert_array_equal(linalg.dagger(states.SIGMA_2), states.SIGMA_2)


def test_trace_basics():
    assert linalg.trace(np.eye(3)) == 3
    assert linalg.trace(states.SIGMA_3) == 0
    with pytest.raises(NonSquareError):
        linalg.trace(np.ones((2, 3)))


def test_trace_of_density_is_one():
    rng = np.random.default_rng(9)
    rho = states.random_density(4, rng)
    assert abs(linalg.trace(rho.mat) - 1) <= 1e-12


def test_hs_inner():
    assert linalg.hs_inner(np.eye(2), np.eye(2)) == 2
    assert abs(linalg.hs_inner(states.SIGMA_1, states.SIGMA_2)) == 0
    rng = np.random.default_rng(10)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    norm = linalg.hs_inner(a, a)
    assert abs(norm.imag) <= 1e-12 and norm.real >= 0
    with pytest.raises(DimMismatchError):
        linalg.hs_inner(np.eye(2), np.eye(3))


def test_hermitian_eigen_pauli():
    w, _ = linalg.hermitian_eigen(states.SIGMA_1)
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-12)


def test_hermitian_eigen_twirled_family():
    rho = states.maximally_coherent_mixed_state(3, 0.4)
    w, _ = linalg.hermitian_eigen(rho.mat)
    np.testing.assert_allclose(w, [0.2, 0.2, 0.6], atol=1e-10)


def test_hermitian_eigen_identity():
    w, _ = linalg.hermitian_eigen(np.eye(5))
    np.testing.assert_allclose(w, np.ones(5), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_hermitian_eigen_reconstruction(d):
    rng = np.random.default_rng(100 + d)
    a = states.random_hermitian(d, rng)
    w, v = linalg.hermitian_eigen(a)
    assert np.all(np.diff(w) >= 0)
    assert linalg.max_abs_diff(v.conj().T @ v, np.eye(d)) <= d * linalg.EIGEN_TOL
    assert linalg.max_abs_diff((v * w) @ v.conj().T, a) <= d * linalg.EIGEN_TOL


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        linalg.hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_all_ones_quadratic_form_between_spectral_bounds():
    rng = np.random.default_rng(11)
    for d in (2, 4, 6):
        a = states.random_hermitian(d, rng)
        w, _ = linalg.hermitian_eigen(a)
        e = np.ones(d)
        form = (e @ a @ e).real
        assert d * w[0] - 1e-10 <= form <= d * w[-1] + 1e-10


def test_partial_trace_product_state():
    rng = np.random.default_rng(12)
    rho_a = states.random_density(2, rng).mat
    rho_b = states.random_density(3, rng).mat
    prod = linalg.kron(rho_a, rho_b)
    assert linalg.max_abs_diff(linalg.partial_trace(prod, (2, 3), "A"), rho_b) <= 1e-12
    assert linalg.max_abs_diff(linalg.partial_trace(prod, (2, 3), "B"), rho_a) <= 1e-12


def test_partial_trace_maximally_entangled_marginal():
    omega = states.maximally_entangled_state(2)
    got = linalg.partial_trace(omega.mat, (2, 2), "A")
    np.testing.assert_allclose(got, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_matches_index_sum():
    rng = np.random.default_rng(13)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    # oracle: explicit index sums in the i_A * d_B + i_B convention
    over_a = np.zeros((3, 3), dtype=complex)
    over_b = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(3):
            for jp in range(3):
                over_a[j, jp] += x[i * 3 + j, i * 3 + jp]
    for i in range(2):
        for ip in range(2):
            for j in range(3):
                over_b[i, ip] += x[i * 3 + j, ip * 3 + j]
    assert linalg.max_abs_diff(linalg.partial_trace(x, (2, 3), "A"), over_a) <= 1e-12
    assert linalg.max_abs_diff(linalg.partial_trace(x, (2, 3), "B"), over_b) <= 1e-12


def test_partial_trace_dim_mismatch():
    with pytest.raises(DimMismatchError):
        linalg.partial_trace(np.eye(5), (2, 3), "A")


def test_partial_transpose_product_state():
    rng = np.random.default_rng(14)
    rho_a = states.random_density(2, rng).mat
    rho_b = states.random_density(2, rng).mat
    prod = linalg.kron(rho_a, rho_b)
    got = linalg.partial_transpose(prod, (2, 2), "A")
    np.testing.assert_allclose(got, linalg.kron(rho_a.T, rho_b), atol=1e-12)


def test_partial_transpose_entangled_spectrum():
    omega = states.maximally_entangled_state(2)
    pt = linalg.partial_transpose(omega.mat, (2, 2), "A")
    w, _ = linalg.hermitian_eigen(pt)
    assert abs(w[0] - (-0.5)) <= 1e-12


def test_partial_transpose_involution():
    rng = np.random.default_rng(15)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    for side in ("A", "B"):
        back = linalg.partial_transpose(
            linalg.partial_transpose(x, (2, 3), side), (2, 3), side
        )
        np.testing.assert_array_equal(back, x)


def test_partial_transpose_leaves_other_marginal():
    rng = np.random.default_rng(16)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    # transposing side A does not change the trace over side A
    pt = linalg.partial_transpose(x, (2, 3), "A")
    assert linalg.max_abs_diff(
        linalg.partial_trace(pt, (2, 3), "A"), linalg.partial_trace(x, (2, 3), "A")
    ) <= 1e-12
    pt_b = linalg.partial_transpose(x, (2, 3), "B")
    assert linalg.max_abs_diff(
        linalg.partial_trace(pt_b, (2, 3), "B"), linalg.partial_trace(x, (2, 3), "B")
    ) <= 1e-12


def test_max_abs_diff_shape_check():
    with pytest.raises(DimMismatchError):
        linalg.max_abs_diff(np.eye(2), np.eye(3))
