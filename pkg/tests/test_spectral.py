import numpy as np
import numpy.testing as npt
import pytest

from quasiherm import (
    ComplexSpectrum,
    NonDiagonalizable,
    cluster_degeneracies,
    eig_decompose,
    haar_unitary,
    random_diagonalizable,
)


def test_cluster_singletons_for_distinct_values():
    assert cluster_degeneracies(np.array([0.0, 1.0, 2.5])) == [[0], [1], [2]]


def test_cluster_groups_repeats_and_near_repeats():
    assert cluster_degeneracies(np.array([1.0, 1.0, 3.0, 3.0])) == [[0, 1], [2, 3]]
    assert cluster_degeneracies(np.array([1.0, 1.0 + 1e-12, 2.0])) == [[0, 1], [2]]
    # gap 5e-8 is below the 1e-7 * max(spread, 1) threshold, 5e-7 above it
    assert cluster_degeneracies(np.array([0.0, 5e-8, 1.0])) == [[0, 1], [2]]
    assert cluster_degeneracies(np.array([0.0, 5e-7, 1.0])) == [[0], [1], [2]]


def test_cluster_rejects_unsorted_and_empty():
    with pytest.raises(ValueError):
        cluster_degeneracies(np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        cluster_degeneracies(np.array([]))


def test_eig_decompose_hermitian_gives_unitary_rows(rng):
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    H = (A + A.conj().T) / 2
    data = eig_decompose(H)
    npt.assert_allclose(data.T @ data.T.conj().T, np.eye(5), atol=1e-12)
    npt.assert_allclose(data.real_eigenvalues, np.linalg.eigvalsh(H), atol=1e-12)
    assert data.cond_T < 1.0 + 1e-10


def test_eig_decompose_diagonal_input_gives_identity_rows():
    data = eig_decompose(np.diag([1.0, 2.0]).astype(complex))
    npt.assert_allclose(data.real_eigenvalues, [1.0, 2.0])
    npt.assert_allclose(data.T, np.eye(2), atol=1e-14)


def test_eig_decompose_triangular_left_eigenvectors():
    # left eigenvectors of [[1,1],[0,2]] are (1,-1)/sqrt(2) and (0,1)
    data = eig_decompose(np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex))
    expected = np.array([[1.0, -1.0], [0.0, np.sqrt(2.0)]]) / np.sqrt(2.0)
    npt.assert_allclose(data.T, expected, atol=1e-14)
    npt.assert_allclose(data.real_eigenvalues, [1.0, 2.0], atol=1e-14)


def test_eig_decompose_certifies_row_eigenvector_equation():
    H, _ = random_diagonalizable(6, seed=2)
    data = eig_decompose(H)
    # rows of T are left eigenvectors: T H = H_d T
    residual = np.linalg.norm(data.T @ H - data.H_d @ data.T)
    assert residual <= 1e-10 * np.linalg.norm(H)
    assert np.all(np.diff(data.real_eigenvalues) >= 0)
    npt.assert_allclose(np.linalg.norm(data.T, axis=1), np.ones(6), atol=1e-13)


def test_eig_decompose_phase_convention():
    H, _ = random_diagonalizable(5, seed=9)
    data = eig_decompose(H)
    for row in data.T:
        anchor = row[np.flatnonzero(np.abs(row) > 1e-10)[0]]
        assert abs(anchor.imag) < 1e-12
        assert anchor.real > 0


def test_eig_decompose_matches_generating_spectrum():
    for seed in range(10):
        H, ground_truth = random_diagonalizable(7, seed=seed)
        data = eig_decompose(H)
        npt.assert_allclose(
            data.real_eigenvalues, ground_truth.real_eigenvalues, atol=1e-8
        )


def test_ensemble_round_trip_and_isospectrality(ensemble_pipelines):
    # reconstruction T^-1 H_d T = H and agreement with the generating
    # diagonal over the full 300-sample ensemble
    for H, ground_truth, pair in ensemble_pipelines:
        data = pair.spectral
        recon = np.linalg.solve(data.T, data.H_d @ data.T)
        assert np.linalg.norm(recon - H) <= 1e-8 * np.linalg.norm(H)
        D = ground_truth.real_eigenvalues
        assert np.max(np.abs(data.real_eigenvalues - D)) <= 1e-8 * np.linalg.norm(D)


def test_complex_spectrum_raised_with_offenders():
    rotation = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    with pytest.raises(ComplexSpectrum) as exc_info:
        eig_decompose(rotation)
    offenders = np.asarray(exc_info.value.eigenvalues)
    assert offenders.size == 2
    npt.assert_allclose(np.sort(np.abs(offenders.imag)), [1.0, 1.0], atol=1e-12)


def test_jordan_block_rejected():
    jordan = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NonDiagonalizable) as exc_info:
        eig_decompose(jordan)
    assert exc_info.value.cond is None or exc_info.value.cond > 1e8


def test_larger_defective_matrix_rejected():
    # 3x3 with a 2-block: eigenvalue 1 defective
    J = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 2]], dtype=complex)
    with pytest.raises(NonDiagonalizable):
        eig_decompose(J)


def test_degenerate_similarity_clusters_and_certifies():
    W = haar_unitary(4, np.random.default_rng(0))
    base = W @ np.diag([1.0, 1.0, 3.0, 3.0]).astype(complex) @ W.conj().T
    rng = np.random.default_rng(5)
    M = np.eye(4) + 0.3 * (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    H = np.linalg.solve(M, base @ M)
    data = eig_decompose(H)
    assert [len(c) for c in data.clusters] == [2, 2]
    npt.assert_allclose(data.real_eigenvalues, [1, 1, 3, 3], atol=1e-9)
    # within-cluster rows are orthonormalized
    for cluster in data.clusters:
        block = data.T[cluster]
        npt.assert_allclose(block @ block.conj().T, np.eye(len(cluster)), atol=1e-10)


def test_scaled_rotation_lists_both_complex_eigenvalues():
    theta = np.array([[2.0, 5.0], [-5.0, 2.0]], dtype=complex)
    with pytest.raises(ComplexSpectrum):
        eig_decompose(theta)
