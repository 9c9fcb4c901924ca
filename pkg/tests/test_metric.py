import numpy as np
import numpy.testing as npt
import pytest

from quasiherm import (
    MetricOperator,
    NotHermitianEquivalent,
    ResidualExceeded,
    eig_decompose,
    full_pipeline,
    haar_unitary,
    hermitian_equivalent,
    metric_from_T,
    random_diagonalizable,
    two_level,
    verify_pseudo_hermitian,
)


def test_metric_from_identity_rows():
    metric = metric_from_T(np.eye(3, dtype=complex))
    npt.assert_allclose(metric.eta, np.eye(3), atol=1e-15)
    npt.assert_allclose(metric.rho, np.eye(3), atol=1e-15)
    assert metric.min_eigenvalue == pytest.approx(1.0)


def test_metric_from_unitary_rows_is_identity():
    U = haar_unitary(4, np.random.default_rng(2))
    npt.assert_allclose(metric_from_T(U).eta, np.eye(4), atol=1e-13)


def test_full_pipeline_identity_input():
    pair = full_pipeline(np.eye(3))
    npt.assert_allclose(pair.metric.eta, np.eye(3), atol=1e-13)
    npt.assert_allclose(pair.h, np.eye(3), atol=1e-13)


def test_two_level_metric_closed_form():
    pair = full_pipeline(two_level(1, 4, 0))
    npt.assert_allclose(pair.metric.eta, np.diag([1.6, 0.4]), atol=1e-12)
    npt.assert_allclose(np.linalg.eigvalsh(pair.h), [-2.0, 2.0], atol=1e-12)
    npt.assert_allclose(pair.h, pair.h.conj().T, atol=1e-13)


def test_upper_triangular_metric_closed_form():
    H = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)
    pair = full_pipeline(H)
    npt.assert_allclose(
        pair.metric.eta, np.array([[0.5, -0.5], [-0.5, 1.5]]), atol=1e-12
    )
    assert pair.metric.pseudo_hermiticity_residual <= 1e-14
    npt.assert_allclose(np.linalg.eigvalsh(pair.h), [1.0, 2.0], atol=1e-12)


def test_verify_pseudo_hermitian_values():
    H = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)
    eta = np.array([[0.5, -0.5], [-0.5, 1.5]], dtype=complex)
    assert verify_pseudo_hermitian(H, eta) < 1e-15
    # identity is not a metric for this H: residual = |H+ - H| / (|I| |H|)
    assert verify_pseudo_hermitian(H, np.eye(2)) == pytest.approx(1 / np.sqrt(6))


def test_metric_certifies_against_hamiltonian():
    H = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)
    # a unitary row basis is not the left eigenbasis of H
    with pytest.raises(ResidualExceeded) as exc_info:
        metric_from_T(haar_unitary(2, np.random.default_rng(1)), H=H)
    assert exc_info.value.identity == "ph"


def test_hermitian_equivalent_rejects_wrong_metric():
    H = np.array([[1.0, 1.0], [0.0, 2.0]], dtype=complex)
    identity_metric = MetricOperator(
        eta=np.eye(2, dtype=complex),
        rho=np.eye(2, dtype=complex),
        min_eigenvalue=1.0,
        hermiticity_residual=0.0,
    )
    with pytest.raises(NotHermitianEquivalent):
        hermitian_equivalent(H, identity_metric)


def test_full_pipeline_random_ensemble_properties():
    for seed in range(8):
        H, ground_truth = random_diagonalizable(6, seed=seed)
        pair = full_pipeline(H)
        eta, rho, h = pair.metric.eta, pair.metric.rho, pair.h
        npt.assert_allclose(rho @ rho, eta, atol=1e-11 * np.linalg.norm(eta))
        assert pair.metric.min_eigenvalue > 0
        assert pair.metric.pseudo_hermiticity_residual <= 1e-10
        assert pair.similarity_residual <= 1e-10
        npt.assert_allclose(h, h.conj().T, atol=1e-11 * np.linalg.norm(h))
        npt.assert_allclose(
            np.linalg.eigvalsh(h), ground_truth.real_eigenvalues, atol=1e-9
        )
        # unitary factor diagonalizes: h = U+ H_d U
        spectral = pair.spectral
        recon = pair.U.conj().T @ spectral.H_d @ pair.U
        npt.assert_allclose(recon, h, atol=1e-9 * np.linalg.norm(h))


def test_ensemble_unitary_equivalence(ensemble_pipelines):
    # the two constructions of h agree and h is isospectral with H,
    # across the full 300-sample ensemble
    for H, ground_truth, pair in ensemble_pipelines:
        norm_H = np.linalg.norm(H)
        recon = pair.U.conj().T @ pair.spectral.H_d @ pair.U
        assert np.linalg.norm(recon - pair.h) <= 1e-8 * norm_H
        spectrum_h = np.linalg.eigvalsh(pair.h)
        assert np.max(np.abs(spectrum_h - ground_truth.real_eigenvalues)) <= 1e-8 * norm_H


def test_hermitian_input_gives_identity_metric():
    rng = np.random.default_rng(17)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    H = (A + A.conj().T) / 2
    pair = full_pipeline(H)
    npt.assert_allclose(pair.metric.eta, np.eye(5), atol=1e-10)
    npt.assert_allclose(pair.h, H, atol=1e-10 * np.linalg.norm(H))


def test_pipeline_metric_is_left_eigenbasis_gram_matrix():
    H, _ = random_diagonalizable(5, seed=23)
    spectral = eig_decompose(H)
    metric = metric_from_T(spectral.T, H=H)
    npt.assert_allclose(
        metric.eta, spectral.T.conj().T @ spectral.T, atol=1e-13
    )
