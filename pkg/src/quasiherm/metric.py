"""Metric operators and the equivalent Hermitian Hamiltonian.

The existence construction: diagonalize H with row transform T, set
``eta = T†T`` (Hermitian positive-definite), ``rho = sqrt(eta)``, and
``h = rho · H · rho⁻¹`` is Hermitian and isospectral with H. Every inverse
application goes through a linear solve; rho⁻¹ is never formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitianEquivalent, NotPositiveDefinite, ResidualExceeded, SingularTransform
from .linalg import (
    DEFAULT_TOLERANCES,
    ZERO_NORM_FLOOR,
    Tolerances,
    as_matrix,
    frobenius_norm,
    hermitian_part,
    hermiticity_defect,
    polar_decompose,
    solve_right,
)
from .spectral import SpectralData, eig_decompose


@dataclass
class MetricOperator:
    """Positive-definite metric ``eta`` with its positive square root ``rho``.

    ``pseudo_hermiticity_residual`` is the certified ``H†eta - eta H``
    residual against the generating Hamiltonian (None when the metric was
    built without one).
    """

    eta: np.ndarray
    rho: np.ndarray
    min_eigenvalue: float
    hermiticity_residual: float
    pseudo_hermiticity_residual: float | None = None

    @property
    def dim(self) -> int:
        return self.eta.shape[0]


@dataclass
class EquivalencePair:
    """A Hamiltonian H together with its Hermitian equivalent h = rho·H·rho⁻¹."""

    H: np.ndarray
    h: np.ndarray
    metric: MetricOperator
    U: np.ndarray | None
    similarity_residual: float
    spectral: SpectralData | None = None


def verify_pseudo_hermitian(H, eta) -> float:
    """Relative residual ||H†·eta - eta·H|| / (||eta||·||H||).

    Zero (to roundoff) exactly when eta renders H pseudo-Hermitian. Purely
    diagnostic: never raises.
    """
    A = as_matrix(H)
    E = as_matrix(eta)
    numerator = frobenius_norm(A.conj().T @ E - E @ A)
    denominator = frobenius_norm(E) * frobenius_norm(A)
    if denominator <= ZERO_NORM_FLOOR:
        return numerator
    return numerator / denominator


def metric_from_T(T, tol: Tolerances = DEFAULT_TOLERANCES, H=None) -> MetricOperator:
    """Metric ``eta = T†T`` for the row transform T, with ``rho = sqrt(eta)``.

    eta is formed directly from T (better conditioned than squaring the
    polar factor) and rho recovered by the positive square root. When the
    generating Hamiltonian is supplied, its pseudo-Hermiticity residual is
    certified against ``residual_tol``.
    """
    A = as_matrix(T)
    singular_values = np.linalg.svd(A, compute_uv=False)
    if singular_values[-1] <= tol.positivity_floor * max(frobenius_norm(A), ZERO_NORM_FLOOR):
        raise SingularTransform("transform is numerically singular; no metric exists")

    raw = A.conj().T @ A
    hermiticity_residual = hermiticity_defect(raw)
    eta = hermitian_part(raw)

    eigenvalues, V = np.linalg.eigh(eta)
    min_eigenvalue = float(eigenvalues[0])
    if min_eigenvalue <= tol.positivity_floor * frobenius_norm(eta):
        raise NotPositiveDefinite(
            f"metric eigenvalue {min_eigenvalue:.3e} below positivity floor"
        )
    rho = hermitian_part((V * np.sqrt(eigenvalues)) @ V.conj().T)

    pseudo = None
    if H is not None:
        pseudo = verify_pseudo_hermitian(H, eta)
        if pseudo > tol.residual_tol:
            raise ResidualExceeded("ph", pseudo, tol.residual_tol)

    return MetricOperator(
        eta=eta,
        rho=rho,
        min_eigenvalue=min_eigenvalue,
        hermiticity_residual=hermiticity_residual,
        pseudo_hermiticity_residual=pseudo,
    )


def hermitian_equivalent(
    H,
    metric: MetricOperator,
    tol: Tolerances = DEFAULT_TOLERANCES,
    T=None,
    certified_spectrum=None,
) -> EquivalencePair:
    """Hermitian equivalent ``h = rho·H·rho⁻¹`` of H under a certified metric.

    h is symmetrized only after passing the Hermiticity gate; a failure
    signals an invalid metric upstream (:class:`NotHermitianEquivalent`).
    When T is available the polar unitary U is recovered from it, and when
    the certified spectrum is supplied the isospectrality of h is checked.
    """
    A = as_matrix(H)
    rho = metric.rho
    h_raw = solve_right(rho, rho @ A, tol)

    defect = hermiticity_defect(h_raw)
    if defect > tol.residual_tol:
        raise NotHermitianEquivalent(
            f"rho·H·rho⁻¹ has relative asymmetry {defect:.3e}; the metric does not "
            "render H quasi-Hermitian at this tolerance"
        )
    h = hermitian_part(h_raw)

    norm_H = frobenius_norm(A)
    similarity = frobenius_norm(rho @ A - h @ rho)
    denom = frobenius_norm(rho) * norm_H
    similarity_residual = similarity if denom <= ZERO_NORM_FLOOR else similarity / denom
    if similarity_residual > tol.residual_tol:
        raise ResidualExceeded("H=H", similarity_residual, tol.residual_tol)

    U = polar_decompose(T, tol)[0] if T is not None else None

    if certified_spectrum is not None:
        expected = np.sort(np.asarray(certified_spectrum, dtype=np.float64))
        got = np.linalg.eigvalsh(h)
        drift = float(np.max(np.abs(got - expected)))
        if drift > tol.residual_tol * max(norm_H, 1.0):
            raise ResidualExceeded("isospectrality", drift, tol.residual_tol * max(norm_H, 1.0))

    return EquivalencePair(
        H=A,
        h=h,
        metric=metric,
        U=U,
        similarity_residual=similarity_residual,
    )


def full_pipeline(H, tol: Tolerances = DEFAULT_TOLERANCES) -> EquivalencePair:
    """Existence construction end to end: H -> (T, H_d) -> eta, rho -> h.

    Composes :func:`eig_decompose`, :func:`metric_from_T` and
    :func:`hermitian_equivalent`, retaining every intermediate certificate
    on the returned pair. Propagates ComplexSpectrum / NonDiagonalizable
    from the spectral stage.
    """
    A = as_matrix(H)
    spectral = eig_decompose(A, tol)
    metric = metric_from_T(spectral.T, tol, H=A)
    pair = hermitian_equivalent(
        A,
        metric,
        tol,
        T=spectral.T,
        certified_spectrum=spectral.real_eigenvalues,
    )
    pair.spectral = spectral
    return pair
