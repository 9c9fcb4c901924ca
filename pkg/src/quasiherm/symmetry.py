"""Symmetry generators of h and the full metric-operator family.

Positive-definite operators S commuting with the Hermitian equivalent h
parametrize *all* metrics of H: every eta' = rho·S·rho is again a metric,
and conversely any second metric arises this way. The commutant of h is
spanned, block-wise in its eigenbasis, by Hermitian matrices supported on
the degeneracy clusters, so the positive commutant is exhausted by positive
coefficients per cluster plus intra-cluster unitary mixers.

For each family member the whole identity chain is verified numerically:

    eta'   = rho·S·rho                  (eta-form)
    h'     = A·h·A⁻¹,  A = rho'·rho⁻¹  (sim)
    [A†A, h] = 0                        (sym)
    eta'   = rho·A†A·rho                (eta-prime)
    A†     = rho⁻¹·A·rho               (A-ph)
    A      = U·sigma, U unitary         (A=US)
    B†     = sigma·B·sigma⁻¹, B = rho·U (B-ph)
    eta    = B·B†                       (eta=BB)
    eta'   = (sigma·rho)†(sigma·rho)    (eta-prime-3)

Each check is reported individually by name so a failure localizes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite, ResidualExceeded
from .linalg import (
    DEFAULT_TOLERANCES,
    Tolerances,
    as_matrix,
    frobenius_norm,
    haar_unitary,
    hermitian_eig,
    hermitian_part,
    solve_right,
    sqrt_pd,
)
from .metric import MetricOperator, hermitian_equivalent, verify_pseudo_hermitian

# Residuals attached to every family member, keyed by identity name.
FAMILY_IDENTITIES = (
    "ph",
    "H=H",
    "sim",
    "sym",
    "eta-prime",
    "A-ph",
    "A=US",
    "B-ph",
    "eta=BB",
    "eta-form",
    "eta-prime-3",
)


@dataclass
class CommutantBasis:
    """Hermitian commutant {X = X† : [X, h] = 0} of a Hermitian h.

    ``basis`` spans the commutant over the reals; ``projectors`` are the
    spectral projectors of h, one per degeneracy cluster. The real dimension
    is the sum of squared cluster sizes.
    """

    h: np.ndarray
    basis: list[np.ndarray]
    real_dimension: int
    projectors: list[np.ndarray]
    clusters: list[list[int]]
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass
class SymmetryGenerator:
    """Positive-definite S with [S, h] = 0 and its positive square root.

    ``coefficients`` records, per cluster, the positive spectral values and
    the intra-cluster unitary mixer used to assemble S; together these
    parametrize the whole positive commutant.
    """

    matrix: np.ndarray
    sqrt: np.ndarray
    commutation_residual: float
    coefficients: list[tuple[np.ndarray, np.ndarray]]


@dataclass
class MetricFamilyMember:
    """One metric eta' = rho·S·rho with the full verified operator chain."""

    generator: SymmetryGenerator
    eta_prime: MetricOperator
    rho_prime: np.ndarray
    intertwiner: np.ndarray
    unitary_factor: np.ndarray
    eta_factor: np.ndarray
    h_prime: np.ndarray
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def _relative(num: float, den: float) -> float:
    return num if den <= 1e-300 else num / den


def commutant_basis(h, clusters, tol: Tolerances = DEFAULT_TOLERANCES) -> CommutantBasis:
    """Hermitian commutant of h, organized by the given degeneracy clusters.

    In the eigenbasis of h the commutant consists of Hermitian matrices
    supported on the diagonal blocks of each cluster; the basis returned is
    the standard real basis of those blocks, mapped back to the original
    basis. Raises :class:`NotHermitian` for non-Hermitian input.
    """
    eigenvalues, W = hermitian_eig(h, tol)
    h_mat = as_matrix(h)
    n = h_mat.shape[0]
    norm_h = frobenius_norm(h_mat)

    flat = sorted(i for cluster in clusters for i in cluster)
    if flat != list(range(n)):
        raise ValueError("clusters must partition the index range of h")

    basis: list[np.ndarray] = []
    projectors: list[np.ndarray] = []
    for cluster in clusters:
        idx = list(cluster)
        block = W[:, idx]
        projectors.append(hermitian_part(block @ block.conj().T))
        for a in range(len(idx)):
            va = block[:, a : a + 1]
            basis.append(hermitian_part(va @ va.conj().T))
            for b in range(a + 1, len(idx)):
                vb = block[:, b : b + 1]
                cross = va @ vb.conj().T
                basis.append(hermitian_part(cross + cross.conj().T))
                basis.append(hermitian_part(1j * (cross - cross.conj().T)))

    for i, element in enumerate(basis):
        residual = _relative(
            frobenius_norm(element @ h_mat - h_mat @ element),
            frobenius_norm(element) * norm_h,
        )
        if residual > tol.residual_tol:
            raise ResidualExceeded(f"sym[basis {i}]", residual, tol.residual_tol)

    total = np.zeros((n, n), dtype=np.complex128)
    for k, P in enumerate(projectors):
        total += P
        idem = frobenius_norm(P @ P - P)
        if idem > tol.residual_tol:
            raise ResidualExceeded(f"projector idempotence [{k}]", idem, tol.residual_tol)
    completeness = frobenius_norm(total - np.eye(n))
    if completeness > tol.residual_tol:
        raise ResidualExceeded("projector completeness", completeness, tol.residual_tol)

    return CommutantBasis(
        h=h_mat,
        basis=basis,
        real_dimension=sum(len(c) ** 2 for c in clusters),
        projectors=projectors,
        clusters=[list(c) for c in clusters],
        eigenvalues=eigenvalues,
        eigenvectors=W,
    )


def symmetry_from_coefficients(
    cb: CommutantBasis,
    values,
    mixers=None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SymmetryGenerator:
    """Assemble S = sum_k V_k·diag(s_k)·V_k† block-wise in the h-eigenbasis.

    ``values`` gives the positive spectral coefficients per cluster and
    ``mixers`` the optional intra-cluster unitaries (identity by default).
    S and its square root are built from the same spectral data, so the
    root is exact up to roundoff.
    """
    n = cb.h.shape[0]
    if len(values) != len(cb.clusters):
        raise ValueError("one coefficient array required per degeneracy cluster")
    if mixers is None:
        mixers = [np.eye(len(c), dtype=np.complex128) for c in cb.clusters]

    S = np.zeros((n, n), dtype=np.complex128)
    sigma = np.zeros((n, n), dtype=np.complex128)
    coefficients: list[tuple[np.ndarray, np.ndarray]] = []
    for cluster, vals, mixer in zip(cb.clusters, values, mixers):
        s = np.asarray(vals, dtype=np.float64)
        V = np.asarray(mixer, dtype=np.complex128)
        d = len(cluster)
        if s.shape != (d,):
            raise ValueError(f"expected {d} coefficients for cluster {cluster}, got {s.shape}")
        if np.any(s <= 0):
            raise NotPositiveDefinite("symmetry coefficients must be strictly positive")
        if V.shape != (d, d) or frobenius_norm(V.conj().T @ V - np.eye(d)) > tol.residual_tol:
            raise ValueError("cluster mixer must be a unitary of the cluster size")
        block = cb.eigenvectors[:, list(cluster)] @ V
        S += (block * s) @ block.conj().T
        sigma += (block * np.sqrt(s)) @ block.conj().T
        coefficients.append((s.copy(), V.copy()))

    S = hermitian_part(S)
    sigma = hermitian_part(sigma)
    commutation = _relative(
        frobenius_norm(S @ cb.h - cb.h @ S), frobenius_norm(S) * frobenius_norm(cb.h)
    )
    if commutation > tol.residual_tol:
        raise ResidualExceeded("sym", commutation, tol.residual_tol)

    return SymmetryGenerator(
        matrix=S,
        sqrt=sigma,
        commutation_residual=commutation,
        coefficients=coefficients,
    )


def sample_positive_symmetry(
    cb: CommutantBasis,
    seed: int,
    spread: float = 10.0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SymmetryGenerator:
    """Draw a random positive-definite symmetry generator of h.

    Spectral coefficients are log-uniform on [1/spread, spread] and the
    intra-cluster mixers Haar unitaries, all from one seeded generator:
    identical (seed, spread) reproduce the generator bit for bit.
    """
    if spread < 1.0:
        raise ValueError("spread must be >= 1")
    rng = np.random.default_rng(seed)
    values = []
    mixers = []
    for cluster in cb.clusters:
        d = len(cluster)
        values.append(np.exp(rng.uniform(np.log(1.0 / spread), np.log(spread), size=d)))
        mixers.append(haar_unitary(d, rng) if d > 1 else np.eye(1, dtype=np.complex128))
    return symmetry_from_coefficients(cb, values, mixers, tol)


def metric_from_symmetry(
    metric: MetricOperator,
    generator: SymmetryGenerator,
    H,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MetricFamilyMember:
    """Build the family member eta' = rho·S·rho and verify the identity chain.

    Constructs rho' = sqrt(eta'), the intertwiner A = rho'·rho⁻¹, the
    unitary U = A·sigma⁻¹ and B = rho·U, and records every identity
    residual by name. Residuals are reported, not gated: the verdict
    belongs to the caller.
    """
    A_H = as_matrix(H)
    rho = metric.rho
    eta = metric.eta
    S = generator.matrix
    sigma = generator.sqrt

    base = hermitian_equivalent(A_H, metric, tol)
    h = base.h

    eta_prime_raw = rho @ S @ rho
    eta_prime = hermitian_part(eta_prime_raw)
    rho_prime = sqrt_pd(eta_prime, tol)

    member_metric = MetricOperator(
        eta=eta_prime,
        rho=rho_prime,
        min_eigenvalue=float(np.linalg.eigvalsh(eta_prime)[0]),
        hermiticity_residual=_relative(
            frobenius_norm(eta_prime_raw - eta_prime_raw.conj().T), frobenius_norm(eta_prime)
        ),
        pseudo_hermiticity_residual=verify_pseudo_hermitian(A_H, eta_prime),
    )
    prime_pair = hermitian_equivalent(A_H, member_metric, tol)
    h_prime = prime_pair.h

    A = solve_right(rho, rho_prime, tol)
    U = solve_right(sigma, A, tol)
    B = rho @ U

    nrm = frobenius_norm
    n = A_H.shape[0]
    AdgA = A.conj().T @ A
    sigma_rho = sigma @ rho

    residuals = {
        "ph": member_metric.pseudo_hermiticity_residual,
        "H=H": prime_pair.similarity_residual,
        "sim": _relative(nrm(h_prime @ A - A @ h), nrm(A) * nrm(h)),
        "sym": _relative(nrm(AdgA @ h - h @ AdgA), nrm(AdgA) * nrm(h)),
        "eta-prime": _relative(nrm(eta_prime - rho @ AdgA @ rho), nrm(eta_prime)),
        "A-ph": _relative(nrm(rho @ A.conj().T - A @ rho), nrm(rho) * nrm(A)),
        # A = U·sigma holds exactly by construction of U; the identity's
        # numerical content is the unitarity of U.
        "A=US": nrm(U.conj().T @ U - np.eye(n)),
        "B-ph": _relative(nrm(B.conj().T - solve_right(sigma, sigma @ B, tol)), nrm(B)),
        "eta=BB": _relative(nrm(B @ B.conj().T - eta), nrm(eta)),
        "eta-form": _relative(nrm(eta_prime - rho @ S @ rho), nrm(eta_prime)),
        "eta-prime-3": _relative(nrm(eta_prime - sigma_rho.conj().T @ sigma_rho), nrm(eta_prime)),
    }

    return MetricFamilyMember(
        generator=generator,
        eta_prime=member_metric,
        rho_prime=rho_prime,
        intertwiner=A,
        unitary_factor=U,
        eta_factor=B,
        h_prime=h_prime,
        residuals=residuals,
    )


def intertwiner_from_metrics(
    rho,
    rho_prime,
    h,
    h_prime,
    tol: Tolerances = DEFAULT_TOLERANCES,
):
    """Recover (A, S) from two certified metrics of the same Hamiltonian.

    A = rho'·rho⁻¹ and S = A†A; certifies the similarity h' = A·h·A⁻¹, the
    symmetry [S, h] = 0, the rho⁻¹-pseudo-Hermiticity of A, and
    eta' = rho·S·rho. Raises :class:`ResidualExceeded` naming the first
    identity that fails.
    """
    rho = as_matrix(rho)
    rho_prime = as_matrix(rho_prime)
    h = as_matrix(h)
    h_prime = as_matrix(h_prime)

    A = solve_right(rho, rho_prime, tol)
    S = hermitian_part(A.conj().T @ A)

    nrm = frobenius_norm
    checks = (
        ("sim", _relative(nrm(h_prime @ A - A @ h), nrm(A) * nrm(h))),
        ("sym", _relative(nrm(S @ h - h @ S), nrm(S) * nrm(h))),
        ("A-ph", _relative(nrm(rho @ A.conj().T - A @ rho), nrm(rho) * nrm(A))),
        (
            "eta-prime",
            _relative(nrm(rho_prime @ rho_prime - rho @ S @ rho), nrm(rho_prime @ rho_prime)),
        ),
    )
    for name, value in checks:
        if value > tol.residual_tol:
            raise ResidualExceeded(name, value, tol.residual_tol)
    return A, S


def verify_B_relations(B, sigma, eta, tol: Tolerances = DEFAULT_TOLERANCES) -> dict[str, float]:
    """Diagnostic residuals for the sigma-pseudo-Hermiticity of B.

    Returns {"B-ph": ||B† - sigma·B·sigma⁻¹|| / ||B||,
    "eta=BB": ||B·B† - eta|| / ||eta||}; reports, never raises.
    """
    B = as_matrix(B)
    sigma = as_matrix(sigma)
    eta = as_matrix(eta)
    nrm = frobenius_norm
    return {
        "B-ph": _relative(nrm(B.conj().T - solve_right(sigma, sigma @ B, tol)), nrm(B)),
        "eta=BB": _relative(nrm(B @ B.conj().T - eta), nrm(eta)),
    }
