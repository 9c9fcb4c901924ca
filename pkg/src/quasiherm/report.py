"""Verification reports: run the pipeline end to end and record the evidence.

A report is a JSON document holding the input descriptor, the tolerances
used, the certified spectrum, the constructed operators, a residual table
keyed by identity name, and one residual table per sampled family member.
The verdict is pass iff every recorded residual is within residual_tol.
Reports are deterministic for identical inputs apart from the timestamp.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import (
    ComplexSpectrum,
    NonDiagonalizable,
    ParseError,
    QuasiHermError,
    ResidualExceeded,
)
from .linalg import DEFAULT_TOLERANCES, Tolerances, as_matrix
from .matrixio import load_matrix, matrix_to_payload
from .metric import full_pipeline
from .models import ModelSpec, build_model, describe_model
from .spectral import eig_decompose
from .symmetry import (
    FAMILY_IDENTITIES,
    commutant_basis,
    metric_from_symmetry,
    sample_positive_symmetry,
)

RESIDUAL_KEYS = FAMILY_IDENTITIES

DEFAULT_MAX_DIM = 512

_EXIT_CODES = {"pass": 0, "error": 1, "fail": 2}


def _complex_pairs(values) -> list:
    return [[float(np.real(z)), float(np.imag(z))] for z in np.asarray(values).ravel()]


@dataclass
class FamilyMemberSummary:
    seed: int
    spread: float
    residuals: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def to_payload(self) -> dict:
        return {
            "seed": self.seed,
            "spread": self.spread,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "max_residual": float(self.max_residual),
        }


@dataclass
class VerificationReport:
    command: str
    input: dict
    tolerances: dict
    generated_at: str
    eigenvalues: list | None = None
    clusters: list | None = None
    cond_T: float | None = None
    commutant: dict | None = None
    matrices: dict | None = None
    residuals: dict = field(default_factory=dict)
    family: list = field(default_factory=list)
    failure: dict | None = None
    error: dict | None = None
    verdict: str = "pass"

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.verdict]

    def all_residuals(self) -> list:
        values = list(self.residuals.values())
        for member in self.family:
            values.extend(member.residuals.values())
        return values

    def to_payload(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "tolerances": self.tolerances,
            "generated_at": self.generated_at,
            "eigenvalues": self.eigenvalues,
            "clusters": self.clusters,
            "cond_T": self.cond_T,
            "commutant": self.commutant,
            "matrices": self.matrices,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "family": [m.to_payload() for m in self.family],
            "failure": self.failure,
            "error": self.error,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True)

    @staticmethod
    def from_payload(payload: dict) -> "VerificationReport":
        members = [
            FamilyMemberSummary(
                seed=m["seed"], spread=m["spread"], residuals=dict(m["residuals"])
            )
            for m in payload.get("family", [])
        ]
        return VerificationReport(
            command=payload["command"],
            input=payload["input"],
            tolerances=payload["tolerances"],
            generated_at=payload["generated_at"],
            eigenvalues=payload.get("eigenvalues"),
            clusters=payload.get("clusters"),
            cond_T=payload.get("cond_T"),
            commutant=payload.get("commutant"),
            matrices=payload.get("matrices"),
            residuals=dict(payload.get("residuals", {})),
            family=members,
            failure=payload.get("failure"),
            error=payload.get("error"),
            verdict=payload["verdict"],
        )


def _resolve_input(source, max_dim: int):
    """Turn a path, ModelSpec, or array into (H, descriptor)."""
    if isinstance(source, ModelSpec):
        H = build_model(source)
        descriptor = describe_model(source)
    elif isinstance(source, (str, Path)):
        H = load_matrix(source)
        descriptor = {"path": str(source)}
    else:
        try:
            H = as_matrix(source)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        descriptor = {"source": "in-memory", "dim": int(H.shape[0])}
    if H.shape[0] > max_dim:
        raise ParseError(f"dimension {H.shape[0]} exceeds the configured maximum {max_dim}")
    return H, descriptor


def _error_payload(exc: Exception) -> dict:
    payload = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ComplexSpectrum) and exc.eigenvalues is not None:
        payload["eigenvalues"] = _complex_pairs(exc.eigenvalues)
    if isinstance(exc, NonDiagonalizable) and exc.cond is not None:
        payload["cond"] = float(exc.cond)
    return payload


def _run(
    command: str,
    source,
    tol: Tolerances,
    samples: int,
    seed: int,
    spread: float,
    out,
    max_dim: int,
    with_metric: bool,
    with_family: bool,
    with_matrices: bool,
) -> VerificationReport:
    report = VerificationReport(
        command=command,
        input={},
        tolerances=dataclasses.asdict(tol),
        generated_at=datetime.now(timezone.utc).isoformat(),
    )
    try:
        H, report.input = _resolve_input(source, max_dim)

        if with_metric:
            pair = full_pipeline(H, tol)
            spectral = pair.spectral
        else:
            spectral = eig_decompose(H, tol)
            pair = None

        report.eigenvalues = _complex_pairs(spectral.eigenvalues)
        report.clusters = [list(c) for c in spectral.clusters]
        report.cond_T = float(spectral.cond_T)

        if pair is not None:
            report.residuals = {
                "ph": float(pair.metric.pseudo_hermiticity_residual),
                "H=H": float(pair.similarity_residual),
            }
            if with_matrices:
                report.matrices = {
                    "eta": matrix_to_payload(pair.metric.eta),
                    "rho": matrix_to_payload(pair.metric.rho),
                    "h": matrix_to_payload(pair.h),
                }
            if with_family:
                cb = commutant_basis(pair.h, spectral.clusters, tol)
                report.commutant = {
                    "real_dimension": cb.real_dimension,
                    "cluster_sizes": [len(c) for c in cb.clusters],
                }
                for i in range(samples):
                    generator = sample_positive_symmetry(cb, seed + i, spread, tol)
                    member = metric_from_symmetry(pair.metric, generator, H, tol)
                    report.family.append(
                        FamilyMemberSummary(
                            seed=seed + i, spread=spread, residuals=member.residuals
                        )
                    )
    except ResidualExceeded as exc:
        report.residuals[exc.identity] = float(exc.value)
        report.failure = {
            "identity": exc.identity,
            "value": float(exc.value),
            "bound": float(exc.bound),
        }
        report.verdict = "fail"
    except (ParseError, QuasiHermError, OSError) as exc:
        report.error = _error_payload(exc)
        report.verdict = "error"
    else:
        labeled = list(report.residuals.items())
        for member in report.family:
            labeled.extend(member.residuals.items())
        bad = [(value, key) for key, value in labeled if value > tol.residual_tol]
        if bad:
            value, identity = max(bad)
            report.failure = {
                "identity": identity,
                "value": float(value),
                "bound": float(tol.residual_tol),
            }
            report.verdict = "fail"
        else:
            report.verdict = "pass"

    if out is not None:
        Path(out).write_text(report.to_json() + "\n", encoding="utf-8")
    return report


def run_analyze(
    source,
    tol: Tolerances = DEFAULT_TOLERANCES,
    samples: int = 5,
    seed: int = 0,
    spread: float = 10.0,
    out=None,
    max_dim: int = DEFAULT_MAX_DIM,
) -> VerificationReport:
    """Full treatment: pipeline, commutant, sampled metric family, verdict."""
    return _run(
        "analyze", source, tol, samples, seed, spread, out, max_dim,
        with_metric=True, with_family=True, with_matrices=True,
    )


def run_family(
    source,
    tol: Tolerances = DEFAULT_TOLERANCES,
    samples: int = 5,
    seed: int = 0,
    spread: float = 10.0,
    out=None,
    max_dim: int = DEFAULT_MAX_DIM,
) -> VerificationReport:
    """Symmetry-family sampling only; matrices are left out of the report."""
    return _run(
        "family", source, tol, samples, seed, spread, out, max_dim,
        with_metric=True, with_family=True, with_matrices=False,
    )


def run_spectrum(
    source,
    tol: Tolerances = DEFAULT_TOLERANCES,
    out=None,
    max_dim: int = DEFAULT_MAX_DIM,
) -> VerificationReport:
    """Spectral diagnostics only: eigenvalues, clusters, conditioning."""
    return _run(
        "spectrum", source, tol, 0, 0, 10.0, out, max_dim,
        with_metric=False, with_family=False, with_matrices=False,
    )
