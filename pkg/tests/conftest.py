import numpy as np
import pytest

from quasiherm import full_pipeline, random_diagonalizable

# Seeded ensemble shared across tests: sizes cycle through 2..8, condition
# of the generating transform bounded by 100.
ENSEMBLE_SIZE = 300
ENSEMBLE_BASE_SEED = 1000


@pytest.fixture(scope="session")
def ensemble():
    cases = []
    for i in range(ENSEMBLE_SIZE):
        n = 2 + (i % 7)
        H, ground_truth = random_diagonalizable(n, seed=ENSEMBLE_BASE_SEED + i)
        cases.append((H, ground_truth))
    return cases


@pytest.fixture(scope="session")
def ensemble_pipelines(ensemble):
    return [(H, ground_truth, full_pipeline(H)) for H, ground_truth in ensemble]


@pytest.fixture
def rng():
    return np.random.default_rng(42)
