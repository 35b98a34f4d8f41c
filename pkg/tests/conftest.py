import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_pure_states(rng, n):
    """(n, 4) array of normalized two-qubit pure-state amplitudes."""
    a = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    return a / np.linalg.norm(a, axis=1, keepdims=True)
