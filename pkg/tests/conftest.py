import numpy as np
import pytest


def random_state(rng, d, qudits):
    """Haar-ish random pure state over the named qudits."""
    dim = d ** len(qudits)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    from cqpverify.qudits import PureState

    return PureState(tuple(qudits), v, d)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
