import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# First calls JIT-compile the kernels, which would trip hypothesis deadlines.
settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIG1 = [7, 11, 4, 5, 6, 10, 9, 2, 3, 1, 0, 8]


@pytest.fixture
def fig1():
    return np.array(FIG1, dtype=np.int64)


def keys(seq):
    return np.array(seq, dtype=np.int64)
