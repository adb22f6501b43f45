import os

# Must happen before anything imports numba: allow more workers than cores so
# thread-sweep tests can run on small machines.
os.environ.setdefault("NUMBA_NUM_THREADS", "8")
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_nodes(rng, M, d):
    return rng.random((M, d)) - 0.5
