import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so timed tests see steady-state cost."""
    from crwscatter import kernels

    e = np.array([0.0, 1.0])
    phi = np.full(2, math.pi / 2)
    oc = np.zeros(2)
    kernels.two_port_smatrix_batch(e, phi, oc, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    kernels.three_port_smatrix_batch(e, phi, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0)
    kernels.three_port_closed_form_batch(e, phi, 0.0, 1.0, 1.0, 1.0)
