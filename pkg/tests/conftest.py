import numpy as np
import pytest

import convspectra as cs


@pytest.fixture
def averaging_kernel():
    return cs.ConvKernel.from_array(np.full((1, 1, 3, 3), 1.0 / 9.0))


def identity_kernel(channels: int) -> cs.ConvKernel:
    """1x1 kernel acting as the identity on `channels` channels."""
    w = np.zeros((channels, channels, 1, 1))
    w[:, :, 0, 0] = np.eye(channels)
    return cs.ConvKernel.from_array(w)


def averaging_symbol(k1: float, k2: float) -> float:
    """Closed form for the 3x3 all-ones/9 kernel: separable cosine product."""
    return (1.0 + 2.0 * np.cos(2 * np.pi * k1)) * (1.0 + 2.0 * np.cos(2 * np.pi * k2)) / 9.0
