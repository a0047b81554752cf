"""Shared fixtures: the worked 3x3 singular example used across suites.

A is a rank-2 index-1 matrix whose group inverse is known exactly, with
three proper splittings whose alternating iteration matrix has spectral
radius 1/4 even though no individual splitting is type II.
"""
import numpy as np
import pytest

from altsplit import make_splitting


A_EXAMPLE = np.array([
    [1.0, 0.0, 1.0],
    [-2.0, 4.0, -2.0],
    [0.0, 0.0, 0.0],
])

A_SHARP_EXPECTED = np.array([
    [1.0, 0.0, 1.0],
    [0.5, 0.25, 0.5],
    [0.0, 0.0, 0.0],
])

K_EXAMPLE = np.array([
    [0.5, 0.0, 0.5],
    [-6.0, 12.0, -6.0],
    [0.0, 0.0, 0.0],
])

U_EXAMPLE = np.array([
    [0.5, 0.0, 0.5],
    [-8.0, 16.0, -8.0],
    [0.0, 0.0, 0.0],
])

X_EXAMPLE = np.array([
    [0.8, 0.0, 0.8],
    [-4.0, 8.0, -4.0],
    [0.0, 0.0, 0.0],
])


@pytest.fixture(scope="session")
def example_matrices():
    return A_EXAMPLE, K_EXAMPLE, U_EXAMPLE, X_EXAMPLE


@pytest.fixture(scope="session")
def example_triple():
    """The three splittings [K-L, U-V, X-Y] of the worked example."""
    return [make_splitting(A_EXAMPLE, m) for m in (K_EXAMPLE, U_EXAMPLE, X_EXAMPLE)]
