import numpy as np
import pytest

from oriflag.orthogonal import RngStream, sample_rotation_matrices


@pytest.fixture(scope="session")
def so3_haar_million():
    """One shared batch of 10^6 Haar rotations for the distribution checks."""
    gen = RngStream(20240811).generator()
    q = sample_rotation_matrices(3, 1_000_000, gen)
    traces = np.einsum("nii->n", q)
    return {
        "traces": traces,
        "angles": np.arccos(np.clip((traces - 1.0) / 2.0, -1.0, 1.0)),
        "first_columns": q[:, :, 0].copy(),
    }
