"""Reproducible smooth random fields for initial data and test states.

White noise on the grid, low-pass filtered with a Gaussian spectral envelope
exp(-|kappa|^2/width^2).  The zero mode and the Nyquist planes are removed, so
every generated field is zero-mean, band-limited away from the grid edge, and
exactly Hermitian.
"""

from __future__ import annotations

import numpy as np

from .grid import Grid
from .spectral import Field, field_from_values, transform, inverse_transform, SPECTRAL


def spawn_rngs(master_seed: int, count: int) -> list[np.random.Generator]:
    """Independent child generators from one master seed."""
    seq = np.random.SeedSequence(master_seed)
    return [np.random.default_rng(child) for child in seq.spawn(count)]


def filtered_noise(grid: Grid, rng: np.random.Generator, width: float) -> Field:
    """Zero-mean Nyquist-free field with spectral envelope exp(-|k|^2/w^2)."""
    noise = rng.standard_normal(grid.shape)
    c = transform(field_from_values(grid, noise)).data.copy()
    c *= np.exp(-grid.kappa_sq / (width * width))
    c[(0,) * grid.dim] = 0.0
    c[grid.nyquist_mask] = 0.0
    return inverse_transform(Field(grid, c, SPECTRAL))


def random_smooth_field(
    grid: Grid, rng: np.random.Generator, width: float, amplitude: float
) -> Field:
    """Filtered noise rescaled to sup-norm `amplitude`."""
    f = filtered_noise(grid, rng, width)
    peak = float(np.abs(f.values).max())
    if peak == 0.0:
        return f
    return field_from_values(grid, f.values * (amplitude / peak))
