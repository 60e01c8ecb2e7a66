"""System state: neutral density perturbation plus velocity on one grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .grid import Grid
from .spectral import Field, field_from_values, zero_mean_project


def alpha_window(dim: int) -> tuple[float, float]:
    """Admissible open interval for the interaction exponent alpha."""
    return (max(dim - 2.0, 0.0), float(dim))


@dataclass
class State:
    """Fields (h, u) at time t together with the model constants.

    ``h`` is the zero-mean deviation of the density from ``background``; the
    physical density is ``background + h`` and must stay positive.  ``u`` is a
    d-tuple of velocity components on the same grid.
    """

    h: Field
    u: tuple[Field, ...]
    t: float
    alpha: float
    gamma: float = 1.0
    lam: float = 1.0
    background: float = 1.0

    @property
    def grid(self) -> Grid:
        return self.h.grid

    def density_values(self) -> np.ndarray:
        return self.background + self.h.values

    def min_density(self) -> float:
        return float(self.density_values().min())

    def with_time(self, t: float) -> "State":
        return replace(self, t=float(t))


def make_state(
    h: Field,
    u: tuple[Field, ...],
    alpha: float,
    t: float = 0.0,
    gamma: float = 1.0,
    lam: float = 1.0,
    background: float = 1.0,
) -> State:
    """Validate invariants and build a :class:`State`.

    Checks the alpha window, component count, neutrality of h (a tiny mean is
    projected away, a large one is rejected) and strict positivity of the
    density.
    """
    grid = h.grid
    lo, hi = alpha_window(grid.dim)
    if not (lo < alpha < hi):
        raise DomainError(
            f"alpha={alpha:g} outside the admissible window ({lo:g}, {hi:g}) "
            f"for d={grid.dim}"
        )
    if len(u) != grid.dim:
        raise DomainError(f"velocity needs {grid.dim} components, got {len(u)}")
    for comp in u:
        if comp.grid != grid:
            raise DomainError("velocity component on a different grid")

    hv = h.values
    scale = float(np.abs(hv).max())
    mean = float(hv.mean())
    if scale > 0 and abs(mean) > 1e-8 * scale:
        raise DomainError(
            f"h is not neutral: mean {mean:g} vs amplitude {scale:g}"
        )
    h = zero_mean_project(field_from_values(grid, hv))

    state = State(
        h=h,
        u=tuple(u),
        t=float(t),
        alpha=float(alpha),
        gamma=float(gamma),
        lam=float(lam),
        background=float(background),
    )
    mind = state.min_density()
    if not (mind > 0.0 and math.isfinite(mind)):
        raise DomainError(f"density not positive: min(background + h) = {mind:g}")
    return state
