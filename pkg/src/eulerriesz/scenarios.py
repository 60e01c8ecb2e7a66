"""Initial-condition builders keyed by scenario name.

single_mode       one cosine density mode, constant velocity
random_smooth     filtered-noise density and velocity
torus_decay       same initial data as random_smooth; the tag marks runs meant
                  for decay-rate measurement on an order-one box
bigbox_localized  mean-corrected Gaussian density bump, bump-shaped velocity
                  along the first axis (dispersive regime on a large box)
linear_only       single_mode data, integrated with the product terms switched
                  off
"""

from __future__ import annotations

import numpy as np

from .config import SimConfig
from .errors import ConfigError
from .grid import Grid, make_grid
from .randomfields import random_smooth_field, spawn_rngs
from .spectral import Field, field_from_values
from .state import State, make_state


def scenario_is_linear(name: str) -> bool:
    return name == "linear_only"


def grid_for(cfg: SimConfig) -> Grid:
    return make_grid(cfg.dimension, cfg.points_per_axis, cfg.box_length)


def _constant(grid: Grid, value: float) -> Field:
    return field_from_values(grid, np.full(grid.shape, float(value)))


def _single_mode_fields(cfg: SimConfig, grid: Grid) -> tuple[Field, tuple[Field, ...]]:
    mode = cfg.mode_vector()
    half = grid.n // 2
    for m in mode:
        if abs(m) >= half:
            raise ConfigError(
                f"ic_mode component {m} reaches the Nyquist index for n={grid.n}"
            )
    mesh = grid.meshgrid()
    phase = np.zeros(grid.shape)
    for j, m in enumerate(mode):
        phase += grid.kappa_min * m * mesh[j]
    h = field_from_values(grid, cfg.ic_amplitude * np.cos(phase))
    u = tuple(_constant(grid, v) for v in cfg.mean_velocity_vector())
    return h, u


def _random_fields(cfg: SimConfig, grid: Grid) -> tuple[Field, tuple[Field, ...]]:
    rngs = spawn_rngs(cfg.ic_seed, 1 + grid.dim)
    h = random_smooth_field(grid, rngs[0], cfg.ic_width, cfg.ic_amplitude)
    mean_vel = cfg.mean_velocity_vector()
    u = []
    for j in range(grid.dim):
        comp = random_smooth_field(grid, rngs[1 + j], cfg.ic_width, cfg.ic_amplitude)
        u.append(field_from_values(grid, comp.values + mean_vel[j]))
    return h, tuple(u)


def _bump_fields(cfg: SimConfig, grid: Grid) -> tuple[Field, tuple[Field, ...]]:
    mesh = grid.meshgrid()
    center = cfg.box_length / 2.0
    w = cfg.ic_bump_width_value
    r2 = np.zeros(grid.shape)
    for x in mesh:
        r2 += (x - center) ** 2
    bump = np.exp(-r2 / (2.0 * w * w))
    h_values = cfg.ic_amplitude * (bump - bump.mean())
    h = field_from_values(grid, h_values)
    mean_vel = cfg.mean_velocity_vector()
    u = []
    for j in range(grid.dim):
        base = cfg.ic_amplitude * bump if j == 0 else np.zeros(grid.shape)
        u.append(field_from_values(grid, base + mean_vel[j]))
    return h, tuple(u)


def build_initial_state(cfg: SimConfig, grid: Grid | None = None) -> State:
    """Initial State for cfg.scenario on the configured grid."""
    if grid is None:
        grid = grid_for(cfg)
    if cfg.scenario in ("single_mode", "linear_only"):
        h, u = _single_mode_fields(cfg, grid)
    elif cfg.scenario in ("random_smooth", "torus_decay"):
        h, u = _random_fields(cfg, grid)
    elif cfg.scenario == "bigbox_localized":
        h, u = _bump_fields(cfg, grid)
    else:
        raise ConfigError(f"unknown scenario '{cfg.scenario}'")
    return make_state(
        h,
        u,
        alpha=cfg.alpha,
        t=0.0,
        gamma=cfg.gamma,
        lam=cfg.lam,
        background=cfg.background,
    )
