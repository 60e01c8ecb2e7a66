"""Empirical checks of the inequalities the decay argument leans on.

Each suite evaluates a ratio lhs/rhs over randomized smooth fields.  The two
interpolation suites and the Gagliardo-Nirenberg suite are exact Hoelder
consequences of the spectral sums, so their ratios can never exceed 1 (up to
rounding) and reach 1 on a single mode.  The commutator and Moser suites have
no sharp discrete constant; their reports are empirical envelopes.  The
adjoint suite checks an exact integration-by-parts cancellation through two
independent evaluation routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import multi_indices, multinomial
from .errors import DomainError
from .grid import Grid, make_grid
from .randomfields import filtered_noise, spawn_rngs
from .spectral import (
    Field,
    field_from_values,
    inverse_transform,
    linf_norm,
    sobolev_norm,
    SPECTRAL,
)
from .state import State, make_state

_TINY = 1e-300


def interpolation_ratio(
    f: Field, s0: float, s1: float, s2: float, homogeneous: bool = False
) -> float:
    """lhs/rhs for ||f||_{s1} <= ||f||_{s0}^{1-theta} ||f||_{s2}^theta."""
    if not (s0 < s1 < s2):
        raise DomainError(f"need s0 < s1 < s2, got {s0!r}, {s1!r}, {s2!r}")
    theta = (s1 - s0) / (s2 - s0)
    lhs = sobolev_norm(f, s1, homogeneous)
    n0 = sobolev_norm(f, s0, homogeneous)
    n2 = sobolev_norm(f, s2, homogeneous)
    rhs = n0 ** (1.0 - theta) * n2**theta
    return lhs / max(rhs, _TINY)


def gn_ratio(f: Field, s1: float, s2: float) -> float:
    """Homogeneous endpoint case ||Lambda^{s1} f|| <= ||f||^{1-th} ||Lambda^{s2} f||^th."""
    if not (0.0 < s1 < s2):
        raise DomainError(f"need 0 < s1 < s2, got {s1!r}, {s2!r}")
    theta = s1 / s2
    lhs = sobolev_norm(f, s1, homogeneous=True)
    n0 = sobolev_norm(f, 0.0, homogeneous=True)
    n2 = sobolev_norm(f, s2, homogeneous=True)
    rhs = n0 ** (1.0 - theta) * n2**theta
    return lhs / max(rhs, _TINY)


def _derivative_ladder_norm(f: Field, k: int) -> float:
    """sqrt(sum_{|a|=k} C(k,a) ||d^a f||^2), the multinomial derivative norm."""
    grid = f.grid
    c = f.coeffs
    total = 0.0
    for a in multi_indices(grid.dim, k):
        da = Field(grid, grid.deriv_multiplier(a) * c, SPECTRAL)
        total += multinomial(k, a) * sobolev_norm(da, 0.0) ** 2
    return math.sqrt(total)


def moser_ratio(f: Field, g: Field, k: int) -> float:
    """Product rule bound ||d^k(fg)|| <= C(||f||_inf ||d^k g|| + ||g||_inf ||d^k f||)."""
    if k < 1:
        raise DomainError(f"moser_ratio needs k >= 1, got {k}")
    grid = f.grid
    prod = field_from_values(grid, f.values * g.values)
    lhs = _derivative_ladder_norm(prod, k)
    rhs = linf_norm(f) * _derivative_ladder_norm(g, k) + linf_norm(g) * _derivative_ladder_norm(
        f, k
    )
    return lhs / max(rhs, _TINY)


def commutator_ratio(g: Field, f: Field, s: float) -> float:
    """Kato-Ponce style ratio for [Lambda^s, g] f.

    Numerator is the mean-free part of Lambda^s(gf) - g Lambda^s f (the mean
    carries no Lambda^s content); denominator is
    ||grad g||_inf ||Lambda^{s-1} f|| + ||Lambda^s g|| ||f||_inf.
    """
    if s < 1.0:
        raise DomainError(f"commutator_ratio needs s >= 1, got {s!r}")
    grid = g.grid
    w_s = grid.kappa_pow(s)
    prod = np.fft.fftn(g.values * f.values) / grid.size
    lam_prod = inverse_transform(Field(grid, w_s * prod, SPECTRAL)).values
    lam_f = inverse_transform(Field(grid, w_s * f.coeffs, SPECTRAL)).values
    comm = lam_prod - g.values * lam_f
    comm = comm - comm.mean()
    lhs = sobolev_norm(field_from_values(grid, comm), 0.0)

    grad_g = [
        inverse_transform(Field(grid, 1j * grid.kappa_deriv[j] * g.coeffs, SPECTRAL)).values
        for j in range(grid.dim)
    ]
    grad_g_inf = float(np.sqrt(sum(v * v for v in grad_g)).max())
    rhs = grad_g_inf * sobolev_norm(f, s - 1.0, homogeneous=True) + sobolev_norm(
        g, s, homogeneous=True
    ) * linf_norm(f)
    return lhs / max(rhs, _TINY)


def adjoint_pair(state: State, k: int) -> tuple[float, float]:
    """Two routes to the k-th order density/velocity cross pairing.

    Route a integrates (Lambda^{(alpha-d)/2} d^a grad h).(Lambda^{(d-alpha)/2}
    d^a u) in real space; route b moves the divergence onto the weighted
    velocity and integrates -d^a h . Lambda^{(alpha-d)/2} div(Lambda^{(d-alpha)/2}
    d^a u) as a spectral sum.  Integration by parts makes a = b exactly.
    """
    grid = state.grid
    alpha = state.alpha
    half = (alpha - grid.dim) / 2.0
    w_minus = grid.kappa_pow(half)
    w_plus = grid.kappa_pow(-half)
    hhat = state.h.coeffs
    quad = grid.volume / grid.size

    a_total = 0.0
    b_total = 0.0
    for a_idx in multi_indices(grid.dim, k):
        coeff = multinomial(k, a_idx)
        mult = grid.deriv_multiplier(a_idx)
        for j in range(grid.dim):
            uhat = state.u[j].coeffs
            left = inverse_transform(
                Field(grid, w_minus * mult * 1j * grid.kappa_deriv[j] * hhat, SPECTRAL)
            ).values
            right = inverse_transform(Field(grid, w_plus * mult * uhat, SPECTRAL)).values
            a_total += coeff * float(quad * np.sum(left * right))

            integrand = (
                np.conj(mult * hhat)
                * w_minus
                * (1j * grid.kappa_deriv[j])
                * (w_plus * mult * uhat)
            )
            b_total += -coeff * float(grid.volume * np.sum(integrand.real))
    return a_total, b_total


@dataclass(frozen=True)
class RatioReport:
    suite: str
    trials: int
    ratios: tuple[float, ...]
    max_ratio: float
    mean_ratio: float

    def rows(self) -> list[str]:
        out = ["trial,ratio"]
        out.extend(f"{i},{r:.17g}" for i, r in enumerate(self.ratios))
        return out


SUITES = ("interp-inhom", "interp-homog", "gn", "commutator", "moser", "adjoint")

_WIDTHS = (2.0, 4.0, 8.0)


def _default_grid() -> Grid:
    return make_grid(2, 32, 2.0 * math.pi)


def run_suite(
    name: str, trials: int = 100, seed: int = 0, grid: Grid | None = None
) -> RatioReport:
    """One named suite; the adjoint ratios are relative mismatches |a-b|/|a|."""
    if name not in SUITES:
        raise DomainError(f"unknown suite '{name}'; choose from {', '.join(SUITES)}")
    if grid is None:
        grid = _default_grid()
    rngs = spawn_rngs(seed, trials)
    ratios = []
    for i in range(trials):
        rng = rngs[i]
        width = _WIDTHS[i % len(_WIDTHS)]
        if name == "interp-inhom" or name == "interp-homog":
            f = filtered_noise(grid, rng, width)
            s0 = float(rng.uniform(0.0, 1.0))
            s2 = float(rng.uniform(s0 + 0.5, s0 + 3.0))
            s1 = float(rng.uniform(s0 + 0.05 * (s2 - s0), s2 - 0.05 * (s2 - s0)))
            ratios.append(
                interpolation_ratio(f, s0, s1, s2, homogeneous=(name == "interp-homog"))
            )
        elif name == "gn":
            f = filtered_noise(grid, rng, width)
            s2 = float(rng.uniform(0.5, 3.5))
            s1 = float(rng.uniform(0.05 * s2, 0.95 * s2))
            ratios.append(gn_ratio(f, s1, s2))
        elif name == "commutator":
            g = filtered_noise(grid, rng, width)
            f = filtered_noise(grid, rng, width)
            s = float(rng.uniform(1.0, 3.0))
            ratios.append(commutator_ratio(g, f, s))
        elif name == "moser":
            f = filtered_noise(grid, rng, width)
            g = filtered_noise(grid, rng, width)
            k = int(rng.integers(1, 4))
            ratios.append(moser_ratio(f, g, k))
        else:  # adjoint
            amp = 0.1
            h_raw = filtered_noise(grid, rng, width)
            peak = float(np.abs(h_raw.values).max())
            h = field_from_values(grid, h_raw.values * (amp / max(peak, _TINY)))
            u = tuple(filtered_noise(grid, rng, width) for _ in range(grid.dim))
            state = make_state(h, u, alpha=1.0)
            k = int(rng.integers(0, 5))
            a, b = adjoint_pair(state, k)
            scale = max(abs(a), abs(b), _TINY)
            ratios.append(abs(a - b) / scale)
    arr = np.array(ratios, dtype=np.float64)
    return RatioReport(
        suite=name,
        trials=trials,
        ratios=tuple(float(r) for r in arr),
        max_ratio=float(arr.max()) if len(arr) else float("nan"),
        mean_ratio=float(arr.mean()) if len(arr) else float("nan"),
    )


def run_all_suites(trials: int = 100, seed: int = 0) -> list[RatioReport]:
    return [run_suite(name, trials, seed + i) for i, name in enumerate(SUITES)]
