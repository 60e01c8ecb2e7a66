"""Monitored functionals: energies, momenta, Sobolev ladders, cross terms.

Conventions used throughout (box volume V = L^d, density rho = background+h):

    E_total  = 1/2 int rho|u|^2 + lam/2 int h Lambda^{alpha-d} h
    D_diss   = gamma int rho|u|^2
    m_c      = (1/(background*V)) int rho u          (mean-corrected momentum)
    E_mod    = E_total with u replaced by u - m_c
    D_rate   = gamma int rho|u - m_c|^2
    E_sigma  = E_mod + sigma int (u - m_c) . grad (-Delta)^{-1} h

Weighted derivative ladders, with s2 = (d-alpha)/2 and multi-indices a:

    ||U_k||^2   = V sum_kappa |kappa|^{d-alpha} |kappa~|^{2k} |u_hat|^2
    B_k^2       = int rho^{-1} sum_{|a|=k} C(k,a) (d^a h)^2
    tildeH_m    = sum_{k=1..m} B_k
    hypo_k      = sum_{|a|=k} C(k,a) int rho^{-1} (d^a grad h).(Lambda^{d-alpha} d^a u)
    Y_m         = int rho|u|^2 + sum_{k<=m} ||U_k||^2 + sum_{1<=k<=m} B_k^2
                  + eta1 sum_{k<=m-1} hypo_k
    Ybar_m      = sum_{1<=k<=m} (||U_k||^2 + B_k^2) + eta1 sum_{k<=m-1} hypo_k
    F_m         = Y_m + ||h||_{L2}^2 + ||h||_{Hdot^{-s2}}^2
    Z_m         = F_m + ||h||_{Hdot^{-1+s2}}^2 + ||u||_{Hdot^{d-alpha-1}}^2
                  - eta1 * caseA_cross
    caseA_cross = int h Lambda^{d-alpha-2} div u
    neg_cross   = int (Lambda^{-s} grad h).(Lambda^{-s} u)
    X_m         = ||h||_{H^m}^2 + ||u||_{H^{m+s2}}^2 + ||h||_{Hdot^{-s2}}^2

C(k,a) is the multinomial coefficient, so the B_k and U_k ladders weight mixed
derivatives identically and the adjoint cancellation between them is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid
from .state import State


def multi_indices(dim: int, order: int) -> list[tuple[int, ...]]:
    """All multi-indices a >= 0 with |a| = order, lexicographic."""
    if dim == 1:
        return [(order,)]
    out = []
    for first in range(order, -1, -1):
        for rest in multi_indices(dim - 1, order - first):
            out.append((first,) + rest)
    return out


def multinomial(order: int, a: tuple[int, ...]) -> float:
    c = math.factorial(order)
    for ai in a:
        c //= math.factorial(ai)
    return float(c)


@dataclass(frozen=True)
class DiagnosticsRecord:
    t: float
    E_total: float
    D_diss: float
    X_m: float
    tildeH_m: float
    Y_m: float
    Ybar_m: float
    F_m: float
    Z_m: float
    E_mod: float
    E_sigma: float
    D_rate: float
    mc_norm: float
    min_density: float
    u_L2: float
    h_L2: float
    h_Hneg_half: float
    u_Hneg_s: float
    h_Hneg_s: float
    h_Hneg_caseA: float
    u_Hneg_caseA: float
    neg_cross: float
    caseA_cross: float
    dt_used: float
    # extras kept in memory, not serialized
    mc: tuple[float, ...] = field(default=(), compare=False)
    mc_raw: tuple[float, ...] = field(default=(), compare=False)
    hypo_cross: tuple[float, ...] = field(default=(), compare=False)
    u_dev_L2: float = field(default=float("nan"), compare=False)


def _ifft_real(grid: Grid, chat: np.ndarray) -> np.ndarray:
    return np.fft.ifftn(chat * grid.size).real


def _spectral_sq(grid: Grid, weight: np.ndarray, chat: np.ndarray) -> float:
    return float(grid.volume * np.sum(weight * (chat.real**2 + chat.imag**2)))


def momentum(state: State) -> tuple[float, ...]:
    """int rho u, componentwise."""
    grid = state.grid
    rho = state.density_values()
    w = grid.volume / grid.size
    return tuple(float(w * np.sum(rho * comp.values)) for comp in state.u)


def mean_corrected_momentum(state: State) -> tuple[float, ...]:
    """m_c = int rho u / (background * V); rho (u - m_c) integrates to 0."""
    raw = momentum(state)
    scale = state.background * state.grid.volume
    return tuple(m / scale for m in raw)


def interaction_energy(state: State) -> float:
    grid = state.grid
    c = state.h.coeffs
    w = grid.kappa_pow(state.alpha - grid.dim)
    return 0.5 * state.lam * _spectral_sq(grid, w, c)


def kinetic_energy(state: State, shift: tuple[float, ...] | None = None) -> float:
    grid = state.grid
    rho = state.density_values()
    w = grid.volume / grid.size
    total = 0.0
    for j, comp in enumerate(state.u):
        v = comp.values if shift is None else comp.values - shift[j]
        total += float(w * np.sum(rho * v * v))
    return 0.5 * total


def total_energy(state: State) -> float:
    return kinetic_energy(state) + interaction_energy(state)


def dissipation(state: State, shift: tuple[float, ...] | None = None) -> float:
    return 2.0 * state.gamma * kinetic_energy(state, shift)


def modulated_energy(state: State) -> float:
    return kinetic_energy(state, mean_corrected_momentum(state)) + interaction_energy(state)


def sigma_energy(state: State, sigma: float) -> float:
    """E_mod plus the sigma-weighted drift/potential cross term."""
    grid = state.grid
    mc = mean_corrected_momentum(state)
    cross = 0.0
    pot = grid.kappa_pow(-2.0) * state.h.coeffs
    w = grid.volume / grid.size
    for j, comp in enumerate(state.u):
        gradw = _ifft_real(grid, 1j * grid.kappa_deriv[j] * pot)
        cross += float(w * np.sum((comp.values - mc[j]) * gradw))
    return modulated_energy(state) + sigma * cross


def weighted_velocity_sq(state: State, k: int) -> float:
    """||U_k||^2 = V sum |kappa|^{d-alpha} |kappa~|^{2k} sum_j |u_hat_j|^2."""
    grid = state.grid
    w = grid.kappa_pow(grid.dim - state.alpha) * grid.kappa_deriv_mag ** (2 * k)
    total = 0.0
    for comp in state.u:
        total += _spectral_sq(grid, w, comp.coeffs)
    return total


def weighted_density_sq(state: State, k: int) -> float:
    """B_k^2 = int rho^{-1} sum_{|a|=k} C(k,a) (d^a h)^2."""
    grid = state.grid
    rho_inv = 1.0 / state.density_values()
    w = grid.volume / grid.size
    hhat = state.h.coeffs
    total = 0.0
    for a in multi_indices(grid.dim, k):
        dah = _ifft_real(grid, grid.deriv_multiplier(a) * hhat)
        total += multinomial(k, a) * float(w * np.sum(rho_inv * dah * dah))
    return total


def hypo_cross(state: State, k: int) -> float:
    """sum_{|a|=k} C(k,a) int rho^{-1} (d^a grad h).(Lambda^{d-alpha} d^a u)."""
    grid = state.grid
    rho_inv = 1.0 / state.density_values()
    w = grid.volume / grid.size
    hhat = state.h.coeffs
    lam_w = grid.kappa_pow(grid.dim - state.alpha)
    total = 0.0
    for a in multi_indices(grid.dim, k):
        coeff = multinomial(k, a)
        mult = grid.deriv_multiplier(a)
        for j in range(grid.dim):
            dagh = _ifft_real(grid, 1j * grid.kappa_deriv[j] * mult * hhat)
            dau = _ifft_real(grid, lam_w * mult * state.u[j].coeffs)
            total += coeff * float(w * np.sum(rho_inv * dagh * dau))
    return total


def sobolev_x(state: State, m: int) -> float:
    """X_m, the inhomogeneous control norm."""
    grid = state.grid
    s2 = (grid.dim - state.alpha) / 2.0
    one_plus = 1.0 + grid.kappa_sq
    hh = state.h.coeffs
    total = _spectral_sq(grid, one_plus**m, hh)
    wu = one_plus ** (m + s2)
    for comp in state.u:
        total += _spectral_sq(grid, wu, comp.coeffs)
    neg = grid.kappa_pow(-2.0 * s2)
    total += _spectral_sq(grid, neg, hh)
    return total


def hypocoercive_y(state: State, m: int, eta1: float) -> float:
    grid = state.grid
    rho = state.density_values()
    w = grid.volume / grid.size
    kin = 0.0
    for comp in state.u:
        kin += float(w * np.sum(rho * comp.values**2))
    total = kin
    for k in range(0, m + 1):
        total += weighted_velocity_sq(state, k)
    for k in range(1, m + 1):
        total += weighted_density_sq(state, k)
    for k in range(0, m):
        total += eta1 * hypo_cross(state, k)
    return total


def case_a_cross(state: State) -> float:
    """int h Lambda^{d-alpha-2} div u (spectral sum; zero mode drops)."""
    grid = state.grid
    div = np.zeros(grid.shape, dtype=np.complex128)
    for j, comp in enumerate(state.u):
        div += 1j * grid.kappa_deriv[j] * comp.coeffs
    w = grid.kappa_pow(grid.dim - state.alpha - 2.0)
    return float(grid.volume * np.sum((np.conj(state.h.coeffs) * w * div).real))


def negative_cross(state: State, s: float) -> float:
    """int (Lambda^{-s} grad h).(Lambda^{-s} u) as a spectral sum."""
    grid = state.grid
    w = grid.kappa_pow(-2.0 * s)
    total = 0.0
    hh = state.h.coeffs
    for j, comp in enumerate(state.u):
        gh = 1j * grid.kappa_deriv[j] * hh
        total += float(grid.volume * np.sum(w * (np.conj(gh) * comp.coeffs).real))
    return total


def _hdot_norm(grid: Grid, chat: np.ndarray, s: float) -> float:
    return math.sqrt(max(_spectral_sq(grid, grid.kappa_pow(2.0 * s), chat), 0.0))


def _hdot_norm_vector(grid: Grid, comps, s: float) -> float:
    total = 0.0
    w = grid.kappa_pow(2.0 * s)
    for comp in comps:
        total += _spectral_sq(grid, w, comp.coeffs)
    return math.sqrt(max(total, 0.0))


def collect_diagnostics(
    state: State,
    m_index: int = 4,
    s_neg: float | None = None,
    eta1: float = 0.05,
    sigma: float = 0.05,
    dt_used: float = float("nan"),
) -> DiagnosticsRecord:
    """One full functional snapshot of a state."""
    grid = state.grid
    alpha = state.alpha
    d = grid.dim
    s2 = (d - alpha) / 2.0
    s = alpha / 2.0 if s_neg is None else float(s_neg)

    rho = state.density_values()
    min_density = float(rho.min())
    w = grid.volume / grid.size

    kin = 0.0
    u_sq = 0.0
    for comp in state.u:
        kin += float(w * np.sum(rho * comp.values**2))
        u_sq += float(w * np.sum(comp.values**2))
    inter = interaction_energy(state)
    E_total = 0.5 * kin + inter
    D_diss = state.gamma * kin

    mc_raw = momentum(state)
    scale = state.background * grid.volume
    mc = tuple(m / scale for m in mc_raw)
    mc_norm = math.sqrt(sum(m * m for m in mc))

    kin_dev = 0.0
    u_dev_sq = 0.0
    for j, comp in enumerate(state.u):
        dev = comp.values - mc[j]
        kin_dev += float(w * np.sum(rho * dev * dev))
        u_dev_sq += float(w * np.sum(dev * dev))
    E_mod = 0.5 * kin_dev + inter
    D_rate = state.gamma * kin_dev

    pot = grid.kappa_pow(-2.0) * state.h.coeffs
    cross = 0.0
    for j, comp in enumerate(state.u):
        gradw = _ifft_real(grid, 1j * grid.kappa_deriv[j] * pot)
        cross += float(w * np.sum((comp.values - mc[j]) * gradw))
    E_sigma = E_mod + sigma * cross

    X_m = sobolev_x(state, m_index)

    b_norms = [math.sqrt(max(weighted_density_sq(state, k), 0.0)) for k in range(1, m_index + 1)]
    tildeH_m = sum(b_norms)
    u_ladder = [weighted_velocity_sq(state, k) for k in range(0, m_index + 1)]
    hypo = tuple(hypo_cross(state, k) for k in range(0, m_index))

    Y_m = kin + sum(u_ladder) + sum(b * b for b in b_norms) + eta1 * sum(hypo)
    Ybar_m = (
        sum(u_ladder[1:]) + sum(b * b for b in b_norms) + eta1 * sum(hypo)
    )

    hh = state.h.coeffs
    h_L2_sq = _spectral_sq(grid, np.ones(grid.shape), hh)
    h_neg_half = _hdot_norm(grid, hh, -s2)
    F_m = Y_m + h_L2_sq + h_neg_half**2

    h_caseA = _hdot_norm(grid, hh, -1.0 + s2)
    u_caseA = _hdot_norm_vector(grid, state.u, d - alpha - 1.0)
    cA = case_a_cross(state)
    Z_m = F_m + h_caseA**2 + u_caseA**2 - eta1 * cA

    return DiagnosticsRecord(
        t=state.t,
        E_total=E_total,
        D_diss=D_diss,
        X_m=X_m,
        tildeH_m=tildeH_m,
        Y_m=Y_m,
        Ybar_m=Ybar_m,
        F_m=F_m,
        Z_m=Z_m,
        E_mod=E_mod,
        E_sigma=E_sigma,
        D_rate=D_rate,
        mc_norm=mc_norm,
        min_density=min_density,
        u_L2=math.sqrt(max(u_sq, 0.0)),
        h_L2=math.sqrt(max(h_L2_sq, 0.0)),
        h_Hneg_half=h_neg_half,
        u_Hneg_s=_hdot_norm_vector(grid, state.u, -s),
        h_Hneg_s=_hdot_norm(grid, hh, -s),
        h_Hneg_caseA=h_caseA,
        u_Hneg_caseA=u_caseA,
        neg_cross=negative_cross(state, s),
        caseA_cross=cA,
        dt_used=dt_used,
        mc=mc,
        mc_raw=mc_raw,
        hypo_cross=hypo,
        u_dev_L2=math.sqrt(max(u_dev_sq, 0.0)),
    )
