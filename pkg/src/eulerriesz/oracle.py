"""Brute-force DFT oracle used to cross-check the FFT-based operators.

Everything here is computed with explicit O(n^{2d}) mode-by-mode sums and its
own index arithmetic, deliberately sharing no machinery with
:mod:`eulerriesz.spectral`.  Slow on purpose; meant for n <= 16.
"""

from __future__ import annotations

import math

import numpy as np


def _mode_number(index: int, n: int) -> int:
    return index if index < n // 2 else index - n


def oracle_transform(values: np.ndarray, length: float) -> np.ndarray:
    """Average-convention coefficients by direct summation."""
    n = values.shape[0]
    dim = values.ndim
    x = np.arange(n) * (length / n)
    coeffs = np.zeros(values.shape, dtype=np.complex128)
    k0 = 2.0 * math.pi / length
    for idx in np.ndindex(values.shape):
        phase = np.zeros(values.shape)
        for axis, i in enumerate(idx):
            m = _mode_number(i, n)
            shape = [1] * dim
            shape[axis] = n
            phase = phase + (k0 * m) * x.reshape(shape)
        coeffs[idx] = np.sum(values * np.exp(-1j * phase)) / values.size
    return coeffs


def oracle_inverse(coeffs: np.ndarray, length: float) -> np.ndarray:
    """Real samples from coefficients by direct summation."""
    n = coeffs.shape[0]
    dim = coeffs.ndim
    x = np.arange(n) * (length / n)
    values = np.zeros(coeffs.shape, dtype=np.complex128)
    k0 = 2.0 * math.pi / length
    for idx in np.ndindex(coeffs.shape):
        phase = np.zeros(coeffs.shape)
        for axis, i in enumerate(idx):
            m = _mode_number(i, n)
            shape = [1] * dim
            shape[axis] = n
            phase = phase + (k0 * m) * x.reshape(shape)
        values = values + coeffs[idx] * np.exp(1j * phase)
    return values.real


def oracle_apply_lambda(coeffs: np.ndarray, s: float, length: float) -> np.ndarray:
    """|kappa|^s multiplier applied mode by mode (zero mode -> 0 for s != 0)."""
    n = coeffs.shape[0]
    k0 = 2.0 * math.pi / length
    out = np.zeros_like(coeffs)
    for idx in np.ndindex(coeffs.shape):
        m = [_mode_number(i, n) for i in idx]
        mag = k0 * math.sqrt(sum(mi * mi for mi in m))
        if mag == 0.0:
            out[idx] = coeffs[idx] if s == 0.0 else 0.0
        else:
            out[idx] = coeffs[idx] * mag**s
    return out


def oracle_derivative(coeffs: np.ndarray, axis: int, length: float) -> np.ndarray:
    """i*kappa_axis multiplier with the Nyquist component dropped."""
    n = coeffs.shape[0]
    k0 = 2.0 * math.pi / length
    out = np.zeros_like(coeffs)
    for idx in np.ndindex(coeffs.shape):
        m = _mode_number(idx[axis], n)
        if m == -n // 2:
            m = 0
        out[idx] = coeffs[idx] * (1j * k0 * m)
    return out


def run_spectral_oracle(n: int, dims=(1, 2), seed: int = 0) -> list[tuple[str, float]]:
    """Compare every transform/multiplier against the direct sums.

    Returns ``(check name, max abs error)`` pairs; the library and the oracle
    apply the same documented conventions, so agreement should sit at rounding
    level (the acceptance gate asks for 1e-10).
    """
    from .spectral import (
        apply_lambda,
        divergence,
        field_from_values,
        gradient,
        inverse_transform,
        transform,
    )
    from .grid import make_grid

    rng = np.random.default_rng(seed)
    results: list[tuple[str, float]] = []
    for dim in dims:
        grid = make_grid(dim, n, 2.0 * math.pi)
        v = rng.standard_normal(grid.shape)
        v -= v.mean()  # zero-mean so negative orders are in-domain
        f = field_from_values(grid, v)

        c_lib = transform(f).data
        c_ora = oracle_transform(v, grid.length)
        results.append((f"d={dim} forward", float(np.abs(c_lib - c_ora).max())))

        back = inverse_transform(transform(f)).data
        results.append((f"d={dim} roundtrip", float(np.abs(back - v).max())))

        for s in (-1.5, -0.5, 0.5, 2.0):
            lib = inverse_transform(apply_lambda(f, s)).data
            ora = oracle_inverse(
                oracle_apply_lambda(c_ora, s, grid.length), grid.length
            )
            results.append((f"d={dim} lambda^{s:g}", float(np.abs(lib - ora).max())))

        grads = gradient(f)
        for axis in range(dim):
            lib = inverse_transform(grads[axis]).data
            ora = oracle_inverse(
                oracle_derivative(c_ora, axis, grid.length), grid.length
            )
            results.append((f"d={dim} grad_{axis}", float(np.abs(lib - ora).max())))

        comps = []
        oracle_sum = np.zeros(grid.shape, dtype=np.complex128)
        for axis in range(dim):
            w = rng.standard_normal(grid.shape)
            comps.append(field_from_values(grid, w))
            oracle_sum += oracle_derivative(
                oracle_transform(w, grid.length), axis, grid.length
            )
        lib = inverse_transform(divergence(tuple(comps))).data
        ora = oracle_inverse(oracle_sum, grid.length)
        results.append((f"d={dim} divergence", float(np.abs(lib - ora).max())))
    return results
