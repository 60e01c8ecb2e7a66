"""Fields on the torus and the Fourier-multiplier operators acting on them.

Coefficients use the *average* convention: ``c_m = |Omega|^{-1} int f(x)
exp(-i kappa_m . x) dx``, realized discretely as ``fftn(values) / n^d``.
With this normalization Parseval reads ``int |f|^2 dx = |Omega| * sum_m
|c_m|^2`` and the mean of ``f`` is exactly ``c_0``.

A :class:`Field` is an immutable pairing of a grid with a sample array in one
of two representations ("real" or "spectral").  Operators are module-level
functions that accept either representation and return new fields; anything
that is by nature spectral (multipliers, derivatives) returns a spectral
field, transforms convert explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .grid import Grid

REAL = "real"
SPECTRAL = "spectral"

#: relative size below which the zero-mode coefficient counts as zero-mean
ZERO_MEAN_RTOL = 1e-13


@dataclass(frozen=True)
class Field:
    """Scalar field: grid + sample array + representation tag."""

    grid: Grid
    data: np.ndarray
    space: str

    def __post_init__(self):
        if self.space not in (REAL, SPECTRAL):
            raise ValueError(f"unknown representation {self.space!r}")
        if self.data.shape != self.grid.shape:
            raise ValueError(
                f"data shape {self.data.shape} does not match grid {self.grid.shape}"
            )

    @property
    def values(self) -> np.ndarray:
        """Real-space samples (transforms on demand)."""
        if self.space == REAL:
            return self.data
        return inverse_transform(self).data

    @property
    def coeffs(self) -> np.ndarray:
        """Spectral coefficients (transforms on demand)."""
        if self.space == SPECTRAL:
            return self.data
        return transform(self).data

    def is_zero_mean(self, rtol: float = ZERO_MEAN_RTOL) -> bool:
        c = self.coeffs
        peak = np.abs(c).max()
        if peak == 0.0:
            return True
        return abs(c[(0,) * self.grid.dim]) <= rtol * peak


VectorField = tuple  # d-tuple of Field


def field_from_values(grid: Grid, values: np.ndarray) -> Field:
    """Wrap real-space samples (float64, C-order) as a Field."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    return Field(grid, arr, REAL)


def field_from_coeffs(grid: Grid, coeffs: np.ndarray) -> Field:
    """Wrap spectral coefficients as a Field.

    Coefficients of real fields must be Hermitian-symmetric; this is the
    caller's responsibility (inverse_transform takes the real part).
    """
    arr = np.ascontiguousarray(coeffs, dtype=np.complex128)
    return Field(grid, arr, SPECTRAL)


def transform(f: Field) -> Field:
    """Forward transform to average-convention coefficients."""
    if f.space == SPECTRAL:
        return f
    c = np.fft.fftn(f.data) / f.grid.size
    return Field(f.grid, c, SPECTRAL)


def inverse_transform(f: Field) -> Field:
    """Inverse transform back to real samples.

    The imaginary part is discarded: coefficients of physical fields are
    Hermitian-symmetric so it only ever carries rounding noise.
    """
    if f.space == REAL:
        return f
    v = np.fft.ifftn(f.data * f.grid.size).real
    return Field(f.grid, np.ascontiguousarray(v), REAL)


def apply_lambda(f: Field, s: float) -> Field:
    """Fractional operator Lambda^s = (-Laplace)^{s/2} as the |kappa|^s multiplier.

    The zero mode is annihilated for every s != 0; for s < 0 the input must be
    zero-mean (the inverse operator is undefined on constants).
    """
    s = float(s)
    c = f.coeffs
    if s < 0.0 and not f.is_zero_mean():
        raise DomainError(
            f"Lambda^{s:g} requires a zero-mean field; zero-mode coefficient "
            f"is {c[(0,) * f.grid.dim]!r}"
        )
    if s == 0.0:
        return field_from_coeffs(f.grid, c)
    return Field(f.grid, c * f.grid.kappa_pow(s), SPECTRAL)


def gradient(f: Field) -> tuple[Field, ...]:
    """Spectral gradient; each component uses i*kappa_j with Nyquist zeroed."""
    c = f.coeffs
    return tuple(
        Field(f.grid, 1j * kj * c, SPECTRAL) for kj in f.grid.kappa_deriv
    )


def divergence(v: Sequence[Field]) -> Field:
    """Spectral divergence of a d-tuple of fields (same Nyquist convention)."""
    grid = v[0].grid
    if len(v) != grid.dim:
        raise ValueError(f"expected {grid.dim} components, got {len(v)}")
    c = np.zeros(grid.shape, dtype=np.complex128)
    for j, comp in enumerate(v):
        c += 1j * grid.kappa_deriv[j] * comp.coeffs
    return Field(grid, c, SPECTRAL)


def dealias(f: Field) -> Field:
    """2/3-rule projection: zero every mode with any axis index > n/3."""
    return Field(f.grid, f.coeffs * f.grid.dealias_mask, SPECTRAL)


def zero_mean_project(f: Field) -> Field:
    """Remove the mean (zero-mode coefficient)."""
    if f.space == REAL:
        return Field(f.grid, f.data - f.data.mean(), REAL)
    c = f.data.copy()
    c[(0,) * f.grid.dim] = 0.0
    return Field(f.grid, c, SPECTRAL)


# -- quadrature and norms ----------------------------------------------------------


def integral(f: Field) -> float:
    """int f dx over the torus (exact for trigonometric data)."""
    if f.space == REAL:
        return float(f.data.mean() * f.grid.volume)
    return float(f.data[(0,) * f.grid.dim].real * f.grid.volume)


def mean(f: Field) -> float:
    return integral(f) / f.grid.volume

def inner(f: Field, g: Field) -> float:
    """L^2 inner product int f g dx by quadrature."""
    fv, gv = f.values, g.values
    return float(np.vdot(fv, gv).real * f.grid.volume / f.grid.size)


def l2_norm(f: Field) -> float:
    if f.space == REAL:
        return float(
            np.sqrt(np.vdot(f.data, f.data).real * f.grid.volume / f.grid.size)
        )
    return float(np.sqrt(f.grid.volume * np.vdot(f.data, f.data).real))


def linf_norm(f: Field) -> float:
    return float(np.abs(f.values).max())


def _spectral_weight(grid: Grid, s: float, homogeneous: bool) -> np.ndarray:
    if homogeneous:
        w = grid.kappa_pow(2.0 * s).copy()
        w[(0,) * grid.dim] = 0.0  # homogeneous norms always exclude the mean
        return w
    return (1.0 + grid.kappa_sq) ** s


def sobolev_norm(
    f: Field | Sequence[Field], s: float, homogeneous: bool = False
) -> float:
    """Sobolev norm of a scalar field or a tuple of components.

    Inhomogeneous: ``sqrt(|Omega| sum (1+|kappa|^2)^s |c|^2)`` over all modes.
    Homogeneous:   ``sqrt(|Omega| sum_{m != 0} |kappa|^{2s} |c|^2)``.
    Vector inputs sum the squares of their components.
    """
    comps: Iterable[Field] = (f,) if isinstance(f, Field) else tuple(f)
    total = 0.0
    w = None
    for comp in comps:
        if w is None:
            w = _spectral_weight(comp.grid, float(s), homogeneous)
            vol = comp.grid.volume
        c = comp.coeffs
        total += float(np.sum(w * (c.real**2 + c.imag**2)))
    return float(np.sqrt(vol * total))


def assert_hermitian(f: Field, tol: float = 1e-12) -> None:
    """Raise if the coefficients are not Hermitian-symmetric (testing aid)."""
    c = f.coeffs
    n = f.grid.n
    idx = tuple(np.ix_(*[(-np.arange(n)) % n for _ in range(f.grid.dim)]))
    err = np.abs(c - np.conj(c[idx])).max()
    scale = max(np.abs(c).max(), 1e-300)
    if err > tol * scale:
        raise AssertionError(f"coefficients not Hermitian: rel err {err / scale:g}")
