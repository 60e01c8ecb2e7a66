"""Uniform periodic grid on the d-torus with FFT-ordered wavenumbers.

Conventions used throughout the package:

* the domain is ``[0, L)^d`` sampled at ``n`` points per axis (same n on
  every axis), volume ``|Omega| = L^d``;
* integer modes follow the numpy FFT layout, i.e. axis index ``j`` carries
  mode number ``m = j`` for ``j < n/2`` and ``m = j - n`` otherwise, so the
  lattice is ``{-n/2, ..., n/2 - 1}`` per axis;
* the physical wavevector is ``kappa = (2*pi/L) * m``;
* single derivatives use ``i*kappa_j`` with the Nyquist component
  (``m_j = -n/2``) zeroed, the standard choice for odd-symmetry multipliers;
  radial multipliers ``|kappa|^s`` keep the Nyquist plane.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError


class Grid:
    """Immutable description of the sampling lattice plus cached multipliers.

    Build instances through :func:`make_grid`, which validates the inputs.
    Multiplier arrays are computed once and shared by every operator, which
    keeps the per-step cost down to the FFTs themselves.
    """

    def __init__(self, dim: int, n: int, length: float):
        self.dim = dim
        self.n = n
        self.length = float(length)
        self.shape = (n,) * dim
        self.size = n**dim
        self.volume = self.length**dim
        self.dx = self.length / n
        self.kappa_min = 2.0 * math.pi / self.length

        # 1d integer modes in FFT order, e.g. n=8 -> [0,1,2,3,-4,-3,-2,-1]
        modes = np.fft.fftfreq(n, d=1.0 / n).astype(np.int64)
        self.modes = modes
        # Nyquist-zeroed copy used by odd (derivative) multipliers
        modes_deriv = modes.copy()
        modes_deriv[modes == -n // 2] = 0
        self.modes_deriv = modes_deriv

        mesh = np.meshgrid(*([modes] * dim), indexing="ij")
        self.mode_mesh = tuple(m.astype(np.float64) for m in mesh)

        k0 = self.kappa_min
        self.kappa_mesh = tuple(k0 * m for m in self.mode_mesh)
        # derivative wavenumbers: kappa_j with the Nyquist plane of axis j zeroed
        dmesh = np.meshgrid(*([modes_deriv] * dim), indexing="ij")
        self.kappa_deriv = tuple(k0 * m.astype(np.float64) for m in dmesh)

        self.kappa_sq = sum(k * k for k in self.kappa_mesh)
        self.kappa_mag = np.sqrt(self.kappa_sq)
        self.kappa_deriv_sq = sum(k * k for k in self.kappa_deriv)
        self.kappa_deriv_mag = np.sqrt(self.kappa_deriv_sq)

        int_mesh = np.meshgrid(*([modes] * dim), indexing="ij")
        self.nyquist_mask = np.zeros(self.shape, dtype=bool)
        for m in int_mesh:
            self.nyquist_mask |= m == -n // 2

        # 2/3-rule keep mask: drop modes with any axis index of magnitude > n/3
        keep = np.ones(self.shape, dtype=bool)
        for m in int_mesh:
            keep &= 3 * np.abs(m) <= n
        self.dealias_mask = keep

        # real-space sample coordinates, one 1d array per axis
        self.x = np.arange(n) * self.dx

        self._pow_cache: dict[float, np.ndarray] = {}
        self._deriv_cache: dict[tuple[int, ...], np.ndarray] = {}

    # -- cached multiplier helpers -------------------------------------------------

    def kappa_pow(self, s: float) -> np.ndarray:
        """Radial multiplier |kappa|^s with the zero mode mapped to 0 (s != 0)."""
        s = float(s)
        cached = self._pow_cache.get(s)
        if cached is not None:
            return cached
        if s == 0.0:
            w = np.ones(self.shape)
        else:
            with np.errstate(divide="ignore"):
                w = self.kappa_mag**s
            w[(0,) * self.dim] = 0.0
        self._pow_cache[s] = w
        return w

    def deriv_multiplier(self, k: tuple[int, ...]) -> np.ndarray:
        """Complex multiplier of the multi-index derivative d^k (Nyquist zeroed)."""
        if len(k) != self.dim:
            raise ValueError(f"multi-index length {len(k)} != dim {self.dim}")
        key = tuple(int(ki) for ki in k)
        cached = self._deriv_cache.get(key)
        if cached is not None:
            return cached
        mult = np.ones(self.shape, dtype=np.complex128)
        for axis, ki in enumerate(key):
            if ki:
                mult = mult * (1j * self.kappa_deriv[axis]) ** ki
        self._deriv_cache[key] = mult
        return mult

    def kappa(self, mode: tuple[int, ...] | np.ndarray) -> np.ndarray:
        """Physical wavevector of an integer mode vector."""
        m = np.asarray(mode, dtype=np.float64)
        if m.shape != (self.dim,):
            raise ValueError(f"expected a length-{self.dim} mode vector")
        return self.kappa_min * m

    def mode_index(self, mode: tuple[int, ...]) -> tuple[int, ...]:
        """Array index of an integer mode vector in the FFT layout."""
        idx = []
        for m in mode:
            m = int(m)
            if not -self.n // 2 <= m < self.n // 2:
                raise ValueError(f"mode component {m} outside [-n/2, n/2)")
            idx.append(m % self.n)
        return tuple(idx)

    def kappa_max(self) -> float:
        """Largest attained |kappa| (the corner mode (-n/2, ..., -n/2))."""
        return self.kappa_min * (self.n / 2) * math.sqrt(self.dim)

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        """Real-space coordinate mesh, one array per axis ('ij' indexing)."""
        return tuple(np.meshgrid(*([self.x] * self.dim), indexing="ij"))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Grid(dim={self.dim}, n={self.n}, length={self.length:g})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Grid)
            and self.dim == other.dim
            and self.n == other.n
            and self.length == other.length
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.n, self.length))


def make_grid(dim: int, n: int, length: float) -> Grid:
    """Validate and build a :class:`Grid`.

    Requires ``dim >= 1``, even ``n >= 4`` and ``length > 0``; these are the
    assumptions baked into the Nyquist and dealiasing conventions.
    """
    if not isinstance(dim, int) or dim < 1:
        raise ConfigError(f"dimension must be a positive integer, got {dim!r}")
    if not isinstance(n, int) or n < 4 or n % 2 != 0:
        raise ConfigError(f"points per axis must be an even integer >= 4, got {n!r}")
    if not length > 0:
        raise ConfigError(f"box length must be positive, got {length!r}")
    return Grid(dim, n, float(length))
