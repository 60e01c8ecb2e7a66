"""Binary state snapshots with bit-exact restart.

Layout (little-endian):

    8 bytes   magic b"ERZCKPT1"
    struct <II6d   dim, n, box_length, alpha, gamma, lambda, background, t
    n^d f64   h samples, row-major
    d * n^d   velocity components, each row-major

Raw samples are stored, not coefficients, so a reload reproduces the exact
doubles that were running.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError
from .grid import make_grid
from .spectral import field_from_values
from .state import State

MAGIC = b"ERZCKPT1"
_HEADER = struct.Struct("<II6d")


def save_checkpoint(path: str, state: State) -> None:
    grid = state.grid
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(
            _HEADER.pack(
                grid.dim,
                grid.n,
                grid.length,
                state.alpha,
                state.gamma,
                state.lam,
                state.background,
                state.t,
            )
        )
        fh.write(np.ascontiguousarray(state.h.values, dtype="<f8").tobytes())
        for comp in state.u:
            fh.write(np.ascontiguousarray(comp.values, dtype="<f8").tobytes())


def load_checkpoint(path: str) -> State:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(MAGIC) + _HEADER.size or blob[: len(MAGIC)] != MAGIC:
        raise FormatError(f"'{path}' is not a checkpoint file")
    dim, n, length, alpha, gamma, lam, background, t = _HEADER.unpack_from(
        blob, len(MAGIC)
    )
    grid = make_grid(dim, n, length)
    offset = len(MAGIC) + _HEADER.size
    block = 8 * grid.size
    expected = offset + (1 + dim) * block
    if len(blob) != expected:
        raise FormatError(
            f"'{path}' has {len(blob)} bytes, expected {expected} for d={dim}, n={n}"
        )
    def read_block(k: int) -> np.ndarray:
        start = offset + k * block
        arr = np.frombuffer(blob[start : start + block], dtype="<f8")
        return arr.reshape(grid.shape).astype(np.float64)

    h = field_from_values(grid, read_block(0))
    u = tuple(field_from_values(grid, read_block(1 + j)) for j in range(dim))
    return State(h=h, u=u, t=t, alpha=alpha, gamma=gamma, lam=lam, background=background)
