"""Time stepping: classical RK4 and integrating-factor RK4.

The integrating-factor scheme advances the linear part with the exact
per-mode propagator table and applies RK4 weights only to the product terms,
so a run with the products switched off reproduces the linear flow to
roundoff regardless of dt.  Both schemes keep the committed state untouched
until a full step has been assembled; a positivity failure mid-step leaves
the last completed state intact.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .config import SimConfig, normalized_scheme
from .checkpoint import save_checkpoint
from .decay import dispersive_window
from .diagnostics import DiagnosticsRecord, collect_diagnostics
from .dynamics import build_propagator, linear_packed, nonlinear_packed, pack, unpack
from .errors import BlowUpError, ConfigError
from .grid import Grid
from .manifest import build_manifest, write_manifest
from .scenarios import build_initial_state, grid_for, scenario_is_linear
from .seriesio import SeriesWriter
from .state import State


def suggest_dt(
    grid: Grid,
    alpha: float,
    gamma: float = 1.0,
    lam: float = 1.0,
    background: float = 1.0,
    safety: float = 1.0,
) -> float:
    """Time step matched to the fastest linear oscillation.

    The dispersion relation has |Im z| <= sqrt(background*lam) *
    kappa^{(alpha-dim)/2 + 1}, largest at the corner wavenumber.
    """
    omega = math.sqrt(background * lam) * grid.kappa_max() ** (
        (alpha - grid.dim) / 2.0 + 1.0
    )
    return safety / omega


def plan_steps(t_end: float, dt: float) -> tuple[int, float]:
    """(number of full dt steps, remainder step) covering [0, t_end]."""
    if dt <= 0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    if t_end < 0:
        raise ConfigError(f"t_end must be nonnegative, got {t_end!r}")
    n = int(math.floor(t_end / dt + 1e-9))
    rem = t_end - n * dt
    if rem < 1e-12 * max(dt, 1.0):
        rem = 0.0
    return n, rem


class Stepper:
    """Advances packed spectral coefficients one step at a time."""

    def __init__(
        self,
        state: State,
        dt: float,
        scheme: str = "ifrk4",
        dealias_on: bool = True,
        density_floor: float = 1e-8,
        linear_only: bool = False,
    ):
        if scheme not in ("rk4", "ifrk4"):
            raise ConfigError(f"scheme must be 'rk4' or 'ifrk4', got '{scheme}'")
        self.template = state
        self.grid = state.grid
        self.dt = float(dt)
        self.scheme = scheme
        self.dealias_on = dealias_on
        self.density_floor = density_floor
        self.linear_only = linear_only
        self.Y = pack(state)
        self.t0 = state.t
        self.steps = 0
        self.t = state.t
        self._tables: dict[float, tuple] = {}

    # -- rhs pieces ---------------------------------------------------------------

    def _linear(self, Y: np.ndarray) -> np.ndarray:
        s = self.template
        return linear_packed(Y, self.grid, s.alpha, s.gamma, s.lam, s.background)

    def _nonlinear(self, Y: np.ndarray, t: float) -> np.ndarray:
        if self.linear_only:
            return np.zeros_like(Y)
        return nonlinear_packed(
            Y, self.grid, self.dealias_on, self.density_floor, self.template.background, t
        )

    def _full(self, Y: np.ndarray, t: float) -> np.ndarray:
        dY = self._linear(Y)
        if not self.linear_only:
            dY += self._nonlinear(Y, t)
        return dY

    def _propagators(self, h: float):
        if h not in self._tables:
            s = self.template
            half = build_propagator(self.grid, s.alpha, s.gamma, s.lam, h / 2.0, s.background)
            full = build_propagator(self.grid, s.alpha, s.gamma, s.lam, h, s.background)
            self._tables[h] = (half, full)
        return self._tables[h]

    # -- schemes ------------------------------------------------------------------

    def _step_rk4(self, h: float) -> np.ndarray:
        Y, t = self.Y, self.t
        k1 = self._full(Y, t)
        k2 = self._full(Y + (h / 2.0) * k1, t + h / 2.0)
        k3 = self._full(Y + (h / 2.0) * k2, t + h / 2.0)
        k4 = self._full(Y + h * k3, t + h)
        return Y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def _step_ifrk4(self, h: float) -> np.ndarray:
        Y, t = self.Y, self.t
        e_half, e_full = self._propagators(h)
        if self.linear_only:
            return e_full.apply(Y)
        EY = e_half.apply(Y)
        n1 = self._nonlinear(Y, t)
        n2 = self._nonlinear(EY + (h / 2.0) * e_half.apply(n1), t + h / 2.0)
        n3 = self._nonlinear(EY + (h / 2.0) * n2, t + h / 2.0)
        E2Y = e_full.apply(Y)
        n4 = self._nonlinear(E2Y + h * e_half.apply(n3), t + h)
        return E2Y + (h / 6.0) * (
            e_full.apply(n1) + 2.0 * e_half.apply(n2 + n3) + n4
        )

    def step(self, dt_step: float | None = None) -> None:
        """Advance one step (default self.dt); commits only on success."""
        h = self.dt if dt_step is None else float(dt_step)
        if self.scheme == "rk4":
            Y_new = self._step_rk4(h)
        else:
            Y_new = self._step_ifrk4(h)
        Y_new[0][(0,) * self.grid.dim] = 0.0
        self.Y = Y_new
        if dt_step is None:
            self.steps += 1
            self.t = self.t0 + self.steps * self.dt
        else:
            self.steps += 1
            self.t = self.t + h

    def state(self) -> State:
        return unpack(self.Y, self.grid, self.template, self.t)


@dataclass
class RunResult:
    status: str
    t_final: float
    records: list[DiagnosticsRecord] = field(default_factory=list)
    final_state: State | None = None
    csv_path: str | None = None
    manifest_path: str | None = None
    checkpoint_path: str | None = None
    blow_up_time: float | None = None
    blow_up_min_density: float | None = None


def run(cfg: SimConfig, output_prefix: str | None = None) -> RunResult:
    """Integrate cfg from its scenario's initial data, writing outputs.

    Produces <prefix>.csv (every output_every-th step plus the first and last),
    <prefix>.ckpt (final state; also periodic when checkpoint_every > 0) and
    <prefix>.manifest.json.  A density-floor violation ends the run with
    status 'blow-up' after flushing a record of the last completed state; it
    is a reported outcome, not an exception.
    """
    t_start = time.monotonic()
    grid = grid_for(cfg)
    state0 = build_initial_state(cfg, grid)
    stepper = Stepper(
        state0,
        cfg.dt,
        scheme=normalized_scheme(cfg),
        dealias_on=cfg.dealias,
        density_floor=cfg.density_floor,
        linear_only=scenario_is_linear(cfg.scenario),
    )

    prefix = output_prefix if output_prefix is not None else cfg.output_path
    parent = os.path.dirname(os.path.abspath(prefix))
    os.makedirs(parent, exist_ok=True)
    csv_path = prefix + ".csv"
    manifest_path = prefix + ".manifest.json"
    ckpt_path = prefix + ".ckpt"

    records: list[DiagnosticsRecord] = []
    status = "completed"
    blow_t: float | None = None
    blow_min: float | None = None

    writer = SeriesWriter(csv_path)

    def snap(dt_used: float) -> None:
        rec = collect_diagnostics(
            stepper.state(),
            m_index=cfg.m_index,
            s_neg=cfg.s_neg_value,
            eta1=cfg.eta1,
            sigma=cfg.sigma,
            dt_used=dt_used,
        )
        writer.write_record(rec)
        records.append(rec)

    try:
        snap(float("nan"))
        n_full, rem = plan_steps(cfg.t_end, cfg.dt)
        try:
            for k in range(1, n_full + 1):
                stepper.step()
                if k % cfg.output_every == 0:
                    snap(cfg.dt)
                if cfg.checkpoint_every > 0 and k % cfg.checkpoint_every == 0:
                    save_checkpoint(ckpt_path, stepper.state())
            if rem > 0.0:
                stepper.step(rem)
            if not records or records[-1].t != stepper.t:
                snap(rem if rem > 0.0 else cfg.dt)
        except BlowUpError as exc:
            status = "blow-up"
            blow_t = exc.t
            blow_min = exc.min_density
            if not records or records[-1].t != stepper.t:
                snap(cfg.dt)
    finally:
        writer.close()

    final_state = stepper.state()
    save_checkpoint(ckpt_path, final_state)

    extra = {
        "scheme": normalized_scheme(cfg),
        "grid": {"dimension": grid.dim, "points_per_axis": grid.n, "box_length": grid.length},
    }
    if cfg.scenario == "bigbox_localized":
        # a periodic box stands in for whole space here; once the wave front
        # wraps around, the data stops approximating the unbounded problem
        u0_max = max(float(np.abs(c.values).max()) for c in state0.u)
        extra["approximation"] = (
            "periodic box proxy for whole space; trust t below dispersive_window"
        )
        extra["dispersive_window"] = dispersive_window(
            cfg.box_length, cfg.alpha, cfg.dimension, cfg.lam, cfg.background, u0_max
        )
    if status == "blow-up":
        extra["blow_up_time"] = blow_t
        extra["blow_up_min_density"] = blow_min
    doc = build_manifest(
        cfg,
        status=status,
        t_final=stepper.t,
        n_steps=stepper.steps,
        n_records=len(records),
        wall_seconds=time.monotonic() - t_start,
        csv_path=csv_path,
        checkpoint_path=ckpt_path,
        extra=extra,
    )
    write_manifest(manifest_path, doc)

    return RunResult(
        status=status,
        t_final=stepper.t,
        records=records,
        final_state=final_state,
        csv_path=csv_path,
        manifest_path=manifest_path,
        checkpoint_path=ckpt_path,
        blow_up_time=blow_t,
        blow_up_min_density=blow_min,
    )
