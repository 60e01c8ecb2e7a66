"""Run configuration: plain ``key = value`` text files.

Lines are ``key = value``; blank lines and ``#`` comments are skipped.  Keys
are validated strictly: an unknown key is an error, as is a missing required
key.  ``dump_config(load_config(p))`` followed by another load round-trips to
the same configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .state import alpha_window

SCENARIOS = (
    "single_mode",
    "random_smooth",
    "torus_decay",
    "bigbox_localized",
    "linear_only",
)

_SCHEME_ALIASES = {
    "rk4": "rk4",
    "explicit": "rk4",
    "ifrk4": "ifrk4",
    "integrating-factor": "ifrk4",
}


@dataclass(frozen=True)
class SimConfig:
    dimension: int
    points_per_axis: int
    box_length: float
    alpha: float
    dt: float
    t_end: float
    scenario: str
    gamma: float = 1.0
    lam: float = 1.0
    background: float = 1.0
    m_index: int = 4
    s_neg: float | None = None  # defaults to alpha/2 at load time
    eta1: float = 0.05
    sigma: float = 0.05
    scheme: str = "ifrk4"
    dealias: bool = True
    density_floor: float = 1e-8
    output_every: int = 10
    checkpoint_every: int = 0
    ic_amplitude: float = 1e-2
    ic_seed: int = 0
    ic_mode: tuple[int, ...] = field(default=(1,))
    ic_mean_velocity: tuple[float, ...] = field(default=(0.0,))
    ic_width: float = 3.0
    ic_bump_width: float | None = None  # defaults to box_length/16
    output_path: str = "./out"

    @property
    def s_neg_value(self) -> float:
        return self.alpha / 2.0 if self.s_neg is None else self.s_neg

    @property
    def ic_bump_width_value(self) -> float:
        return self.box_length / 16.0 if self.ic_bump_width is None else self.ic_bump_width

    def mode_vector(self) -> tuple[int, ...]:
        """ic_mode padded with zeros to the dimension."""
        m = self.ic_mode
        if len(m) == 1 and self.dimension > 1:
            return m + (0,) * (self.dimension - 1)
        return m

    def mean_velocity_vector(self) -> tuple[float, ...]:
        v = self.ic_mean_velocity
        if len(v) == 1 and self.dimension > 1:
            return v + (0.0,) * (self.dimension - 1)
        return v


_REQUIRED = (
    "dimension",
    "points_per_axis",
    "box_length",
    "alpha",
    "dt",
    "t_end",
    "scenario",
)


def _parse_bool(key: str, text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"key '{key}': expected a boolean, got '{text}'")


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"key '{key}': expected an integer, got '{text}'") from None


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"key '{key}': expected a number, got '{text}'") from None
    if value != value:
        raise ConfigError(f"key '{key}': nan is not a valid value")
    return value


def _parse_int_tuple(key: str, text: str) -> tuple[int, ...]:
    return tuple(_parse_int(key, part) for part in text.split(","))


def _parse_float_tuple(key: str, text: str) -> tuple[float, ...]:
    return tuple(_parse_float(key, part) for part in text.split(","))


def parse_config_text(text: str) -> SimConfig:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{line.strip()}'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{line.strip()}'")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        raw[key] = value

    for req in _REQUIRED:
        if req not in raw:
            raise ConfigError(f"missing required key '{req}'")

    known = {
        "dimension",
        "points_per_axis",
        "box_length",
        "alpha",
        "gamma",
        "lambda",
        "background",
        "scenario",
        "dt",
        "t_end",
        "scheme",
        "dealias",
        "density_floor",
        "m_index",
        "s_neg",
        "eta1",
        "sigma",
        "ic_amplitude",
        "ic_seed",
        "ic_mode",
        "ic_mean_velocity",
        "ic_width",
        "ic_bump_width",
        "output_every",
        "checkpoint_every",
        "output_path",
    }
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown key '{key}'")

    cfg = SimConfig(
        dimension=_parse_int("dimension", raw["dimension"]),
        points_per_axis=_parse_int("points_per_axis", raw["points_per_axis"]),
        box_length=_parse_float("box_length", raw["box_length"]),
        alpha=_parse_float("alpha", raw["alpha"]),
        dt=_parse_float("dt", raw["dt"]),
        t_end=_parse_float("t_end", raw["t_end"]),
        scenario=raw["scenario"],
    )
    if "gamma" in raw:
        cfg = replace(cfg, gamma=_parse_float("gamma", raw["gamma"]))
    if "lambda" in raw:
        cfg = replace(cfg, lam=_parse_float("lambda", raw["lambda"]))
    if "background" in raw:
        cfg = replace(cfg, background=_parse_float("background", raw["background"]))
    if "m_index" in raw:
        cfg = replace(cfg, m_index=_parse_int("m_index", raw["m_index"]))
    if "s_neg" in raw:
        cfg = replace(cfg, s_neg=_parse_float("s_neg", raw["s_neg"]))
    if "eta1" in raw:
        cfg = replace(cfg, eta1=_parse_float("eta1", raw["eta1"]))
    if "sigma" in raw:
        cfg = replace(cfg, sigma=_parse_float("sigma", raw["sigma"]))
    if "scheme" in raw:
        cfg = replace(cfg, scheme=raw["scheme"])
    if "dealias" in raw:
        cfg = replace(cfg, dealias=_parse_bool("dealias", raw["dealias"]))
    if "density_floor" in raw:
        cfg = replace(cfg, density_floor=_parse_float("density_floor", raw["density_floor"]))
    if "output_every" in raw:
        cfg = replace(cfg, output_every=_parse_int("output_every", raw["output_every"]))
    if "checkpoint_every" in raw:
        cfg = replace(cfg, checkpoint_every=_parse_int("checkpoint_every", raw["checkpoint_every"]))
    if "ic_amplitude" in raw:
        cfg = replace(cfg, ic_amplitude=_parse_float("ic_amplitude", raw["ic_amplitude"]))
    if "ic_seed" in raw:
        cfg = replace(cfg, ic_seed=_parse_int("ic_seed", raw["ic_seed"]))
    if "ic_mode" in raw:
        cfg = replace(cfg, ic_mode=_parse_int_tuple("ic_mode", raw["ic_mode"]))
    if "ic_mean_velocity" in raw:
        cfg = replace(
            cfg, ic_mean_velocity=_parse_float_tuple("ic_mean_velocity", raw["ic_mean_velocity"])
        )
    if "ic_width" in raw:
        cfg = replace(cfg, ic_width=_parse_float("ic_width", raw["ic_width"]))
    if "ic_bump_width" in raw:
        cfg = replace(cfg, ic_bump_width=_parse_float("ic_bump_width", raw["ic_bump_width"]))
    if "output_path" in raw:
        cfg = replace(cfg, output_path=raw["output_path"])

    return validate_config(cfg)


def validate_config(cfg: SimConfig) -> SimConfig:
    if cfg.dimension < 1:
        raise ConfigError(f"dimension must be >= 1, got {cfg.dimension}")
    if cfg.points_per_axis < 4 or cfg.points_per_axis % 2 != 0:
        raise ConfigError(
            f"points_per_axis must be an even integer >= 4, got {cfg.points_per_axis}"
        )
    if cfg.box_length <= 0:
        raise ConfigError(f"box_length must be positive, got {cfg.box_length!r}")
    lo, hi = alpha_window(cfg.dimension)
    if not (lo < cfg.alpha < hi):
        raise ConfigError(
            f"alpha must lie in ({lo:g}, {hi:g}) for dimension {cfg.dimension}, got {cfg.alpha!r}"
        )
    if cfg.gamma <= 0:
        raise ConfigError(f"gamma must be positive, got {cfg.gamma!r}")
    if cfg.lam <= 0:
        raise ConfigError(f"lambda must be positive, got {cfg.lam!r}")
    if cfg.background <= 0:
        raise ConfigError(f"background must be positive, got {cfg.background!r}")
    if cfg.dt <= 0:
        raise ConfigError(f"dt must be positive, got {cfg.dt!r}")
    if cfg.t_end < 0:
        raise ConfigError(f"t_end must be nonnegative, got {cfg.t_end!r}")
    if cfg.scenario not in SCENARIOS:
        raise ConfigError(
            f"scenario must be one of {', '.join(SCENARIOS)}; got '{cfg.scenario}'"
        )
    if cfg.scheme not in _SCHEME_ALIASES:
        raise ConfigError(
            f"scheme must be one of {', '.join(sorted(set(_SCHEME_ALIASES)))}; got '{cfg.scheme}'"
        )
    if cfg.m_index < 1:
        raise ConfigError(f"m_index must be >= 1, got {cfg.m_index}")
    s = cfg.s_neg_value
    if not (0.0 < s <= cfg.alpha / 2.0):
        raise ConfigError(
            f"s_neg must lie in (0, alpha/2] = (0, {cfg.alpha / 2.0:g}], got {s!r}"
        )
    if cfg.density_floor <= 0:
        raise ConfigError(f"density_floor must be positive, got {cfg.density_floor!r}")
    if cfg.output_every < 1:
        raise ConfigError(f"output_every must be >= 1, got {cfg.output_every}")
    if cfg.checkpoint_every < 0:
        raise ConfigError(f"checkpoint_every must be >= 0, got {cfg.checkpoint_every}")
    if cfg.ic_amplitude <= 0:
        raise ConfigError(f"ic_amplitude must be positive, got {cfg.ic_amplitude!r}")
    if cfg.ic_seed < 0:
        raise ConfigError(f"ic_seed must be >= 0, got {cfg.ic_seed}")
    if len(cfg.mode_vector()) != cfg.dimension:
        raise ConfigError(
            f"ic_mode needs 1 or {cfg.dimension} entries, got {len(cfg.ic_mode)}"
        )
    if all(m == 0 for m in cfg.mode_vector()):
        raise ConfigError("ic_mode must not be the zero mode")
    if len(cfg.mean_velocity_vector()) != cfg.dimension:
        raise ConfigError(
            f"ic_mean_velocity needs 1 or {cfg.dimension} entries, got {len(cfg.ic_mean_velocity)}"
        )
    if cfg.ic_width <= 0:
        raise ConfigError(f"ic_width must be positive, got {cfg.ic_width!r}")
    if cfg.ic_bump_width_value <= 0:
        raise ConfigError(f"ic_bump_width must be positive, got {cfg.ic_bump_width!r}")
    return cfg


def normalized_scheme(cfg: SimConfig) -> str:
    """Either 'rk4' or 'ifrk4'."""
    return _SCHEME_ALIASES[cfg.scheme]


def load_config(path: str) -> SimConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file '{path}': {exc}") from None
    return parse_config_text(text)


def dump_config(cfg: SimConfig) -> str:
    """Canonical text form; parsing it again reproduces cfg exactly."""
    lines = [
        f"dimension = {cfg.dimension}",
        f"points_per_axis = {cfg.points_per_axis}",
        f"box_length = {cfg.box_length!r}",
        f"alpha = {cfg.alpha!r}",
        f"gamma = {cfg.gamma!r}",
        f"lambda = {cfg.lam!r}",
        f"background = {cfg.background!r}",
        f"scenario = {cfg.scenario}",
        f"dt = {cfg.dt!r}",
        f"t_end = {cfg.t_end!r}",
        f"scheme = {cfg.scheme}",
        f"dealias = {'true' if cfg.dealias else 'false'}",
        f"density_floor = {cfg.density_floor!r}",
        f"m_index = {cfg.m_index}",
        f"s_neg = {cfg.s_neg_value!r}",
        f"eta1 = {cfg.eta1!r}",
        f"sigma = {cfg.sigma!r}",
        f"ic_amplitude = {cfg.ic_amplitude!r}",
        f"ic_seed = {cfg.ic_seed}",
        "ic_mode = " + ",".join(str(m) for m in cfg.mode_vector()),
        "ic_mean_velocity = " + ",".join(repr(v) for v in cfg.mean_velocity_vector()),
        f"ic_width = {cfg.ic_width!r}",
        f"ic_bump_width = {cfg.ic_bump_width_value!r}",
        f"output_every = {cfg.output_every}",
        f"checkpoint_every = {cfg.checkpoint_every}",
        f"output_path = {cfg.output_path}",
    ]
    return "\n".join(lines) + "\n"
