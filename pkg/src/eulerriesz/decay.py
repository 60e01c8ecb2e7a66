"""Predicted decay rates and rate extraction from time series.

Predictions (d = dimension, alpha the interaction order, s the negative
regularity index of the initial data):

    sharp exponent   eta(s) = min( 2s/(d-alpha),
                                   (s + d - alpha - 1) / (1 - (d-alpha)/2) )
                     for d >= 2 and 1 - (d-alpha)/2 <= s <= alpha/2;
                     the modulated energy decays like (1+t)^{-eta}
    weak exponent    s / (1 + (d-alpha)/2) for 0 < s <= alpha/2
    spectral gap     slowest linear mode on a torus with smallest wavenumber
                     kappa_min: gamma/2 in the oscillatory regime, otherwise
                     the smaller root (gamma - sqrt(gamma^2 - 4 b lam
                     kappa_min^{alpha-d+2}))/2

Fits are least-squares lines through log(y) against t (exponential) or
log(1+t) (algebraic), over a window that by default keeps the last 60% of the
samples above a roundoff floor.  A secondary envelope fit uses only local
maxima, which is the honest estimator when y oscillates under the decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FitError
from .state import alpha_window


def sharp_rate(dim: int, alpha: float, s: float) -> float:
    """Algebraic decay exponent of the modulated energy."""
    if dim < 2:
        raise DomainError(f"sharp_rate needs dimension >= 2, got {dim}")
    lo, hi = alpha_window(dim)
    if not (lo < alpha < hi):
        raise DomainError(f"alpha must lie in ({lo:g}, {hi:g}), got {alpha!r}")
    gap = dim - alpha
    s_min = 1.0 - gap / 2.0
    s_max = alpha / 2.0
    if not (s_min <= s <= s_max):
        raise DomainError(
            f"s must lie in [{s_min:g}, {s_max:g}] for d={dim}, alpha={alpha:g}, got {s!r}"
        )
    return min(2.0 * s / gap, (s + gap - 1.0) / (1.0 - gap / 2.0))


def weak_rate(dim: int, alpha: float, s: float) -> float:
    """Exponent available without the sharp smallness structure."""
    lo, hi = alpha_window(dim)
    if not (lo < alpha < hi):
        raise DomainError(f"alpha must lie in ({lo:g}, {hi:g}), got {alpha!r}")
    if not (0.0 < s <= alpha / 2.0):
        raise DomainError(f"s must lie in (0, {alpha / 2.0:g}], got {s!r}")
    return s / (1.0 + (dim - alpha) / 2.0)


def spectral_gap(
    gamma: float,
    lam: float,
    kappa_min: float,
    alpha: float,
    dim: int,
    background: float = 1.0,
) -> float:
    """Exponential rate of the slowest linear torus mode."""
    if kappa_min <= 0:
        raise DomainError(f"kappa_min must be positive, got {kappa_min!r}")
    det = background * lam * kappa_min ** (alpha - dim + 2.0)
    disc = gamma * gamma - 4.0 * det
    if disc <= 0.0:
        return gamma / 2.0
    return (gamma - math.sqrt(disc)) / 2.0


def case_a_applicable(dim: int, alpha: float, s: float) -> bool:
    """Whether s reaches the auxiliary-norm regime s >= 1 - (d-alpha)/2."""
    return s >= 1.0 - (dim - alpha) / 2.0


def case_b_applicable(dim: int, alpha: float, s: float) -> bool:
    """Whether s clears the strong-regularity threshold s > 2 + d - alpha."""
    return s > 2.0 + dim - alpha


def predict_rates(
    dim: int,
    alpha: float,
    s: float,
    gamma: float = 1.0,
    lam: float = 1.0,
    kappa_min: float = 1.0,
    background: float = 1.0,
) -> dict:
    """All predictions for one parameter point (sharp rate may be absent)."""
    out = {
        "dimension": dim,
        "alpha": alpha,
        "s": s,
        "weak_rate": weak_rate(dim, alpha, s),
        "spectral_gap": spectral_gap(gamma, lam, kappa_min, alpha, dim, background),
        "case_a": case_a_applicable(dim, alpha, s),
        "case_b": case_b_applicable(dim, alpha, s),
    }
    try:
        out["sharp_rate"] = sharp_rate(dim, alpha, s)
    except DomainError:
        out["sharp_rate"] = None
    return out


@dataclass(frozen=True)
class FitResult:
    rate: float
    intercept: float
    residual: float  # max abs deviation of log y from the fitted line
    window: tuple[float, float]
    n_points: int
    kind: str  # "exp" or "alg"
    method: str  # "direct" or "envelope"


def _select(
    t: np.ndarray,
    y: np.ndarray,
    window: tuple[float, float] | None,
    floor: float | None,
) -> tuple[np.ndarray, np.ndarray]:
    t = np.asarray(t, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if t.shape != y.shape or t.ndim != 1:
        raise FitError("t and y must be 1-d arrays of equal length")
    keep = np.isfinite(t) & np.isfinite(y) & (y > 0.0)
    if floor is None and np.any(keep):
        floor = 1e-16 * float(y[keep][0])
    if floor is not None:
        keep &= y > floor
    t, y = t[keep], y[keep]
    if window is None:
        # last 60% of the surviving samples
        start = int(math.floor(0.4 * len(t)))
        t, y = t[start:], y[start:]
    else:
        a, b = window
        sel = (t >= a) & (t <= b)
        t, y = t[sel], y[sel]
    if len(t) < 10:
        raise FitError(f"need at least 10 usable samples, have {len(t)}")
    return t, y


def fit_exponential_rate(
    t: np.ndarray,
    y: np.ndarray,
    window: tuple[float, float] | None = None,
    floor: float | None = None,
) -> FitResult:
    """Rate r in y ~ C exp(-r t); returns r > 0 for decaying data."""
    ts, ys = _select(t, y, window, floor)
    logy = np.log(ys)
    slope, intercept = np.polyfit(ts, logy, 1)
    resid = float(np.abs(logy - (slope * ts + intercept)).max())
    return FitResult(
        rate=float(-slope),
        intercept=float(intercept),
        residual=resid,
        window=(float(ts[0]), float(ts[-1])),
        n_points=len(ts),
        kind="exp",
        method="direct",
    )


def fit_algebraic_rate(
    t: np.ndarray,
    y: np.ndarray,
    window: tuple[float, float] | None = None,
    floor: float | None = None,
) -> FitResult:
    """Exponent p in y ~ C (1+t)^{-p}."""
    ts, ys = _select(t, y, window, floor)
    x = np.log1p(ts)
    logy = np.log(ys)
    slope, intercept = np.polyfit(x, logy, 1)
    resid = float(np.abs(logy - (slope * x + intercept)).max())
    return FitResult(
        rate=float(-slope),
        intercept=float(intercept),
        residual=resid,
        window=(float(ts[0]), float(ts[-1])),
        n_points=len(ts),
        kind="alg",
        method="direct",
    )


def _local_maxima(t: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = [i for i in range(1, len(y) - 1) if y[i] >= y[i - 1] and y[i] > y[i + 1]]
    return t[idx], y[idx]


def fit_envelope_rate(
    t: np.ndarray,
    y: np.ndarray,
    kind: str = "exp",
    window: tuple[float, float] | None = None,
    floor: float | None = None,
) -> FitResult:
    """Fit through the local maxima of y; needs at least 3 peaks."""
    ts, ys = _select(t, y, window, floor)
    tp, yp = _local_maxima(ts, ys)
    if len(tp) < 3:
        raise FitError(f"envelope fit needs >= 3 local maxima, found {len(tp)}")
    x = tp if kind == "exp" else np.log1p(tp)
    logy = np.log(yp)
    slope, intercept = np.polyfit(x, logy, 1)
    resid = float(np.abs(logy - (slope * x + intercept)).max())
    return FitResult(
        rate=float(-slope),
        intercept=float(intercept),
        residual=resid,
        window=(float(tp[0]), float(tp[-1])),
        n_points=len(tp),
        kind=kind,
        method="envelope",
    )


def dispersive_window(
    length: float,
    alpha: float,
    dim: int,
    lam: float = 1.0,
    background: float = 1.0,
    u_max: float = 0.0,
) -> float:
    """Time before wrap-around pollutes a localized run on a periodic box.

    Signals travel no faster than the slowest-mode wave speed plus the
    advection speed; a quarter box length is the usable horizon.
    """
    kappa_min = 2.0 * math.pi / length
    speed = math.sqrt(background * lam) * kappa_min ** ((alpha - dim) / 2.0) + u_max
    return length / (4.0 * speed)
