"""Rate predictions and rate extraction from synthetic series."""

import math

import numpy as np
import pytest

import eulerriesz as er


class TestPredictions:
    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_sharp_rate_specialization(self, dim):
        # at alpha = d-1 with s = alpha/2 both branches meet at d-1
        alpha = float(dim - 1)
        assert er.sharp_rate(dim, alpha, alpha / 2.0) == pytest.approx(
            float(dim - 1), rel=1e-14
        )

    def test_sharp_rate_takes_the_minimum_branch(self):
        # d=3, alpha=2.5: gap 0.5, s=0.75 -> min(3, 1/3) = 1/3
        assert er.sharp_rate(3, 2.5, 0.75) == pytest.approx(1.0 / 3.0, rel=1e-13)
        # d=4, alpha=2.5: gap 1.5, s=0.75 -> min(1, 5) = 1
        assert er.sharp_rate(4, 2.5, 0.75) == pytest.approx(1.0, rel=1e-13)

    def test_sharp_rate_domain(self):
        with pytest.raises(er.DomainError):
            er.sharp_rate(1, 0.5, 0.25)
        with pytest.raises(er.DomainError):
            er.sharp_rate(2, 2.5, 0.5)
        with pytest.raises(er.DomainError):
            er.sharp_rate(2, 1.0, 0.4)  # below 1 - (d-alpha)/2 = 0.5
        with pytest.raises(er.DomainError):
            er.sharp_rate(2, 1.0, 0.6)  # above alpha/2

    def test_weak_rate_values(self):
        assert er.weak_rate(2, 1.0, 0.5) == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert er.weak_rate(3, 2.0, 0.75) == pytest.approx(0.5, rel=1e-15)

    def test_weak_rate_domain(self):
        with pytest.raises(er.DomainError):
            er.weak_rate(2, 1.0, 0.0)
        with pytest.raises(er.DomainError):
            er.weak_rate(2, 1.0, 0.51)

    def test_spectral_gap_oscillatory(self):
        # discriminant negative: both roots share real part gamma/2
        assert er.spectral_gap(1.0, 1.0, 1.0, 1.0, 2) == pytest.approx(0.5, rel=1e-15)

    def test_spectral_gap_overdamped(self):
        want = 2.0 - math.sqrt(3.0)
        assert er.spectral_gap(4.0, 1.0, 1.0, 1.0, 2) == pytest.approx(want, rel=1e-13)

    def test_spectral_gap_background_restores_oscillation(self):
        assert er.spectral_gap(4.0, 1.0, 1.0, 1.0, 2, background=4.0) == pytest.approx(
            2.0, rel=1e-15
        )

    def test_spectral_gap_needs_positive_wavenumber(self):
        with pytest.raises(er.DomainError):
            er.spectral_gap(1.0, 1.0, 0.0, 1.0, 2)

    def test_case_thresholds(self):
        assert er.case_a_applicable(2, 1.0, 0.5)
        assert not er.case_a_applicable(2, 1.0, 0.49)
        assert not er.case_b_applicable(2, 1.0, 0.5)
        assert er.case_b_applicable(2, 1.9, 3.0)

    def test_predict_rates_bundle(self):
        out = er.predict_rates(2, 1.0, 0.5)
        assert out["weak_rate"] == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert out["sharp_rate"] == pytest.approx(1.0, rel=1e-15)
        assert out["spectral_gap"] == pytest.approx(0.5, rel=1e-15)
        assert out["case_a"] is True
        assert out["case_b"] is False

    def test_predict_rates_sharp_may_be_absent(self):
        out = er.predict_rates(2, 1.0, 0.3)
        assert out["sharp_rate"] is None
        assert out["weak_rate"] == pytest.approx(0.2, rel=1e-14)


class TestFits:
    def test_exponential_fit_recovers_rate(self):
        t = np.linspace(0.0, 5.0, 101)
        fit = er.fit_exponential_rate(t, 3.0 * np.exp(-2.0 * t))
        assert fit.rate == pytest.approx(2.0, rel=1e-12)
        assert fit.intercept == pytest.approx(math.log(3.0), rel=1e-10)
        assert fit.residual < 1e-10
        assert fit.kind == "exp"
        assert fit.method == "direct"

    def test_default_window_keeps_last_sixty_percent(self):
        t = np.linspace(0.0, 5.0, 101)
        fit = er.fit_exponential_rate(t, np.exp(-t))
        assert fit.n_points == 61
        assert fit.window[0] == pytest.approx(2.0, abs=1e-12)
        assert fit.window[1] == pytest.approx(5.0, abs=1e-12)

    def test_explicit_window(self):
        t = np.linspace(0.0, 8.0, 161)
        y = np.where(t < 3.0, np.exp(-t), np.exp(-3.0 * t + 6.0))
        fit = er.fit_exponential_rate(t, y, window=(4.0, 8.0))
        assert fit.rate == pytest.approx(3.0, rel=1e-12)
        assert fit.window[0] >= 4.0

    def test_growth_yields_negative_rate(self):
        t = np.linspace(0.0, 4.0, 41)
        fit = er.fit_exponential_rate(t, np.exp(t))
        assert fit.rate == pytest.approx(-1.0, rel=1e-12)

    def test_algebraic_fit_recovers_exponent(self):
        t = np.linspace(0.0, 30.0, 301)
        fit = er.fit_algebraic_rate(t, 5.0 * (1.0 + t) ** (-1.5))
        assert fit.rate == pytest.approx(1.5, rel=1e-12)
        assert fit.kind == "alg"

    def test_floor_excludes_roundoff_tail(self):
        t = np.linspace(0.0, 10.0, 201)
        y = np.maximum(3.0 * np.exp(-10.0 * t), 1e-25)
        fit = er.fit_exponential_rate(t, y)
        assert fit.rate == pytest.approx(10.0, rel=1e-12)
        assert fit.window[1] < 4.0

    def test_nonpositive_samples_are_dropped(self):
        t = np.linspace(0.0, 5.0, 101)
        y = np.exp(-2.0 * t)
        y[::7] = 0.0
        fit = er.fit_exponential_rate(t, y)
        assert fit.rate == pytest.approx(2.0, rel=1e-12)

    def test_too_few_samples(self):
        t = np.linspace(0.0, 1.0, 5)
        with pytest.raises(er.FitError, match="10 usable"):
            er.fit_exponential_rate(t, np.exp(-t))

    def test_shape_mismatch(self):
        with pytest.raises(er.FitError):
            er.fit_exponential_rate(np.zeros(5), np.zeros(6))

    def test_envelope_fit_on_oscillatory_decay(self):
        t = np.linspace(0.0, 12.0, 1201)
        y = np.exp(-0.8 * t) * (1.0 + 0.5 * np.cos(7.0 * t))
        fit = er.fit_envelope_rate(t, y)
        assert fit.method == "envelope"
        assert fit.rate == pytest.approx(0.8, rel=0.02)
        # the direct fit on the same data is pulled around by the troughs
        assert fit.residual < er.fit_exponential_rate(t, y).residual

    def test_envelope_needs_three_peaks(self):
        t = np.linspace(0.0, 5.0, 101)
        with pytest.raises(er.FitError, match="local maxima"):
            er.fit_envelope_rate(t, np.exp(-t))


class TestDispersiveWindow:
    def test_quarter_box_over_wave_speed(self):
        # L = 16 pi, alpha = 1, d = 2: kappa_min = 1/8, speed = sqrt(8)
        want = math.pi * math.sqrt(2.0)
        assert er.dispersive_window(16.0 * math.pi, 1.0, 2) == pytest.approx(
            want, rel=1e-13
        )

    def test_advection_shrinks_window(self):
        base = er.dispersive_window(16.0 * math.pi, 1.0, 2)
        slower = er.dispersive_window(16.0 * math.pi, 1.0, 2, u_max=1.0)
        assert slower < base
