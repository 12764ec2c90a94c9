"""Static few-level machines and the three-level Lamb-style reduction."""

import math

import numpy as np
import pytest

from qtricycle.amplifier import AmplifierParams, currents, dressed_rates
from qtricycle.discrete import (
    FourLevelStatic,
    ThreeLevelStatic,
    epsilon_crit_low_temperature,
    four_level_gain,
    lamb_manifold_currents,
    lamb_steady_currents,
    manifold_otto_efficiencies,
    otto_and_carnot,
    static_gain,
    two_level_bound,
)
from qtricycle.errors import RegimeError


class TestThreeLevelStatic:
    def test_validation(self):
        with pytest.raises(ValueError):
            ThreeLevelStatic(6.0, 4.0, -0.3, 0.1)
        with pytest.raises(ValueError):
            ThreeLevelStatic(4.0, 6.0, 0.3, 0.1)
        assert ThreeLevelStatic(6.0, 4.0, 0.3, 0.1).nu == 2.0

    def test_gain_vanishes_at_carnot_ratio(self):
        # omega_c/omega_h = T_c/T_h makes both Boltzmann exponents -12
        assert static_gain(ThreeLevelStatic(6.0, 3.0, 0.5, 0.25)) == 0.0

    def test_gain_positive_above_carnot_ratio(self):
        assert static_gain(ThreeLevelStatic(6.0, 4.5, 0.5, 0.25)) > 0.0

    def test_gain_negative_below_carnot_ratio(self):
        assert static_gain(ThreeLevelStatic(6.0, 2.0, 0.5, 0.25)) < 0.0

    def test_cold_corner_value(self):
        # omega_c/omega_h = 2/3 exceeds T_c/T_h = 1/3, so the inversion is
        # positive (if barely: e^-20 against e^-40)
        got = static_gain(ThreeLevelStatic(6.0, 4.0, 0.3, 0.1))
        assert got == pytest.approx(math.exp(-20.0) - math.exp(-40.0), rel=1e-14)
        assert got > 0.0

    def test_otto_and_carnot_trivials(self):
        eta_o, _ = otto_and_carnot(ThreeLevelStatic(5.0, 5.0, 0.4, 0.2))
        assert eta_o == 0.0
        _, eta_c = otto_and_carnot(ThreeLevelStatic(6.0, 4.0, 0.3, 0.3))
        assert eta_c == 0.0

    def test_positive_gain_orders_the_bounds(self):
        rng = np.random.default_rng(11)
        checked = 0
        for _ in range(10_000):
            wh = rng.uniform(0.1, 10.0)
            wc = wh * rng.uniform(0.01, 1.0)
            th = rng.uniform(0.05, 5.0)
            tc = th * rng.uniform(0.01, 1.0)
            s = ThreeLevelStatic(wh, wc, th, tc)
            eta_o, eta_c = otto_and_carnot(s)
            if static_gain(s) >= 0.0:
                checked += 1
                assert eta_o <= eta_c + 1e-15
        assert checked > 100


class TestLambReduction:
    LOWT = dict(omega_h=6.0, omega_c=4.0, epsilon=0.4, T_h=0.5, T_c=0.22)

    def test_bose_statistics_rejected(self):
        p = AmplifierParams.symmetric(6.0, 4.0, 0.4, 0.5, 0.22, 0.01, 0.02)
        with pytest.raises(ValueError):
            lamb_steady_currents(p)
        with pytest.raises(ValueError):
            lamb_manifold_currents(p)

    def test_matches_bose_machine_when_occupations_small(self):
        pf = AmplifierParams.symmetric(
            **self.LOWT, kappa_h=0.01, kappa_c=0.02, statistics="fermi"
        )
        pb = AmplifierParams.symmetric(
            **self.LOWT, kappa_h=0.01, kappa_c=0.02, statistics="bose"
        )
        r = dressed_rates(pf)
        assert max(r.N_h_plus, r.N_h_minus, r.N_c_plus, r.N_c_minus) < 1e-3
        rf, rb = lamb_steady_currents(pf), currents(pb)
        assert rf.P == pytest.approx(rb.P, rel=0.01)
        assert rf.J_h == pytest.approx(rb.J_h, rel=0.01)
        assert rf.J_c == pytest.approx(rb.J_c, rel=0.01)

    def test_manifold_sums_reproduce_currents(self):
        p = AmplifierParams.symmetric(
            **self.LOWT, kappa_h=0.01, kappa_c=0.02, statistics="fermi"
        )
        rep = lamb_steady_currents(p)
        total_p, total_jh, total_jc = lamb_manifold_currents(p).totals
        assert total_p == pytest.approx(rep.P, rel=1e-12)
        assert total_jh == pytest.approx(rep.J_h, rel=1e-12)
        assert total_jc == pytest.approx(rep.J_c, rel=1e-12)

    def test_each_manifold_conserves_energy(self):
        p = AmplifierParams.symmetric(
            6.0, 4.0, 1.1, 0.9, 0.4, 0.03, 0.05, "fermi"
        )
        m = lamb_manifold_currents(p)
        scale = max(abs(m.J_h_upper), abs(m.J_h_lower), 1e-300)
        assert abs(m.P_upper + m.J_h_upper + m.J_c_upper) < 1e-14 * scale
        assert abs(m.P_lower + m.J_h_lower + m.J_c_lower) < 1e-14 * scale

    def test_saturated_efficiency_at_max_power(self):
        # warm fermi filters cap the current, dragging the efficiency at
        # maximum power below Curzon-Ahlborn, near eta_c - sqrt(T_c/w_h eta_c)
        tau = 0.25
        omega_h = 6.0
        for t_frac in (0.125, 0.2):
            T_c = t_frac * omega_h
            T_h = T_c / tau
            best_power, best_eta = 0.0, None
            for ratio in np.linspace(0.05, 0.95, 181):
                omega_c = ratio * omega_h
                p = AmplifierParams.symmetric(
                    omega_h, omega_c, 1e-3 * omega_c, T_h, T_c,
                    2e-3 * omega_c, 2e-3 * omega_c, "fermi",
                )
                rep = lamb_steady_currents(p)
                if rep.output_power > best_power:
                    best_power, best_eta = rep.output_power, rep.efficiency_or_cop
            eta_c = 1.0 - tau
            predicted = eta_c - math.sqrt(T_c / omega_h) * math.sqrt(eta_c)
            assert best_eta == pytest.approx(predicted, rel=0.20)
            assert best_eta < 1.0 - math.sqrt(tau)

    def test_fermi_power_never_beats_bose_at_high_temperature(self):
        # with every omega/T <= 0.1 the bose occupations dwarf the saturated
        # fermi ones, so the best fermi machine loses on the same grid
        omega_h, T_h, T_c = 1.0, 20.0, 10.0
        grid = [
            (r, ef, kf)
            for r in np.linspace(0.3, 0.95, 14)
            for ef in (0.01, 0.05, 0.2)
            for kf in (0.005, 0.02)
        ]

        def best(stats):
            out = 0.0
            for r, ef, kf in grid:
                omega_c = r * omega_h
                p = AmplifierParams.symmetric(
                    omega_h, omega_c, ef * omega_c, T_h, T_c,
                    kf * omega_c, kf * omega_c, stats,
                )
                out = max(out, currents(p).output_power)
            return out

        assert best("fermi") <= best("bose")


class TestCriticalDriveFormula:
    def test_cold_corner_value(self):
        got = epsilon_crit_low_temperature(6.0, 4.0, 0.3, 0.1)
        assert got == pytest.approx(3.0, rel=1e-12)

    def test_ratio_boundary_returns_zero(self):
        assert epsilon_crit_low_temperature(6.0, 3.0, 0.4, 0.2) == 0.0

    def test_no_window_signalled(self):
        with pytest.raises(RegimeError):
            epsilon_crit_low_temperature(6.0, 2.0, 0.4, 0.2)

    def test_no_gradient_signalled(self):
        with pytest.raises(RegimeError):
            epsilon_crit_low_temperature(6.0, 4.0, 0.3, 0.3)

    def test_matches_occupation_crossing(self):
        # the lowered hot and cold lines reach equal occupation exactly at
        # the closed-form drive; locate the crossing numerically
        from scipy.optimize import brentq

        from qtricycle.amplifier import occupation

        wh, wc, th, tc = 6.0, 4.0, 0.3, 0.1

        def imbalance(eps):
            return occupation(wh - eps, th, "fermi") - occupation(
                wc - eps, tc, "fermi"
            )

        root = brentq(imbalance, 1e-6, wc - 1e-6, xtol=1e-12)
        assert root == pytest.approx(
            epsilon_crit_low_temperature(wh, wc, th, tc), rel=0.01
        )

    def test_full_machine_root_agrees_at_low_temperature(self):
        from qtricycle.amplifier import epsilon_crit

        p = AmplifierParams.balanced(6.0, 4.0, 0.1, 0.3, 0.1, 0.05, "fermi")
        assert epsilon_crit(p) == pytest.approx(
            epsilon_crit_low_temperature(6.0, 4.0, 0.3, 0.1), rel=0.01
        )

    def test_lower_manifold_otto_hits_carnot_at_critical_drive(self):
        wh, wc, th, tc = 6.0, 4.0, 0.3, 0.1
        e_crit = epsilon_crit_low_temperature(wh, wc, th, tc)
        _, lower = manifold_otto_efficiencies(wh, wc, e_crit)
        assert lower == pytest.approx(1.0 - tc / th, rel=1e-12)

    def test_manifold_otto_ordering_and_domain(self):
        upper, lower = manifold_otto_efficiencies(6.0, 4.0, 1.0)
        assert upper == pytest.approx(2.0 / 7.0)
        assert lower == pytest.approx(2.0 / 5.0)
        assert upper < lower
        with pytest.raises(ValueError):
            manifold_otto_efficiencies(6.0, 4.0, 4.5)


class TestFourLevel:
    def test_validation_and_degenerate_resonance(self):
        with pytest.raises(ValueError):
            FourLevelStatic(5.0, 3.0, 2.5, 0.7, 0.7)
        assert FourLevelStatic(5.0, 3.0, 2.0, 0.7, 0.7).nu == 0.0

    def test_gain_boundary_reaches_carnot(self):
        # omega_h/T_h = (omega_c1+omega_c2)/T_c kills the gain, and there
        # the frequency-ratio efficiency equals the Carnot value
        s = FourLevelStatic(6.0, 1.2, 0.8, 0.3, 0.1)
        assert abs(four_level_gain(s)) < 1e-19
        assert s.otto_efficiency == pytest.approx(1.0 - 0.1 / 0.3, rel=1e-14)

    def test_degenerate_detailed_balance(self):
        # equal temperatures with the cold pair spanning the full pump gap
        s = FourLevelStatic(5.0, 3.0, 2.0, 0.7, 0.7)
        assert abs(four_level_gain(s)) < 1e-16

    def test_gain_sign_follows_ratio(self):
        assert four_level_gain(FourLevelStatic(6.0, 1.5, 1.0, 0.3, 0.1)) > 0.0
        assert four_level_gain(FourLevelStatic(6.0, 1.0, 0.5, 0.3, 0.1)) < 0.0

    def test_positive_gain_bounds_otto_by_carnot(self):
        rng = np.random.default_rng(23)
        checked = 0
        for _ in range(5000):
            wh = rng.uniform(1.0, 10.0)
            wc1 = rng.uniform(0.05, 0.6) * wh
            wc2 = rng.uniform(0.05, 0.9) * (wh - wc1)
            th = rng.uniform(0.05, 5.0)
            tc = th * rng.uniform(0.02, 1.0)
            s = FourLevelStatic(wh, wc1, wc2, th, tc)
            if four_level_gain(s) >= 0.0:
                checked += 1
                assert s.otto_efficiency <= 1.0 - tc / th + 1e-12
        assert checked > 100


class TestTwoLevelBound:
    def test_constant(self):
        assert two_level_bound() == 0.5

    def test_applicable_when_carnot_above_half(self):
        assert two_level_bound(1.0, 0.3) == 0.5

    def test_inapplicable_flagged(self):
        with pytest.raises(RegimeError):
            two_level_bound(1.0, 0.6)

    def test_half_supplied_temperatures(self):
        with pytest.raises(ValueError):
            two_level_bound(T_h=1.0)
