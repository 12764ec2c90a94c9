"""Brute-force two-mode generator versus the four-variable reduction.

The oracle rebuilds the full vectorized generator from raw operators and
extracts currents from channel bookkeeping, sharing no algebra with the
closed forms under test.
"""

import numpy as np
import pytest

from qtricycle.amplifier import (
    AmplifierParams,
    currents,
    currents_from_state,
    su2_steady_state,
)
from qtricycle.errors import TruncationError
from qtricycle.fridge import (
    FridgeParams,
    NoiseSpec,
    gaussian_noise_cooling,
    poisson_noise_cooling,
    poisson_noise_params,
)
from qtricycle.oracle import (
    amplifier_oracle,
    gaussian_noise_oracle,
    poisson_noise_oracle,
    two_mode_setup,
    work_terminal_comparison,
)

OBSERVABLES = ("P", "J_h", "J_c", "W", "X", "Y", "Z")

# cold enough that an 8-level ladder already holds the steady state
SYMMETRIC_POINT = AmplifierParams.symmetric(1.5, 1.0, 0.15, 0.4, 0.2, 0.04, 0.07)
ASYMMETRIC_POINT = AmplifierParams(1.5, 1.0, 0.15, 0.4, 0.2, 0.03, 0.08, 0.05, 0.11)


def relerr(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / scale


class TestSetup:
    def test_mode_labels_and_dims(self):
        setup = two_mode_setup(5)
        assert setup.space.labels == ("hot_mode", "cold_mode")
        assert setup.space.total_dim == 25

    def test_swap_and_quadrature_are_hermitian(self):
        setup = two_mode_setup(4)
        for m in (setup.swap, setup.quad, setup.number_hot, setup.number_cold):
            assert np.allclose(m, m.conj().T)

    def test_swap_quad_commutator(self):
        # [swap, quad] = 2i (number_hot - number_cold) wherever neither
        # ladder touches its top level
        setup = two_mode_setup(7)
        comm = setup.swap @ setup.quad - setup.quad @ setup.swap
        x = setup.number_hot - setup.number_cold
        keep = [h * 7 + c for h in range(5) for c in range(5)]
        inner = np.ix_(keep, keep)
        assert np.allclose(comm[inner], (2j * x)[inner], atol=1e-12)


class TestAgreement:
    def test_symmetric_point_all_observables(self):
        result = amplifier_oracle(SYMMETRIC_POINT, truncation=6)
        rep = currents(SYMMETRIC_POINT)
        state = su2_steady_state(SYMMETRIC_POINT)
        closed = dict(
            P=rep.P, J_h=rep.J_h, J_c=rep.J_c,
            W=state.W, X=state.X, Y=state.Y, Z=state.Z,
        )
        for name in OBSERVABLES:
            assert relerr(result[name], closed[name]) < 1e-12, name

    def test_asymmetric_point_all_observables(self):
        result = amplifier_oracle(ASYMMETRIC_POINT, truncation=6)
        state = su2_steady_state(ASYMMETRIC_POINT, method="solve")
        rep = currents_from_state(ASYMMETRIC_POINT, state)
        closed = dict(
            P=rep.P, J_h=rep.J_h, J_c=rep.J_c,
            W=state.W, X=state.X, Y=state.Y, Z=state.Z,
        )
        for name in OBSERVABLES:
            assert relerr(result[name], closed[name]) < 1e-12, name

    def test_oracle_internal_first_law(self):
        result = amplifier_oracle(SYMMETRIC_POINT, truncation=6)
        scale = max(abs(result["J_h"]), abs(result["J_c"]), 1e-300)
        assert abs(result["first_law_residual"]) < 1e-10 * scale

    def test_power_is_drive_times_coherence(self):
        result = amplifier_oracle(SYMMETRIC_POINT, truncation=6)
        p = SYMMETRIC_POINT
        assert result["P"] == pytest.approx(p.nu * p.epsilon * result["Y"], rel=1e-12)


class TestGuards:
    def test_warm_bath_trips_convergence_gate(self):
        # occupations too large for the requested ladder: the paired runs
        # disagree and the gate must refuse rather than return drifting values
        warm = AmplifierParams.symmetric(1.5, 1.0, 0.15, 0.8, 0.5, 0.04, 0.07)
        with pytest.raises(TruncationError):
            amplifier_oracle(warm, truncation=4)

    def test_gate_can_be_disabled(self):
        warm = AmplifierParams.symmetric(1.5, 1.0, 0.15, 0.8, 0.5, 0.04, 0.07)
        result = amplifier_oracle(warm, truncation=4, convergence_gate=False)
        assert "P" in result

    def test_fermi_rejected(self):
        p = AmplifierParams.symmetric(1.5, 1.0, 0.15, 0.4, 0.2, 0.04, 0.07, "fermi")
        with pytest.raises(ValueError):
            amplifier_oracle(p)

    def test_truncation_floor(self):
        with pytest.raises(ValueError):
            two_mode_setup(1)


FRIDGE_POINT = FridgeParams(
    6.0, 4.0, T_h=2.0, T_c=1.6, Gamma_h=0.03, Gamma_c=0.05
)


class TestNoiseFridgeOracles:
    def test_gaussian_closed_form_is_exact(self):
        # the gate promotes the run to truncation 13, where the remaining
        # disagreement is ladder leakage only
        result = gaussian_noise_oracle(FRIDGE_POINT, 0.02, truncation=9)
        closed = gaussian_noise_cooling(FRIDGE_POINT, NoiseSpec.gaussian(0.02))
        assert result["truncation"] == 13
        for key, want in (("J_h", closed.J_h), ("J_c", closed.J_c), ("P", closed.P)):
            assert relerr(result[key], want) < 1e-10, key
        assert abs(result["first_law_residual"]) < 1e-12 * abs(closed.J_c)
        assert result["top_level_population"] < 1e-10

    def test_poisson_closed_form_is_exact(self):
        spec = NoiseSpec.poisson(0.5, "delta", xi0=0.9)
        result = poisson_noise_oracle(FRIDGE_POINT, spec, truncation=9)
        closed = poisson_noise_cooling(FRIDGE_POINT, spec)
        for key, want in (("J_h", closed.J_h), ("J_c", closed.J_c), ("P", closed.P)):
            assert relerr(result[key], want) < 1e-10, key
        assert abs(result["first_law_residual"]) < 1e-12 * abs(closed.J_c)
        assert (result["shift"], result["eta"]) == poisson_noise_params(spec)

    def test_short_ladder_trips_the_gate(self):
        spec = NoiseSpec.poisson(0.5, "delta", xi0=0.9)
        with pytest.raises(TruncationError):
            poisson_noise_oracle(FRIDGE_POINT, spec, truncation=4)

    def test_gate_can_be_disabled(self):
        result = gaussian_noise_oracle(
            FRIDGE_POINT, 0.02, truncation=5, convergence_gate=False
        )
        assert result["truncation"] == 5

    def test_fermi_rejected(self):
        fermi_point = FridgeParams(
            6.0, 4.0, T_h=2.0, T_c=1.6, Gamma_h=0.03, Gamma_c=0.05,
            statistics="fermi",
        )
        with pytest.raises(ValueError):
            gaussian_noise_oracle(fermi_point, 0.02)


class TestWorkTerminal:
    ARGS = (6.0, 4.0, 2.0, 1.6, 0.03, 0.05, 0.02)

    @staticmethod
    def gap(out) -> float:
        return abs(out["J_c_thermal"] - out["J_c_noise"]) / abs(out["J_c_noise"])

    def test_hot_thermal_bath_reproduces_white_noise(self):
        out = work_terminal_comparison(*self.ARGS, N_w=1.0e4, truncation=7)
        gap = self.gap(out)
        assert gap == pytest.approx(1.9885372263520417e-4, rel=1e-6)
        assert gap < 1e-3

    def test_distance_shrinks_inversely_with_occupancy(self):
        near = self.gap(work_terminal_comparison(*self.ARGS, N_w=1.0e3, truncation=7))
        far = self.gap(work_terminal_comparison(*self.ARGS, N_w=1.0e4, truncation=7))
        assert near / far == pytest.approx(10.0, rel=0.05)

    def test_both_variants_balance_energy(self):
        out = work_terminal_comparison(*self.ARGS, N_w=1.0e4, truncation=7)
        scale = abs(out["J_c_noise"])
        for tag in ("noise", "thermal"):
            residual = out[f"J_h_{tag}"] + out[f"J_c_{tag}"] + out[f"J_w_{tag}"]
            assert abs(residual) < 1e-10 * scale
            assert out[f"top_level_population_{tag}"] < 1e-6
