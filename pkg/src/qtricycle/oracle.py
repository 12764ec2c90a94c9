"""Brute-force Lindblad cross-checks for the closed-form machine models.

Every model in this package whose steady state is written down analytically
has a counterpart here that builds the full vectorized generator on a
truncated Fock (or spin) space, extracts the stationary state numerically,
and measures currents operator by operator.  Agreement between the two routes
is what the acceptance suite certifies; nothing in this module reuses the
closed forms it is checking.

Oracle outputs are plain dictionaries rather than validated report types:
a disagreement or a law violation must surface as data, not as a constructor
exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .amplifier import AmplifierParams, occupation
from .errors import TruncationError
from .fridge import FridgeParams, NoiseSpec, dressed_pair, poisson_noise_params
from .operators import (
    GKSSector,
    HilbertSpace,
    LindbladTerm,
    Operator,
    build_liouvillian,
    channel_current,
    ladder_pair,
    steady_state,
    tensor_embed,
)

__all__ = [
    "amplifier_oracle",
    "gaussian_noise_oracle",
    "poisson_noise_oracle",
    "work_terminal_comparison",
    "two_mode_setup",
]

#: relative shift of observables allowed between truncation and truncation + 4
TRUNCATION_GATE = 1e-6


@dataclass(frozen=True)
class TwoModeSetup:
    """Operators shared by the driven-amplifier and noise-fridge oracles."""

    space: HilbertSpace
    a: Operator
    b: Operator
    number_hot: np.ndarray
    number_cold: np.ndarray
    swap: np.ndarray  # a^dag b + a b^dag
    quad: np.ndarray  # i (a b^dag - a^dag b)


def two_mode_setup(truncation: int) -> TwoModeSetup:
    """Two truncated oscillator modes and their collective bilinears."""
    space = HilbertSpace((("hot_mode", truncation), ("cold_mode", truncation)))
    a_local, _ = ladder_pair(truncation, label="hot_mode")
    b_local, _ = ladder_pair(truncation, label="cold_mode")
    a = tensor_embed(a_local, space, "hot_mode")
    b = tensor_embed(b_local, space, "cold_mode")
    am, bm = a.matrix, b.matrix
    adag, bdag = am.conj().T, bm.conj().T
    return TwoModeSetup(
        space=space,
        a=a,
        b=b,
        number_hot=adag @ am,
        number_cold=bdag @ bm,
        swap=adag @ bm + am @ bdag,
        quad=1j * (am @ bdag - adag @ bm),
    )


def _filtered_sectors(
    ops: tuple[Operator, Operator],
    gamma_plus: float,
    gamma_minus: float,
    cross_sign: float,
    channel: str,
) -> GKSSector:
    """Dissipative block of one bath acting on the two dressed modes.

    The bath couples to ``(d_plus +/- d_minus) / sqrt(2)``; filtering at the
    two dressed lines gives diagonal weights ``gamma/2`` and a cross weight of
    half the mean rate, with the sign of the mode combination carried by
    ``cross_sign``.
    """
    cross = cross_sign * 0.25 * (gamma_plus + gamma_minus)
    coeff = np.array(
        [[0.5 * gamma_plus, cross], [cross, 0.5 * gamma_minus]], dtype=complex
    )
    return GKSSector(ops, coeff, channel=channel)


def _amplifier_generator(p: AmplifierParams, truncation: int):
    if p.statistics != "bose":
        raise ValueError(
            "the brute-force amplifier oracle covers bose statistics only"
        )
    setup = two_mode_setup(truncation)
    space = setup.space
    root_half = 1.0 / math.sqrt(2.0)
    d_plus = Operator(space, root_half * (setup.a.matrix + setup.b.matrix))
    d_minus = Operator(space, root_half * (setup.a.matrix - setup.b.matrix))
    lines = {
        "hot": (
            p.gamma_h_plus,
            p.gamma_h_minus,
            p.omega_h,
            p.T_h,
            +1.0,
        ),
        "cold": (
            p.gamma_c_plus,
            p.gamma_c_minus,
            p.omega_c,
            p.T_c,
            -1.0,
        ),
    }
    terms = []
    for channel, (g_plus, g_minus, omega, temp, sign) in lines.items():
        up_plus = g_plus * math.exp(-(omega + p.epsilon) / temp)
        up_minus = g_minus * math.exp(-(omega - p.epsilon) / temp)
        terms.append(
            _filtered_sectors(
                (d_plus, d_minus), g_plus, g_minus, sign, channel
            )
        )
        terms.append(
            _filtered_sectors(
                (d_plus.dagger(), d_minus.dagger()),
                up_plus,
                up_minus,
                sign,
                channel,
            )
        )
    frame = Operator(space, p.epsilon * setup.swap, hermitian=True)
    gen = build_liouvillian(frame, terms)
    measured = Operator(
        space,
        p.omega_h * setup.number_hot
        + p.omega_c * setup.number_cold
        + p.epsilon * setup.swap,
        hermitian=True,
    )
    return setup, gen, measured


def _amplifier_observables(p: AmplifierParams, truncation: int) -> dict[str, float]:
    setup, gen, measured = _amplifier_generator(p, truncation)
    rho = steady_state(gen, method="direct" if truncation > 4 else "auto")
    mat = rho.matrix

    def expect(op: np.ndarray) -> float:
        return float(np.trace(op @ mat).real)

    w = expect(setup.number_hot + setup.number_cold)
    x = expect(setup.number_hot - setup.number_cold)
    y = expect(setup.quad)
    z = expect(setup.swap)
    j_h = channel_current(gen.channel("hot"), rho, measured)
    j_c = channel_current(gen.channel("cold"), rho, measured)
    power = p.nu * p.epsilon * y
    return {
        "W": w,
        "X": x,
        "Y": y,
        "Z": z,
        "J_h": j_h,
        "J_c": j_c,
        "P": power,
        "first_law_residual": power + j_h + j_c,
        "entropy_rate": -j_h / p.T_h - j_c / p.T_c,
        "top_level_population": float(
            np.trace(mat.reshape(truncation, truncation, truncation, truncation)[
                truncation - 1, :, truncation - 1, :
            ]).real
        ),
    }


def _mode_thermal_terms(op: Operator, occupancy: float, rate: float, channel: str):
    return [
        LindbladTerm(op, rate * (occupancy + 1.0), channel),
        LindbladTerm(op.dagger(), rate * occupancy, channel),
    ]


def _top_population(mat: np.ndarray, truncation: int) -> float:
    grid = mat.reshape(truncation, truncation, truncation, truncation)
    hot_top = float(np.trace(grid[truncation - 1, :, truncation - 1, :]).real)
    cold_top = float(np.trace(grid[:, truncation - 1, :, truncation - 1]).real)
    return max(hot_top, cold_top)


def _gate_currents(coarse: dict, fine: dict, keys, truncation: int) -> dict:
    for key in keys:
        scale = max(abs(fine[key]), abs(coarse[key]), 1e-300)
        shift = abs(fine[key] - coarse[key]) / scale
        if shift > TRUNCATION_GATE and abs(fine[key]) > 1e-14:
            raise TruncationError(
                f"observable {key} shifted by {shift:.2e} relative between "
                f"truncations {truncation} and {truncation + 4}"
            )
    fine["truncation"] = truncation + 4
    return fine


def _noise_fridge_observables(
    omega_up: float,
    omega_down: float,
    occ_up: float,
    occ_down: float,
    gamma_up: float,
    gamma_down: float,
    noise_op_of,
    eta: float,
    truncation: int,
) -> dict[str, float]:
    """Currents of two damped modes stirred by a hermitian noise operator.

    The two modes sit at ``omega_up`` and ``omega_down`` with their own
    thermal contacts; ``noise_op_of(setup)`` builds the operator the white
    noise couples to, and the noise enters as a both-ways channel of rate
    ``2 * eta``.
    """
    setup = two_mode_setup(truncation)
    space = setup.space
    hamiltonian = Operator(
        space,
        omega_up * setup.number_hot + omega_down * setup.number_cold,
        hermitian=True,
    )
    terms = _mode_thermal_terms(setup.a, occ_up, gamma_up, "hot")
    terms += _mode_thermal_terms(setup.b, occ_down, gamma_down, "cold")
    terms.append(
        LindbladTerm(Operator(space, noise_op_of(setup), hermitian=True), 2.0 * eta, "work")
    )
    gen = build_liouvillian(hamiltonian, terms)
    rho = steady_state(gen, method="direct" if truncation > 4 else "auto")
    j_h = channel_current(gen.channel("hot"), rho, hamiltonian)
    j_c = channel_current(gen.channel("cold"), rho, hamiltonian)
    j_w = channel_current(gen.channel("work"), rho, hamiltonian)
    return {
        "J_h": j_h,
        "J_c": j_c,
        "P": j_w,
        "first_law_residual": j_h + j_c + j_w,
        "occupation_up": float(np.trace(setup.number_hot @ rho.matrix).real),
        "occupation_down": float(np.trace(setup.number_cold @ rho.matrix).real),
        "top_level_population": _top_population(rho.matrix, truncation),
    }


def gaussian_noise_oracle(
    p: FridgeParams,
    eta: float,
    truncation: int = 7,
    *,
    convergence_gate: bool = True,
) -> dict[str, float]:
    """Brute-force run of the gaussian-noise refrigerator.

    Two bare modes, each with its thermal contact, and white noise of
    strength ``eta`` rocking the swap between them.  Returns the measured
    channel currents; with the gate on, values must be stable against a
    truncation increase of four.
    """
    if p.statistics != "bose":
        raise ValueError("the brute-force noise oracle covers bose statistics only")

    def run(tr: int) -> dict[str, float]:
        return _noise_fridge_observables(
            p.omega_h,
            p.omega_c,
            occupation(p.omega_h, p.T_h),
            occupation(p.omega_c, p.T_c),
            p.Gamma_h,
            p.Gamma_c,
            lambda s: s.swap,
            eta,
            tr,
        )

    coarse = run(truncation)
    if not convergence_gate:
        coarse["truncation"] = truncation
        return coarse
    return _gate_currents(coarse, run(truncation + 4), ("J_h", "J_c", "P"), truncation)


def poisson_noise_oracle(
    p: FridgeParams,
    n: NoiseSpec,
    truncation: int = 7,
    *,
    convergence_gate: bool = True,
) -> dict[str, float]:
    """Brute-force run of the poisson-noise refrigerator in its rotated frame.

    The impulse-induced shift mixes the two filters into normal modes; this
    oracle damps those normal modes thermally at their own frequencies and
    couples the noise through the rotated swap operator, measuring all three
    currents numerically.
    """
    if p.statistics != "bose":
        raise ValueError("the brute-force noise oracle covers bose statistics only")
    shift, eta = poisson_noise_params(n)
    pair = dressed_pair(p.omega_h, p.omega_c, shift)
    s = math.sin(2.0 * pair.theta)
    c = math.cos(2.0 * pair.theta)

    def run(tr: int) -> dict[str, float]:
        out = _noise_fridge_observables(
            pair.Omega_plus,
            pair.Omega_minus,
            occupation(pair.Omega_plus, p.T_h),
            occupation(pair.Omega_minus, p.T_c),
            p.Gamma_h,
            p.Gamma_c,
            lambda st: s * (st.number_hot - st.number_cold) + c * st.swap,
            eta,
            tr,
        )
        out["shift"] = shift
        out["eta"] = eta
        return out

    coarse = run(truncation)
    if not convergence_gate:
        coarse["truncation"] = truncation
        return coarse
    return _gate_currents(coarse, run(truncation + 4), ("J_h", "J_c", "P"), truncation)


def work_terminal_comparison(
    omega_h: float,
    omega_c: float,
    T_h: float,
    T_c: float,
    Gamma_h: float,
    Gamma_c: float,
    eta: float,
    N_w: float = 1.0e4,
    truncation: int = 7,
) -> dict[str, float]:
    """One machine, two work terminals: white noise versus a hot thermal bath.

    Both variants damp the same two modes with the same thermal contacts.
    The first drives the swap with white noise of strength ``eta``; the
    second couples a thermal bath of occupancy ``N_w`` to the swap
    transition with its rate scaled so the upward flow matches ``2 * eta``.
    As ``N_w`` grows the two should agree, the residual gap measuring the
    distance to the singular-bath limit.
    """
    setup = two_mode_setup(truncation)
    space = setup.space
    hamiltonian = Operator(
        space,
        omega_h * setup.number_hot + omega_c * setup.number_cold,
        hermitian=True,
    )
    base = _mode_thermal_terms(setup.a, occupation(omega_h, T_h), Gamma_h, "hot")
    base += _mode_thermal_terms(setup.b, occupation(omega_c, T_c), Gamma_c, "cold")

    noise_terms = base + [
        LindbladTerm(Operator(space, setup.swap, hermitian=True), 2.0 * eta, "work")
    ]
    gamma_w = 2.0 * eta / N_w
    transfer_down = Operator(space, setup.b.matrix.conj().T @ setup.a.matrix)
    thermal_terms = base + [
        LindbladTerm(transfer_down, gamma_w * (N_w + 1.0), "work"),
        LindbladTerm(transfer_down.dagger(), gamma_w * N_w, "work"),
    ]

    out: dict[str, float] = {}
    for tag, terms in (("noise", noise_terms), ("thermal", thermal_terms)):
        gen = build_liouvillian(hamiltonian, terms)
        rho = steady_state(gen, method="direct" if truncation > 4 else "auto")
        for name in ("hot", "cold", "work"):
            out[f"J_{name[0]}_{tag}"] = channel_current(
                gen.channel(name), rho, hamiltonian
            )
        out[f"top_level_population_{tag}"] = _top_population(rho.matrix, truncation)
    return out


def amplifier_oracle(
    p: AmplifierParams, truncation: int = 6, *, convergence_gate: bool = True
) -> dict[str, float]:
    """Steady moments and currents of the driven amplifier from first principles.

    Builds the dressed-mode generator on a truncated two-oscillator space and
    measures everything numerically.  With the gate enabled the computation
    repeats at ``truncation + 4`` and the refined values are returned only if
    no primary observable moved by more than ``TRUNCATION_GATE`` relative.

    Raises
    ------
    TruncationError
        If the two truncations disagree beyond the gate.
    """
    coarse = _amplifier_observables(p, truncation)
    if not convergence_gate:
        coarse["truncation"] = truncation
        return coarse
    fine = _amplifier_observables(p, truncation + 4)
    for key in ("P", "J_h", "J_c", "W", "X", "Y", "Z"):
        scale = max(abs(fine[key]), abs(coarse[key]), 1e-300)
        shift = abs(fine[key] - coarse[key]) / scale
        if shift > TRUNCATION_GATE and abs(fine[key]) > 1e-14:
            raise TruncationError(
                f"observable {key} shifted by {shift:.2e} relative between "
                f"truncations {truncation} and {truncation + 4}"
            )
    fine["truncation"] = truncation + 4
    return fine
