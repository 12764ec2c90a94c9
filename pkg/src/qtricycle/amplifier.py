"""Coherently driven two-mode amplifier between a hot and a cold bath.

Two filter modes (bose or fermi) sit at frequencies ``omega_h`` and
``omega_c``, each damped by its own bath, while a classical field of strength
``epsilon`` swaps excitations between them on resonance (``nu = omega_h -
omega_c``).  The drive splits each filter into a pair of dressed lines at
``omega +/- epsilon`` with their own bath occupations.  The collective
variables

* ``W``: total excitation number,
* ``X``: population imbalance between the modes,
* ``Y``: the drive-quadrature coherence (power output is ``nu * epsilon * Y``),
* ``Z``: the in-phase coherence,

close under the dissipative dynamics, so the steady state follows from a
4 x 4 linear system and, when each bath damps both of its dressed lines at
the same rate, from closed-form expressions.  This module evaluates those
steady states, the output power, heat currents, efficiency, the critical
drive where gain dies, the heat-leak entropy floor, and the degradation of
power under external dephasing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, RegimeError, SteadyStateError, ZeroGainError
from .reports import CurrentsReport, assemble_report

__all__ = [
    "AmplifierParams",
    "DressedRates",
    "SU2State",
    "occupation",
    "relaxation_rate",
    "bare_rate_for",
    "dressed_rates",
    "su2_steady_state",
    "gains",
    "currents",
    "currents_from_state",
    "currents_strong_drive",
    "efficiency",
    "efficiency_weak_drive",
    "epsilon_crit",
    "heat_leak_entropy",
    "dephasing_power_degradation",
]

#: relative tolerance for treating the two dressed rates of a bath as equal
RATE_SYMMETRY_RTOL = 1e-9
#: relative tolerance on the resonance condition nu = omega_h - omega_c
RESONANCE_RTOL = 1e-9

_STATISTICS = ("bose", "fermi")


def occupation(omega: float, T: float, statistics: str = "bose") -> float:
    """Equilibrium occupation of a mode at frequency ``omega`` and temperature ``T``.

    Bose: ``1 / (exp(omega/T) - 1)``.  Fermi: ``1 / (exp(omega/T) + 1)``.
    Evaluated in a form stable for arbitrarily large ``omega / T``.
    """
    if statistics not in _STATISTICS:
        raise ValueError(f"statistics must be one of {_STATISTICS}, got {statistics!r}")
    if not (omega > 0.0 and T > 0.0):
        raise ValueError(f"need omega > 0 and T > 0, got omega={omega}, T={T}")
    decay = math.exp(-omega / T)
    if statistics == "bose":
        return decay / (-math.expm1(-omega / T))
    return decay / (1.0 + decay)


def relaxation_rate(gamma: float, omega: float, T: float, statistics: str) -> float:
    """Dressed-line relaxation rate from the bare coupling ``gamma``.

    Bose: ``gamma * (1 - exp(-omega/T))``.  Fermi: ``gamma * (1 + exp(-omega/T))``.
    Either way ``rate * occupation = gamma * exp(-omega/T)`` (detailed balance).
    """
    if statistics not in _STATISTICS:
        raise ValueError(f"statistics must be one of {_STATISTICS}, got {statistics!r}")
    if not (omega > 0.0 and T > 0.0):
        raise ValueError(f"need omega > 0 and T > 0, got omega={omega}, T={T}")
    if statistics == "bose":
        return gamma * (-math.expm1(-omega / T))
    return gamma * (1.0 + math.exp(-omega / T))


def bare_rate_for(kappa: float, omega: float, T: float, statistics: str) -> float:
    """Bare coupling that realizes the dressed relaxation rate ``kappa``."""
    factor = relaxation_rate(1.0, omega, T, statistics)
    return kappa / factor


@dataclass(frozen=True)
class AmplifierParams:
    """Parameters of the driven two-mode amplifier.

    ``gamma_*`` are the bare bath couplings of the four dressed lines; the
    statistics-weighted relaxation rates derive from them through
    :func:`dressed_rates`.  ``nu`` may be omitted and defaults to the resonant
    value ``omega_h - omega_c``; any other value is rejected because every
    closed form here assumes resonance.
    """

    omega_h: float
    omega_c: float
    epsilon: float
    T_h: float
    T_c: float
    gamma_h_plus: float
    gamma_h_minus: float
    gamma_c_plus: float
    gamma_c_minus: float
    statistics: str = "bose"
    nu: float | None = None

    def __post_init__(self) -> None:
        if self.statistics not in _STATISTICS:
            raise ValueError(
                f"statistics must be one of {_STATISTICS}, got {self.statistics!r}"
            )
        if not (self.omega_c > 0.0 and self.omega_h >= self.omega_c):
            raise ValueError(
                f"need omega_h >= omega_c > 0, got ({self.omega_h}, {self.omega_c})"
            )
        if not (self.T_c > 0.0 and self.T_h >= self.T_c):
            raise ValueError(f"need T_h >= T_c > 0, got ({self.T_h}, {self.T_c})")
        if not self.epsilon >= 0.0:
            raise ValueError(f"drive strength must be >= 0, got {self.epsilon}")
        if not self.omega_c - self.epsilon > 0.0:
            raise RegimeError(
                f"dressed frequency omega_c - epsilon = "
                f"{self.omega_c - self.epsilon} must stay positive"
            )
        for name in ("gamma_h_plus", "gamma_h_minus", "gamma_c_plus", "gamma_c_minus"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {val}")
        resonant = self.omega_h - self.omega_c
        if self.nu is None:
            object.__setattr__(self, "nu", resonant)
        elif abs(self.nu - resonant) > RESONANCE_RTOL * max(1.0, self.omega_h):
            raise RegimeError(
                f"off resonance: nu = {self.nu} but omega_h - omega_c = {resonant}; "
                "the steady-state forms assume the resonant drive"
            )

    @classmethod
    def symmetric(
        cls,
        omega_h: float,
        omega_c: float,
        epsilon: float,
        T_h: float,
        T_c: float,
        kappa_h: float,
        kappa_c: float,
        statistics: str = "bose",
    ) -> "AmplifierParams":
        """Choose bare couplings so each bath damps both dressed lines at one rate.

        The closed-form steady state applies exactly in this limit.
        """
        return cls(
            omega_h=omega_h,
            omega_c=omega_c,
            epsilon=epsilon,
            T_h=T_h,
            T_c=T_c,
            gamma_h_plus=bare_rate_for(kappa_h, omega_h + epsilon, T_h, statistics),
            gamma_h_minus=bare_rate_for(kappa_h, omega_h - epsilon, T_h, statistics),
            gamma_c_plus=bare_rate_for(kappa_c, omega_c + epsilon, T_c, statistics),
            gamma_c_minus=bare_rate_for(kappa_c, omega_c - epsilon, T_c, statistics),
            statistics=statistics,
        )

    @classmethod
    def balanced(
        cls,
        omega_h: float,
        omega_c: float,
        epsilon: float,
        T_h: float,
        T_c: float,
        gamma: float,
        statistics: str = "bose",
    ) -> "AmplifierParams":
        """Symmetric parameters with the same dressed rate on all four lines."""
        return cls.symmetric(
            omega_h, omega_c, epsilon, T_h, T_c, gamma, gamma, statistics
        )


@dataclass(frozen=True)
class DressedRates:
    """Occupations and relaxation rates of the four dressed lines, plus sums.

    ``Gamma_h`` and ``Gamma_c`` are per-bath totals, ``Gamma_plus`` and
    ``Gamma_minus`` per-manifold totals, and ``Gamma_T`` the grand total.
    """

    N_h_plus: float
    N_h_minus: float
    N_c_plus: float
    N_c_minus: float
    Gamma_h_plus: float
    Gamma_h_minus: float
    Gamma_c_plus: float
    Gamma_c_minus: float
    Gamma_T: float
    Gamma_plus: float
    Gamma_minus: float
    Gamma_h: float
    Gamma_c: float

    def symmetric_rates(self, rtol: float = RATE_SYMMETRY_RTOL) -> bool:
        """Whether each bath damps its two dressed lines at equal rates."""
        scale_h = max(self.Gamma_h_plus, self.Gamma_h_minus, 1e-300)
        scale_c = max(self.Gamma_c_plus, self.Gamma_c_minus, 1e-300)
        return (
            abs(self.Gamma_h_plus - self.Gamma_h_minus) <= rtol * scale_h
            and abs(self.Gamma_c_plus - self.Gamma_c_minus) <= rtol * scale_c
        )


@dataclass(frozen=True)
class SU2State:
    """Steady expectation values of the four collective mode variables."""

    W: float
    X: float
    Y: float
    Z: float


def dressed_rates(p: AmplifierParams) -> DressedRates:
    """Occupations and statistics-weighted rates at the four dressed frequencies."""
    eps = p.epsilon
    freqs = {
        "h_plus": (p.omega_h + eps, p.T_h, p.gamma_h_plus),
        "h_minus": (p.omega_h - eps, p.T_h, p.gamma_h_minus),
        "c_plus": (p.omega_c + eps, p.T_c, p.gamma_c_plus),
        "c_minus": (p.omega_c - eps, p.T_c, p.gamma_c_minus),
    }
    occ = {}
    rate = {}
    for key, (omega, temp, gamma) in freqs.items():
        if omega <= 0.0:
            raise RegimeError(f"dressed frequency for line {key} is {omega} <= 0")
        occ[key] = occupation(omega, temp, p.statistics)
        rate[key] = relaxation_rate(gamma, omega, temp, p.statistics)
    gamma_h = rate["h_plus"] + rate["h_minus"]
    gamma_c = rate["c_plus"] + rate["c_minus"]
    return DressedRates(
        N_h_plus=occ["h_plus"],
        N_h_minus=occ["h_minus"],
        N_c_plus=occ["c_plus"],
        N_c_minus=occ["c_minus"],
        Gamma_h_plus=rate["h_plus"],
        Gamma_h_minus=rate["h_minus"],
        Gamma_c_plus=rate["c_plus"],
        Gamma_c_minus=rate["c_minus"],
        Gamma_T=gamma_h + gamma_c,
        Gamma_plus=rate["h_plus"] + rate["c_plus"],
        Gamma_minus=rate["h_minus"] + rate["c_minus"],
        Gamma_h=gamma_h,
        Gamma_c=gamma_c,
    )


def gains(p: AmplifierParams) -> tuple[float, float]:
    """Population gains driving power output and the heat leak.

    Returns ``(G1, G2)`` with ``G1 = (N_h+ + N_h-) - (N_c+ + N_c-)`` and
    ``G2 = (N_h+ - N_h-) - (N_c+ - N_c-)``.  Amplification requires
    ``G1 > 0``; ``G2`` measures the asymmetry between the dressed manifolds,
    which feeds the parasitic heat leak.
    """
    r = dressed_rates(p)
    g1 = (r.N_h_plus + r.N_h_minus) - (r.N_c_plus + r.N_c_minus)
    g2 = (r.N_h_plus - r.N_h_minus) - (r.N_c_plus - r.N_c_minus)
    return g1, g2


def _motion_matrix(r: DressedRates, epsilon: float, dephasing: float) -> np.ndarray:
    """Damping matrix M of the steady condition M v = s, v = (W, X, Y, Z)."""
    qt = 0.25 * r.Gamma_T
    dh = 0.25 * (r.Gamma_h - r.Gamma_c)
    dm = 0.25 * (r.Gamma_plus - r.Gamma_minus)
    four_r = 4.0 * dephasing
    return np.array(
        [
            [qt, dh, 0.0, dm],
            [dh, qt + four_r, -2.0 * epsilon, 0.0],
            [0.0, 2.0 * epsilon, qt + four_r, 0.0],
            [dm, 0.0, 0.0, qt],
        ]
    )


def _source_vector(r: DressedRates) -> np.ndarray:
    sh = r.Gamma_h_plus * r.N_h_plus + r.Gamma_h_minus * r.N_h_minus
    sc = r.Gamma_c_plus * r.N_c_plus + r.Gamma_c_minus * r.N_c_minus
    ah = r.Gamma_h_plus * r.N_h_plus - r.Gamma_h_minus * r.N_h_minus
    ac = r.Gamma_c_plus * r.N_c_plus - r.Gamma_c_minus * r.N_c_minus
    return 0.5 * np.array([sh + sc, sh - sc, 0.0, ah + ac])


def _closed_form_state(p: AmplifierParams, r: DressedRates) -> SU2State:
    kappa_h = 0.5 * (r.Gamma_h_plus + r.Gamma_h_minus)
    kappa_c = 0.5 * (r.Gamma_c_plus + r.Gamma_c_minus)
    eps = p.epsilon
    det = kappa_h * kappa_c + 4.0 * eps * eps
    sig_h = r.N_h_plus + r.N_h_minus
    sig_c = r.N_c_plus + r.N_c_minus
    g1 = sig_h - sig_c
    kappa_sum = kappa_h + kappa_c
    if det == 0.0 or kappa_sum == 0.0:
        raise SteadyStateError("all rates vanish; the motion equations are singular")
    x = kappa_h * kappa_c * g1 / (2.0 * det)
    y = -2.0 * eps * (kappa_h * kappa_c / kappa_sum) * g1 / det
    z = (
        kappa_h * (r.N_h_plus - r.N_h_minus) + kappa_c * (r.N_c_plus - r.N_c_minus)
    ) / kappa_sum
    w = kappa_h * kappa_c * (sig_h + sig_c) / (2.0 * det) + 4.0 * eps * eps * (
        kappa_h * sig_h + kappa_c * sig_c
    ) / (det * kappa_sum)
    return SU2State(W=w, X=x, Y=y, Z=z)


def su2_steady_state(
    p: AmplifierParams, *, method: str = "auto", dephasing: float = 0.0
) -> SU2State:
    """Steady state of the collective variables.

    ``method="closed"`` demands the symmetric-rate limit and evaluates the
    closed form; ``method="solve"`` inverts the 4 x 4 motion system; ``"auto"``
    picks the closed form whenever the dressed rates allow it.  A nonzero
    ``dephasing`` (only supported by the solver path) adds damping to the two
    coherence components.
    """
    r = dressed_rates(p)
    if r.Gamma_T <= 0.0:
        raise SteadyStateError("all rates vanish; the motion equations are singular")
    if method == "auto":
        method = "closed" if (r.symmetric_rates() and dephasing == 0.0) else "solve"
    if method == "closed":
        if dephasing != 0.0:
            raise RegimeError("the closed form does not include dephasing")
        if not r.symmetric_rates():
            raise RegimeError(
                "closed form requires each bath to damp both of its dressed "
                "lines at the same rate; use method='solve'"
            )
        return _closed_form_state(p, r)
    if method != "solve":
        raise ValueError(f"unknown method {method!r}")
    matrix = _motion_matrix(r, p.epsilon, dephasing)
    v = np.linalg.solve(matrix, _source_vector(r))
    return SU2State(W=float(v[0]), X=float(v[1]), Y=float(v[2]), Z=float(v[3]))


def _symmetric_kappas(r: DressedRates) -> tuple[float, float]:
    if not r.symmetric_rates():
        raise RegimeError(
            "this closed form needs symmetric dressed rates per bath; "
            "construct parameters via AmplifierParams.symmetric"
        )
    return (
        0.5 * (r.Gamma_h_plus + r.Gamma_h_minus),
        0.5 * (r.Gamma_c_plus + r.Gamma_c_minus),
    )


def currents(p: AmplifierParams) -> CurrentsReport:
    """Closed-form steady power and heat currents in the symmetric-rate limit.

    Positive currents flow into the device; a working engine has ``P < 0``,
    ``J_h > 0``, ``J_c < 0``.  The efficiency field holds ``-P / J_h`` when
    the hot current is nonzero.
    """
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    eps = p.epsilon
    det = kappa_h * kappa_c + 4.0 * eps * eps
    if det == 0.0 or kappa_h + kappa_c == 0.0:
        raise SteadyStateError("all rates vanish; no steady currents exist")
    kappa_bar = kappa_h * kappa_c / (kappa_h + kappa_c)
    g1 = (r.N_h_plus + r.N_h_minus) - (r.N_c_plus + r.N_c_minus)
    g2 = (r.N_h_plus - r.N_h_minus) - (r.N_c_plus - r.N_c_minus)
    power = -2.0 * p.nu * eps * eps * g1 * kappa_bar / det
    j_h = kappa_bar * (0.5 * eps * g2 + 2.0 * p.omega_h * eps * eps * g1 / det)
    j_c = -kappa_bar * (0.5 * eps * g2 + 2.0 * p.omega_c * eps * eps * g1 / det)
    eff = (-power / j_h) if j_h != 0.0 else None
    return assemble_report(
        power, j_h, j_c, p.T_h, p.T_c, efficiency_or_cop=eff
    )


def currents_strong_drive(p: AmplifierParams) -> CurrentsReport:
    """Currents when the drive splitting dwarfs the damping rates.

    Dropping ``kappa_h kappa_c`` against ``4 eps^2`` in :func:`currents`
    collapses the denominator and leaves

    * ``P   = -(1/2) nu G1 kbar``
    * ``J_h = +(1/2) (eps G2 + omega_h G1) kbar``
    * ``J_c = -(1/2) (eps G2 + omega_c G1) kbar``

    with ``kbar`` the series combination of the two bath rates.  The first
    law closes exactly; accuracy against the full form degrades like
    ``kappa_h kappa_c / (4 eps^2)``.  Note this saturated value is twice the
    power at the true rate optimum ``Gamma = 2 eps`` of the balanced family,
    where the dropped term equals the kept one.
    """
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    if p.epsilon == 0.0:
        raise ZeroGainError("epsilon = 0: the strong-drive limit is empty")
    if kappa_h + kappa_c == 0.0:
        raise SteadyStateError("all rates vanish; no steady currents exist")
    kappa_bar = kappa_h * kappa_c / (kappa_h + kappa_c)
    g1, g2 = gains(p)
    eps = p.epsilon
    power = -0.5 * p.nu * g1 * kappa_bar
    j_h = 0.5 * (eps * g2 + p.omega_h * g1) * kappa_bar
    j_c = -0.5 * (eps * g2 + p.omega_c * g1) * kappa_bar
    eff = (-power / j_h) if j_h != 0.0 else None
    return assemble_report(
        power, j_h, j_c, p.T_h, p.T_c, efficiency_or_cop=eff
    )


def currents_from_state(
    p: AmplifierParams, state: SU2State, *, dephasing: float = 0.0
) -> CurrentsReport:
    """Currents for an arbitrary-rate steady state via per-bath bookkeeping.

    Each bath's heat current is the expectation of its adjoint generator
    applied to the full Hamiltonian; the power is ``nu * epsilon * Y``.
    Energy lost to a dephasing environment is reported in the work slot
    ``J_w`` (an infinite-temperature terminal, so it carries no entropy).
    """
    r = dressed_rates(p)
    omega_bar = 0.5 * (p.omega_h + p.omega_c)
    half_nu = 0.5 * p.nu
    eps = p.epsilon

    def bath_current(g_plus, g_minus, n_plus, n_minus, sign) -> float:
        """Expectation of this bath's adjoint generator on the Hamiltonian.

        ``sign`` is +1 for the hot bath and -1 for the cold one; it flips the
        cross coupling between total number and imbalance.
        """
        g_tot = g_plus + g_minus
        pump_sym = 0.5 * (g_plus * n_plus + g_minus * n_minus)
        pump_asym = 0.5 * (g_plus * n_plus - g_minus * n_minus)
        d_w = (
            -0.25 * g_tot * state.W
            - 0.25 * (g_plus - g_minus) * state.Z
            - sign * 0.25 * g_tot * state.X
            + pump_sym
        )
        d_x = (
            -0.25 * g_tot * state.X
            - sign * 0.25 * g_tot * state.W
            + sign * pump_sym
        )
        d_z = (
            -0.25 * g_tot * state.Z
            - 0.25 * (g_plus - g_minus) * state.W
            + pump_asym
        )
        return omega_bar * d_w + half_nu * d_x + eps * d_z

    j_h = bath_current(
        r.Gamma_h_plus, r.Gamma_h_minus, r.N_h_plus, r.N_h_minus, +1.0
    )
    j_c = bath_current(
        r.Gamma_c_plus, r.Gamma_c_minus, r.N_c_plus, r.N_c_minus, -1.0
    )
    power = p.nu * eps * state.Y
    j_deph = -2.0 * p.nu * dephasing * state.X
    eff = (-power / j_h) if j_h != 0.0 else None
    return assemble_report(
        power, j_h, j_c, p.T_h, p.T_c, heat_work=j_deph, efficiency_or_cop=eff
    )


def efficiency(p: AmplifierParams) -> float:
    """Engine efficiency ``-P / J_h`` in its closed algebraic form.

    Evaluates ``nu / (omega_h + (kappa_h kappa_c + 4 eps^2) G2 / (4 eps G1))``,
    which is identical to the current ratio of :func:`currents`.
    """
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    g1, g2 = gains(p)
    if g1 == 0.0:
        raise ZeroGainError("G1 = 0: no amplification, efficiency undefined")
    if p.epsilon == 0.0:
        raise ZeroGainError("epsilon = 0: no drive, efficiency undefined")
    det = kappa_h * kappa_c + 4.0 * p.epsilon**2
    return p.nu / (p.omega_h + det * g2 / (4.0 * p.epsilon * g1))


def efficiency_weak_drive(p: AmplifierParams) -> float:
    """Drive-independent efficiency in the weak-drive, balanced-rate limit.

    The ``epsilon -> 0`` closed form, written through hyperbolic functions of
    ``omega / T``; useful as a drive-free benchmark for the full expression.
    """
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    scale = max(kappa_h, kappa_c, 1e-300)
    if abs(kappa_h - kappa_c) > RATE_SYMMETRY_RTOL * scale:
        raise RegimeError("the weak-drive form assumes balanced rates")
    gamma2 = kappa_h * kappa_c
    xh = p.omega_h / p.T_h
    xc = p.omega_c / p.T_c
    num = p.T_h * (1.0 - math.cosh(xh)) - p.T_c * (1.0 - math.cosh(xc))
    den = 4.0 * p.T_h * p.T_c * (math.sinh(xh) - math.sinh(xc) + math.sinh(xc - xh))
    if den == 0.0:
        raise ZeroGainError("weak-drive gain vanishes at these temperatures")
    return p.nu / (p.omega_h + gamma2 * num / den)


def epsilon_crit(p: AmplifierParams) -> float:
    """Smallest positive drive at which the output power crosses zero.

    Holds the dressed rates fixed at their symmetric values and scans the
    closed-form power, whose sign is set by the gain ``G1(epsilon)``.  The
    bracket starts at ``[1e-6, omega_c / 2]`` (scaled by ``omega_c``) and
    expands geometrically below the positivity bound on the lower dressed
    frequency.

    Raises
    ------
    RegimeError
        If there is no amplification at vanishing drive.
    BracketError
        If the gain never changes sign below the frequency constraint.
    """
    _symmetric_kappas(dressed_rates(p))

    def gain(eps: float) -> float:
        return (
            occupation(p.omega_h + eps, p.T_h, p.statistics)
            + occupation(p.omega_h - eps, p.T_h, p.statistics)
            - occupation(p.omega_c + eps, p.T_c, p.statistics)
            - occupation(p.omega_c - eps, p.T_c, p.statistics)
        )

    lo = 1e-6 * p.omega_c
    if gain(lo) <= 0.0:
        raise RegimeError(
            "no amplification at vanishing drive; the power has no positive "
            "zero crossing to find"
        )
    cap = p.omega_c * (1.0 - 1e-9)
    hi = 0.5 * p.omega_c
    while gain(hi) > 0.0:
        if hi >= cap:
            raise BracketError(
                "gain does not change sign below the dressed-frequency bound"
            )
        hi = min(1.5 * hi, cap)
    return float(brentq(gain, lo, hi, xtol=1e-15 * p.omega_c, rtol=8.9e-16))


def heat_leak_entropy(p: AmplifierParams) -> float:
    """Entropy production of the parasitic heat leak in the balanced-rate limit.

    ``(epsilon * Gamma * G2 / 4) * (1/T_c - 1/T_h)``; at the critical drive
    this is the only surviving entropy production.
    """
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    scale = max(kappa_h, kappa_c, 1e-300)
    if abs(kappa_h - kappa_c) > RATE_SYMMETRY_RTOL * scale:
        raise RegimeError("the heat-leak form assumes balanced rates")
    _, g2 = gains(p)
    return (p.epsilon * kappa_h * g2 / 4.0) * (1.0 / p.T_c - 1.0 / p.T_h)


def dephasing_power_degradation(
    p: AmplifierParams, dephasing_rate: float
) -> CurrentsReport:
    """Steady currents with external dephasing of the drive coherence.

    The dephasing generator damps the two coherence components at four times
    the given rate and leaves populations untouched; output power decays
    monotonically with the rate and vanishes as it diverges.
    """
    if not (math.isfinite(dephasing_rate) and dephasing_rate >= 0.0):
        raise ValueError(f"dephasing rate must be finite and >= 0, got {dephasing_rate}")
    state = su2_steady_state(p, method="solve", dephasing=dephasing_rate)
    return currents_from_state(p, state, dephasing=dephasing_rate)
