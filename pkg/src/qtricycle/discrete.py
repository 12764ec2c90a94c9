"""Few-level engines evaluated from static populations.

The driven two-mode machine has discrete cousins whose steady behavior
follows from population ratios alone: a three-level amplifier with a
Boltzmann-factor gain condition, a four-level variant with a split cold
transition, and the two-level pump cycle whose efficiency can never
exceed one half.

A driven three-level system with fermionic filters reduces to the same
current structure as the two-mode machine. That reduction, together with
its decomposition into two independent single-manifold engines, lives
here as well.
"""

import math
from dataclasses import dataclass

from .amplifier import (
    AmplifierParams,
    _symmetric_kappas,
    currents,
    dressed_rates,
)
from .errors import RegimeError
from .reports import CurrentsReport

__all__ = [
    "ThreeLevelStatic",
    "FourLevelStatic",
    "ManifoldCurrents",
    "static_gain",
    "otto_and_carnot",
    "lamb_steady_currents",
    "lamb_manifold_currents",
    "manifold_otto_efficiencies",
    "epsilon_crit_low_temperature",
    "four_level_gain",
    "two_level_bound",
]


@dataclass(frozen=True)
class ThreeLevelStatic:
    """Three-level amplifier: hot transition pumps, cold transition drains.

    ``omega_h`` is the full pump gap, ``omega_c`` the cold drain gap, and
    their difference is the output frequency, which may sit at zero (the
    degenerate machine that produces nothing).
    """

    omega_h: float
    omega_c: float
    T_h: float
    T_c: float

    def __post_init__(self):
        for name in ("omega_h", "omega_c", "T_h", "T_c"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.omega_h < self.omega_c:
            raise ValueError("the pump gap must not sit below the drain gap")

    @property
    def nu(self) -> float:
        return self.omega_h - self.omega_c


@dataclass(frozen=True)
class FourLevelStatic:
    """Four-level amplifier with the cold drain split over two transitions.

    omega_h: full pump gap.
    omega_c1: upper cold transition.
    omega_c2: lower cold transition.
    T_h, T_c: bath temperatures.

    The output frequency is ``omega_h - omega_c1 - omega_c2``; it may sit at
    zero, the degenerate point where the device stops producing.
    """

    omega_h: float
    omega_c1: float
    omega_c2: float
    T_h: float
    T_c: float

    def __post_init__(self):
        for name in ("omega_h", "omega_c1", "omega_c2", "T_h", "T_c"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.nu < 0.0:
            raise ValueError("cold transitions exceed the pump gap")

    @property
    def nu(self) -> float:
        return self.omega_h - self.omega_c1 - self.omega_c2

    @property
    def otto_efficiency(self) -> float:
        return self.nu / self.omega_h


def static_gain(s: ThreeLevelStatic) -> float:
    """Population inversion across the lasing pair, per unit ground population.

    Positive exactly when ``omega_c / omega_h >= T_c / T_h``: the cold drain
    must empty the lower lasing level faster than the pump route fills it.
    """
    return math.exp(-s.omega_h / s.T_h) - math.exp(-s.omega_c / s.T_c)


def otto_and_carnot(s: ThreeLevelStatic) -> tuple[float, float]:
    """Frequency-ratio and temperature-ratio efficiency bounds.

    Whenever the static gain is nonnegative the first sits at or below the
    second, so a positive-gain machine never beats Carnot.
    """
    return 1.0 - s.omega_c / s.omega_h, 1.0 - s.T_c / s.T_h


def lamb_steady_currents(p: AmplifierParams) -> CurrentsReport:
    """Steady currents of the driven three-level amplifier.

    Adiabatic elimination of the upper level leaves two lasing levels whose
    populations relax through fermi-weighted filters at the dressed
    frequencies, and the currents take the same closed form as the two-mode
    machine with fermi occupations in place of bose ones. The parameters
    must therefore carry fermi statistics.
    """
    if p.statistics != "fermi":
        raise ValueError(
            "the three-level reduction uses two-level populations; construct "
            'the parameters with statistics="fermi"'
        )
    return currents(p)


@dataclass(frozen=True)
class ManifoldCurrents:
    """Currents split between the two dressed manifolds.

    The upper entries run on the lines at ``omega + epsilon``, the lower on
    ``omega - epsilon``. Each triple satisfies the first law on its own:
    the machine is two independent engines sharing one drive.
    """

    P_upper: float
    J_h_upper: float
    J_c_upper: float
    P_lower: float
    J_h_lower: float
    J_c_lower: float

    @property
    def totals(self) -> tuple[float, float, float]:
        """Summed (P, J_h, J_c) of both manifolds."""
        return (
            self.P_upper + self.P_lower,
            self.J_h_upper + self.J_h_lower,
            self.J_c_upper + self.J_c_lower,
        )


def lamb_manifold_currents(p: AmplifierParams) -> ManifoldCurrents:
    """Per-manifold decomposition of the three-level amplifier's currents.

    The upper contribution is proportional to the occupation imbalance of
    the raised lines, the lower to that of the lowered lines. Their sums
    reproduce ``lamb_steady_currents`` term by term.
    """
    if p.statistics != "fermi":
        raise ValueError(
            "the three-level reduction uses two-level populations; construct "
            'the parameters with statistics="fermi"'
        )
    r = dressed_rates(p)
    kappa_h, kappa_c = _symmetric_kappas(r)
    eps = p.epsilon
    det = kappa_h * kappa_c + 4.0 * eps * eps
    kappa_bar = kappa_h * kappa_c / (kappa_h + kappa_c)
    upper = r.N_h_plus - r.N_c_plus
    lower = r.N_h_minus - r.N_c_minus
    drive_h = 2.0 * p.omega_h * eps * eps / det
    drive_c = 2.0 * p.omega_c * eps * eps / det
    pump = -2.0 * p.nu * eps * eps * kappa_bar / det
    return ManifoldCurrents(
        P_upper=pump * upper,
        J_h_upper=kappa_bar * upper * (0.5 * eps + drive_h),
        J_c_upper=-kappa_bar * upper * (0.5 * eps + drive_c),
        P_lower=pump * lower,
        J_h_lower=kappa_bar * lower * (drive_h - 0.5 * eps),
        J_c_lower=-kappa_bar * lower * (drive_c - 0.5 * eps),
    )


def manifold_otto_efficiencies(
    omega_h: float, omega_c: float, epsilon: float
) -> tuple[float, float]:
    """Otto efficiencies of the two single-manifold engines.

    The upper manifold works between ``omega_h + epsilon`` and
    ``omega_c + epsilon``, the lower between the lowered pair, so their
    frequency-ratio efficiencies differ even though both deliver quanta at
    the same output frequency. At the low-temperature critical drive the
    lower value lands exactly on the Carnot efficiency.
    """
    if epsilon < 0.0 or epsilon >= omega_c or omega_h <= omega_c:
        raise ValueError("need omega_h > omega_c > epsilon >= 0")
    nu = omega_h - omega_c
    return nu / (omega_h + epsilon), nu / (omega_h - epsilon)


def epsilon_crit_low_temperature(
    omega_h: float, omega_c: float, T_h: float, T_c: float
) -> float:
    """Drive strength where cold-regime amplification shuts off.

    When every occupation is small, gain lives entirely in the lowered
    manifold and vanishes once the lowered hot and cold lines reach equal
    Boltzmann factors, at ``(T_h omega_c - T_c omega_h) / (T_h - T_c)``.

    At the ratio boundary ``T_h omega_c == T_c omega_h`` the window closes
    at zero drive and 0.0 comes back; past it there is no amplification at
    any drive and a RegimeError signals that, as it does when there is no
    temperature gradient at all.
    """
    for name, value in (
        ("omega_h", omega_h), ("omega_c", omega_c), ("T_h", T_h), ("T_c", T_c)
    ):
        if not value > 0.0:
            raise ValueError(f"{name} must be positive")
    if T_h <= T_c:
        raise RegimeError("a positive shutoff drive needs T_h > T_c")
    numerator = T_h * omega_c - T_c * omega_h
    if numerator < 0.0:
        raise RegimeError(
            "omega_c / omega_h < T_c / T_h leaves no amplification window"
        )
    return numerator / (T_h - T_c)


def four_level_gain(s: FourLevelStatic) -> float:
    """Population inversion of the split-drain four-level amplifier.

    Positive exactly when ``(omega_c1 + omega_c2) / omega_h >= T_c / T_h``;
    on the zero-gain boundary the Otto efficiency equals the Carnot value.
    The value is an inversion per unit ground population and can exceed the
    float range at deep cold; it then comes back as ``inf``.
    """
    try:
        first = math.exp(s.omega_c2 / s.T_c - s.omega_h / s.T_h)
    except OverflowError:
        return math.inf
    return first - math.exp(-s.omega_c1 / s.T_c)


def two_level_bound(T_h: float | None = None, T_c: float | None = None) -> float:
    """Efficiency ceiling of the two-level pump cycle: one half.

    Each output quantum costs two pump steps, so at most half the input can
    be converted regardless of frequencies. Supplying both temperatures
    checks that the ceiling sits at or below the Carnot value; when it does
    not (T_c / T_h > 1/2), the ceiling says nothing beyond Carnot and a
    RegimeError flags it inapplicable.
    """
    if (T_h is None) != (T_c is None):
        raise ValueError("supply both temperatures or neither")
    bound = 0.5
    if T_h is not None:
        if not (T_h > 0.0 and T_c > 0.0):
            raise ValueError("temperatures must be positive")
        carnot = 1.0 - T_c / T_h
        if bound > carnot:
            raise RegimeError(
                f"carnot efficiency {carnot:.6g} sits below the one-half "
                "ceiling; the two-level bound is not the binding one"
            )
    return bound
