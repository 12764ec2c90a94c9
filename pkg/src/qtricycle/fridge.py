"""Continuous refrigerators: power-driven, absorption, and noise-driven.

The same three-terminal layout that amplifies can cool once the occupation
imbalance reverses. This module covers the strong-drive power-driven
cooler with its split conductance branches, the static minimum-temperature
estimate with laser-cooling reference constants, the three-level absorption
machine solved numerically, and the two noise-driven variants: gaussian
white noise, and poisson impulse noise treated in the dressed basis so the
second law survives.

Rates here are filter-level relaxation rates (the Gamma of each transmission
window), not bare coupling strengths.
"""

import math
from dataclasses import dataclass

from scipy import constants as _si

from .amplifier import occupation
from .errors import RegimeError
from .operators import (
    HilbertSpace,
    LindbladTerm,
    Operator,
    build_liouvillian,
    channel_current,
    steady_state,
)
from .reports import CurrentsReport, assemble_report

__all__ = [
    "FridgeParams",
    "NoiseSpec",
    "DressedPair",
    "dressed_pair",
    "power_driven_cooling_current",
    "power_driven_report",
    "minimum_temperature",
    "doppler_recoil_reference",
    "sodium_cooling_reference",
    "absorption_cop_bound",
    "three_level_absorption_fridge",
    "gaussian_noise_cooling",
    "poisson_noise_params",
    "poisson_noise_cooling",
    "universal_low_T_current",
]


@dataclass(frozen=True)
class FridgeParams:
    """Operating point of a two-mode refrigerator.

    omega_h, omega_c: filter frequencies of the hot and cold windows; their
        difference is the work frequency.
    epsilon: drive coupling, used by the power-driven model's branch split.
    T_h, T_c: bath temperatures, hot strictly above cold.
    Gamma_h, Gamma_c: filter relaxation rates.
    Gamma_h_plus .. Gamma_c_minus: optional per-branch rates for the
        power-driven model; each defaults to the bath's common rate.
    statistics: occupation statistics of the filters.
    """

    omega_h: float
    omega_c: float
    T_h: float
    T_c: float
    Gamma_h: float
    Gamma_c: float
    epsilon: float = 0.0
    Gamma_h_plus: float | None = None
    Gamma_h_minus: float | None = None
    Gamma_c_plus: float | None = None
    Gamma_c_minus: float | None = None
    statistics: str = "bose"

    def __post_init__(self):
        if not (self.omega_h > self.omega_c > 0.0):
            raise ValueError("need omega_h > omega_c > 0")
        if not (self.T_h > self.T_c > 0.0):
            raise ValueError("need T_h > T_c > 0")
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be nonnegative")
        for name in ("Gamma_h", "Gamma_c"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be nonnegative")
        for name, default in (
            ("Gamma_h_plus", self.Gamma_h),
            ("Gamma_h_minus", self.Gamma_h),
            ("Gamma_c_plus", self.Gamma_c),
            ("Gamma_c_minus", self.Gamma_c),
        ):
            value = getattr(self, name)
            if value is None:
                object.__setattr__(self, name, default)
            elif value < 0.0:
                raise ValueError(f"{name} must be nonnegative")
        if self.epsilon >= self.omega_c:
            raise RegimeError(
                "the lowered cold window omega_c - epsilon must stay positive"
            )

    @property
    def nu(self) -> float:
        return self.omega_h - self.omega_c

    @property
    def cooling_regime(self) -> bool:
        """Whether the dressed occupation imbalance favors cooling."""
        total_h = occupation(
            self.omega_h + self.epsilon, self.T_h, self.statistics
        ) + occupation(self.omega_h - self.epsilon, self.T_h, self.statistics)
        total_c = occupation(
            self.omega_c + self.epsilon, self.T_c, self.statistics
        ) + occupation(self.omega_c - self.epsilon, self.T_c, self.statistics)
        return total_c > total_h


@dataclass(frozen=True)
class NoiseSpec:
    """Work input carried by a classical noise field.

    kind is "gaussian_white" (strength eta) or "poisson" (event rate
    lambda_rate with an impulse distribution: "delta", "normal", or
    "exponential"; xi0 is the impulse center or scale, sigma the normal
    width).
    """

    kind: str
    eta: float = 0.0
    lambda_rate: float = 0.0
    impulse: str = "delta"
    xi0: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.kind not in ("gaussian_white", "poisson"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.eta < 0.0 or self.lambda_rate < 0.0 or self.sigma < 0.0:
            raise ValueError("noise strengths and rates must be nonnegative")
        if self.kind == "poisson":
            if self.impulse not in ("delta", "normal", "exponential"):
                raise ValueError(f"unknown impulse distribution {self.impulse!r}")
            if self.impulse == "exponential" and not self.xi0 > 0.0:
                raise ValueError("the exponential impulse scale must be positive")

    @classmethod
    def gaussian(cls, eta: float) -> "NoiseSpec":
        return cls(kind="gaussian_white", eta=eta)

    @classmethod
    def poisson(
        cls,
        lambda_rate: float,
        impulse: str = "delta",
        xi0: float = 0.0,
        sigma: float = 0.0,
    ) -> "NoiseSpec":
        return cls(
            kind="poisson",
            lambda_rate=lambda_rate,
            impulse=impulse,
            xi0=xi0,
            sigma=sigma,
        )


@dataclass(frozen=True)
class DressedPair:
    """Normal-mode frequencies and mixing angle of the coupled filter pair."""

    Omega_plus: float
    Omega_minus: float
    theta: float


def dressed_pair(omega_h: float, omega_c: float, epsilon: float) -> DressedPair:
    """Diagonalize the swap-coupled pair of filter modes.

    The normal modes sit at the mean frequency plus or minus the splitting
    radius; both stay positive only while omega_h * omega_c > epsilon**2,
    and anything else is rejected with that constraint named.
    """
    if not (omega_h > 0.0 and omega_c > 0.0):
        raise ValueError("filter frequencies must be positive")
    if omega_h * omega_c <= epsilon * epsilon:
        raise RegimeError(
            "dressed frequencies degenerate or negative: the coupling must "
            "satisfy omega_h * omega_c > epsilon**2"
        )
    mean = 0.5 * (omega_h + omega_c)
    radius = math.hypot(0.5 * (omega_h - omega_c), epsilon)
    theta = 0.5 * math.atan2(2.0 * epsilon, omega_h - omega_c)
    return DressedPair(mean + radius, mean - radius, theta)


def _branch_flow(p: FridgeParams, sign: float) -> tuple[float, float]:
    """(frequency-free quanta flow, cold window frequency) of one branch."""
    w_h = p.omega_h + sign * p.epsilon
    w_c = p.omega_c + sign * p.epsilon
    g_h = p.Gamma_h_plus if sign > 0 else p.Gamma_h_minus
    g_c = p.Gamma_c_plus if sign > 0 else p.Gamma_c_minus
    if g_h + g_c == 0.0:
        return 0.0, w_c
    conductance = g_h * g_c / (g_h + g_c)
    imbalance = occupation(w_c, p.T_c, p.statistics) - occupation(
        w_h, p.T_h, p.statistics
    )
    return 0.5 * conductance * imbalance, w_c


def power_driven_cooling_current(p: FridgeParams) -> float:
    """Cooling current of the strongly driven refrigerator.

    The device splits into two independent branches, one per dressed
    window pair; each passes heat at its own conductance (the harmonic sum
    of its filter rates) weighted by the occupation imbalance. Positive
    means heat leaves the cold bath. Accurate once the drive dominates the
    rates (epsilon well above the Gammas).
    """
    flow_minus, w_minus = _branch_flow(p, -1.0)
    flow_plus, w_plus = _branch_flow(p, +1.0)
    return w_minus * flow_minus + w_plus * flow_plus


def power_driven_report(p: FridgeParams) -> CurrentsReport:
    """Full current bookkeeping for the strongly driven refrigerator.

    Each branch moves quanta between windows a fixed frequency apart, so
    its three currents balance identically and the total satisfies the
    first law to rounding.
    """
    flow_minus, w_c_minus = _branch_flow(p, -1.0)
    flow_plus, w_c_plus = _branch_flow(p, +1.0)
    j_c = w_c_minus * flow_minus + w_c_plus * flow_plus
    j_h = -(w_c_minus + p.nu) * flow_minus - (w_c_plus + p.nu) * flow_plus
    power = p.nu * (flow_minus + flow_plus)
    cop = j_c / power if power != 0.0 else None
    return assemble_report(
        power=power,
        heat_hot=j_h,
        heat_cold=j_c,
        T_h=p.T_h,
        T_c=p.T_c,
        efficiency_or_cop=cop,
    )


def minimum_temperature(omega_c: float, omega_h: float, T_h: float) -> float:
    """Lowest cold temperature the static frequency pair can reach.

    Cooling stops where the Boltzmann factors match across the two windows,
    which pins T_c at the frequency ratio times T_h.
    """
    if not (omega_c > 0.0 and omega_h > 0.0 and T_h > 0.0):
        raise ValueError("frequencies and temperature must be positive")
    return (omega_c / omega_h) * T_h


def doppler_recoil_reference(
    gamma_linewidth: float, k_photon: float, mass: float
) -> tuple[float, float]:
    """Doppler and recoil temperature scales of a scattering cooler.

    Natural units: the doppler scale is half the linewidth, and the recoil
    scale is the photon momentum squared over the mass.
    """
    if not (gamma_linewidth > 0.0 and k_photon > 0.0 and mass > 0.0):
        raise ValueError("inputs must be positive")
    return 0.5 * gamma_linewidth, k_photon * k_photon / mass


# Sodium D-line data: ground hyperfine splitting, transition wavelength,
# natural linewidth, and atomic mass.
_SODIUM_HYPERFINE_HZ = 1.771626e9
_SODIUM_WAVELENGTH_M = 589.0e-9
_SODIUM_LINEWIDTH_HZ = 9.79e6
_SODIUM_MASS_KG = 22.98977 * _si.atomic_mass


def sodium_cooling_reference(T_h: float = 300.0) -> dict[str, float]:
    """Reference numbers for cooling sodium on its D line.

    The cold window is the ground hyperfine splitting, the hot window the
    optical transition. Returns the frequency ratio, the static minimum
    temperature at the given hot temperature, and the doppler and recoil
    scales, all in SI kelvin.
    """
    omega_h = 2.0 * math.pi * _si.c / _SODIUM_WAVELENGTH_M
    omega_c = 2.0 * math.pi * _SODIUM_HYPERFINE_HZ
    gamma = 2.0 * math.pi * _SODIUM_LINEWIDTH_HZ
    k_photon = 2.0 * math.pi / _SODIUM_WAVELENGTH_M
    ratio = omega_c / omega_h
    doppler_scale, recoil_scale = doppler_recoil_reference(
        gamma, _si.hbar * k_photon, _SODIUM_MASS_KG
    )
    return {
        "frequency_ratio": ratio,
        "T_min_K": minimum_temperature(omega_c, omega_h, T_h),
        "T_doppler_K": _si.hbar * doppler_scale / _si.k,
        "T_recoil_K": recoil_scale / _si.k,
    }


def absorption_cop_bound(T_c: float, T_h: float, T_w: float) -> float:
    """Reversible performance ceiling of a heat-driven refrigerator.

    The work bath's finite temperature taxes the Carnot value by its own
    Carnot factor; letting it run to infinity restores the familiar bound.
    """
    if not (T_c > 0.0 and T_h > T_c):
        raise ValueError("need T_h > T_c > 0")
    if not T_w >= T_h:
        raise ValueError("the work bath must be at least as hot as T_h")
    return (1.0 - T_h / T_w) * T_c / (T_h - T_c)


def three_level_absorption_fridge(
    omega_h: float,
    omega_c: float,
    baths: tuple[tuple[float, float], tuple[float, float], tuple[float, float]],
) -> CurrentsReport:
    """Absorption refrigerator on three levels, solved numerically.

    Levels sit at 0, omega_c, omega_h. The cold bath drives the lower gap,
    the work bath the upper gap (omega_h - omega_c), and the hot bath the
    full gap. ``baths`` lists (temperature, rate) for hot, cold, work in
    that order. Cooling turns on exactly when the work-plus-cold Boltzmann
    route beats the direct hot route.
    """
    (t_h, g_h), (t_c, g_c), (t_w, g_w) = baths
    if not (omega_h > omega_c > 0.0):
        raise ValueError("need omega_h > omega_c > 0")
    omega_w = omega_h - omega_c
    space = HilbertSpace((("machine", 3),))
    energies = (0.0, omega_c, omega_h)
    hamiltonian = Operator(space, [[0, 0, 0], [0, omega_c, 0], [0, 0, omega_h]])

    def lower(i, j):
        mat = [[0.0] * 3 for _ in range(3)]
        mat[i][j] = 1.0
        return Operator(space, mat)

    terms = []
    for (i, j), temp, rate, channel in (
        ((0, 2), t_h, g_h, "hot"),
        ((0, 1), t_c, g_c, "cold"),
        ((1, 2), t_w, g_w, "work"),
    ):
        gap = energies[j] - energies[i]
        n_occ = occupation(gap, temp)
        terms.append(LindbladTerm(lower(i, j), rate * (n_occ + 1.0), channel))
        terms.append(LindbladTerm(lower(i, j).dagger(), rate * n_occ, channel))
    gen = build_liouvillian(hamiltonian, terms)
    rho = steady_state(gen)
    j_h = channel_current(gen.channel("hot"), rho, hamiltonian)
    j_c = channel_current(gen.channel("cold"), rho, hamiltonian)
    j_w = channel_current(gen.channel("work"), rho, hamiltonian)
    cop = j_c / j_w if j_w != 0.0 else None
    return assemble_report(
        power=0.0,
        heat_hot=j_h,
        heat_cold=j_c,
        T_h=t_h,
        T_c=t_c,
        heat_work=j_w,
        T_w=t_w,
        efficiency_or_cop=cop,
        throughput_scale=max(g_h * omega_h, g_c * omega_c, g_w * omega_w),
    )


def _gaussian_quanta_flow(p: FridgeParams, eta: float) -> float:
    conductance = (
        p.Gamma_h * p.Gamma_c / (p.Gamma_h + p.Gamma_c)
        if p.Gamma_h + p.Gamma_c > 0.0
        else 0.0
    )
    imbalance = occupation(p.omega_c, p.T_c, p.statistics) - occupation(
        p.omega_h, p.T_h, p.statistics
    )
    if eta == 0.0 or conductance == 0.0:
        return 0.0
    return 2.0 * eta * conductance / (2.0 * eta + conductance) * imbalance


def gaussian_noise_cooling(p: FridgeParams, n: NoiseSpec) -> CurrentsReport:
    """Cooling run on gaussian white noise stirring the filter swap.

    The noise and the filters act in series, so the quanta flow carries the
    harmonic mean of the noise rate and the filter conductance, weighted by
    the occupation imbalance. The performance ratio is pinned at the
    frequency ratio of the two windows.
    """
    if n.kind != "gaussian_white":
        raise ValueError("this model takes gaussian_white noise")
    if p.epsilon != 0.0:
        raise ValueError(
            "the noise-driven models take their drive from the noise spec; "
            "leave FridgeParams.epsilon at zero"
        )
    flow = _gaussian_quanta_flow(p, n.eta)
    return assemble_report(
        power=p.nu * flow,
        heat_hot=-p.omega_h * flow,
        heat_cold=p.omega_c * flow,
        T_h=p.T_h,
        T_c=p.T_c,
        efficiency_or_cop=p.omega_c / p.nu,
    )


def poisson_noise_params(n: NoiseSpec) -> tuple[float, float]:
    """Coherent shift and effective strength induced by poisson impulses.

    Averaging the impulse kick over its distribution leaves a drift term
    (the shift, always nonpositive here) and a diffusive strength. The
    normal distribution washes out its oscillatory parts as sigma grows;
    the delta case is its sigma = 0 limit.
    """
    if n.kind != "poisson":
        raise ValueError("impulse parameters exist only for poisson noise")
    lam, xi0 = n.lambda_rate, n.xi0
    if n.impulse == "exponential":
        shift = -lam * xi0**3 / (4.0 * (1.0 + xi0 * xi0))
        eta = lam * xi0 * xi0 / (1.0 + 4.0 * xi0 * xi0)
        return shift, eta
    damp = math.exp(-2.0 * n.sigma * n.sigma) if n.impulse == "normal" else 1.0
    shift = -0.5 * lam * (2.0 * xi0 - damp * math.sin(2.0 * xi0))
    eta = 0.25 * lam * (1.0 - damp * math.cos(2.0 * xi0))
    return shift, eta


def poisson_noise_cooling(p: FridgeParams, n: NoiseSpec) -> CurrentsReport:
    """Cooling run on poisson impulse noise, treated in the dressed basis.

    The induced shift rebuilds the filter pair into normal modes before the
    noise strength drives them, which keeps the entropy balance nonnegative
    for every parameter choice. The hot bath damps the upper normal mode
    and the cold bath the lower one; the noise couples through the rotated
    swap operator, leaving a flow channel whose performance ratio is set by
    the normal-mode frequencies alone.
    """
    if n.kind != "poisson":
        raise ValueError("this model takes poisson noise")
    if p.epsilon != 0.0:
        raise ValueError(
            "the noise-driven models take their drive from the noise spec; "
            "leave FridgeParams.epsilon at zero"
        )
    shift, eta = poisson_noise_params(n)
    pair = dressed_pair(p.omega_h, p.omega_c, shift)
    gap = pair.Omega_plus - pair.Omega_minus
    s = math.sin(2.0 * pair.theta)
    c = math.cos(2.0 * pair.theta)
    n_h = occupation(pair.Omega_plus, p.T_h, p.statistics)
    n_c = occupation(pair.Omega_minus, p.T_c, p.statistics)
    gamma_x = 0.5 * (p.Gamma_h + p.Gamma_c)
    conductance = (
        p.Gamma_h * p.Gamma_c / (p.Gamma_h + p.Gamma_c)
        if p.Gamma_h + p.Gamma_c > 0.0
        else 0.0
    )
    if eta == 0.0 or conductance == 0.0:
        flow = 0.0
    else:
        coherence_drag = gamma_x + 4.0 * eta * s * s + gap * gap / (
            gamma_x + 4.0 * eta
        )
        noise_channel = (
            2.0
            * eta
            * c
            * c
            * (coherence_drag - 4.0 * eta * s * s)
            / coherence_drag
        )
        flow = (
            noise_channel
            * conductance
            * (n_c - n_h)
            / (conductance + noise_channel)
        )
    return assemble_report(
        power=gap * flow,
        heat_hot=-pair.Omega_plus * flow,
        heat_cold=pair.Omega_minus * flow,
        T_h=p.T_h,
        T_c=p.T_c,
        efficiency_or_cop=pair.Omega_minus / gap,
    )


def universal_low_T_current(omega_c: float, gamma_c: float, T_c: float) -> float:
    """Optimized cooling current deep in the cold limit.

    Once the hot side saturates and the conductances are balanced, only the
    cold Boltzmann factor survives: frequency times rate times the
    exponential.
    """
    if not (omega_c > 0.0 and gamma_c >= 0.0 and T_c > 0.0):
        raise ValueError("need positive omega_c and T_c, nonnegative gamma_c")
    return omega_c * gamma_c * math.exp(-omega_c / T_c)
