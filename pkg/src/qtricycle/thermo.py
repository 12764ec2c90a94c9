"""Law audits, performance optimization, and low-temperature scaling.

This module owns the cross-model thermodynamic bookkeeping.  It audits any
currents report against the first and second laws plus the Carnot and Otto
performance bounds, maximizes output power over damping rates and over
frequency placement, traces the power-versus-efficiency trade-off along a
one-parameter family of operating points, and quantifies how the optimized
cooling current of a refrigerator dies as its cold bath approaches absolute
zero.

Temperatures, frequencies, and rates are all in natural units
(``hbar = k_B = 1``).  Every current is positive when energy flows into the
machine, so engines report ``P < 0``.

The low-temperature story is organized around a cold-bath exponent pair: a
bath in ``d`` spatial dimensions whose coupling carries a form-factor power
``kappa`` absorbs an optimized current ``J_c ~ T_c**(d + kappa)``.  Writing
``alpha = d + kappa - 1`` for the exponent of the cooling rate and ``eta_cv``
for the heat-capacity exponent, a self-cooling trajectory obeys
``dT/dt ~ -T**zeta`` with ``zeta = 1 + alpha - eta_cv``.  Unattainability of
absolute zero demands ``zeta >= 1``; for a bosonic bath (``eta_cv = d``) that
reduces to ``kappa >= 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .amplifier import (
    AmplifierParams,
    currents,
    dressed_rates,
    efficiency,
    gains,
    occupation,
)
from .errors import BracketError, LawViolationError, RegimeError, ZeroGainError
from .fridge import absorption_cop_bound, universal_low_T_current

__all__ = [
    "DEGENERATE_GAS_ZETA",
    "HIGH_T_RATIO",
    "LawAudit",
    "MaxPowerPoint",
    "ColdBathModel",
    "ScalingFit",
    "audit",
    "optimize_power_over_rates",
    "efficiency_at_max_power",
    "efficiency_power_curve",
    "optimized_cold_current",
    "third_law_current_scaling",
    "cooling_trajectory",
]

#: trajectory exponent for cooling a degenerate quantum gas through inelastic
#: collisions; the same value holds for bose and for fermi statistics
DEGENERATE_GAS_ZETA = 1.5

#: largest frequency-to-temperature ratio admitted as "high temperature"
HIGH_T_RATIO = 0.05

#: half-width of the band around each integer that the trajectory classifier
#: treats as that integer
ZETA_BAND = 0.05

_FRIDGE_KERNELS = ("universal", "power_driven", "noise_driven")


# ---------------------------------------------------------------------------
# law audit


@dataclass(frozen=True)
class LawAudit:
    """Outcome of checking one currents report against the four gates.

    ``first_law_residual`` is the raw energy imbalance ``P + J_h + J_c + J_w``
    and ``entropy_rate`` is recomputed from the currents and the supplied
    temperatures, so a report cannot vouch for itself.  The margins are
    dimensionless slack: ``carnot_margin`` is the temperature bound minus the
    performance the currents imply for the machine's operating mode, and
    ``otto_margin`` is the signed gap between the report's stored performance
    figure and the nearest ratio its own currents realize (engine efficiency,
    driven coefficient of performance, or heat-driven coefficient).  Models
    store structural figures that remain exact identities of their currents
    in every regime, so a gap beyond tolerance in either direction marks
    corrupted bookkeeping rather than an inefficiency.  ``verdict`` is
    ``"pass"`` or ``"fail(...)"`` naming every gate that tripped.
    """

    first_law_residual: float
    entropy_rate: float
    carnot_margin: float
    otto_margin: float
    verdict: str

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def audit(report, temps, *, tol: float = 1e-9) -> LawAudit:
    """Check a currents report against both laws and both performance bounds.

    ``report`` may be any object with ``P``, ``J_h``, ``J_c`` attributes;
    ``J_w``, ``efficiency_or_cop``, and ``throughput_scale`` are read when
    present.  ``temps`` is ``(T_h, T_c)`` or ``(T_h, T_c, T_w)`` with
    ``T_w = inf`` for a pure work terminal, which carries no entropy.

    The machine class is inferred from current signs: an engine (``P < 0``,
    hot inflow) is held to the Carnot efficiency, a driven refrigerator
    (``P > 0``, cold inflow) to the Carnot coefficient of performance, and a
    heat-driven refrigerator (``P`` negligible, work-bath inflow) to the
    three-temperature bound.  Reports that fit none of these classes, such as
    dissipative duds or machines idling at a reversal point, skip the margin
    checks rather than failing on noise.
    """
    if len(temps) == 2:
        T_h, T_c = temps
        T_w = math.inf
    elif len(temps) == 3:
        T_h, T_c, T_w = temps
    else:
        raise ValueError("temps must be (T_h, T_c) or (T_h, T_c, T_w)")
    if not (T_h > 0.0 and T_c > 0.0 and T_w > 0.0):
        raise ValueError(f"temperatures must be positive, got {temps}")
    if T_c > T_h:
        raise ValueError(f"need T_h >= T_c, got T_h={T_h}, T_c={T_c}")

    P = float(report.P)
    J_h = float(report.J_h)
    J_c = float(report.J_c)
    J_w = float(getattr(report, "J_w", 0.0))
    throughput = float(getattr(report, "throughput_scale", 0.0))
    stored = getattr(report, "efficiency_or_cop", None)

    scale = max(abs(P), abs(J_h), abs(J_c), abs(J_w), throughput, 1e-300)
    residual = P + J_h + J_c + J_w
    entropy = -J_h / T_h - J_c / T_c
    # the throughput scale keeps reports idling at a reversal point from
    # failing on roundoff; 1 / T_c converts it to a gross entropy flow
    gross = abs(J_h) / T_h + abs(J_c) / T_c + throughput / T_c
    if math.isfinite(T_w):
        entropy -= J_w / T_w
        gross += abs(J_w) / T_w

    reasons = []
    if not abs(residual) <= tol * scale:
        reasons.append("first-law")
    if not entropy >= -tol * (gross + 1e-300):
        reasons.append("second-law")

    # classify the machine and compare performance against its bound
    flow_floor = 1e-6 * scale
    implied = None
    bound = math.inf
    if P < -flow_floor and J_h > flow_floor:
        implied = -P / J_h
        bound = 1.0 - T_c / T_h
    elif P > flow_floor and J_c > flow_floor:
        implied = J_c / P
        bound = T_c / (T_h - T_c) if T_h > T_c else math.inf
    elif abs(P) <= flow_floor and J_w > flow_floor and J_c > flow_floor:
        implied = J_c / J_w
        if math.isinf(T_w):
            bound = T_c / (T_h - T_c) if T_h > T_c else math.inf
        elif T_w > T_h:
            bound = absorption_cop_bound(T_c, T_h, T_w)
        else:
            implied = None

    carnot_margin = 0.0
    if implied is not None:
        carnot_margin = bound - implied
        if not carnot_margin >= -tol * max(1.0, abs(implied)):
            reasons.append("carnot-bound")

    # the stored performance figure must be realized by the currents under
    # at least one of the three conversion conventions; models keep their
    # own convention even when a parameter draw reverses the machine. The
    # denominator floor uses the currents alone: near a reversal point the
    # realized convention may divide by a current far below the throughput
    # scale, and that ratio is still the stored figure, exactly.
    otto_margin = 0.0
    if stored is not None:
        den_floor = 1e-12 * max(abs(P), abs(J_h), abs(J_c), abs(J_w), 1e-300)
        candidates = []
        if abs(J_h) > den_floor:
            candidates.append(-P / J_h)
        if abs(P) > den_floor:
            candidates.append(J_c / P)
        if abs(J_w) > den_floor:
            candidates.append(J_c / J_w)
        if candidates:
            otto_margin = min((float(stored) - c for c in candidates), key=abs)
            if not abs(otto_margin) <= tol * max(1.0, abs(float(stored))):
                reasons.append("otto-bound")

    verdict = "pass" if not reasons else "fail(" + ", ".join(reasons) + ")"
    return LawAudit(
        first_law_residual=residual,
        entropy_rate=entropy,
        carnot_margin=carnot_margin,
        otto_margin=otto_margin,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# grid-seeded golden-section maximization


def _golden_max(objective, grid) -> tuple[float, float]:
    """Maximize a smooth unimodal objective seeded by a coarse grid.

    Evaluates the grid, brackets the interior argmax with its neighbors, and
    polishes with golden-section search to 1e-6 relative in the argument.
    Raises :class:`BracketError` when the best grid value sits on an edge,
    which signals a runaway or boundary optimum rather than an interior one.
    """
    xs = np.asarray(list(grid), dtype=float)
    if xs.size < 3:
        raise ValueError("need at least three grid points to bracket")
    vals = np.array([objective(x) for x in xs])
    i = int(np.argmax(vals))
    if i == 0 or i == xs.size - 1:
        raise BracketError(
            f"no interior maximum: best grid value sits at the edge x={xs[i]:g}"
        )
    try:
        res = minimize_scalar(
            lambda x: -objective(x),
            bracket=(xs[i - 1], xs[i], xs[i + 1]),
            method="golden",
            options={"xtol": 1e-6},
        )
    except ValueError as exc:
        raise BracketError(f"degenerate bracket around x={xs[i]:g}: {exc}") from exc
    x_star = float(res.x)
    return x_star, float(objective(x_star))


# ---------------------------------------------------------------------------
# power optimization over damping rates


def optimize_power_over_rates(
    omega_h: float,
    omega_c: float,
    epsilon: float,
    T_h: float,
    T_c: float,
    statistics: str = "bose",
) -> tuple[float, float]:
    """Maximize engine output over the common damping rate of both baths.

    All four dressed lines share one rate ``Gamma``, which is swept while the
    frequencies, drive, and temperatures stay put.  Returns
    ``(Gamma_star, P_star)`` with ``P_star`` the signed power at the optimum
    (negative, since the engine delivers it).  The balanced closed form puts
    the optimum at ``Gamma = 2 epsilon`` with
    ``P_star = -nu * epsilon * G1 / 4``, half of the strong-drive value, and
    the numerical sweep reproduces that without assuming it.

    Raises :class:`ZeroGainError` when the population gain is not positive:
    at zero gain the power is identically zero, so the objective is flat and
    there is nothing to maximize.
    """
    probe = AmplifierParams.balanced(
        omega_h, omega_c, epsilon, T_h, T_c, epsilon, statistics
    )
    g1, _ = gains(probe)
    if g1 <= 0.0:
        raise ZeroGainError(
            f"population gain G1 = {g1:.3e} is not positive: the output power "
            "is flat at or below zero over the whole rate sweep"
        )

    def output(gamma: float) -> float:
        p = AmplifierParams.balanced(
            omega_h, omega_c, epsilon, T_h, T_c, gamma, statistics
        )
        try:
            return -currents(p).P
        except LawViolationError:
            # rates so large that the dressed-line generator loses
            # thermodynamic meaning; never competitive with the peak
            return -math.inf

    grid = epsilon * np.geomspace(0.02, 200.0, 81)
    gamma_star, out_star = _golden_max(output, grid)
    return gamma_star, -out_star


# ---------------------------------------------------------------------------
# efficiency at maximum power over frequency placement


@dataclass(frozen=True)
class MaxPowerPoint:
    """Operating point that maximizes output power over a frequency sweep."""

    efficiency: float
    frequency_ratio: float
    power: float


def efficiency_at_max_power(
    T_h: float,
    T_c: float,
    *,
    omega_h: float | None = None,
    omega_c: float | None = None,
    epsilon: float | None = None,
    statistics: str = "bose",
) -> MaxPowerPoint:
    """Efficiency where output power peaks over the filter-frequency ratio.

    One filter frequency is held fixed (pass exactly one of ``omega_h`` or
    ``omega_c``) while the other sweeps the gain window between the Carnot
    ratio ``T_c / T_h`` and unity.  The drive is kept weak and the rates
    balanced at ``Gamma = 2 * epsilon`` so the sweep isolates the frequency
    trade-off.  In the high-temperature window (every ``omega / T`` at most
    ``HIGH_T_RATIO``) a bose working medium lands on the square-root ratio
    ``omega_c / omega_h = sqrt(T_c / T_h)``, giving the classic
    ``1 - sqrt(T_c / T_h)`` efficiency; a fermi medium lands at
    ``(1 + T_c / T_h) / 2``, giving half the Carnot efficiency.  Outside that
    window the sweep still runs but a ``RuntimeWarning`` flags that these
    benchmarks degrade.

    ``T_c == T_h`` collapses the gain window; the trivial point with zero
    power and zero efficiency is returned.
    """
    if (omega_h is None) == (omega_c is None):
        raise ValueError("pass exactly one of omega_h or omega_c")
    if not (T_h > 0.0 and T_c > 0.0):
        raise ValueError(f"temperatures must be positive, got {T_h}, {T_c}")
    if T_c > T_h:
        raise ValueError(f"need T_h >= T_c, got T_h={T_h}, T_c={T_c}")
    fixed = omega_h if omega_h is not None else omega_c
    if not fixed > 0.0:
        raise ValueError(f"the fixed frequency must be positive, got {fixed}")
    if T_c == T_h:
        return MaxPowerPoint(efficiency=0.0, frequency_ratio=1.0, power=0.0)

    tau = T_c / T_h
    peak_freq = fixed if omega_h is not None else fixed / tau
    if peak_freq / T_c > HIGH_T_RATIO * (1.0 + 1e-12):
        warnings.warn(
            f"largest omega/T on the sweep is {peak_freq / T_c:.3g}, above "
            f"the high-temperature window {HIGH_T_RATIO}; the square-root "
            "benchmarks for the maximum-power point degrade out here",
            RuntimeWarning,
            stacklevel=2,
        )
    eps = 1e-4 * fixed * tau if epsilon is None else float(epsilon)
    if not eps > 0.0:
        raise ValueError(f"epsilon must be positive, got {eps}")

    def params_for(ratio: float) -> AmplifierParams:
        if omega_h is not None:
            w_h, w_c = fixed, ratio * fixed
        else:
            w_h, w_c = fixed / ratio, fixed
        return AmplifierParams.balanced(
            w_h, w_c, eps, T_h, T_c, 2.0 * eps, statistics
        )

    def output(ratio: float) -> float:
        return -currents(params_for(ratio)).P

    pad = 1e-6 * (1.0 - tau)
    grid = np.linspace(tau + pad, 1.0 - pad, 121)
    ratio_star, out_star = _golden_max(output, grid)
    if not out_star > 0.0:
        raise ZeroGainError("no frequency ratio delivers positive power")
    return MaxPowerPoint(
        efficiency=efficiency(params_for(ratio_star)),
        frequency_ratio=ratio_star,
        power=out_star,
    )


# ---------------------------------------------------------------------------
# power-efficiency trade-off curves


def efficiency_power_curve(base, control: str, grid) -> list[tuple[float, float]]:
    """Normalized power-efficiency pairs along a one-parameter family.

    Starting from a symmetric-rate operating point ``base``, sweeps either
    the drive strength (``control="epsilon"``) or the hot filter frequency
    (``control="omega_h"``) over ``grid``, holding the per-bath dressed rates
    and everything else fixed.  Returns one ``(P / P_max, eta / eta_c)``
    tuple per grid value, in grid order, where ``P`` is delivered power and
    ``eta_c`` the Carnot efficiency.  Points that deliver no power get
    efficiency ratio 0.0 when the hot current also vanishes; otherwise the
    raw (possibly negative) current ratio is kept, so dud branches show up
    rather than being dressed up.
    """
    if control not in ("epsilon", "omega_h"):
        raise ValueError(f"control must be 'epsilon' or 'omega_h', got {control!r}")
    r = dressed_rates(base)
    if not r.symmetric_rates():
        raise RegimeError(
            "the sweep holds per-bath dressed rates fixed; construct the base "
            "point via AmplifierParams.symmetric"
        )
    kappa_h = 0.5 * (r.Gamma_h_plus + r.Gamma_h_minus)
    kappa_c = 0.5 * (r.Gamma_c_plus + r.Gamma_c_minus)

    raw: list[tuple[float, float]] = []
    for v in grid:
        value = float(v)
        if control == "epsilon":
            p = AmplifierParams.symmetric(
                base.omega_h, base.omega_c, value, base.T_h, base.T_c,
                kappa_h, kappa_c, base.statistics,
            )
        else:
            p = AmplifierParams.symmetric(
                value, base.omega_c, base.epsilon, base.T_h, base.T_c,
                kappa_h, kappa_c, base.statistics,
            )
        rep = currents(p)
        eta = rep.efficiency_or_cop if rep.efficiency_or_cop is not None else 0.0
        raw.append((-rep.P, eta))

    out_max = max(o for o, _ in raw)
    if not out_max > 0.0:
        raise ZeroGainError("no operating point on the grid delivers power")
    eta_c = 1.0 - base.T_c / base.T_h
    return [(o / out_max, e / eta_c) for o, e in raw]


# ---------------------------------------------------------------------------
# third-law scaling of the optimized cooling current


@dataclass(frozen=True)
class ColdBathModel:
    """Exponents describing a cold bath near absolute zero.

    ``d`` is the spatial dimension (mode density ``omega**(d-1)`` under the
    linear dispersion this model is restricted to) and ``kappa`` the
    form-factor power of the system-bath coupling, so the cold relaxation
    rate scales as ``omega**(d + kappa - 1)``.  ``eta_cv`` is the exponent of
    the bath heat capacity ``c_V ~ T**eta_cv``; it defaults to ``d``, the
    bosonic value, under which ``zeta`` reduces to ``kappa``.
    """

    d: int
    kappa: float
    eta_cv: float | None = None
    dispersion: str = "linear"

    def __post_init__(self) -> None:
        if not (isinstance(self.d, int) and self.d >= 1):
            raise ValueError(f"d must be a positive integer, got {self.d!r}")
        if self.dispersion != "linear":
            raise ValueError(
                f"only linear dispersion is implemented, got {self.dispersion!r}"
            )
        if not self.d + self.kappa > 0.0:
            raise ValueError(
                f"need d + kappa > 0 for an optimized current, got "
                f"{self.d + self.kappa}"
            )
        if self.eta_cv is None:
            object.__setattr__(self, "eta_cv", float(self.d))

    @property
    def alpha(self) -> float:
        """Exponent of the optimized cooling rate, ``d + kappa - 1``."""
        return self.d + self.kappa - 1.0

    @property
    def zeta(self) -> float:
        """Trajectory exponent ``1 + alpha - eta_cv``; below 1 breaks the third law."""
        return 1.0 + self.alpha - self.eta_cv

    @property
    def cold_current_exponent(self) -> float:
        """Exponent of the optimized current itself, ``d + kappa``."""
        return self.d + self.kappa


@dataclass(frozen=True)
class ScalingFit:
    """Power-law fit of an optimized quantity against cold temperature.

    ``classification`` summarizes what the fitted cooling-rate exponent
    ``alpha = exponent - 1`` says about the laws near absolute zero:
    ``"unattainable_pass"`` when the heat theorem holds (``alpha > 0``) and
    the model's trajectory exponent also satisfies unattainability
    (``zeta >= 1``), ``"nernst_pass"`` when only the heat theorem is
    established, ``"nernst_marginal"`` on the boundary, ``"violation"`` for
    ``alpha < 0``, and ``None`` when the fit quality is too poor to claim
    anything (``r_squared < 0.999``).
    """

    exponent: float
    prefactor: float
    r_squared: float
    classification: str | None


def _cold_current(
    model: ColdBathModel,
    fridge: str,
    omega: float,
    T_c: float,
    hot_rate: float,
    coupling: float,
    noise_strength: float,
) -> float:
    gamma_c = coupling * omega**model.alpha
    if fridge == "universal":
        return universal_low_T_current(omega, gamma_c, T_c)
    occ = occupation(omega, T_c, "bose")
    series = gamma_c * hot_rate / (gamma_c + hot_rate)
    if fridge == "power_driven":
        return 0.5 * omega * series * occ
    # noise_driven: the injection rate 2 * noise_strength throttles the
    # series combination of the two bath rates
    cond = 2.0 * noise_strength * series / (2.0 * noise_strength + series)
    return omega * cond * occ


def optimized_cold_current(
    model: ColdBathModel,
    fridge: str,
    T_c: float,
    *,
    hot_rate: float = 1.0,
    coupling: float = 1e-3,
    noise_strength: float = 0.5,
) -> tuple[float, float]:
    """Cooling current maximized over the cold filter frequency at one ``T_c``.

    ``fridge`` picks the conductance kernel: ``"universal"`` is the bare
    low-temperature form (Boltzmann tail, rate ``coupling * omega**alpha``),
    whose optimum sits exactly at ``omega = (d + kappa) * T_c``;
    ``"power_driven"`` throttles that rate through a saturated hot contact;
    ``"noise_driven"`` adds the injection bottleneck of a noise-fed machine.
    The two dressed kernels keep the full bose occupation, so they need
    ``alpha > 0`` for an interior optimum; the universal kernel handles the
    marginal and violating exponents as well.

    Returns ``(J_star, omega_star)``.
    """
    if fridge not in _FRIDGE_KERNELS:
        raise ValueError(f"fridge must be one of {_FRIDGE_KERNELS}, got {fridge!r}")
    if not T_c > 0.0:
        raise ValueError(f"T_c must be positive, got {T_c}")
    if not (hot_rate > 0.0 and coupling > 0.0 and noise_strength > 0.0):
        raise ValueError("hot_rate, coupling, and noise_strength must be positive")
    if fridge != "universal" and model.alpha <= 0.0:
        raise RegimeError(
            f"the {fridge} kernel keeps the full bose occupation, which "
            f"diverges like T/omega at the origin; with alpha = {model.alpha} "
            "the current has no interior maximum (use the universal kernel "
            "for marginal or violating exponents)"
        )

    def current(omega: float) -> float:
        return _cold_current(
            model, fridge, omega, T_c, hot_rate, coupling, noise_strength
        )

    hi = 10.0 * (model.cold_current_exponent + 2.0)
    grid = T_c * np.geomspace(1e-3, hi, 140)
    omega_star, j_star = _golden_max(current, grid)
    return j_star, omega_star


def third_law_current_scaling(
    model: ColdBathModel,
    fridge: str = "universal",
    *,
    temperatures=None,
    hot_rate: float = 1.0,
    coupling: float = 1e-3,
    noise_strength: float = 0.5,
) -> ScalingFit:
    """Fit ``J_c_star ~ T_c**exponent`` by re-optimizing at each temperature.

    The cold frequency is re-optimized independently at every grid
    temperature, so the power law is measured rather than assumed; the
    analytic expectation is ``exponent = d + kappa``.  The default grid is 12
    log-spaced points over two decades; custom grids must keep at least 8
    points spanning at least two decades, and classification is withheld
    (``None``) whenever the log-log fit has ``r_squared < 0.999``.
    """
    if temperatures is None:
        temps = np.geomspace(1e-3, 1e-1, 12)
    else:
        temps = np.sort(np.asarray(list(temperatures), dtype=float))
        if temps.size < 8:
            raise ValueError(f"need at least 8 temperatures, got {temps.size}")
        if not temps[0] > 0.0:
            raise ValueError("temperatures must be positive")
        if temps[-1] / temps[0] < 99.999:
            raise ValueError("temperature grid must span at least two decades")

    currents_star = np.empty_like(temps)
    for k, t in enumerate(temps):
        currents_star[k], _ = optimized_cold_current(
            model,
            fridge,
            float(t),
            hot_rate=hot_rate,
            coupling=coupling,
            noise_strength=noise_strength,
        )

    log_t = np.log(temps)
    log_j = np.log(currents_star)
    slope, intercept = np.polyfit(log_t, log_j, 1)
    fitted = slope * log_t + intercept
    ss_res = float(np.sum((log_j - fitted) ** 2))
    ss_tot = float(np.sum((log_j - np.mean(log_j)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 0.0

    if r_squared < 0.999:
        classification = None
    else:
        alpha_fit = slope - 1.0
        if abs(alpha_fit) <= 1e-3:
            classification = "nernst_marginal"
        elif alpha_fit < 0.0:
            classification = "violation"
        elif model.zeta >= 1.0:
            classification = "unattainable_pass"
        else:
            classification = "nernst_pass"

    return ScalingFit(
        exponent=float(slope),
        prefactor=float(math.exp(intercept)),
        r_squared=float(r_squared),
        classification=classification,
    )


def cooling_trajectory(
    model: ColdBathModel,
    fridge: str,
    T0: float,
    t_max: float,
    *,
    heat_capacity_prefactor: float = 1.0,
    temperature_floor: float | None = None,
    hot_rate: float = 1.0,
    coupling: float = 1e-3,
    noise_strength: float = 0.5,
):
    """Integrate self-cooling of the cold bath under the optimized current.

    Solves ``c_V(T) dT/dt = -J_c_star(T)`` with ``c_V =
    heat_capacity_prefactor * T**eta_cv``, re-optimizing the cold frequency
    at every right-hand-side evaluation.  Integration stops at ``t_max`` or
    at the temperature floor (default ``1e-4 * T0``), whichever comes first.

    Returns ``(samples, zeta_fit, classification)``: ``samples`` is an
    ``(n, 2)`` array of ``(t, T)`` rows on the integrator's own adaptive
    steps; ``zeta_fit`` is the exponent of ``dT/dt ~ -T**zeta`` measured by
    finite differences over the lowest reached temperature decade, excluding
    the first tenth of the integration time as transient; ``classification``
    is ``"violation"`` for ``zeta_fit`` below ``1 - ZETA_BAND`` (the
    temperature would hit zero in finite time), ``"exponential"`` within the
    band around 1, and ``"power_law"`` above it.  The analytic expectation is
    ``zeta_fit == model.zeta``.

    A step-size failure inside the integrator (stiff corner) is raised as a
    ``RuntimeError`` carrying the solver's message.
    """
    if not (T0 > 0.0 and t_max > 0.0):
        raise ValueError(f"need T0 > 0 and t_max > 0, got {T0}, {t_max}")
    if not heat_capacity_prefactor > 0.0:
        raise ValueError("heat_capacity_prefactor must be positive")
    floor = 1e-4 * T0 if temperature_floor is None else float(temperature_floor)
    if not 0.0 < floor < T0:
        raise ValueError(f"temperature floor must sit inside (0, T0), got {floor}")

    def rhs(_t: float, y) -> list[float]:
        temp = max(float(y[0]), 0.01 * floor)
        j_star, _ = optimized_cold_current(
            model,
            fridge,
            temp,
            hot_rate=hot_rate,
            coupling=coupling,
            noise_strength=noise_strength,
        )
        return [-j_star / (heat_capacity_prefactor * temp**model.eta_cv)]

    def hit_floor(_t: float, y) -> float:
        return float(y[0]) - floor

    hit_floor.terminal = True
    hit_floor.direction = -1.0

    sol = solve_ivp(
        rhs,
        (0.0, t_max),
        [T0],
        method="RK45",
        rtol=1e-8,
        atol=1e-12 * T0,
        max_step=t_max / 200.0,
        events=hit_floor,
    )
    if sol.status == -1:
        raise RuntimeError(f"cooling integration failed: {sol.message}")

    t_s = sol.t
    temp_s = sol.y[0]
    samples = np.column_stack([t_s, temp_s])

    t_end = t_s[-1]
    t_min = float(np.min(temp_s))
    window = (t_s >= 0.1 * t_end) & (temp_s <= 10.0 * t_min)
    if int(np.count_nonzero(window)) < 8:
        # narrow crash window: fall back to the coldest samples available
        window = np.zeros_like(t_s, dtype=bool)
        window[np.argsort(temp_s)[:12]] = True

    rate = np.gradient(temp_s, t_s)
    keep = window & (rate < 0.0) & (temp_s > 0.0)
    if int(np.count_nonzero(keep)) < 4:
        raise RuntimeError(
            "too few usable samples in the cold window to fit the trajectory "
            "exponent; extend t_max or lower the floor"
        )
    zeta_fit, _ = np.polyfit(np.log(temp_s[keep]), np.log(-rate[keep]), 1)
    zeta_fit = float(zeta_fit)

    if zeta_fit < 1.0 - ZETA_BAND:
        classification = "violation"
    elif zeta_fit <= 1.0 + ZETA_BAND:
        classification = "exponential"
    else:
        classification = "power_law"
    return samples, zeta_fit, classification
