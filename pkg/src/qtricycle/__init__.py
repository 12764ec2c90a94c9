"""Steady-state simulation and optimization of continuous quantum thermal machines.

Three-terminal engines and refrigerators built from driven two-mode amplifiers,
few-level absorption machines, and noise-driven variants, with closed-form
steady states cross-validated against brute-force Lindblad generators, full
thermodynamic-law audits, and low-temperature scaling analysis.
"""

__version__ = "0.1.0"

from . import errors
from .discrete import (
    FourLevelStatic,
    ManifoldCurrents,
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
from .fridge import (
    DressedPair,
    FridgeParams,
    NoiseSpec,
    absorption_cop_bound,
    doppler_recoil_reference,
    dressed_pair,
    gaussian_noise_cooling,
    minimum_temperature,
    poisson_noise_cooling,
    poisson_noise_params,
    power_driven_cooling_current,
    power_driven_report,
    sodium_cooling_reference,
    three_level_absorption_fridge,
    universal_low_T_current,
)
from .qubit_fridge import (
    ThreeQubitLevels,
    three_qubit_eigensystem,
    three_qubit_fridge,
    three_qubit_fridge_local,
    three_qubit_noise_fridge,
)
from .amplifier import (
    AmplifierParams,
    DressedRates,
    SU2State,
    currents,
    currents_from_state,
    currents_strong_drive,
    dephasing_power_degradation,
    dressed_rates,
    efficiency,
    epsilon_crit,
    gains,
    heat_leak_entropy,
    occupation,
    su2_steady_state,
)
from .thermo import (
    DEGENERATE_GAS_ZETA,
    ColdBathModel,
    LawAudit,
    MaxPowerPoint,
    ScalingFit,
    audit,
    cooling_trajectory,
    efficiency_at_max_power,
    efficiency_power_curve,
    optimize_power_over_rates,
    optimized_cold_current,
    third_law_current_scaling,
)
from .operators import (
    DensityOperator,
    GKSSector,
    HilbertSpace,
    LindbladTerm,
    Operator,
    Superoperator,
    build_liouvillian,
    channel_current,
    ladder_pair,
    steady_state,
    tensor_embed,
    unvec,
    vec,
)
from .reports import CurrentsReport, assemble_report

__all__ = [
    "errors",
    "HilbertSpace",
    "Operator",
    "LindbladTerm",
    "GKSSector",
    "Superoperator",
    "DensityOperator",
    "vec",
    "unvec",
    "tensor_embed",
    "ladder_pair",
    "build_liouvillian",
    "steady_state",
    "channel_current",
    "AmplifierParams",
    "DressedRates",
    "SU2State",
    "occupation",
    "dressed_rates",
    "gains",
    "su2_steady_state",
    "currents",
    "currents_from_state",
    "currents_strong_drive",
    "efficiency",
    "epsilon_crit",
    "heat_leak_entropy",
    "dephasing_power_degradation",
    "CurrentsReport",
    "assemble_report",
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
    "ThreeQubitLevels",
    "three_qubit_eigensystem",
    "three_qubit_fridge",
    "three_qubit_noise_fridge",
    "three_qubit_fridge_local",
    "DEGENERATE_GAS_ZETA",
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
    "__version__",
]
