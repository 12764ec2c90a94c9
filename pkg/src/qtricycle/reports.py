"""Validated steady-state current bookkeeping shared by all machine models.

Sign convention: every current is positive when energy flows INTO the working
medium.  An engine therefore reports negative output power ``P`` and exposes
``output_power = -P`` for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import LawViolationError

__all__ = ["CurrentsReport", "assemble_report", "FIRST_LAW_RTOL", "ENTROPY_FLOOR"]

#: relative tolerance on the steady-state energy balance
FIRST_LAW_RTOL = 1e-10
#: most negative admissible entropy production rate
ENTROPY_FLOOR = -1e-12


@dataclass(frozen=True)
class CurrentsReport:
    """Steady-state power, heat currents, and the two thermodynamic checks.

    ``first_law_residual`` is ``P + J_h + J_c + J_w`` (the work-terminal
    current ``J_w`` is zero for machines driven by an external field), and
    construction fails if it exceeds ``FIRST_LAW_RTOL`` relative to the larger
    heat current, or if ``entropy_rate`` sits below ``ENTROPY_FLOOR``.
    """

    P: float
    J_h: float
    J_c: float
    J_w: float
    entropy_rate: float
    efficiency_or_cop: float | None
    first_law_residual: float
    #: characteristic gross flow for judging the residual; models running at
    #: an equilibrium point pass it so that near-zero currents are not held
    #: to a vanishing denominator
    throughput_scale: float = 0.0

    def __post_init__(self) -> None:
        scale = max(abs(self.J_h), abs(self.J_c), self.throughput_scale, 1e-300)
        if not abs(self.first_law_residual) < FIRST_LAW_RTOL * scale:
            raise LawViolationError(
                f"first-law residual {self.first_law_residual:.3e} exceeds "
                f"{FIRST_LAW_RTOL:.1e} relative to currents of size {scale:.3e}"
            )
        if not self.entropy_rate >= ENTROPY_FLOOR:
            raise LawViolationError(
                f"entropy production rate {self.entropy_rate:.3e} is below "
                f"{ENTROPY_FLOOR:.1e}"
            )

    @property
    def output_power(self) -> float:
        """Power delivered to the outside, positive for a working engine."""
        return -self.P


def assemble_report(
    power: float,
    heat_hot: float,
    heat_cold: float,
    T_h: float,
    T_c: float,
    *,
    heat_work: float = 0.0,
    T_w: float = math.inf,
    efficiency_or_cop: float | None = None,
    throughput_scale: float = 0.0,
) -> CurrentsReport:
    """Build a :class:`CurrentsReport`, deriving the residual and entropy rate.

    A work terminal at infinite temperature (the default) carries no entropy;
    passing a finite ``T_w`` adds ``-heat_work / T_w`` to the entropy rate.
    Numerical models should pass their gross flow scale as
    ``throughput_scale`` so that operating points where all currents cancel
    are not failed on roundoff alone.
    """
    residual = power + heat_hot + heat_cold + heat_work
    entropy = -heat_hot / T_h - heat_cold / T_c
    if math.isfinite(T_w):
        entropy -= heat_work / T_w
    return CurrentsReport(
        P=power,
        J_h=heat_hot,
        J_c=heat_cold,
        J_w=heat_work,
        entropy_rate=entropy,
        efficiency_or_cop=efficiency_or_cop,
        first_law_residual=residual,
        throughput_scale=throughput_scale,
    )
