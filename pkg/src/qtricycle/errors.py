"""Exception and warning types shared across the package."""


class QTricycleError(Exception):
    """Base class for all errors raised by this package."""


class SpaceMismatchError(QTricycleError):
    """Operators or states that were expected to share a Hilbert space do not."""


class HermiticityError(QTricycleError):
    """A matrix declared hermitian fails the hermiticity tolerance."""


class StateValidationError(QTricycleError):
    """A density operator violates hermiticity, unit trace, or positivity."""


class SteadyStateError(QTricycleError):
    """No acceptable stationary state could be extracted from a generator."""


class RegimeError(QTricycleError):
    """Parameters violate a precondition of the requested closed form."""


class ZeroGainError(QTricycleError):
    """Efficiency is undefined because the population gain vanishes."""


class BracketError(QTricycleError):
    """A root search could not bracket a sign change."""


class TruncationError(QTricycleError):
    """Fock-space truncation failed its convergence gate."""


class LawViolationError(QTricycleError):
    """A currents report violates the first-law or entropy tolerance."""


class ConfigError(QTricycleError):
    """An experiment configuration is malformed or inconsistent."""


class DegenerateSteadyStateWarning(UserWarning):
    """The generator has a degenerate null space; the propagated state is returned."""


class RegimeWarning(UserWarning):
    """Parameters are outside the regime a formula was derived in."""
