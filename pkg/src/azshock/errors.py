"""Exception taxonomy for the azimuthal shock toolkit.

Every failure mode that a caller can meaningfully catch gets its own
class; all inherit from :class:`AzshockError` so blanket handling stays
possible.
"""


class AzshockError(Exception):
    """Base class for all package errors."""


# pointwise algebra


class NonPositiveSoundSpeed(AzshockError):
    """State has w <= z, so c = (w - z)/2 is not positive."""


class SingularDenominator(AzshockError):
    """Closed-form expression evaluated at (or too near) its pole."""


# pre-shock Burgers data


class NoRoot(AzshockError):
    """Root finder could not locate the requested label."""


class AtShock(AzshockError):
    """Evaluation requested exactly on the shock position."""


class BranchAmbiguity(AzshockError):
    """Fractional-power inverse asked for outside its single-branch radius."""


# jump system


class SeedOutOfRange(AzshockError):
    """Asymptotic seed requested with |jump/mean| too large."""


class NewtonDiverged(AzshockError):
    """Damped Newton iteration failed to converge within its cap."""


class DegenerateDenominator(AzshockError):
    """Shock speed formula evaluated where its denominator vanishes."""


class InsufficientSamples(AzshockError):
    """Scaling report needs more samples or a wider time window."""


# characteristics


class StepSizeUnderflow(AzshockError):
    """Integrator step fell below the representable minimum."""


class RootNotBracketed(AzshockError):
    """Bisection target not bracketed by the supplied interval."""


# field solver


class CrossingLabels(AzshockError):
    """Lagrangian flow map lost monotonicity inside the smooth window."""


class NoBlowupInWindow(AzshockError):
    """No gradient blowup detected inside the simulated time window."""


class InnerIterationStall(AzshockError):
    """Fixed-point field iteration hit its cap without contracting."""


class StoppingTimeMissing(AzshockError):
    """A required characteristic stopping time could not be located."""


class TooFewNodes(AzshockError):
    """One-sided extrapolation stencil has fewer nodes than required."""


# shock evolution


class OuterIterationStall(AzshockError):
    """Shock-curve iteration hit its cap without converging."""


class RegularityViolated(AzshockError):
    """Computed shock curve left its regularity corridor."""


# analysis and io


class NonPositiveSample(AzshockError):
    """Log-log fit fed a zero or negative sample."""


class InsufficientLadder(AzshockError):
    """Holder estimate needs more ladder points after windowing."""


class ConfigError(AzshockError):
    """Config file failed to parse; carries the offending line number."""

    def __init__(self, message, lineno=None):
        super().__init__(message)
        self.lineno = lineno
