"""Errors raised by hpsplines.

Configuration problems subclass ValueError so callers written
against the plain config loader keep working. Everything numeric
maps to exit status 3 in main.py.
"""


class HpSplinesError(Exception):
    """Base class for every error raised by the package"""


class ConfigError(HpSplinesError, ValueError):
    """Invalid run configuration or problem definition"""


class DescriptorMismatchError(HpSplinesError):
    """Operation called on a group or manifold that does not support it"""


class SingularityError(HpSplinesError):
    """A required matrix inverse does not exist, or a point sits on a cut locus"""


class StepSizeError(HpSplinesError):
    """Increment h*xi0 left the region where the Cayley map is trusted"""


class ConvergenceError(HpSplinesError):
    """An inner iteration hit its cap or a reference integration blew up"""


class UnsupportedLagrangianError(HpSplinesError):
    """The adjoint gradient is only derived for the squared-velocity Lagrangian"""


# failures of the forward flow; commands map them to exit status 3
NUMERIC_FAILURES = (StepSizeError, SingularityError, ConvergenceError)
