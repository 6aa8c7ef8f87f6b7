"""Exception hierarchy shared across the package."""


class DecotreeError(Exception):
    """Base class for all package errors."""


class ConfigError(DecotreeError, ValueError):
    """Invalid parameters or configuration."""


class BudgetError(DecotreeError):
    """A bounded computation exceeded its configured budget."""


class NotATree(DecotreeError, ValueError):
    pass


class InvalidLength(DecotreeError, ValueError):
    pass


class MultiplicityOverflow(DecotreeError, OverflowError):
    pass


class SizeTooLarge(DecotreeError, ValueError):
    pass


class SearchBudgetExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass


class InfeasibleConfig(ConfigError):
    pass


class EmptyFamily(ConfigError):
    pass


class RateOutOfRange(ConfigError):
    pass


class ConfigurationUnsupported(DecotreeError, ValueError):
    pass


class ShapeUnsupported(DecotreeError, ValueError):
    pass


class DegenerateCalibration(DecotreeError):
    pass
