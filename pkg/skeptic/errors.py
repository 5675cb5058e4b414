class SkepticError(Exception):
    pass


class CollateralDutyError(SkepticError, ValueError):
    """Raised when a bet could drive the capital to zero or below."""


class DataError(SkepticError, ValueError):
    """Malformed input data. `lines` holds 1-based line numbers of the offending rows."""

    def __init__(self, message: str, lines: list[int] = None):
        super().__init__(message)
        self.lines = lines or []


class NumericalError(SkepticError, ArithmeticError):
    pass


class SeparationError(NumericalError):
    """The likelihood has no finite maximizer: capital grows without bound along `direction`."""

    def __init__(self, message: str, direction, theta=None):
        super().__init__(message)
        self.direction = direction
        self.theta = theta


class PriorSupportWarning(UserWarning):
    pass


class SingularInformationWarning(UserWarning):
    pass


class BinningWarning(UserWarning):
    pass
