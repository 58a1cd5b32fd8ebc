"""Exception types shared across the package."""


class DoubleBundleError(Exception):
    """Base class for every error raised by this package."""


class DimMismatch(DoubleBundleError, ValueError):
    pass


class BaseMismatch(DoubleBundleError, ValueError):
    """Two elements do not lie over the same base point of the relevant side."""


class Singular(DoubleBundleError, ArithmeticError):
    pass


class InputError(DoubleBundleError, ValueError):
    pass


class ToleranceNotMet(DoubleBundleError, ArithmeticError):
    pass


class NoOverlap(DoubleBundleError, KeyError):
    pass


class NotACocycle(DoubleBundleError, ValueError):
    pass


class NotASection(DoubleBundleError, ValueError):
    pass


class PreconditionFailed(DoubleBundleError, ValueError):
    pass
