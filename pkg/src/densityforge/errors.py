"""Exception types shared across the package."""


class DensityForgeError(Exception):
    """Base class for all package errors."""


class PreconditionViolated(DensityForgeError, ValueError):
    pass


class SizeBound(DensityForgeError):
    """A brute-force oracle was asked to enumerate a module that is too large."""


class NonIntegralCoefficient(DensityForgeError, ArithmeticError):
    pass


class ExtraPointMismatch(DensityForgeError, ArithmeticError):
    pass


class PoleAtCenter(DensityForgeError, ZeroDivisionError):
    """The denominator of an s-rational function vanishes at s = 0 after reduction."""


class ParityMismatch(DensityForgeError, ValueError):
    pass


class CurveDataError(DensityForgeError, ValueError):
    pass


class BundleDataError(DensityForgeError, ValueError):
    pass
