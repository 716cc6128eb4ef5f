"""Exception hierarchy.

Every error raised by the package derives from :class:`ShellError`, which is
itself a :class:`ValueError` so callers that only care about "bad input" can
catch the builtin.
"""


class ShellError(ValueError):
    """Base class for all package errors."""


class InvalidInput(ShellError):
    pass


class NotSkew(ShellError):
    pass


class NotSymmetric(ShellError):
    pass


class NotPSD(ShellError):
    pass


class Degenerate(ShellError):
    """A parametrization, frame or deformation gradient is (nearly) singular."""


class OutOfDomain(ShellError):
    pass


class NotRotation(ShellError):
    pass


class PolarFailure(ShellError):
    pass


class InvalidMaterial(ShellError):
    pass


class QuadratureOrderInvalid(ShellError):
    pass


class InvalidGrid(ShellError):
    pass


class NonConvergence(ShellError):
    pass


class UnknownCatalogId(ShellError):
    pass


class BadParameters(ShellError):
    pass


class IncompatibleScenario(ShellError):
    pass
