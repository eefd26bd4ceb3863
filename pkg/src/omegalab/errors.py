"""Exception types shared across the package."""


class OmegaLabError(Exception):
    """Base class for all package errors."""


class BoundExceeded(OmegaLabError):
    pass


class NotPositiveCone(OmegaLabError):
    pass


class NotNegativeCone(OmegaLabError):
    pass


class NotDominant(OmegaLabError):
    pass


class DegenerateForm(OmegaLabError):
    pass


class NonTorsion(OmegaLabError):
    pass


class NotMinimalForm(OmegaLabError):
    pass


class InvalidForm(OmegaLabError):
    """Quadratic-form data violating the restricted identity."""


class UnexpectedKernelDim(OmegaLabError):
    pass


class UndeterminedRank(OmegaLabError):
    """The specialization bounds could not certify a generic rank."""


class Undefined(OmegaLabError):
    """A partial crystal operator was applied outside its domain."""


class PredicateViolated(OmegaLabError):
    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight


class ConfigError(OmegaLabError):
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
