"""Exception hierarchy.  The CLI maps each family to an exit status."""


class InjcapError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class InputError(InjcapError, ValueError):
    """Malformed or inconsistent input (bad constants, non-linear map, ...)."""

    exit_code = 2


class FieldError(InputError):
    pass


class AxiomError(InputError):
    """An algebra or module fails one of its defining identities.

    ``where`` names the failing basis elements.
    """

    def __init__(self, message, where=()):
        super().__init__(message)
        self.where = tuple(where)


class BudgetError(InjcapError):
    exit_code = 3


class HypothesisError(InjcapError):
    """A cardinality or degree hypothesis of a construction is not met."""

    exit_code = 3


class InfeasibleError(InjcapError):
    """A sampling request cannot be met (e.g. too few residues)."""

    exit_code = 3


class LocalTargetUnmet(InjcapError):
    """No local row/column of the requested length exists at some prime."""

    exit_code = 1

    def __init__(self, message, site=None):
        super().__init__(message)
        self.site = site


class InternalContradiction(InjcapError, AssertionError):
    """Raised when a search that is guaranteed to succeed comes up empty."""

    exit_code = 3
