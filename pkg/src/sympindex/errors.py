"""Exception hierarchy."""


class SymplecticError(Exception):
    """Base class for all errors raised by sympindex."""


class DimensionError(SymplecticError, ValueError):
    pass


class ContractError(SymplecticError, ValueError):
    """An input violates an operation's precondition."""


class ParameterError(SymplecticError, ValueError):
    pass


class NumericalConsistencyError(SymplecticError, ArithmeticError):
    pass


class DegeneracyError(SymplecticError, ArithmeticError):
    """A hypersurface crossing could not be resolved.

    ``interval`` holds the offending parameter interval when known.
    """

    def __init__(self, msg, interval=None):
        super().__init__(msg)
        self.interval = interval


class EngineInconsistencyError(SymplecticError, ArithmeticError):
    """Two independent computation routes disagree."""


class DecompositionError(SymplecticError, ValueError):
    def __init__(self, msg, eigenvalue=None, signatures=None):
        super().__init__(msg)
        self.eigenvalue = eigenvalue
        self.signatures = signatures


class ClassificationError(SymplecticError, ValueError):
    pass


class ExhaustionError(SymplecticError, RuntimeError):
    def __init__(self, msg, stats=None):
        super().__init__(msg)
        self.stats = stats or {}


class PreconditionError(SymplecticError, ValueError):
    pass


class DocumentError(SymplecticError, ValueError):
    """A JSON input document is malformed; ``where`` names the offending field."""

    def __init__(self, msg, where=""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where
