"""Exception hierarchy for the localization engine.

Law violations and nonexistent localizations are data, not exceptions.
Everything raised here means a computation could not be carried out or
produced a result that contradicts the theory it is checking.
"""

from typing import Any, Optional


class EngineError(Exception):
    """Base class for every error raised by the engine"""


class UnknownIdError(EngineError, KeyError):
    """An object or morphism id is not part of the category"""

    def __init__(self, kind: str, ident: str, where: str = ""):
        self.kind = kind
        self.ident = ident
        self.where = where
        suffix = f" in {where}" if where else ""
        super().__init__(f"unknown {kind} id {ident!r}{suffix}")

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message
        return self.args[0]


class ShapeMismatchError(EngineError, ValueError):
    """Functors, transformations or morphisms do not fit together"""


class BudgetExceededError(EngineError):
    """A fixture or document would exceed the configured size budget"""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds budget {limit}")


class TheoremViolation(EngineError):
    """A computed instance contradicts a uniqueness or equivalence claim"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        self.witness = witness
        super().__init__(message)


class UnsupportedCategoryError(EngineError):
    """The category lacks structure an operation needs (e.g. joins)"""


class ConfigError(EngineError, ValueError):
    """Invalid configuration value"""


class DslError(EngineError):
    """Base class for errors in DSL documents"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            position = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{position}: {message}"
        super().__init__(message)


class DslSyntaxError(DslError):
    pass


class UnresolvedIdentifierError(DslError):
    pass


class MissingCompositeError(DslError):
    pass


class CompositionTypeError(DslError):
    pass
