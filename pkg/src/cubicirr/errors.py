"""Exception hierarchy shared by the library and the CLI."""


class CubicIrrError(Exception):
    """Base class for all library errors."""


class ValidationError(CubicIrrError, ValueError):
    """An input violates a documented precondition."""


class LimitError(CubicIrrError):
    """An enumeration would exceed the configured element limit."""


class InvariantError(CubicIrrError):
    """An internal identity failed (e.g. a division that must be exact was not).

    This signals a bug, never a data condition.
    """


class ClassificationError(CubicIrrError):
    """No canonical form matched, or the equivalence search budget was exceeded."""


class SearchBudgetError(ClassificationError, LimitError):
    """The field is too large for the exhaustive equivalence search."""
