"""Exception types shared across the toolkit."""


class CohortKgError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(CohortKgError):
    """A term, triple, or record violates a structural invariant."""


class FrozenGraphError(CohortKgError):
    """Mutation attempted on a graph that has been frozen."""


class TurtleSyntaxError(CohortKgError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class PrefixResolutionError(TurtleSyntaxError):
    """A prefixed name uses a prefix that was never declared."""


class SchemaError(CohortKgError):
    """A study file or patient file violates the documented schema.

    ``diagnostics`` holds one human-readable line per violation, each naming
    the file (or row) and field path concerned.
    """

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or [message]


class CorpusError(SchemaError):
    """Corpus-level failure: duplicate study ids, IRI collisions, bad files."""


class NotFoundError(CohortKgError):
    """A study, arm, or patient id did not resolve."""


class UnitError(CohortKgError):
    """Incompatible units with no known conversion."""


class InsufficientAxesError(CohortKgError):
    """A star plot was requested with fewer than three covered features."""
