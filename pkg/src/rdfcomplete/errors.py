"""Exception types shared across the package."""

from __future__ import annotations


class RdfCompleteError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RdfCompleteError):
    """Syntax error in a graph, query, or statement source."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FreezeCollisionError(RdfCompleteError):
    """Input data uses the reserved frozen-IRI namespace.

    Freezing replaces variables with IRIs from a reserved namespace; if an
    input graph, statement, or query already contains such an IRI the frozen
    terms would be ambiguous, which signals corrupted input data.
    """


class FragmentViolationError(RdfCompleteError):
    """A statement outside the subject-predicate fragment was given where
    only subject-predicate statements are allowed."""


class BudgetExceededError(RdfCompleteError):
    """An entailment check ran out of its step or time budget.

    This is a distinct "undecided" outcome: it must never be reported as
    an incomplete verdict. ``partial_mappings`` holds the saturated
    mappings collected before the budget ran out.
    """

    def __init__(self, reason: str, partial_mappings=frozenset(), stats=None):
        super().__init__(reason)
        self.partial_mappings = frozenset(partial_mappings)
        self.stats = stats


class ResourceBoundError(RdfCompleteError):
    """A brute-force enumeration would exceed its configured bound; the
    caller must shrink the instance."""


class StatementNotFoundError(RdfCompleteError):
    """Removal of a statement that is not in the store."""


class GenerationError(RdfCompleteError):
    """A workload specification yields no usable benchmark instances."""


class RemoteFetchError(RdfCompleteError):
    """A remote graph source could not be fetched; retryable."""
