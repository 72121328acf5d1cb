"""The subject-predicate statement fragment and its index.

A subject-predicate (SP) statement asserts completeness of all property
values of one entity: its body is a single pattern with a ground subject,
ground predicate, and variable object. For statement sets within this
fragment the crucial part of a BGP can be computed by direct key lookup,
with no transfer-operator evaluation and no graph access at all.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import FragmentViolationError
from .statements import CompletenessStatement, StatementSet
from .terms import BGP, Iri, Var

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SPStatement:
    """SP view of a completeness statement: its key plus the statement."""

    subject: Iri
    predicate: Iri
    base: CompletenessStatement


def classify(statement: CompletenessStatement) -> Optional[SPStatement]:
    """Return the SP view of the statement, or None outside the fragment."""
    if len(statement.body) != 1:
        return None
    (pattern,) = statement.body
    if not isinstance(pattern.subject, Iri):
        return None
    if not isinstance(pattern.predicate, Iri):
        return None
    if not isinstance(pattern.object, Var):
        return None
    return SPStatement(pattern.subject, pattern.predicate, statement)


class SPIndex:
    """Constant-time (subject, predicate) -> SP-statement lookup.

    The composite tuple key sidesteps the ambiguity a concatenated string
    key would have when IRIs contain the separator.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[dict] = None):
        self._entries: dict[tuple[Iri, Iri], SPStatement] = dict(entries or {})

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: tuple[Iri, Iri]) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[SPStatement]:
        return iter(self._entries.values())

    def get(self, subject: Iri, predicate: Iri) -> Optional[SPStatement]:
        return self._entries.get((subject, predicate))

    def keys(self) -> Iterable[tuple[Iri, Iri]]:
        return self._entries.keys()

    def with_entry(self, entry: SPStatement) -> "SPIndex":
        updated = dict(self._entries)
        updated[(entry.subject, entry.predicate)] = entry
        return SPIndex(updated)

    def without_key(self, subject: Iri, predicate: Iri) -> "SPIndex":
        updated = dict(self._entries)
        updated.pop((subject, predicate), None)
        return SPIndex(updated)

    def keys_for_subject(self, subject: Iri) -> list[SPStatement]:
        return [e for e in self._entries.values() if e.subject == subject]


def build_index(statements: StatementSet) -> SPIndex:
    """Index a statement set that lies entirely in the SP fragment.

    A statement outside the fragment raises ``FragmentViolationError``; a
    duplicate key keeps the first entry and logs a warning (the extra
    statement is semantically identical).
    """
    entries: dict[tuple[Iri, Iri], SPStatement] = {}
    for statement in statements:
        sp = classify(statement)
        if sp is None:
            raise FragmentViolationError(
                f"statement {statement.id} is not an SP-statement"
            )
        key = (sp.subject, sp.predicate)
        if key in entries:
            logger.warning(
                "duplicate SP-statement for key (%s, %s); keeping the first",
                sp.subject,
                sp.predicate,
            )
            continue
        entries[key] = sp
    return SPIndex(entries)


def try_build_index(statements: StatementSet) -> Optional[SPIndex]:
    """Index the statements if all are SP, else None (caller falls back)."""
    try:
        return build_index(statements)
    except FragmentViolationError:
        return None


def crucial_part_sp(body: BGP, index: SPIndex) -> BGP:
    """Crucial part of a BGP under SP-statements, by key lookup only.

    A pattern belongs to the crucial part exactly when its subject and
    predicate are ground IRIs with a matching index key; variable subjects
    or predicates never match. The graph plays no role.
    """
    crucial = set()
    for pattern in body:
        if isinstance(pattern.subject, Iri) and isinstance(pattern.predicate, Iri):
            if (pattern.subject, pattern.predicate) in index:
                crucial.add(pattern)
    return frozenset(crucial)
