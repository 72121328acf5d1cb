"""Completeness statements and their semantics.

A completeness statement asserts that the graph already contains every
real-world triple matching its (non-empty) BGP body. Semantically this
constrains which supersets of the graph are possible "ideal world" states:
an extension pair (G, G') is valid when instantiating every statement body
over G' yields nothing outside G. The transfer operator computes exactly
those instantiations.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Iterator, Optional

from .graph import Graph, eval_bgp
from .terms import (
    BGP,
    Mapping,
    Query,
    Triple,
    TriplePattern,
    apply_mapping,
    bgp_terms,
    bgp_variables,
    sorted_patterns,
    uses_reserved_namespace,
)


@dataclass(frozen=True)
class Provenance:
    """Who asserted a statement, when, and on what authority.

    Auditing metadata only; carries no semantic weight in entailment.
    """

    author: Optional[str] = None
    timestamp: Optional[datetime] = None
    reference: Optional[str] = None

    def is_empty(self) -> bool:
        return self.author is None and self.timestamp is None and self.reference is None


def canonical_body_text(body: BGP) -> str:
    return " . ".join(str(pat) for pat in sorted_patterns(body))


def body_digest(body: BGP) -> str:
    digest = hashlib.sha256(canonical_body_text(body).encode("utf-8")).hexdigest()
    return "cs-" + digest[:12]


@dataclass(frozen=True)
class CompletenessStatement:
    """Assertion that the graph is complete for everything matching ``body``."""

    body: BGP
    id: str = ""
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        if not self.body:
            raise ValueError("completeness statement requires a non-empty BGP")
        if not self.id:
            object.__setattr__(self, "id", body_digest(self.body))

    def __str__(self) -> str:
        return f"COMPLETE {{ {canonical_body_text(self.body)} }}"


class StatementSet:
    """A set of completeness statements with unique ids."""

    __slots__ = ("_by_id", "_reserved")

    def __init__(self, statements: Iterable[CompletenessStatement] = ()):
        by_id: dict[str, CompletenessStatement] = {}
        reserved = False
        for st in statements:
            if st.id in by_id and by_id[st.id] != st:
                raise ValueError(f"duplicate statement id: {st.id}")
            by_id[st.id] = st
            if not reserved and any(
                uses_reserved_namespace(t) for t in bgp_terms(st.body)
            ):
                reserved = True
        self._by_id = by_id
        self._reserved = reserved

    @property
    def has_reserved_terms(self) -> bool:
        return self._reserved

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[CompletenessStatement]:
        return iter(self._by_id.values())

    def __contains__(self, statement: CompletenessStatement) -> bool:
        return self._by_id.get(statement.id) == statement

    def __eq__(self, other) -> bool:
        return isinstance(other, StatementSet) and self._by_id == other._by_id

    def get(self, statement_id: str) -> Optional[CompletenessStatement]:
        return self._by_id.get(statement_id)

    def add(self, statement: CompletenessStatement) -> "StatementSet":
        return StatementSet(list(self) + [statement])

    def remove(self, statement_id: str) -> "StatementSet":
        return StatementSet(st for st in self if st.id != statement_id)

    def union(self, other: Iterable[CompletenessStatement]) -> "StatementSet":
        return StatementSet(list(self) + list(other))

    def bodies(self) -> list[BGP]:
        return [st.body for st in self]

    def terms(self) -> frozenset:
        out = set()
        for st in self:
            out.update(bgp_terms(st.body))
        return frozenset(out)

    def __repr__(self) -> str:
        return f"StatementSet({len(self)} statements)"


EMPTY_STATEMENTS = StatementSet()


@dataclass(frozen=True)
class ExtensionPair:
    """A graph together with a candidate ideal-world superset of it."""

    base: Graph
    extension: Graph

    def __post_init__(self):
        if not self.base.issubset(self.extension):
            raise ValueError("extension pair requires base ⊆ extension")


def construct_query(statement: CompletenessStatement, graph: Graph) -> Graph:
    """Instantiate the statement body with all its matches over the graph."""
    triples: set[Triple] = set()
    for mapping in eval_bgp(statement.body, graph):
        for pattern in apply_mapping(mapping, statement.body):
            triples.add(pattern.to_triple())
    return Graph(triples)


def transfer(statements: StatementSet, graph: Graph) -> Graph:
    """Union of the construct-query results of every statement."""
    triples: set[Triple] = set()
    for statement in statements:
        for mapping in eval_bgp(statement.body, graph):
            for pattern in apply_mapping(mapping, statement.body):
                triples.add(pattern.to_triple())
    return Graph(triples)


def is_valid_extension(statements: StatementSet, pair: ExtensionPair) -> bool:
    """True when the statements allow the extension: nothing they capture
    over the extension lies outside the base graph."""
    return transfer(statements, pair.extension).issubset(pair.base)


def is_query_complete_over(query, pair: ExtensionPair) -> bool:
    """True when the query evaluates identically over base and extension.

    Accepts a ``Query`` or a bare BGP body. Projection is irrelevant here:
    under bag semantics a query is complete exactly when its body is, so
    completeness is checked on BGPs.
    """
    body = query.body if isinstance(query, Query) else frozenset(query)
    return eval_bgp(body, pair.extension) == eval_bgp(body, pair.base)
