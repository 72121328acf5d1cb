"""RDF syntax objects: terms, triples, patterns, mappings, and queries.

Terms come in three disjoint kinds. IRIs and literals are ground; variables
are not. Triples are fully ground; triple patterns additionally admit
variables in every position (but never a literal in subject or predicate
position). A basic graph pattern (BGP) is a set of triple patterns and is
represented as a plain ``frozenset`` so the usual set algebra applies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from .errors import FreezeCollisionError

_VAR_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
# Absolute IRI: a scheme followed by anything without whitespace or the
# delimiters used by the angle-bracket syntax.
_IRI_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*:[^\s<>\"{}|^`\\]*\Z")

#: Namespace reserved for frozen variables; must never occur in input data.
RESERVED_FROZEN_PREFIX = "urn:frozen:"


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self):
        if not _IRI_RE.match(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def __str__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: Optional[str] = None

    def __str__(self) -> str:
        out = '"%s"' % escape_literal(self.lexical)
        if self.datatype is not None:
            out += f"^^<{self.datatype}>"
        return out


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self):
        if not _VAR_NAME_RE.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return f"?{self.name}"


Term = Union[Iri, Literal, Var]
GroundTerm = Union[Iri, Literal]


def is_ground(term: Term) -> bool:
    return not isinstance(term, Var)


def escape_literal(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _term_sort_key(term: Term) -> tuple:
    if isinstance(term, Iri):
        return (0, term.value, "")
    if isinstance(term, Literal):
        return (1, term.lexical, term.datatype or "")
    return (2, term.name, "")


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: GroundTerm

    def __post_init__(self):
        if not isinstance(self.subject, Iri):
            raise ValueError(f"triple subject must be an IRI: {self.subject}")
        if not isinstance(self.predicate, Iri):
            raise ValueError(f"triple predicate must be an IRI: {self.predicate}")
        if isinstance(self.object, Var):
            raise ValueError(f"triple object must be ground: {self.object}")

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.subject, self.predicate, self.object)


@dataclass(frozen=True, slots=True)
class TriplePattern:
    subject: Union[Iri, Var]
    predicate: Union[Iri, Var]
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("literal not allowed in subject position")
        if isinstance(self.predicate, Literal):
            raise ValueError("literal not allowed in predicate position")

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object}"

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.subject, self.predicate, self.object)

    def variables(self) -> frozenset[Var]:
        return frozenset(t for t in self.terms() if isinstance(t, Var))

    def is_ground(self) -> bool:
        return not any(isinstance(t, Var) for t in self.terms())

    def to_triple(self) -> Triple:
        return Triple(self.subject, self.predicate, self.object)

    def sort_key(self) -> tuple:
        return tuple(_term_sort_key(t) for t in self.terms())


#: A basic graph pattern: a set of triple patterns (duplicates collapse).
BGP = frozenset  # frozenset[TriplePattern]


def bgp(*patterns: TriplePattern) -> BGP:
    return frozenset(patterns)


def bgp_variables(body: Iterable[TriplePattern]) -> frozenset[Var]:
    out: set[Var] = set()
    for pat in body:
        out.update(pat.variables())
    return frozenset(out)


def bgp_terms(body: Iterable[TriplePattern]) -> frozenset[Term]:
    out: set[Term] = set()
    for pat in body:
        out.update(pat.terms())
    return frozenset(out)


def sorted_patterns(body: Iterable[TriplePattern]) -> list[TriplePattern]:
    return sorted(body, key=TriplePattern.sort_key)


def _item_name(item: tuple) -> str:
    return item[0].name


class Mapping:
    """Immutable partial function from variables to ground terms.

    Hashable, so mappings can live in sets (query answers, the collected
    saturated mappings of an entailment check).
    """

    __slots__ = ("_items", "_index")

    def __init__(self, bindings: Iterable[tuple[Var, GroundTerm]] = ()):
        index = dict(bindings)
        for var, term in index.items():
            if not isinstance(var, Var):
                raise ValueError(f"mapping domain must be variables: {var}")
            if isinstance(term, Var):
                raise ValueError(f"mapping range must be ground: {term}")
        self._index = index
        self._items = tuple(sorted(index.items(), key=_item_name))

    @classmethod
    def of(cls, **bindings: GroundTerm) -> "Mapping":
        return cls((Var(name), term) for name, term in bindings.items())

    @classmethod
    def _trusted(cls, index: dict) -> "Mapping":
        # Fast path for the evaluator: takes ownership of a dict whose
        # well-formedness the caller guarantees.
        self = object.__new__(cls)
        self._index = index
        self._items = tuple(sorted(index.items(), key=_item_name))
        return self

    def get(self, var: Var, default=None):
        return self._index.get(var, default)

    def __getitem__(self, var: Var) -> GroundTerm:
        return self._index[var]

    def __contains__(self, var: Var) -> bool:
        return var in self._index

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Var]:
        return iter(self._index)

    def items(self) -> tuple[tuple[Var, GroundTerm], ...]:
        return self._items

    @property
    def domain(self) -> frozenset[Var]:
        return frozenset(self._index)

    def merge(self, other: "Mapping") -> "Mapping":
        """Union of two mappings; they must agree on shared variables."""
        for var, term in other.items():
            mine = self._index.get(var)
            if mine is not None and mine != term:
                raise ValueError(f"conflicting binding for {var}: {mine} vs {term}")
        merged = dict(self._index)
        merged.update(other._index)
        return Mapping(merged.items())

    def restrict(self, variables: Iterable[Var]) -> "Mapping":
        keep = set(variables)
        return Mapping((v, t) for v, t in self._items if v in keep)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mapping) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v} -> {t}" for v, t in self._items)
        return "{%s}" % inner


EMPTY_MAPPING = Mapping()


def apply_to_term(mapping: Mapping, term: Term) -> Term:
    if isinstance(term, Var):
        return mapping.get(term, term)
    return term


def apply_to_pattern(mapping: Mapping, pattern: TriplePattern) -> TriplePattern:
    return TriplePattern(
        apply_to_term(mapping, pattern.subject),
        apply_to_term(mapping, pattern.predicate),
        apply_to_term(mapping, pattern.object),
    )


def apply_mapping(mapping: Mapping, body: Iterable[TriplePattern]) -> BGP:
    """Substitute the mapping's bindings into every pattern of the BGP.

    Variables outside the mapping's domain stay in place.
    """
    return frozenset(apply_to_pattern(mapping, pat) for pat in body)


@dataclass(frozen=True)
class Query:
    """A conjunctive query: a projection over the variables of a BGP body."""

    projection: frozenset  # frozenset[Var]
    body: BGP

    def __post_init__(self):
        extra = self.projection - bgp_variables(self.body)
        if extra:
            names = ", ".join(sorted(str(v) for v in extra))
            raise ValueError(f"projected variables not in the query body: {names}")


class FreezeMapping:
    """Injective map from variables to fresh IRIs in the reserved namespace."""

    __slots__ = ("_forward", "_inverse")

    def __init__(self, variables: Iterable[Var]):
        self._forward: dict[Var, Iri] = {
            v: Iri(RESERVED_FROZEN_PREFIX + v.name) for v in variables
        }
        self._inverse: dict[Iri, Var] = {iri: v for v, iri in self._forward.items()}

    def frozen(self, var: Var) -> Iri:
        return self._forward[var]

    def thaw_term(self, term: Term) -> Term:
        if isinstance(term, Iri):
            return self._inverse.get(term, term)
        return term

    def freeze_term(self, term: Term) -> Term:
        if isinstance(term, Var):
            return self._forward[term]
        return term

    def items(self) -> Iterable[tuple[Var, Iri]]:
        return self._forward.items()

    def __len__(self) -> int:
        return len(self._forward)


def uses_reserved_namespace(term: Term) -> bool:
    return isinstance(term, Iri) and term.value.startswith(RESERVED_FROZEN_PREFIX)


def check_no_reserved_terms(terms: Iterable[Term]) -> None:
    for term in terms:
        if uses_reserved_namespace(term):
            raise FreezeCollisionError(
                f"input term {term} lies in the reserved namespace "
                f"{RESERVED_FROZEN_PREFIX!r}; refusing to freeze"
            )


def freeze_triples(body: Iterable[TriplePattern]) -> tuple[frozenset, FreezeMapping]:
    """Replace every variable of the BGP with a fresh reserved-namespace IRI."""
    body = frozenset(body)
    fm = FreezeMapping(bgp_variables(body))
    triples = frozenset(
        Triple(
            fm.freeze_term(pat.subject),
            fm.freeze_term(pat.predicate),
            fm.freeze_term(pat.object),
        )
        for pat in body
    )
    return triples, fm
