"""In-memory RDF graph with associative indexes and BGP evaluation.

The graph is immutable after construction and keeps three indexes: by
subject, by (subject, predicate), and by predicate. Evaluation joins the
patterns of a BGP with a greedy most-selective-first order driven by the
index cardinalities, which keeps chain-shaped queries fast without any
further planning.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .errors import FreezeCollisionError
from .terms import (
    BGP,
    EMPTY_MAPPING,
    FreezeMapping,
    GroundTerm,
    Iri,
    Literal,
    Mapping,
    Term,
    Triple,
    TriplePattern,
    Var,
    bgp_terms,
    bgp_variables,
    check_no_reserved_terms,
    freeze_triples,
    uses_reserved_namespace,
)


class Graph:
    """A finite set of triples, indexed for pattern matching."""

    __slots__ = ("_triples", "_by_s", "_by_sp", "_by_p", "_reserved")

    def __init__(self, triples: Iterable[Triple] = ()):
        by_s: dict[Iri, list[Triple]] = {}
        by_sp: dict[tuple[Iri, Iri], list[Triple]] = {}
        by_p: dict[Iri, list[Triple]] = {}
        tset = frozenset(triples)
        reserved = False
        for t in tset:
            by_s.setdefault(t.subject, []).append(t)
            by_sp.setdefault((t.subject, t.predicate), []).append(t)
            by_p.setdefault(t.predicate, []).append(t)
            if not reserved and (
                uses_reserved_namespace(t.subject)
                or uses_reserved_namespace(t.predicate)
                or uses_reserved_namespace(t.object)
            ):
                reserved = True
        self._triples = tset
        self._by_s = by_s
        self._by_sp = by_sp
        self._by_p = by_p
        self._reserved = reserved

    @property
    def triples(self) -> frozenset:
        return self._triples

    @property
    def has_reserved_terms(self) -> bool:
        """True when some term lies in the frozen-IRI namespace."""
        return self._reserved

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._triples == other._triples

    def __hash__(self) -> int:
        return hash(self._triples)

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"

    def union(self, other: Iterable[Triple]) -> "Graph":
        extra = set(other) - self._triples
        if not extra:
            return self
        return Graph(self._triples | extra)

    def issubset(self, other: "Graph") -> bool:
        return self._triples <= other._triples

    def subjects(self) -> Iterable[Iri]:
        return self._by_s.keys()

    def predicates(self) -> Iterable[Iri]:
        return self._by_p.keys()

    def by_subject(self, subject: Iri) -> tuple[Triple, ...]:
        return tuple(self._by_s.get(subject, ()))

    def by_subject_predicate(self, subject: Iri, predicate: Iri) -> tuple[Triple, ...]:
        return tuple(self._by_sp.get((subject, predicate), ()))

    def terms(self) -> frozenset:
        out: set[Term] = set()
        for t in self._triples:
            out.update(t.terms())
        return frozenset(out)

    def active_domain(self) -> frozenset:
        """All ground terms occurring in the graph."""
        return self.terms()

    def candidate_count(self, pattern: TriplePattern) -> int:
        """Upper bound on the triples that can match the pattern."""
        s, p, o = pattern.terms()
        s_ground = not isinstance(s, Var)
        p_ground = not isinstance(p, Var)
        if s_ground and not isinstance(s, Iri):
            return 0
        if p_ground and not isinstance(p, Iri):
            return 0
        if s_ground and p_ground:
            return len(self._by_sp.get((s, p), ()))
        if s_ground:
            return len(self._by_s.get(s, ()))
        if p_ground:
            return len(self._by_p.get(p, ()))
        return len(self._triples)

    def candidates(self, pattern: TriplePattern) -> Iterable[Triple]:
        """Triples that may match the pattern, narrowed via the indexes."""
        s, p, o = pattern.terms()
        s_ground = not isinstance(s, Var)
        p_ground = not isinstance(p, Var)
        if s_ground and not isinstance(s, Iri):
            return ()
        if p_ground and not isinstance(p, Iri):
            return ()
        if s_ground and p_ground:
            return self._by_sp.get((s, p), ())
        if s_ground:
            return self._by_s.get(s, ())
        if p_ground:
            return self._by_p.get(p, ())
        return self._triples


def _match_terms(pattern_terms: tuple, triple: Triple, binding: dict) -> Optional[dict]:
    """Extend ``binding`` so the pattern terms match the triple, or None."""
    delta: dict = {}
    for pat_term, triple_term in zip(
        pattern_terms, (triple.subject, triple.predicate, triple.object)
    ):
        if type(pat_term) is Var:
            bound = binding.get(pat_term)
            if bound is None:
                bound = delta.get(pat_term)
            if bound is None:
                delta[pat_term] = triple_term
            elif bound != triple_term:
                return None
        elif pat_term != triple_term:
            return None
    return delta


def eval_bgp(body: Iterable[TriplePattern], graph: Graph) -> frozenset:
    """All mappings with domain var(body) that embed the BGP into the graph.

    The empty BGP evaluates to the singleton of the empty mapping (the
    identity of the join). This is the hot path of the whole package, so
    the join works on raw term triples and the graph's internal indexes
    rather than constructing intermediate pattern objects.
    """
    patterns = [pat.terms() for pat in frozenset(body)]
    if not patterns:
        return frozenset((EMPTY_MAPPING,))

    by_sp = graph._by_sp
    by_s = graph._by_s
    by_p = graph._by_p
    all_triples = graph._triples
    results: list[Mapping] = []
    binding: dict = {}

    def bucket(terms: tuple):
        """Index bucket for a pattern under the current binding; () when a
        bound literal lands in a subject or predicate slot."""
        s, p, _ = terms
        if type(s) is Var:
            s = binding.get(s, s)
        if type(p) is Var:
            p = binding.get(p, p)
        s_open = type(s) is Var
        p_open = type(p) is Var
        if not s_open and not p_open:
            if type(s) is not Iri or type(p) is not Iri:
                return ()
            return by_sp.get((s, p), ())
        if not s_open:
            if type(s) is not Iri:
                return ()
            return by_s.get(s, ())
        if not p_open:
            return by_p.get(p, ())
        return all_triples

    def search(remaining: list[tuple]) -> None:
        if not remaining:
            results.append(Mapping._trusted(dict(binding)))
            return
        # Greedy most-selective-first: expand the pattern with the fewest
        # index candidates under the current binding.
        best_i = 0
        best_bucket = None
        for i, terms in enumerate(remaining):
            candidates = bucket(terms)
            if best_bucket is None or len(candidates) < len(best_bucket):
                best_i, best_bucket = i, candidates
                if not candidates:
                    return
        terms = remaining[best_i]
        rest = remaining[:best_i] + remaining[best_i + 1 :]
        for triple in best_bucket:
            delta = _match_terms(terms, triple, binding)
            if delta is None:
                continue
            binding.update(delta)
            search(rest)
            for var in delta:
                del binding[var]

    search(patterns)
    return frozenset(results)


def freeze(body: Iterable[TriplePattern], forbidden: Iterable[Term] = ()) -> tuple[Graph, FreezeMapping]:
    """Ground the BGP by replacing variables with fresh reserved IRIs.

    Returns the prototypical graph together with the freeze mapping. The
    BGP's own terms and every ``forbidden`` term must stay clear of the
    reserved namespace; a collision raises ``FreezeCollisionError`` rather
    than renaming silently.
    """
    body = frozenset(body)
    check_no_reserved_terms(bgp_terms(body))
    check_no_reserved_terms(forbidden)
    triples, fm = freeze_triples(body)
    return Graph(triples), fm


def unfreeze(fm: FreezeMapping, triples: Iterable[Triple]) -> BGP:
    """Map frozen IRIs back to variables; other triples pass through as
    ground patterns."""
    return frozenset(
        TriplePattern(
            fm.thaw_term(t.subject),
            fm.thaw_term(t.predicate),
            fm.thaw_term(t.object),
        )
        for t in triples
    )
