"""Brute-force completeness decision by small-model enumeration.

This module is the test referee for the worklist engine: a direct search
for a counterexample extension, feasible only on toy instances. It also
provides the deterministic random-instance generator the agreement suites
are built on.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import ResourceBoundError
from .graph import Graph
from .statements import (
    CompletenessStatement,
    ExtensionPair,
    StatementSet,
    is_valid_extension,
)
from .terms import (
    BGP,
    Iri,
    Literal,
    Mapping,
    Term,
    Triple,
    TriplePattern,
    Var,
    apply_mapping,
    bgp_terms,
    bgp_variables,
)

_FRESH_NAMESPACE = "urn:probe:f"


@dataclass(frozen=True)
class OracleBound:
    """Caps for the counterexample enumeration."""

    fresh_per_variable: int = 1
    max_candidates: int = 250_000

    def __post_init__(self):
        if self.fresh_per_variable < 1:
            raise ValueError("fresh_per_variable must be at least 1")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be at least 1")


def _active_domain(
    body: BGP, statements: StatementSet, graph: Graph, extra_terms: Iterable[Term] = ()
) -> set:
    domain = {t for t in graph.terms()}
    for term in statements.terms():
        if not isinstance(term, Var):
            domain.add(term)
    for term in bgp_terms(body):
        if not isinstance(term, Var):
            domain.add(term)
    for term in extra_terms:
        if not isinstance(term, Var):
            domain.add(term)
    return domain


def _fresh_pool(count: int, taken: set) -> list[Iri]:
    pool: list[Iri] = []
    i = 0
    while len(pool) < count:
        candidate = Iri(f"{_FRESH_NAMESPACE}{i}")
        i += 1
        if candidate in taken:
            continue
        pool.append(candidate)
    return pool


def _position_kinds(body: BGP) -> dict:
    """For each variable: does it ever sit in a subject/predicate slot?"""
    iri_only: dict[Var, bool] = {}
    for pattern in body:
        for pos, term in enumerate(pattern.terms()):
            if isinstance(term, Var):
                iri_only.setdefault(term, False)
                if pos < 2:
                    iri_only[term] = True
    return iri_only


def candidate_mappings(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    bound: OracleBound,
    extra_terms: Iterable[Term] = (),
) -> Iterator[Mapping]:
    """Every total mapping of the body's variables into the active domain
    plus the fresh pool, respecting term positions (no literal may land in
    a subject or predicate slot).

    Raises ``ResourceBoundError`` when the enumeration would exceed the
    configured candidate cap.
    """
    variables = sorted(bgp_variables(body), key=lambda v: v.name)
    if not variables:
        yield Mapping()
        return
    domain = _active_domain(body, statements, graph, extra_terms)
    fresh = _fresh_pool(bound.fresh_per_variable * len(variables), domain)
    total = (len(domain) + len(fresh)) ** len(variables)
    if total > bound.max_candidates:
        raise ResourceBoundError(
            f"candidate space of {total} mappings exceeds the bound of "
            f"{bound.max_candidates}; shrink the instance"
        )
    iri_only = _position_kinds(body)
    per_var: list[list] = []
    for var in variables:
        terms = [t for t in domain if isinstance(t, Iri)]
        if not iri_only[var]:
            terms += [t for t in domain if isinstance(t, Literal)]
        terms += fresh
        per_var.append(sorted(terms, key=str))
    for combo in itertools.product(*per_var):
        yield Mapping(zip(variables, combo))


def _image_triples(mapping: Mapping, body: BGP) -> Optional[frozenset]:
    """The ground triples of the instantiated body, or None if some literal
    landed in a subject or predicate slot (no such graph exists)."""
    triples = set()
    for pattern in apply_mapping(mapping, body):
        try:
            triples.add(pattern.to_triple())
        except ValueError:
            return None
    return frozenset(triples)


def find_counterexample(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    bound: OracleBound = OracleBound(),
) -> Optional[Mapping]:
    """Search for an instantiation witnessing incompleteness: a valid
    extension of the graph in which the body has an answer it lacks over
    the graph itself. Returns the violating mapping, or None.

    Why this bounded search is complete: if completeness fails, some valid
    extension adds an answer m to the body. That extension can be shrunk
    to ``graph + m(body)``
    — the transfer output only shrinks, so validity is preserved, while m
    stays a new answer. Any constants of m outside the active domain can be
    renamed injectively onto the fresh pool: nothing in the graph, the
    statements, or the body mentions them, and evaluation is purely
    syntactic, so the renamed extension is still valid and still adds the
    renamed answer. One fresh constant per variable therefore suffices;
    raising ``fresh_per_variable`` must never flip a verdict, which the
    randomized agreement suite probes.
    """
    base_triples = graph.triples
    for nu in candidate_mappings(body, statements, graph, bound):
        image = _image_triples(nu, body)
        if image is None:
            continue
        if image <= base_triples:
            # nu is already an answer over the graph; no new answer here.
            continue
        extension = graph.union(image)
        if is_valid_extension(statements, ExtensionPair(graph, extension)):
            return nu
    return None


def brute_force_entails(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    bound: OracleBound = OracleBound(),
) -> bool:
    """Ground-truth completeness entailment by counterexample search."""
    return find_counterexample(body, statements, graph, bound) is None


def bounded_extensions(
    bodies: Iterable[BGP],
    statements: StatementSet,
    graph: Graph,
    bound: OracleBound = OracleBound(),
    extra_terms: Iterable[Term] = (),
) -> Iterator[Graph]:
    """The graph itself plus every valid extension reachable by adding one
    homomorphic image of one of the bodies (over the active domain plus
    fresh constants). Per the shrinking argument in
    ``find_counterexample``, any semantic difference between pattern sets
    over some valid extension already shows up on one of these."""
    yield graph
    seen = {graph.triples}
    for body in bodies:
        for nu in candidate_mappings(body, statements, graph, bound, extra_terms):
            image = _image_triples(nu, body)
            if image is None or image <= graph.triples:
                continue
            extension = graph.union(image)
            if extension.triples in seen:
                continue
            seen.add(extension.triples)
            if is_valid_extension(statements, ExtensionPair(graph, extension)):
                yield extension


@dataclass(frozen=True)
class SizeProfile:
    """Shape of generated random instances."""

    max_triples: int = 8
    max_patterns: int = 3
    max_vars: int = 3
    max_statements: int = 4
    statement_shape: str = "mixed"  # "mixed" | "sp-only"
    universe_size: int = 6
    predicate_count: int = 2


DEFAULT_PROFILE = SizeProfile()
SP_ONLY_PROFILE = SizeProfile(statement_shape="sp-only")


def random_instance(
    seed: int, profile: SizeProfile = DEFAULT_PROFILE
) -> tuple[BGP, StatementSet, Graph]:
    """Deterministic random (body, statements, graph) instance.

    Terms come from a fixed small IRI universe so that instances stay
    within the oracle's enumeration bounds.
    """
    rng = random.Random(seed)
    entities = [Iri(f"urn:u:e{i}") for i in range(profile.universe_size)]
    predicates = [Iri(f"urn:u:p{i}") for i in range(profile.predicate_count)]
    variables = [Var(name) for name in ("x", "y", "z")][: profile.max_vars]

    triples = {
        Triple(rng.choice(entities), rng.choice(predicates), rng.choice(entities))
        for _ in range(rng.randint(0, profile.max_triples))
    }
    graph = Graph(triples)

    def subject_term(vars_allowed: list[Var]):
        if vars_allowed and rng.random() < 0.45:
            return rng.choice(vars_allowed)
        return rng.choice(entities)

    def object_term(vars_allowed: list[Var]):
        if vars_allowed and rng.random() < 0.55:
            return rng.choice(vars_allowed)
        return rng.choice(entities)

    pattern_count = rng.randint(1, profile.max_patterns)
    usable = variables[: rng.randint(1, len(variables))]
    body = set()
    while len(body) < pattern_count:
        body.add(
            TriplePattern(
                subject_term(usable),
                rng.choice(predicates),
                object_term(usable),
            )
        )

    statements = []
    for _ in range(rng.randint(0, profile.max_statements)):
        if profile.statement_shape == "sp-only" or rng.random() < 0.6:
            st_body = frozenset(
                {
                    TriplePattern(
                        rng.choice(entities), rng.choice(predicates), Var("v")
                    )
                }
            )
        else:
            st_vars = [Var("v"), Var("w")]
            st_body = set()
            for _ in range(rng.randint(1, 2)):
                st_body.add(
                    TriplePattern(
                        subject_term(st_vars),
                        rng.choice(predicates),
                        object_term(st_vars),
                    )
                )
            st_body = frozenset(st_body)
        statements.append(CompletenessStatement(body=st_body))

    # Content-hash ids collapse duplicate statement bodies.
    unique = {st.id: st for st in statements}
    return frozenset(body), StatementSet(unique.values()), graph
