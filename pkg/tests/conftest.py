"""Shared fixtures: the space-mission scenario and a reference evaluator.

The scenario graph holds a mission with two crew members of which one has
a child; the three statements close off the mission's crew list and both
crew members' children. This is the worked example every golden test is
anchored to.
"""

from __future__ import annotations

import itertools

import pytest

from rdfcomplete import (
    CompletenessStatement,
    Graph,
    Iri,
    Literal,
    Mapping,
    StatementSet,
    Triple,
    TriplePattern,
    Var,
    bgp,
)
from rdfcomplete.terms import bgp_variables

EX = "urn:ex:"


def e(name: str) -> Iri:
    return Iri(EX + name)


def v(name: str) -> Var:
    return Var(name)


def tp(s, p, o) -> TriplePattern:
    return TriplePattern(s, p, o)


def sp_statement(subject: Iri, predicate: Iri) -> CompletenessStatement:
    return CompletenessStatement(body=bgp(tp(subject, predicate, v("c"))))


def reference_eval(body, graph: Graph) -> frozenset:
    """Independent evaluation oracle: enumerate every total mapping of the
    body's variables into the graph's active domain and keep those whose
    image lies in the graph. Exponential; for toy graphs only."""
    variables = sorted(bgp_variables(body), key=lambda var: var.name)
    if not variables:
        image_ok = all(pat.to_triple() in graph for pat in body)
        return frozenset((Mapping(),)) if image_ok else frozenset()
    domain = sorted(graph.terms(), key=str)
    results = []
    for combo in itertools.product(domain, repeat=len(variables)):
        mapping = Mapping(zip(variables, combo))
        ok = True
        for pat in body:
            terms = []
            for term in pat.terms():
                terms.append(mapping.get(term, term) if isinstance(term, Var) else term)
            try:
                triple = Triple(*terms)
            except ValueError:
                ok = False
                break
            if triple not in graph:
                ok = False
                break
        if ok:
            results.append(mapping)
    return frozenset(results)


@pytest.fixture
def scenario_graph() -> Graph:
    return Graph(
        [
            Triple(e("a99"), e("crew"), e("tony")),
            Triple(e("a99"), e("crew"), e("ted")),
            Triple(e("tony"), e("child"), e("toby")),
        ]
    )


@pytest.fixture
def c1() -> CompletenessStatement:
    return sp_statement(e("a99"), e("crew"))


@pytest.fixture
def c2() -> CompletenessStatement:
    return sp_statement(e("tony"), e("child"))


@pytest.fixture
def c3() -> CompletenessStatement:
    return sp_statement(e("ted"), e("child"))


@pytest.fixture
def scenario_statements(c1, c2, c3) -> StatementSet:
    return StatementSet([c1, c2, c3])


@pytest.fixture
def p0():
    """Crew of the mission together with their children."""
    return bgp(
        tp(e("a99"), e("crew"), v("crew")),
        tp(v("crew"), e("child"), v("child")),
    )


SCENARIO_GRAPH_TEXT = """\
# space-mission scenario
<urn:ex:a99> <urn:ex:crew> <urn:ex:tony> .
<urn:ex:a99> <urn:ex:crew> <urn:ex:ted> .
<urn:ex:tony> <urn:ex:child> <urn:ex:toby> .
"""

SCENARIO_STATEMENTS_TEXT = """\
# crew list is closed; both crew members' children are closed
COMPLETE { <urn:ex:a99> <urn:ex:crew> ?c }
COMPLETE { <urn:ex:tony> <urn:ex:child> ?c }
COMPLETE { <urn:ex:ted> <urn:ex:child> ?c }
"""

SCENARIO_QUERY_TEXT = (
    "SELECT ?crew ?child WHERE "
    "{ <urn:ex:a99> <urn:ex:crew> ?crew . ?crew <urn:ex:child> ?child }"
)


@pytest.fixture
def scenario_files(tmp_path):
    graph_file = tmp_path / "graph.nt"
    graph_file.write_text(SCENARIO_GRAPH_TEXT, encoding="utf-8")
    statements_file = tmp_path / "statements.txt"
    statements_file.write_text(SCENARIO_STATEMENTS_TEXT, encoding="utf-8")
    query_file = tmp_path / "query.rq"
    query_file.write_text(SCENARIO_QUERY_TEXT + "\n", encoding="utf-8")
    return {
        "graph": graph_file,
        "statements": statements_file,
        "query": query_file,
        "dir": tmp_path,
    }
