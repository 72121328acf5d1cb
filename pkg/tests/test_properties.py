"""Hypothesis property tests for the string-heavy corners the seeded
instance generator does not reach."""

import string

from hypothesis import given, settings
from hypothesis import strategies as st

from rdfcomplete import (
    Graph,
    Iri,
    Literal,
    Mapping,
    Triple,
    Var,
    parse_graph,
    serialize_graph,
)
from rdfcomplete.parser import parse_statements, serialize_statements
from rdfcomplete.statements import CompletenessStatement, StatementSet
from rdfcomplete.terms import TriplePattern

iri_names = st.text(alphabet=string.ascii_lowercase + string.digits, min_size=1, max_size=8)
iris = st.builds(lambda s: Iri("urn:any:" + s), iri_names)
literals = st.builds(
    Literal,
    st.text(max_size=30),
    st.one_of(st.none(), st.just("urn:t:string")),
)
objects = st.one_of(iris, literals)
triples = st.builds(Triple, iris, iris, objects)


@given(st.sets(triples, max_size=12))
@settings(max_examples=60)
def test_graph_serialization_round_trip(triple_set):
    graph = Graph(triple_set)
    assert parse_graph(serialize_graph(graph)) == graph


@given(st.sets(triples, max_size=6), st.sets(triples, max_size=6))
@settings(max_examples=40)
def test_union_is_commutative_and_idempotent(left, right):
    a, b = Graph(left), Graph(right)
    assert a.union(b) == b.union(a)
    assert a.union(a) == a


var_names = st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=4)


@given(st.dictionaries(st.builds(Var, var_names), iris, max_size=4))
@settings(max_examples=40)
def test_mapping_round_trips_through_items(bindings):
    mapping = Mapping(bindings.items())
    assert Mapping(mapping.items()) == mapping
    assert dict(mapping.items()) == bindings


@given(st.sets(st.builds(TriplePattern, iris, iris, objects), min_size=1, max_size=3))
@settings(max_examples=40)
def test_statement_serialization_round_trip(patterns):
    statements = StatementSet([CompletenessStatement(body=frozenset(patterns))])
    assert parse_statements(serialize_statements(statements)) == statements
