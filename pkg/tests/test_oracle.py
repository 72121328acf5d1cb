import pytest

from rdfcomplete import (
    Graph,
    OracleBound,
    StatementSet,
    bgp,
    brute_force_entails,
    entails,
    random_instance,
)
from rdfcomplete.errors import ResourceBoundError
from rdfcomplete.oracle import (
    DEFAULT_PROFILE,
    SP_ONLY_PROFILE,
    find_counterexample,
)
from rdfcomplete.spindex import classify
from rdfcomplete.statements import is_valid_extension, ExtensionPair
from rdfcomplete.terms import apply_mapping, bgp_variables

from conftest import e, tp, v


class TestBruteForce:
    def test_scenario_is_complete(self, p0, scenario_statements, scenario_graph):
        assert brute_force_entails(p0, scenario_statements, scenario_graph)

    def test_dropping_the_childless_statement(self, p0, c1, c2, scenario_graph):
        statements = StatementSet([c1, c2])
        witness = find_counterexample(p0, statements, scenario_graph)
        assert witness is not None
        assert witness[v("crew")] == e("ted")
        # the witness extension is valid and adds an answer
        image = frozenset(
            pat.to_triple() for pat in apply_mapping(witness, p0)
        )
        extension = scenario_graph.union(image)
        assert is_valid_extension(statements, ExtensionPair(scenario_graph, extension))

    def test_no_statements_and_open_instantiation(self, scenario_graph):
        body = bgp(tp(e("tony"), e("child"), v("c")))
        assert not brute_force_entails(body, StatementSet(), scenario_graph)

    def test_no_statements_ground_body_in_graph(self, scenario_graph):
        body = bgp(tp(e("a99"), e("crew"), e("tony")))
        assert brute_force_entails(body, StatementSet(), scenario_graph)

    @pytest.mark.parametrize("seed", range(25))
    def test_empty_statements_analytic_form(self, seed):
        body, _, graph = random_instance(seed)
        expected = not bgp_variables(body) and all(
            pat.to_triple() in graph for pat in body
        )
        assert brute_force_entails(body, StatementSet(), graph) == expected

    def test_no_value_semantics(self, scenario_statements, scenario_graph):
        # No data about the childless crew member, yet the query over his
        # children is complete: the statement forbids any such triple.
        body = bgp(tp(e("ted"), e("child"), v("c")))
        assert brute_force_entails(body, scenario_statements, scenario_graph)

    def test_bound_exceeded(self, p0, scenario_statements, scenario_graph):
        with pytest.raises(ResourceBoundError):
            brute_force_entails(
                p0,
                scenario_statements,
                scenario_graph,
                OracleBound(max_candidates=3),
            )

    @pytest.mark.parametrize("seed", range(20))
    def test_more_fresh_constants_never_flip_the_verdict(self, seed):
        body, statements, graph = random_instance(seed)
        one = brute_force_entails(body, statements, graph, OracleBound(1))
        two = brute_force_entails(
            body, statements, graph, OracleBound(2, max_candidates=2_000_000)
        )
        assert one == two


class TestRandomInstance:
    def test_deterministic_in_seed(self):
        assert random_instance(7) == random_instance(7)
        assert random_instance(7) != random_instance(8)

    @pytest.mark.parametrize("seed", range(30))
    def test_bounds_respected(self, seed):
        body, statements, graph = random_instance(seed)
        assert len(graph) <= DEFAULT_PROFILE.max_triples
        assert 1 <= len(body) <= DEFAULT_PROFILE.max_patterns
        assert len(bgp_variables(body)) <= DEFAULT_PROFILE.max_vars
        assert len(statements) <= DEFAULT_PROFILE.max_statements

    @pytest.mark.parametrize("seed", range(30))
    def test_sp_only_profile(self, seed):
        _, statements, _ = random_instance(seed, SP_ONLY_PROFILE)
        assert all(classify(st) is not None for st in statements)


class TestEngineAgreement:
    """A slice of the agreement suite; the full 500-seed run lives in the
    acceptance tests."""

    @pytest.mark.parametrize("seed", range(80))
    def test_generic_engine_matches_oracle(self, seed):
        body, statements, graph = random_instance(seed)
        assert (
            entails(body, statements, graph).complete
            == brute_force_entails(body, statements, graph)
        )

    @pytest.mark.parametrize("seed", range(40))
    def test_sp_engine_matches_oracle_on_sp_instances(self, seed):
        from rdfcomplete import EntailmentConfig

        body, statements, graph = random_instance(seed, SP_ONLY_PROFILE)
        assert (
            entails(body, statements, graph, EntailmentConfig(index_mode="sp")).complete
            == brute_force_entails(body, statements, graph)
        )
