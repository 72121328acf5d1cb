import logging
import time

import pytest

from rdfcomplete import (
    CompletenessStatement,
    EntailmentConfig,
    FragmentViolationError,
    StatementSet,
    bgp,
    build_index,
    classify,
    crucial_part,
    crucial_part_sp,
    entails,
)
from rdfcomplete.oracle import SP_ONLY_PROFILE, random_instance
from rdfcomplete.spindex import SPIndex

from conftest import e, sp_statement, tp, v


class TestClassify:
    def test_sp_statement(self, c1):
        sp = classify(c1)
        assert sp is not None
        assert (sp.subject, sp.predicate) == (e("a99"), e("crew"))
        assert sp.base is c1

    def test_variable_subject_is_not_sp(self):
        statement = CompletenessStatement(body=bgp(tp(v("s"), e("crew"), v("c"))))
        assert classify(statement) is None

    def test_two_patterns_are_not_sp(self):
        statement = CompletenessStatement(
            body=bgp(tp(e("a"), e("p"), v("x")), tp(e("b"), e("q"), v("y")))
        )
        assert classify(statement) is None

    def test_ground_object_is_not_sp(self):
        statement = CompletenessStatement(body=bgp(tp(e("a"), e("p"), e("b"))))
        assert classify(statement) is None

    def test_variable_predicate_is_not_sp(self):
        statement = CompletenessStatement(body=bgp(tp(e("a"), v("p"), v("c"))))
        assert classify(statement) is None


class TestBuildIndex:
    def test_scenario_index_keys(self, scenario_statements):
        index = build_index(scenario_statements)
        assert set(index.keys()) == {
            (e("a99"), e("crew")),
            (e("tony"), e("child")),
            (e("ted"), e("child")),
        }

    def test_empty_set(self):
        assert len(build_index(StatementSet())) == 0

    def test_non_sp_statement_raises_with_id(self):
        bad = CompletenessStatement(
            body=bgp(tp(e("a"), e("p"), v("x")), tp(e("a"), e("q"), v("y")))
        )
        with pytest.raises(FragmentViolationError) as err:
            build_index(StatementSet([bad]))
        assert bad.id in str(err.value)

    def test_duplicate_key_keeps_first_and_warns(self, caplog):
        first = sp_statement(e("a"), e("p"))
        second = CompletenessStatement(body=bgp(tp(e("a"), e("p"), v("other"))))
        with caplog.at_level(logging.WARNING):
            index = build_index(StatementSet([first, second]))
        assert len(index) == 1
        assert index.get(e("a"), e("p")).base is first
        assert any("duplicate" in r.message.lower() for r in caplog.records)


class TestCrucialPartSP:
    def test_scenario_crucial_part(self, p0, scenario_statements):
        index = build_index(scenario_statements)
        assert crucial_part_sp(p0, index) == bgp(tp(e("a99"), e("crew"), v("crew")))

    def test_instantiated_chain_hits_both_keys(self, scenario_statements):
        index = build_index(scenario_statements)
        body = bgp(
            tp(e("a99"), e("crew"), e("tony")),
            tp(e("tony"), e("child"), v("child")),
        )
        assert crucial_part_sp(body, index) == body

    def test_empty_index(self, p0):
        assert crucial_part_sp(p0, SPIndex()) == frozenset()

    def test_variable_subject_never_matches(self, scenario_statements):
        index = build_index(scenario_statements)
        body = bgp(tp(v("who"), e("crew"), v("c")))
        assert crucial_part_sp(body, index) == frozenset()


class TestFragmentSoundness:
    @pytest.mark.parametrize("seed", range(60))
    def test_matches_generic_crucial_part(self, seed):
        body, statements, graph = random_instance(seed, SP_ONLY_PROFILE)
        index = build_index(statements)
        assert crucial_part_sp(body, index) == crucial_part(body, statements, graph)

    @pytest.mark.parametrize("seed", range(40))
    def test_sp_mode_verdicts_match_generic(self, seed):
        body, statements, graph = random_instance(seed, SP_ONLY_PROFILE)
        generic = entails(body, statements, graph, EntailmentConfig(index_mode="generic"))
        indexed = entails(body, statements, graph, EntailmentConfig(index_mode="sp"))
        assert generic.complete == indexed.complete

    def test_mixed_statements_fall_back_to_generic(self, scenario_graph, c1):
        general = CompletenessStatement(
            body=bgp(tp(v("m"), e("crew"), v("c")))
        )
        statements = StatementSet([c1, general])
        body = bgp(tp(e("a99"), e("crew"), v("crew")))
        generic = entails(body, statements, graph=scenario_graph)
        indexed = entails(
            body, statements, scenario_graph, EntailmentConfig(index_mode="sp")
        )
        assert generic.complete == indexed.complete


class TestIndexMutation:
    def test_delete_insert_round_trip(self, p0, scenario_statements):
        index = build_index(scenario_statements)
        entry = index.get(e("a99"), e("crew"))
        removed = index.without_key(e("a99"), e("crew"))
        assert crucial_part_sp(p0, removed) == frozenset()
        restored = removed.with_entry(entry)
        assert crucial_part_sp(p0, restored) == crucial_part_sp(p0, index)

    def test_mutations_are_copy_on_write(self, scenario_statements):
        index = build_index(scenario_statements)
        index.without_key(e("a99"), e("crew"))
        assert (e("a99"), e("crew")) in index


class TestIndexScalability:
    def test_lookup_cost_independent_of_size(self):
        def build(n):
            return SPIndex(
                {
                    (e(f"s{i}"), e(f"p{i % 7}")): None
                    for i in range(n)
                }
            )

        def probe(index, n, rounds=30_000):
            body = bgp(
                tp(e("s1"), e("p1"), v("a")),
                tp(e(f"s{n - 1}"), e(f"p{(n - 1) % 7}"), v("b")),
                tp(e("absent"), e("p0"), v("c")),
            )
            start = time.perf_counter()
            for _ in range(rounds // 3):
                crucial_part_sp(body, index)
            return time.perf_counter() - start

        small_index, large_index = build(1_000), build(100_000)
        # warmup
        probe(small_index, 1_000, rounds=3_000)
        probe(large_index, 100_000, rounds=3_000)
        small = probe(small_index, 1_000)
        large = probe(large_index, 100_000)
        assert large < small * 10
