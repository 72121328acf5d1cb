"""Synthetic chain workloads for benchmarking completeness checks.

A workload is a graph of per-root entity chains, one instantiated chain
query per root, and two statement sets: a *success* set built so that
every query is guaranteed complete, and a *failure* set derived from it by
dropping a fraction of the statements and padding with the same number of
inert dummy statements (so both cases reason over equally many
statements).

The success set is constructed by walking each query left to right: at
every chain position, an SP-statement is recorded for the instantiated
subject and the position's predicate, and the frontier advances to the
objects found in the graph. By construction every instantiation step of
the entailment check is then covered.
"""

from __future__ import annotations

import configparser
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import GenerationError
from .graph import Graph, eval_bgp
from .statements import CompletenessStatement, StatementSet
from .terms import BGP, Iri, Query, Triple, TriplePattern, Var, bgp_variables

BENCH_NS = "urn:bench:"
#: Dummy statements use this subject namespace, which never occurs in any
#: generated graph or query, so they can never grant an instantiation.
DUMMY_NS = "urn:bench-dummy:"


@dataclass(frozen=True)
class WorkloadSpec:
    name: str = "chain"
    chain_length: int = 3
    entity_count: int = 40
    fanout: Union[int, tuple] = 1
    predicates: Optional[tuple] = None  # IRI strings, one per chain position
    drop_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.chain_length < 1:
            raise ValueError("chain_length must be at least 1")
        if self.entity_count < 0:
            raise ValueError("entity_count must be non-negative")
        if not 0.0 <= self.drop_fraction <= 1.0:
            raise ValueError("drop_fraction must lie in [0, 1]")
        fanouts = self.fanouts()
        if any(f < 1 for f in fanouts):
            raise ValueError("fanout entries must be at least 1")
        if self.predicates is not None and len(self.predicates) != self.chain_length:
            raise ValueError("predicates must match chain_length")

    def fanouts(self) -> tuple:
        if isinstance(self.fanout, int):
            return (self.fanout,) * self.chain_length
        return tuple(self.fanout)

    def predicate_iris(self) -> list[Iri]:
        if self.predicates is not None:
            return [Iri(p) for p in self.predicates]
        return [Iri(f"{BENCH_NS}p{k + 1}") for k in range(self.chain_length)]


@dataclass(frozen=True)
class Workload:
    spec: WorkloadSpec
    graph: Graph
    success_statements: StatementSet
    failure_statements: StatementSet
    queries: tuple  # tuple[Query, ...]
    pattern_body: BGP


def _chain_pattern(predicates: list[Iri]) -> BGP:
    variables = [Var("v")] + [Var(f"w{k + 1}") for k in range(len(predicates))]
    return frozenset(
        TriplePattern(variables[k], predicates[k], variables[k + 1])
        for k in range(len(predicates))
    )


def _sp_statement(subject: Iri, predicate: Iri) -> CompletenessStatement:
    return CompletenessStatement(
        body=frozenset({TriplePattern(subject, predicate, Var("v"))})
    )


def generate_workload(spec: WorkloadSpec) -> Workload:
    predicates = spec.predicate_iris()
    fanouts = spec.fanouts()

    triples: list[Triple] = []
    for i in range(spec.entity_count):
        level_nodes = [Iri(f"{BENCH_NS}r{i}")]
        for level, (fanout, predicate) in enumerate(zip(fanouts, predicates), start=1):
            next_nodes = []
            seq = 0
            for node in level_nodes:
                for _ in range(fanout):
                    child = Iri(f"{BENCH_NS}n{i}_{level}_{seq}")
                    seq += 1
                    triples.append(Triple(node, predicate, child))
                    next_nodes.append(child)
            level_nodes = next_nodes
    graph = Graph(triples)

    # Instantiate the chain pattern's root variable with every matching
    # binding, exactly one query per distinct root.
    pattern = _chain_pattern(predicates)
    root_var = Var("v")
    roots = sorted(
        {m[root_var] for m in eval_bgp(pattern, graph)}, key=lambda t: str(t)
    )
    if not roots:
        raise GenerationError(
            f"workload spec {spec.name!r} yields no instantiable queries"
        )
    queries = []
    for root in roots:
        grounded = frozenset(
            TriplePattern(
                root if p.subject == root_var else p.subject,
                p.predicate,
                p.object,
            )
            for p in pattern
        )
        queries.append(Query(bgp_variables(grounded), grounded))

    # Left-to-right statement construction per query: cover the
    # instantiated subject of every chain position.
    success: dict[tuple[Iri, Iri], CompletenessStatement] = {}
    for root in roots:
        frontier = [root]
        for predicate in predicates:
            next_frontier = []
            for node in frontier:
                key = (node, predicate)
                if key not in success:
                    success[key] = _sp_statement(node, predicate)
                for triple in graph.by_subject_predicate(node, predicate):
                    next_frontier.append(triple.object)
            frontier = next_frontier

    ordered_keys = sorted(success, key=lambda k: (k[0].value, k[1].value))
    rng = random.Random(spec.seed)
    drop_count = round(spec.drop_fraction * len(ordered_keys))
    dropped = set(rng.sample(ordered_keys, drop_count))
    failure_statements = [
        success[key] for key in ordered_keys if key not in dropped
    ]
    # Pad with the same number of inert statements so both cases carry
    # equally many.
    for i in range(drop_count):
        failure_statements.append(
            _sp_statement(Iri(f"{DUMMY_NS}d{i}"), predicates[i % len(predicates)])
        )

    return Workload(
        spec=spec,
        graph=graph,
        success_statements=StatementSet(success.values()),
        failure_statements=StatementSet(failure_statements),
        queries=tuple(queries),
        pattern_body=pattern,
    )


def _parse_fanout(text: str) -> Union[int, tuple]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) == 1:
        return int(parts[0])
    return tuple(int(p) for p in parts)


def _spec_from_options(name: str, options: dict) -> WorkloadSpec:
    kwargs: dict = {"name": name}
    if "chain_length" in options:
        kwargs["chain_length"] = int(options["chain_length"])
    if "entity_count" in options:
        kwargs["entity_count"] = int(options["entity_count"])
    if "fanout" in options:
        kwargs["fanout"] = _parse_fanout(options["fanout"])
    if "predicates" in options:
        kwargs["predicates"] = tuple(
            p.strip() for p in options["predicates"].split(",") if p.strip()
        )
    if "drop_fraction" in options:
        kwargs["drop_fraction"] = float(options["drop_fraction"])
    if "seed" in options:
        kwargs["seed"] = int(options["seed"])
    return WorkloadSpec(**kwargs)


def parse_spec_file(path: Union[str, Path]) -> dict:
    """Read a key=value spec file.

    The `[workload]` section describes a single workload (used by `gen`);
    each `[pattern:NAME]` section describes one benchmark pattern and
    inherits unset keys from `[workload]`.
    """
    parser = configparser.ConfigParser()
    with open(path, "r", encoding="utf-8") as handle:
        parser.read_file(handle)
    base = dict(parser["workload"]) if parser.has_section("workload") else {}
    workload = _spec_from_options("workload", base) if base else None
    patterns = []
    for section in parser.sections():
        if section.startswith("pattern:"):
            merged = dict(base)
            merged.update(parser[section])
            patterns.append(_spec_from_options(section.split(":", 1)[1], merged))
    return {"workload": workload, "patterns": patterns}
