"""The completeness-entailment decision procedure.

A query body is complete relative to a graph and a set of completeness
statements when every allowed extension of the graph leaves its answers
unchanged. The engine decides this by repeatedly instantiating the body's
*crucial part* — the sub-BGP whose matches the statements guarantee to be
exhaustive — until every branch is saturated, then checking that each
saturated instantiation is physically present in the graph.

The worklist loop supports two optimizations, both verdict-preserving:

* early failure: containment is checked the moment a branch saturates, and
  the first failure aborts the whole check;
* completeness skip: an item whose crucial part is its entire body is
  dropped without instantiation, since every instantiation is then already
  guaranteed to be contained in the graph.

Worklist discipline is LIFO (depth first) so failing leaves are reached
quickly, which is what makes early failure pay off.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

from .errors import BudgetExceededError
from .graph import Graph, eval_bgp, freeze, unfreeze
from .spindex import SPIndex, crucial_part_sp, try_build_index
from .statements import StatementSet, transfer
from .terms import (
    BGP,
    EMPTY_MAPPING,
    Mapping,
    TriplePattern,
    apply_mapping,
    bgp_terms,
    bgp_variables,
    check_no_reserved_terms,
    sorted_patterns,
)

GENERIC_INDEX = "generic"
SP_INDEX = "sp"


@dataclass(frozen=True)
class PartiallyMappedBGP:
    """A BGP paired with the mapping already substituted into it."""

    body: BGP
    applied: Mapping = EMPTY_MAPPING

    def __post_init__(self):
        overlap = self.applied.domain & bgp_variables(self.body)
        if overlap:
            names = ", ".join(sorted(str(v) for v in overlap))
            raise ValueError(f"applied mapping overlaps body variables: {names}")

    def sort_key(self) -> tuple:
        return (
            tuple(p.sort_key() for p in sorted_patterns(self.body)),
            tuple((v.name, str(t)) for v, t in self.applied.items()),
        )

    def __repr__(self) -> str:
        body = " . ".join(str(p) for p in sorted_patterns(self.body))
        return f"({{ {body} }}, {self.applied!r})"


@dataclass(frozen=True)
class EntailmentConfig:
    early_failure: bool = True
    completeness_skip: bool = True
    max_steps: int = 1_000_000
    timeout: Optional[float] = None  # seconds
    index_mode: str = GENERIC_INDEX

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.index_mode not in (GENERIC_INDEX, SP_INDEX):
            raise ValueError(f"unknown index mode: {self.index_mode!r}")


@dataclass
class EntailmentStats:
    epg_calls: int = 0
    transfer_calls: int = 0
    steps: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class FailureWitness:
    """A saturated instantiation whose frozen body is missing from the graph."""

    instantiation: Mapping
    missing: BGP


@dataclass(frozen=True)
class EntailmentVerdict:
    complete: bool
    saturated_mappings: frozenset
    witness: Optional[FailureWitness]
    stats: EntailmentStats

    def __post_init__(self):
        if self.complete and self.witness is not None:
            raise ValueError("a complete verdict cannot carry a failure witness")


def crucial_part(body: BGP, statements: StatementSet, graph: Graph) -> BGP:
    """The sub-BGP whose instantiations the statements plus data guarantee
    to be exhaustive.

    Computed by freezing the body, applying the transfer operator to the
    frozen body united with the graph, thawing the result, and intersecting
    with the body.
    """
    _check_frozen_safety(graph, statements)
    frozen, fm = freeze(body)
    combined = graph.union(frozen)
    transferred = transfer(statements, combined)
    return frozenset(body) & unfreeze(fm, transferred)


def _check_frozen_safety(graph: Graph, statements: StatementSet) -> None:
    if graph.has_reserved_terms:
        check_no_reserved_terms(graph.terms())
    if statements.has_reserved_terms:
        check_no_reserved_terms(statements.terms())


def epg(
    pm: PartiallyMappedBGP, statements: StatementSet, graph: Graph
) -> frozenset:
    """Equivalent partial grounding: instantiate the item's crucial part
    against the graph, carrying the accumulated mapping along."""
    crucial = crucial_part(pm.body, statements, graph)
    return _ground_step(pm, crucial, graph)


def _ground_step(pm: PartiallyMappedBGP, crucial: BGP, graph: Graph) -> frozenset:
    return frozenset(
        PartiallyMappedBGP(apply_mapping(mu, pm.body), pm.applied.merge(mu))
        for mu in eval_bgp(crucial, graph)
    )


def is_saturated(body: BGP, statements: StatementSet, graph: Graph) -> bool:
    """True when instantiating the crucial part returns the body itself.

    Saturation does not depend on any applied mapping, so it is checked on
    the bare body. An empty crucial part counts as saturated: with nothing
    granted by the statements, completeness reduces to the frozen body
    being physically present.
    """
    crucial = crucial_part(body, statements, graph)
    return eval_bgp(crucial, graph) == frozenset((EMPTY_MAPPING,))


def _missing_from(body: BGP, graph: Graph) -> BGP:
    """Patterns of a saturated body whose frozen image is absent from the
    graph. Ground patterns are checked directly; patterns with variables
    freeze to reserved IRIs, which by construction never occur in the
    graph, so they are always missing."""
    missing = set()
    for pattern in body:
        if pattern.is_ground():
            if pattern.to_triple() not in graph:
                missing.add(pattern)
        else:
            missing.add(pattern)
    return frozenset(missing)


class _Deadline:
    __slots__ = ("expires",)

    def __init__(self, timeout: Optional[float]):
        self.expires = None if timeout is None else time.monotonic() + timeout

    def exceeded(self) -> bool:
        return self.expires is not None and time.monotonic() > self.expires


def _crucial_fn(
    statements: StatementSet,
    graph: Graph,
    cfg: EntailmentConfig,
    stats: EntailmentStats,
    sp_index: Optional[SPIndex] = None,
) -> Callable[[BGP], BGP]:
    if cfg.index_mode == SP_INDEX:
        index = sp_index if sp_index is not None else try_build_index(statements)
        if index is not None:
            return lambda body: crucial_part_sp(body, index)
        # Mixed statement sets fall back to the generic path wholesale;
        # partially indexing would change which parts count as crucial.

    def generic(body: BGP) -> BGP:
        stats.transfer_calls += 1
        return crucial_part(body, statements, graph)

    return generic


def _run_worklist(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    cfg: EntailmentConfig,
    *,
    check_containment: bool,
    on_event: Optional[Callable[[dict], None]] = None,
    sp_index: Optional[SPIndex] = None,
) -> EntailmentVerdict:
    started = time.monotonic()
    stats = EntailmentStats()
    deadline = _Deadline(cfg.timeout)
    crucial_of = _crucial_fn(statements, graph, cfg, stats, sp_index)
    _check_frozen_safety(graph, statements)
    check_no_reserved_terms(bgp_terms(body))

    def emit(event: str, pm: PartiallyMappedBGP, **extra) -> None:
        if on_event is not None:
            payload = {
                "step": stats.steps,
                "event": event,
                "body": [str(p) for p in sorted_patterns(pm.body)],
                "applied": {str(v): str(t) for v, t in pm.applied.items()},
            }
            payload.update(extra)
            on_event(payload)

    root = PartiallyMappedBGP(frozenset(body), EMPTY_MAPPING)
    pending: list[PartiallyMappedBGP] = [root]
    enqueued = {root}
    collected: dict[Mapping, None] = {}  # insertion-ordered Ω
    witness: Optional[FailureWitness] = None

    def out_of_budget(reason: str) -> BudgetExceededError:
        stats.elapsed = time.monotonic() - started
        return BudgetExceededError(
            reason, partial_mappings=collected.keys(), stats=stats
        )

    while pending:
        if stats.steps >= cfg.max_steps:
            raise out_of_budget(f"step budget of {cfg.max_steps} exhausted")
        if deadline.exceeded():
            raise out_of_budget(f"timeout of {cfg.timeout}s exceeded")
        pm = pending.pop()
        enqueued.discard(pm)
        stats.steps += 1

        crucial = crucial_of(pm.body)
        if cfg.completeness_skip and crucial == pm.body:
            # The statements cover the whole body, so every instantiation
            # of it is already guaranteed to be contained in the graph.
            emit("skip", pm)
            continue

        stats.epg_calls += 1
        grounded = _ground_step(pm, crucial, graph)
        if not grounded:
            emit("drop", pm)
            continue
        if grounded == frozenset((pm,)):
            collected[pm.applied] = None
            if check_containment and cfg.early_failure:
                missing = _missing_from(pm.body, graph)
                emit("saturated", pm, contained=not missing)
                if missing:
                    witness = FailureWitness(pm.applied, missing)
                    break
            else:
                emit("saturated", pm)
            continue
        emit("expand", pm, children=len(grounded))
        for child in sorted(grounded, key=PartiallyMappedBGP.sort_key):
            if child not in enqueued:
                pending.append(child)
                enqueued.add(child)

    omega = frozenset(collected)
    if check_containment and witness is None and not cfg.early_failure:
        for mapping in collected:
            instantiated = apply_mapping(mapping, body)
            missing = _missing_from(instantiated, graph)
            if missing:
                witness = FailureWitness(mapping, missing)
                break

    stats.elapsed = time.monotonic() - started
    if not check_containment:
        return EntailmentVerdict(True, omega, None, stats)
    return EntailmentVerdict(witness is None, omega, witness, stats)


def saturate(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    cfg: EntailmentConfig = EntailmentConfig(),
) -> frozenset:
    """All saturated instantiation mappings of the body (the set Ω).

    Runs the plain worklist loop with no containment checking and no
    skipping, so the result is exactly the saturation of the body.
    """
    plain = replace(cfg, early_failure=False, completeness_skip=False)
    verdict = _run_worklist(
        body, statements, graph, plain, check_containment=False
    )
    return verdict.saturated_mappings


def entails(
    body: BGP,
    statements: StatementSet,
    graph: Graph,
    cfg: EntailmentConfig = EntailmentConfig(),
    on_event: Optional[Callable[[dict], None]] = None,
    sp_index: Optional[SPIndex] = None,
) -> EntailmentVerdict:
    """Decide whether the statements and graph entail completeness of the
    body: complete iff every saturated instantiation, frozen, is contained
    in the graph.

    ``sp_index`` may carry a prebuilt index for the statements (it must
    reflect exactly their SP view); without it, sp mode builds one per call.
    Raises ``BudgetExceededError`` when the step or time budget runs out;
    that outcome is "undecided", never a negative verdict.
    """
    return _run_worklist(
        body,
        statements,
        graph,
        cfg,
        check_containment=True,
        on_event=on_event,
        sp_index=sp_index,
    )


def entails_query(query, statements, graph, cfg=EntailmentConfig(), on_event=None):
    """Convenience: entailment on a query's body (bag-semantics reduction)."""
    return entails(query.body, statements, graph, cfg, on_event)


def _evaluate_pm_set(pms: Iterable[PartiallyMappedBGP], graph: Graph) -> frozenset:
    answers = set()
    for pm in pms:
        for mu in eval_bgp(pm.body, graph):
            answers.add(pm.applied.merge(mu))
    return frozenset(answers)


def equivalent_under(
    group: Iterable[PartiallyMappedBGP],
    other: Iterable[PartiallyMappedBGP],
    statements: StatementSet,
    graph: Graph,
    bound=None,
) -> bool:
    """Bounded check of semantic equivalence of two sets of partially
    mapped BGPs: do they evaluate identically over every valid extension?

    Test-only referee. Enumerates the graph itself plus every extension
    obtained by adding one homomorphic image of one of the bodies (over the
    active domain plus fresh constants); by the same shrinking argument the
    brute-force oracle rests on, a difference over any valid extension
    shows up on one of these.
    """
    from .oracle import OracleBound, bounded_extensions

    group = frozenset(group)
    other = frozenset(other)
    bound = bound or OracleBound()
    bodies = [pm.body for pm in group | other]
    extra_terms = set()
    for pm in group | other:
        for _, term in pm.applied.items():
            extra_terms.add(term)
    for graph_prime in bounded_extensions(
        bodies, statements, graph, bound, extra_terms=extra_terms
    ):
        if _evaluate_pm_set(group, graph_prime) != _evaluate_pm_set(other, graph_prime):
            return False
    return True
