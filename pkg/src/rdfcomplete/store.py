"""Statement store: a read-only graph, editable SP-statements with
provenance, and completeness-aware querying.

The store follows a single-writer, multi-reader discipline. Every mutation
produces a fresh immutable ``StoreState`` (copy-on-write) and appends one
record to a JSON-lines log before the new state becomes visible, so a
failed write leaves the store untouched. On startup the log is replayed
on top of any co-loaded statement file; removals stay in the log as
tombstones, which keeps the full provenance history.

Facts are never edited here: the graph is a loaded snapshot and only
completeness annotations change.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .engine import (
    EntailmentConfig,
    EntailmentVerdict,
    entails,
)
from .errors import BudgetExceededError, RemoteFetchError, StatementNotFoundError
from .graph import Graph, eval_bgp
from .parser import format_rfc3339, parse_graph, parse_rfc3339, parse_statements
from .spindex import SPIndex, SPStatement, classify
from .statements import (
    CompletenessStatement,
    Provenance,
    StatementSet,
)
from .terms import Iri, Query, TriplePattern, Var


@dataclass(frozen=True)
class RemoteSource:
    """Descriptor for a remote graph source.

    ``fetch`` takes the endpoint and returns graph text; tests inject a
    recorded-fixture fetcher. The default fetcher does a plain HTTP GET.
    """

    endpoint: str
    fetch: Optional[callable] = None

    def load(self) -> str:
        fetch = self.fetch or _http_get
        try:
            return fetch(self.endpoint)
        except Exception as exc:
            raise RemoteFetchError(
                f"fetching {self.endpoint!r} failed: {exc}; retry later"
            ) from exc


def _http_get(url: str) -> str:
    import urllib.request

    with urllib.request.urlopen(url, timeout=30) as response:
        return response.read().decode("utf-8")


GraphSource = Union[str, Path, RemoteSource]


def load_graph(source: GraphSource) -> Graph:
    if isinstance(source, RemoteSource):
        return parse_graph(source.load())
    return parse_graph(Path(source).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class StoreState:
    """One immutable version of the store's contents."""

    graph: Graph
    statements: StatementSet
    sp_index: SPIndex
    provenance: dict  # (Iri, Iri) -> tuple[Provenance, ...]
    version: int
    all_sp: bool = True  # every statement classifies as SP and is indexed


@dataclass(frozen=True)
class CompletenessInfo:
    complete: bool
    provenance: tuple = ()


@dataclass(frozen=True)
class EntityView:
    """Everything known about one entity: its facts grouped by predicate,
    and per-predicate completeness flags sourced from the SP index."""

    entity: Iri
    facts: dict  # Iri -> list of object terms
    completeness: dict  # Iri -> CompletenessInfo


@dataclass(frozen=True)
class StatementRecord:
    statement: SPStatement
    provenance: tuple = ()


@dataclass
class QueryOutcome:
    answers: list  # projected mappings, bag semantics
    variables: list  # sorted projection
    verdict: Optional[EntailmentVerdict]
    undecided: bool = False
    undecided_reason: Optional[str] = None


def _index_sp_subset(statements: StatementSet) -> tuple[SPIndex, bool]:
    index = SPIndex()
    all_sp = True
    for statement in statements:
        sp = classify(statement)
        if sp is None:
            all_sp = False
        elif (sp.subject, sp.predicate) not in index:
            index = index.with_entry(sp)
        else:
            all_sp = False  # duplicate key: index keeps one entry only
    return index, all_sp


def _initial_provenance(index: SPIndex) -> dict:
    out = {}
    for entry in index:
        prov = entry.base.provenance
        out[(entry.subject, entry.predicate)] = (prov,) if prov is not None else ()
    return out


class Store:
    """Single-writer statement store over a read-only graph snapshot."""

    def __init__(
        self,
        graph: Graph,
        statements: StatementSet = StatementSet(),
        log_path: Optional[Union[str, Path]] = None,
        labels: Optional[dict] = None,
    ):
        index, all_sp = _index_sp_subset(statements)
        state = StoreState(
            graph=graph,
            statements=statements,
            sp_index=index,
            provenance=_initial_provenance(index),
            version=1,
            all_sp=all_sp,
        )
        self._lock = threading.Lock()
        self._state = state
        self._log_path = Path(log_path) if log_path is not None else None
        self.labels = dict(labels or {})
        if self._log_path is not None and self._log_path.exists():
            self._replay_log()

    @classmethod
    def open(
        cls,
        graph_source: GraphSource,
        statement_file: Optional[Union[str, Path]] = None,
        log_path: Optional[Union[str, Path]] = None,
        label_file: Optional[Union[str, Path]] = None,
    ) -> "Store":
        graph = load_graph(graph_source)
        statements = StatementSet()
        if statement_file is not None:
            statements = parse_statements(Path(statement_file).read_text("utf-8"))
        labels = None
        if label_file is not None:
            labels = json.loads(Path(label_file).read_text("utf-8"))
        return cls(graph, statements, log_path=log_path, labels=labels)

    @property
    def state(self) -> StoreState:
        return self._state

    # ------------------------------------------------------------------
    # persistence

    def _replay_log(self) -> None:
        with self._log_path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                if record["op"] == "add":
                    self._apply_add(
                        Iri(record["subject"]),
                        Iri(record["predicate"]),
                        _provenance_from_record(record),
                        log=False,
                    )
                elif record["op"] == "remove":
                    self._apply_remove(
                        Iri(record["subject"]), Iri(record["predicate"]), log=False
                    )

    def _append_log(self, record: dict) -> None:
        if self._log_path is None:
            return
        record = dict(record, logged_at=format_rfc3339(datetime.now(timezone.utc)))
        with self._log_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
            handle.flush()

    # ------------------------------------------------------------------
    # mutations

    def add_statement(
        self, subject: Iri, predicate: Iri, provenance: Optional[Provenance] = None
    ) -> StoreState:
        """Record an SP-statement for (subject, predicate).

        Idempotent on the key: adding an existing key keeps the single
        reasoning entry and appends the new provenance record.
        """
        return self._apply_add(subject, predicate, provenance, log=True)

    def remove_statement(self, subject: Iri, predicate: Iri) -> StoreState:
        return self._apply_remove(subject, predicate, log=True)

    def _apply_add(self, subject, predicate, provenance, *, log: bool) -> StoreState:
        with self._lock:
            state = self._state
            key = (subject, predicate)
            existing = state.sp_index.get(subject, predicate)
            if existing is None:
                statement = CompletenessStatement(
                    body=frozenset({TriplePattern(subject, predicate, Var("v"))}),
                    provenance=provenance,
                )
                statements = state.statements.add(statement)
                index = state.sp_index.with_entry(
                    SPStatement(subject, predicate, statement)
                )
            else:
                statements = state.statements
                index = state.sp_index
            prov_map = dict(state.provenance)
            records = prov_map.get(key, ())
            if provenance is not None:
                prov_map[key] = records + (provenance,)
            else:
                prov_map.setdefault(key, records)
            if log:
                self._append_log(_add_record(subject, predicate, provenance))
            new_state = StoreState(
                graph=state.graph,
                statements=statements,
                sp_index=index,
                provenance=prov_map,
                version=state.version + 1,
                all_sp=state.all_sp,
            )
            self._state = new_state
            return new_state

    def _apply_remove(self, subject, predicate, *, log: bool) -> StoreState:
        with self._lock:
            state = self._state
            entry = state.sp_index.get(subject, predicate)
            if entry is None:
                raise StatementNotFoundError(
                    f"no completeness statement for ({subject}, {predicate})"
                )
            statements = state.statements.remove(entry.base.id)
            index = state.sp_index.without_key(subject, predicate)
            prov_map = dict(state.provenance)
            prov_map.pop((subject, predicate), None)
            if log:
                self._append_log(
                    {
                        "op": "remove",
                        "subject": subject.value,
                        "predicate": predicate.value,
                    }
                )
            new_state = StoreState(
                graph=state.graph,
                statements=statements,
                sp_index=index,
                provenance=prov_map,
                version=state.version + 1,
                all_sp=state.all_sp,
            )
            self._state = new_state
            return new_state

    # ------------------------------------------------------------------
    # reads

    def entity_view(self, entity: Iri) -> EntityView:
        state = self._state
        facts: dict = {}
        for triple in state.graph.by_subject(entity):
            facts.setdefault(triple.predicate, []).append(triple.object)
        for objects in facts.values():
            objects.sort(key=str)
        completeness: dict = {}
        predicates = set(facts)
        predicates.update(
            entry.predicate for entry in state.sp_index.keys_for_subject(entity)
        )
        for predicate in predicates:
            key = (entity, predicate)
            if (entity, predicate) in state.sp_index:
                completeness[predicate] = CompletenessInfo(
                    True, state.provenance.get(key, ())
                )
            else:
                completeness[predicate] = CompletenessInfo(False)
        return EntityView(entity=entity, facts=facts, completeness=completeness)

    def list_statements(
        self, predicate: Optional[Iri] = None
    ) -> list[StatementRecord]:
        state = self._state
        entries = [
            entry
            for entry in state.sp_index
            if predicate is None or entry.predicate == predicate
        ]
        entries.sort(key=lambda e: (e.subject.value, e.predicate.value))
        return [
            StatementRecord(
                entry, state.provenance.get((entry.subject, entry.predicate), ())
            )
            for entry in entries
        ]

    def search_entities(self, needle: str, limit: int = 10) -> list[dict]:
        """Substring match over subject IRIs and the optional label file."""
        needle = needle.strip().lower()
        if not needle:
            return []
        state = self._state
        hits = []
        for subject in state.graph.subjects():
            label = self.labels.get(subject.value)
            if needle in subject.value.lower() or (
                label is not None and needle in label.lower()
            ):
                hits.append({"iri": subject.value, "label": label})
        hits.sort(key=lambda h: h["iri"])
        return hits[:limit]

    def query_with_completeness(
        self, query: Query, cfg: Optional[EntailmentConfig] = None
    ) -> QueryOutcome:
        """Evaluate the query and decide completeness of its body.

        Budget exhaustion downgrades the verdict to "undecided" but still
        returns the answers.
        """
        state = self._state
        cfg = cfg or EntailmentConfig(index_mode="sp")
        answers = sorted(
            (m.restrict(query.projection) for m in eval_bgp(query.body, state.graph)),
            key=lambda m: tuple(str(t) for _, t in m.items()),
        )
        variables = sorted(query.projection, key=lambda v: v.name)
        prebuilt = state.sp_index if state.all_sp else None
        try:
            verdict = entails(
                query.body, state.statements, state.graph, cfg, sp_index=prebuilt
            )
        except BudgetExceededError as exc:
            return QueryOutcome(
                answers=answers,
                variables=variables,
                verdict=None,
                undecided=True,
                undecided_reason=str(exc),
            )
        return QueryOutcome(answers=answers, variables=variables, verdict=verdict)


def _add_record(subject: Iri, predicate: Iri, provenance: Optional[Provenance]) -> dict:
    record = {
        "op": "add",
        "subject": subject.value,
        "predicate": predicate.value,
    }
    if provenance is not None:
        if provenance.author is not None:
            record["author"] = provenance.author
        if provenance.reference is not None:
            record["reference"] = provenance.reference
        if provenance.timestamp is not None:
            record["time"] = format_rfc3339(provenance.timestamp)
    return record


def _provenance_from_record(record: dict) -> Optional[Provenance]:
    author = record.get("author")
    reference = record.get("reference")
    time_text = record.get("time")
    if author is None and reference is None and time_text is None:
        return None
    return Provenance(
        author=author,
        timestamp=parse_rfc3339(time_text) if time_text else None,
        reference=reference,
    )
