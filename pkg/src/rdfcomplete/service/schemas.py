"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..engine import EntailmentConfig, FailureWitness
from ..statements import Provenance
from ..store import EntityView, QueryOutcome, StatementRecord
from ..parser import format_rfc3339
from ..terms import Iri, Literal, sorted_patterns


class TermOut(BaseModel):
    type: str  # "iri" | "literal"
    value: str
    datatype: Optional[str] = None

    @classmethod
    def from_term(cls, term) -> "TermOut":
        if isinstance(term, Iri):
            return cls(type="iri", value=term.value)
        if isinstance(term, Literal):
            return cls(type="literal", value=term.lexical, datatype=term.datatype)
        raise ValueError(f"not a ground term: {term}")


class ProvenanceOut(BaseModel):
    author: Optional[str] = None
    timestamp: Optional[str] = None
    reference: Optional[str] = None

    @classmethod
    def from_provenance(cls, prov: Provenance) -> "ProvenanceOut":
        return cls(
            author=prov.author,
            timestamp=(
                format_rfc3339(prov.timestamp) if prov.timestamp is not None else None
            ),
            reference=prov.reference,
        )


class CompletenessFlagOut(BaseModel):
    complete: bool
    provenance: list[ProvenanceOut] = Field(default_factory=list)


class EntityViewOut(BaseModel):
    entity: str
    facts: dict[str, list[TermOut]]
    completeness: dict[str, CompletenessFlagOut]

    @classmethod
    def from_view(cls, view: EntityView) -> "EntityViewOut":
        return cls(
            entity=view.entity.value,
            facts={
                pred.value: [TermOut.from_term(obj) for obj in objects]
                for pred, objects in sorted(
                    view.facts.items(), key=lambda kv: kv[0].value
                )
            },
            completeness={
                pred.value: CompletenessFlagOut(
                    complete=info.complete,
                    provenance=[
                        ProvenanceOut.from_provenance(p)
                        for p in info.provenance
                        if p is not None
                    ],
                )
                for pred, info in sorted(
                    view.completeness.items(), key=lambda kv: kv[0].value
                )
            },
        )


class StatementCreate(BaseModel):
    subject: str
    predicate: str
    author: Optional[str] = None
    reference: Optional[str] = None


class StatementCreated(BaseModel):
    id: str
    subject: str
    predicate: str
    version: int


class StatementOut(BaseModel):
    id: str
    subject: str
    predicate: str
    provenance: list[ProvenanceOut] = Field(default_factory=list)

    @classmethod
    def from_record(cls, record: StatementRecord) -> "StatementOut":
        return cls(
            id=record.statement.base.id,
            subject=record.statement.subject.value,
            predicate=record.statement.predicate.value,
            provenance=[
                ProvenanceOut.from_provenance(p)
                for p in record.provenance
                if p is not None
            ],
        )


class SearchHit(BaseModel):
    iri: str
    label: Optional[str] = None


class EntailmentConfigIn(BaseModel):
    early_failure: bool = True
    completeness_skip: bool = True
    max_steps: Optional[int] = None
    timeout_ms: Optional[int] = None
    index_mode: str = "sp"

    def to_config(self, default_timeout_ms: Optional[int] = None) -> EntailmentConfig:
        timeout_ms = self.timeout_ms if self.timeout_ms is not None else default_timeout_ms
        kwargs = {
            "early_failure": self.early_failure,
            "completeness_skip": self.completeness_skip,
            "index_mode": self.index_mode,
            "timeout": timeout_ms / 1000.0 if timeout_ms is not None else None,
        }
        if self.max_steps is not None:
            kwargs["max_steps"] = self.max_steps
        return EntailmentConfig(**kwargs)


class QueryRequest(BaseModel):
    query: str
    config: Optional[EntailmentConfigIn] = None


class WitnessOut(BaseModel):
    instantiation: dict[str, TermOut]
    missing: list[str]

    @classmethod
    def from_witness(cls, witness: FailureWitness) -> "WitnessOut":
        return cls(
            instantiation={
                var.name: TermOut.from_term(term)
                for var, term in witness.instantiation.items()
            },
            missing=[str(p) for p in sorted_patterns(witness.missing)],
        )


class StatsOut(BaseModel):
    epg_calls: int
    transfer_calls: int
    steps: int
    elapsed_ms: float


class QueryResponse(BaseModel):
    answers: list[dict[str, TermOut]]
    variables: list[str]
    complete: Optional[bool] = None
    undecided: bool = False
    undecided_reason: Optional[str] = None
    witness: Optional[WitnessOut] = None
    stats: Optional[StatsOut] = None

    @classmethod
    def from_outcome(cls, outcome: QueryOutcome) -> "QueryResponse":
        answers = [
            {var.name: TermOut.from_term(term) for var, term in mapping.items()}
            for mapping in outcome.answers
        ]
        variables = [v.name for v in outcome.variables]
        if outcome.undecided:
            return cls(
                answers=answers,
                variables=variables,
                undecided=True,
                undecided_reason=outcome.undecided_reason,
            )
        verdict = outcome.verdict
        return cls(
            answers=answers,
            variables=variables,
            complete=verdict.complete,
            witness=(
                WitnessOut.from_witness(verdict.witness)
                if verdict.witness is not None
                else None
            ),
            stats=StatsOut(
                epg_calls=verdict.stats.epg_calls,
                transfer_calls=verdict.stats.transfer_calls,
                steps=verdict.stats.steps,
                elapsed_ms=verdict.stats.elapsed * 1000.0,
            ),
        )


class HealthOut(BaseModel):
    status: str = "ok"


class VersionOut(BaseModel):
    package: str
    store_version: int
    graph_triples: int
    statements: int
