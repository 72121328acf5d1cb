"""Command-line front end.

Verdict-producing commands exit 0 when the query is complete, 1 when it is
not, and 2 on errors or an undecided (budget-exhausted) outcome. Machine
output goes to stdout as JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .bench import default_pattern_specs, run_bench
from .engine import EntailmentConfig, entails
from .errors import BudgetExceededError, RdfCompleteError, ResourceBoundError
from .oracle import (
    DEFAULT_PROFILE,
    SP_ONLY_PROFILE,
    OracleBound,
    brute_force_entails,
    find_counterexample,
    random_instance,
)
from .parser import (
    parse_graph,
    parse_query,
    parse_statements,
    serialize_graph,
    serialize_query,
    serialize_statements,
)
from .workload import generate_workload, parse_spec_file

EXIT_COMPLETE = 0
EXIT_INCOMPLETE = 1
EXIT_ERROR = 2


def _load_inputs(graph_file, statements_file, query_file):
    graph = parse_graph(Path(graph_file).read_text(encoding="utf-8"))
    statements = parse_statements(Path(statements_file).read_text(encoding="utf-8"))
    query = parse_query(Path(query_file).read_text(encoding="utf-8"))
    return graph, statements, query


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_ERROR)


@click.group()
@click.version_option(version=__version__, prog_name="rdfcomplete")
def main() -> None:
    """Completeness reasoning over RDF graphs."""
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING)


@main.command()
@click.option("--graph", "graph_file", required=True, type=click.Path(exists=True))
@click.option(
    "--statements", "statements_file", required=True, type=click.Path(exists=True)
)
@click.option("--query", "query_file", required=True, type=click.Path(exists=True))
@click.option("--no-early-failure", is_flag=True, help="Check containment only at the end.")
@click.option("--no-skip", is_flag=True, help="Disable the completeness-skip optimization.")
@click.option(
    "--index",
    "index_mode",
    type=click.Choice(["sp", "generic"]),
    default="sp",
    show_default=True,
)
@click.option("--max-steps", type=int, default=1_000_000, show_default=True)
@click.option("--timeout", "timeout_ms", type=int, default=None, help="Budget in milliseconds.")
@click.option("--trace", is_flag=True, help="Stream worklist decisions as JSON lines.")
def check(
    graph_file,
    statements_file,
    query_file,
    no_early_failure,
    no_skip,
    index_mode,
    max_steps,
    timeout_ms,
    trace,
):
    """Decide completeness of a query over a graph and statement file."""
    try:
        graph, statements, query = _load_inputs(
            graph_file, statements_file, query_file
        )
        cfg = EntailmentConfig(
            early_failure=not no_early_failure,
            completeness_skip=not no_skip,
            index_mode=index_mode,
            max_steps=max_steps,
            timeout=timeout_ms / 1000.0 if timeout_ms is not None else None,
        )
        on_event = None
        if trace:
            on_event = lambda event: click.echo(json.dumps(event, sort_keys=True))
        verdict = entails(query.body, statements, graph, cfg, on_event=on_event)
    except BudgetExceededError as exc:
        click.echo(json.dumps({"undecided": True, "reason": str(exc)}))
        sys.exit(EXIT_ERROR)
    except (RdfCompleteError, OSError) as exc:
        _fail(str(exc))

    payload = {
        "complete": verdict.complete,
        "stats": {
            "steps": verdict.stats.steps,
            "epg_calls": verdict.stats.epg_calls,
            "transfer_calls": verdict.stats.transfer_calls,
            "elapsed_ms": verdict.stats.elapsed * 1000.0,
        },
    }
    if verdict.witness is not None:
        payload["witness"] = {
            "instantiation": {
                str(v): str(t) for v, t in verdict.witness.instantiation.items()
            },
            "missing": sorted(str(p) for p in verdict.witness.missing),
        }
    click.echo(json.dumps(payload, sort_keys=True))
    sys.exit(EXIT_COMPLETE if verdict.complete else EXIT_INCOMPLETE)


@main.command("oracle-check")
@click.option("--graph", "graph_file", required=True, type=click.Path(exists=True))
@click.option(
    "--statements", "statements_file", required=True, type=click.Path(exists=True)
)
@click.option("--query", "query_file", required=True, type=click.Path(exists=True))
@click.option("--fresh-per-variable", type=int, default=1, show_default=True)
@click.option("--max-candidates", type=int, default=250_000, show_default=True)
def oracle_check(
    graph_file, statements_file, query_file, fresh_per_variable, max_candidates
):
    """Brute-force completeness decision (small instances only)."""
    try:
        graph, statements, query = _load_inputs(
            graph_file, statements_file, query_file
        )
        bound = OracleBound(
            fresh_per_variable=fresh_per_variable, max_candidates=max_candidates
        )
        witness = find_counterexample(query.body, statements, graph, bound)
    except ResourceBoundError as exc:
        click.echo(json.dumps({"undecided": True, "reason": str(exc)}))
        sys.exit(EXIT_ERROR)
    except (RdfCompleteError, OSError) as exc:
        _fail(str(exc))

    payload = {"complete": witness is None}
    if witness is not None:
        payload["counterexample"] = {str(v): str(t) for v, t in witness.items()}
    click.echo(json.dumps(payload, sort_keys=True))
    sys.exit(EXIT_COMPLETE if witness is None else EXIT_INCOMPLETE)


@main.command()
@click.option("--seeds", type=int, default=100, show_default=True)
@click.option("--start-seed", type=int, default=0, show_default=True)
@click.option(
    "--profile",
    type=click.Choice(["default", "sp-only"]),
    default="default",
    show_default=True,
)
def fuzz(seeds, start_seed, profile):
    """Engine-vs-oracle agreement over random instances; report the first
    divergence."""
    chosen = SP_ONLY_PROFILE if profile == "sp-only" else DEFAULT_PROFILE
    modes = ["generic"] + (["sp"] if profile == "sp-only" else [])
    for seed in range(start_seed, start_seed + seeds):
        body, statements, graph = random_instance(seed, chosen)
        expected = brute_force_entails(body, statements, graph)
        for mode in modes:
            for early in (True, False):
                for skip in (True, False):
                    cfg = EntailmentConfig(
                        early_failure=early, completeness_skip=skip, index_mode=mode
                    )
                    verdict = entails(body, statements, graph, cfg)
                    if verdict.complete != expected:
                        click.echo(
                            json.dumps(
                                {
                                    "seed": seed,
                                    "mode": mode,
                                    "early_failure": early,
                                    "completeness_skip": skip,
                                    "oracle": expected,
                                    "engine": verdict.complete,
                                    "body": sorted(str(p) for p in body),
                                },
                                sort_keys=True,
                            )
                        )
                        sys.exit(EXIT_INCOMPLETE)
    click.echo(json.dumps({"seeds": seeds, "divergences": 0}))
    sys.exit(EXIT_COMPLETE)


@main.command()
@click.option("--spec", "spec_file", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def gen(spec_file, out_dir):
    """Generate a workload (graph, statement sets, queries) to a directory."""
    try:
        parsed = parse_spec_file(spec_file)
        spec = parsed["workload"]
        if spec is None:
            _fail("spec file has no [workload] section")
        workload = generate_workload(spec)
    except (RdfCompleteError, ValueError, OSError) as exc:
        _fail(str(exc))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "graph.nt").write_text(serialize_graph(workload.graph), encoding="utf-8")
    (out / "statements_success.txt").write_text(
        serialize_statements(workload.success_statements), encoding="utf-8"
    )
    (out / "statements_failure.txt").write_text(
        serialize_statements(workload.failure_statements), encoding="utf-8"
    )
    (out / "queries.txt").write_text(
        "\n".join(serialize_query(q) for q in workload.queries) + "\n",
        encoding="utf-8",
    )
    click.echo(
        json.dumps(
            {
                "graph_triples": len(workload.graph),
                "queries": len(workload.queries),
                "success_statements": len(workload.success_statements),
                "failure_statements": len(workload.failure_statements),
                "out": str(out),
            },
            sort_keys=True,
        )
    )


@main.command()
@click.option("--spec", "spec_file", type=click.Path(exists=True), default=None)
@click.option("--out", "csv_out", type=click.Path(), default=None)
@click.option("--raw", "raw_out", type=click.Path(), default=None)
@click.option("--queries", "queries_per_pattern", type=int, default=40, show_default=True)
@click.option("--reps", "repetitions", type=int, default=10, show_default=True)
@click.option("--parallel", is_flag=True)
def bench(spec_file, csv_out, raw_out, queries_per_pattern, repetitions, parallel):
    """Run the chain-workload benchmark and report median latencies."""
    specs = None
    if spec_file is not None:
        parsed = parse_spec_file(spec_file)
        specs = parsed["patterns"] or None
        if specs is None and parsed["workload"] is not None:
            specs = [parsed["workload"]]
    if specs is None:
        specs = default_pattern_specs()

    raw_records: list[dict] = []
    sink = raw_records.append if raw_out is not None else None
    try:
        report = run_bench(
            specs,
            queries_per_pattern=queries_per_pattern,
            repetitions=repetitions,
            raw_sink=sink,
            parallel=parallel,
        )
    except (RdfCompleteError, ValueError) as exc:
        _fail(str(exc))

    if csv_out is not None:
        Path(csv_out).write_text(report.to_csv(), encoding="utf-8")
    if raw_out is not None:
        with open(raw_out, "w", encoding="utf-8") as handle:
            for record in raw_records:
                handle.write(json.dumps(record, sort_keys=True) + "\n")
    click.echo(report.table())
    violated = [p for p in report.patterns() if not report.trend_holds(p)]
    if violated and not parallel:
        click.echo(
            f"warning: success > failure > eval ordering violated for: "
            f"{', '.join(violated)}",
            err=True,
        )


@main.command()
@click.option("--graph", "graph_file", type=click.Path(exists=True), default=None)
@click.option("--statements", "statement_file", type=click.Path(exists=True), default=None)
@click.option("--log", "log_file", type=click.Path(), default=None)
@click.option("--labels", "label_file", type=click.Path(exists=True), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--timeout-ms", "timeout_ms", type=int, default=None)
def serve(graph_file, statement_file, log_file, label_file, host, port, timeout_ms):
    """Run the HTTP service (environment variables fill unset options:
    GRAPH_FILE, STATEMENT_FILE, STATEMENT_LOG, LABEL_FILE, BIND_ADDR,
    ENTAILMENT_TIMEOUT_MS)."""
    import os

    import uvicorn

    from .service.app import create_app
    from .store import Store

    graph_file = graph_file or os.environ.get("GRAPH_FILE")
    if not graph_file:
        _fail("--graph or GRAPH_FILE is required")
    statement_file = statement_file or os.environ.get("STATEMENT_FILE") or None
    log_file = log_file or os.environ.get("STATEMENT_LOG") or None
    label_file = label_file or os.environ.get("LABEL_FILE") or None
    if timeout_ms is None:
        env_timeout = os.environ.get("ENTAILMENT_TIMEOUT_MS")
        timeout_ms = int(env_timeout) if env_timeout else None

    bind = os.environ.get("BIND_ADDR", "127.0.0.1:8000")
    if host is None or port is None:
        bind_host, _, bind_port = bind.partition(":")
        host = host or bind_host or "127.0.0.1"
        port = port or int(bind_port or 8000)

    try:
        store = Store.open(
            graph_file,
            statement_file=statement_file,
            log_path=log_file,
            label_file=label_file,
        )
    except (RdfCompleteError, OSError) as exc:
        _fail(str(exc))
    app = create_app(store, default_timeout_ms=timeout_ms)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
