import json

import pytest
from click.testing import CliRunner

from rdfcomplete.cli import main

from conftest import SCENARIO_STATEMENTS_TEXT


@pytest.fixture
def runner():
    return CliRunner()


def check_args(files, *extra):
    return [
        "check",
        "--graph",
        str(files["graph"]),
        "--statements",
        str(files["statements"]),
        "--query",
        str(files["query"]),
        *extra,
    ]


class TestCheck:
    def test_complete_scenario_exits_zero(self, runner, scenario_files):
        result = runner.invoke(main, check_args(scenario_files))
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output.strip().splitlines()[-1])
        assert payload["complete"] is True

    def test_dropping_a_statement_exits_one(self, runner, scenario_files):
        trimmed = "\n".join(SCENARIO_STATEMENTS_TEXT.splitlines()[:-1]) + "\n"
        scenario_files["statements"].write_text(trimmed, encoding="utf-8")
        result = runner.invoke(main, check_args(scenario_files))
        assert result.exit_code == 1
        payload = json.loads(result.output.strip().splitlines()[-1])
        assert payload["complete"] is False
        assert "witness" in payload

    def test_budget_exhaustion_exits_two(self, runner, scenario_files):
        result = runner.invoke(main, check_args(scenario_files, "--max-steps", "1"))
        assert result.exit_code == 2
        payload = json.loads(result.output.strip().splitlines()[-1])
        assert payload["undecided"] is True

    def test_generic_and_optimization_flags(self, runner, scenario_files):
        result = runner.invoke(
            main,
            check_args(
                scenario_files, "--index", "generic", "--no-early-failure", "--no-skip"
            ),
        )
        assert result.exit_code == 0

    def test_trace_streams_worklist_events(self, runner, scenario_files):
        result = runner.invoke(main, check_args(scenario_files, "--trace"))
        lines = [json.loads(line) for line in result.output.strip().splitlines()]
        events = [line["event"] for line in lines if "event" in line]
        assert events, "expected trace events"
        assert lines[-1]["complete"] is True

    def test_parse_error_exits_two(self, runner, scenario_files):
        scenario_files["query"].write_text("SELECT nothing", encoding="utf-8")
        result = runner.invoke(main, check_args(scenario_files))
        assert result.exit_code == 2

    def test_unknown_flag_exits_two(self, runner, scenario_files):
        result = runner.invoke(main, check_args(scenario_files, "--frobnicate"))
        assert result.exit_code == 2


class TestOracleCheck:
    def test_agrees_with_check_on_scenario(self, runner, scenario_files):
        args = [
            "oracle-check",
            "--graph",
            str(scenario_files["graph"]),
            "--statements",
            str(scenario_files["statements"]),
            "--query",
            str(scenario_files["query"]),
        ]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert json.loads(result.output)["complete"] is True

    def test_counterexample_reported(self, runner, scenario_files):
        trimmed = "\n".join(SCENARIO_STATEMENTS_TEXT.splitlines()[:-1]) + "\n"
        scenario_files["statements"].write_text(trimmed, encoding="utf-8")
        args = [
            "oracle-check",
            "--graph",
            str(scenario_files["graph"]),
            "--statements",
            str(scenario_files["statements"]),
            "--query",
            str(scenario_files["query"]),
        ]
        result = runner.invoke(main, args)
        assert result.exit_code == 1
        assert "counterexample" in json.loads(result.output)


class TestFuzz:
    def test_small_run_finds_no_divergence(self, runner):
        result = runner.invoke(main, ["fuzz", "--seeds", "15"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["divergences"] == 0

    def test_sp_only_profile(self, runner):
        result = runner.invoke(
            main, ["fuzz", "--seeds", "10", "--profile", "sp-only"]
        )
        assert result.exit_code == 0, result.output


class TestGen:
    def test_generates_consistent_workload_files(self, runner, tmp_path):
        spec = tmp_path / "w.spec"
        spec.write_text(
            "[workload]\nchain_length = 2\nentity_count = 3\nfanout = 1\nseed = 5\n",
            encoding="utf-8",
        )
        out = tmp_path / "out"
        result = runner.invoke(main, ["gen", "--spec", str(spec), "--out", str(out)])
        assert result.exit_code == 0, result.output
        for name in (
            "graph.nt",
            "statements_success.txt",
            "statements_failure.txt",
            "queries.txt",
        ):
            assert (out / name).exists()

        # every generated query is complete under the success statements
        queries = (out / "queries.txt").read_text().strip().splitlines()
        first_query = tmp_path / "q.rq"
        first_query.write_text(queries[0], encoding="utf-8")
        check = runner.invoke(
            main,
            [
                "check",
                "--graph",
                str(out / "graph.nt"),
                "--statements",
                str(out / "statements_success.txt"),
                "--query",
                str(first_query),
            ],
        )
        assert check.exit_code == 0, check.output

    def test_missing_workload_section(self, runner, tmp_path):
        spec = tmp_path / "w.spec"
        spec.write_text("[pattern:x]\nentity_count = 2\n", encoding="utf-8")
        result = runner.invoke(
            main, ["gen", "--spec", str(spec), "--out", str(tmp_path / "o")]
        )
        assert result.exit_code == 2


class TestBench:
    def test_csv_report_schema(self, runner, tmp_path):
        spec = tmp_path / "b.spec"
        spec.write_text(
            "[workload]\nseed = 3\n[pattern:tiny]\nentity_count = 3\nfanout = 2,1,1\n",
            encoding="utf-8",
        )
        out = tmp_path / "report.csv"
        raw = tmp_path / "raw.jsonl"
        result = runner.invoke(
            main,
            [
                "bench",
                "--spec",
                str(spec),
                "--out",
                str(out),
                "--raw",
                str(raw),
                "--queries",
                "3",
                "--reps",
                "2",
            ],
        )
        assert result.exit_code == 0, result.output
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "pattern,case,median_us,samples"
        assert len(lines) == 4
        raw_lines = [json.loads(l) for l in raw.read_text().strip().splitlines()]
        assert {r["case"] for r in raw_lines} == {"success", "failure", "eval"}


class TestHelp:
    def test_every_subcommand_documents_itself(self, runner):
        for command in ("check", "oracle-check", "fuzz", "gen", "bench", "serve"):
            result = runner.invoke(main, [command, "--help"])
            assert result.exit_code == 0
            assert "--help" in result.output or "Usage" in result.output
