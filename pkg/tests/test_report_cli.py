import json

import pytest
from click.testing import CliRunner

from pathlab.cli import cli, main
from pathlab.harness import ExperimentConfig, run_experiment
from pathlab.report import (
    DISTRIBUTION_CSV_HEADER,
    FormatError,
    model_query,
    render_report,
    reproduce_tables,
)


def test_model_query_ethereum_scale():
    text = model_query(300_000_000, fmt="markdown")
    assert "7.717012" in text
    assert "| 8 | 0.585884 |" in text


def test_model_query_large_trie():
    payload = json.loads(model_query(10**6, fmt="json"))
    assert payload["mode"] == 6
    assert payload["expected_path_length"] == pytest.approx(5.649078, abs=5e-7)


def test_model_query_boundary_n1():
    text = model_query(1, fmt="markdown")
    assert "independence approximation" in text
    payload = json.loads(model_query(1, fmt="json"))
    assert payload["asymptotic_ratio"] is None
    assert "note" in payload


def test_model_query_small_table_values():
    text = model_query(100, fmt="csv")
    for k, p in [(1, "0.002386"), (2, "0.690504"), (3, "0.284479"),
                 (4, "0.021201"), (5, "0.001340"), (6, "0.000084")]:
        assert f"{k},{p}" in text


def test_model_query_unknown_format():
    with pytest.raises(FormatError):
        model_query(100, fmt="xml")


def test_render_report_formats():
    report = run_experiment(ExperimentConfig(sizes=(100,), trials=2, master_seed=1))
    md = render_report(report, "markdown")
    assert "| Path Length | Theoretical Prob. | Experimental Prob. | Difference |" in md
    csv_text = render_report(report, "csv")
    assert DISTRIBUTION_CSV_HEADER in csv_text
    parsed = json.loads(render_report(report, "json"))
    assert parsed["results"][0]["size"] == 100


def test_reproduce_tables_writes_six_files(tmp_path):
    paths = reproduce_tables(tmp_path / "tables", trials=2)
    assert len(paths) == 6
    names = sorted(p.name for p in paths)
    assert names == [
        "table1_path_lengths_100.csv",
        "table2_path_lengths_1000.csv",
        "table3_path_lengths_10000.csv",
        "table4_path_lengths_100000.csv",
        "table5_average_path_lengths.csv",
        "table6_chi_square.csv",
    ]
    table1 = (tmp_path / "tables" / "table1_path_lengths_100.csv").read_text()
    assert table1.splitlines()[0] == DISTRIBUTION_CSV_HEADER
    assert table1.splitlines()[1].startswith("1,0.002386,")


def test_reproduce_tables_deterministic(tmp_path):
    a_paths = reproduce_tables(tmp_path / "a", trials=2)
    b_paths = reproduce_tables(tmp_path / "b", trials=2)
    for a, b in zip(a_paths, b_paths):
        assert a.read_bytes() == b.read_bytes()


def test_cli_model_markdown():
    result = CliRunner().invoke(cli, ["model", "--n", "100"])
    assert result.exit_code == 0
    assert "0.690504" in result.output


def test_cli_model_json():
    result = CliRunner().invoke(cli, ["model", "--n", "100", "--format", "json"])
    payload = json.loads(result.output)
    assert payload["mode"] == 2


def test_cli_usage_error_exit_code():
    assert main(["model"]) == 1  # missing --n
    assert main(["model", "--n", "0"]) == 1
    assert main(["nonsense"]) == 1


def test_cli_config_error_exit_code(capsys):
    assert main(["simulate", "--sizes", "1", "--trials", "1"]) == 1
    capsys.readouterr()


def test_cli_bad_sizes_string():
    assert main(["simulate", "--sizes", "abc"]) == 1


def test_cli_simulate_json(tmp_path):
    out = tmp_path / "report.json"
    code = main([
        "simulate", "--sizes", "100", "--trials", "2", "--seed", "7",
        "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["config"]["master_seed"] == 7
    assert payload["results"][0]["histogram"]


def test_cli_validate_markdown():
    result = CliRunner().invoke(
        cli, ["validate", "--sizes", "100", "--trials", "2", "--seed", "3"]
    )
    assert result.exit_code == 0
    assert "Chi-square" in result.output


def test_cli_seed_from_environment():
    runner = CliRunner()
    r1 = runner.invoke(
        cli, ["simulate", "--sizes", "100", "--trials", "1", "--format", "json"],
        env={"PATHLAB_SEED": "31337"},
    )
    assert r1.exit_code == 0
    assert json.loads(r1.output)["config"]["master_seed"] == 31337


def test_cli_tables(tmp_path):
    out_dir = tmp_path / "t"
    code = main(["tables", "--out", str(out_dir), "--trials", "2"])
    assert code == 0
    assert len(list(out_dir.glob("*.csv"))) == 6


def test_cli_large_size_warns():
    result = CliRunner().invoke(
        cli,
        ["simulate", "--sizes", "100", "--trials", "1"],
    )
    assert "warning" not in result.output
