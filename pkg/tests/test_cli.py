import json

import pytest
from click.testing import CliRunner

from sl2h.cli import main
from sl2h.experiments import ExperimentConfig, run_testmap_experiment

HYP = [[[2.0, 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [0.5, 0, 0, 0]]]


@pytest.fixture()
def runner():
    return CliRunner()


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def test_det_from_file(runner, tmp_path):
    path = write_json(tmp_path / "m.json", HYP)
    result = runner.invoke(main, ["det", "--input", path])
    assert result.exit_code == 0
    assert json.loads(result.output)["det"] == 1.0


def test_det_from_stdin(runner):
    result = runner.invoke(main, ["det"], input=json.dumps(HYP))
    assert result.exit_code == 0
    assert json.loads(result.output)["det"] == 1.0


def test_det_wrapped_matrix_object(runner, tmp_path):
    path = write_json(tmp_path / "m.json", {"matrix": HYP})
    result = runner.invoke(main, ["det", "--input", path])
    assert result.exit_code == 0


def test_missing_file_is_usage_error(runner):
    result = runner.invoke(main, ["det", "--input", "/nonexistent/m.json"])
    assert result.exit_code == 2


def test_invalid_json_is_usage_error(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    result = runner.invoke(main, ["det", "--input", str(path)])
    assert result.exit_code == 2
    assert "invalid JSON" in result.output


def test_inverse_round_trip(runner, tmp_path):
    path = write_json(tmp_path / "m.json", HYP)
    result = runner.invoke(main, ["inverse", "--input", path, "--tol", "1e-9"])
    assert result.exit_code == 0
    inv = json.loads(result.output)["matrix"]
    assert inv[0][0][0] == pytest.approx(0.5)
    assert inv[1][1][0] == pytest.approx(2.0)


def test_classify_output(runner, tmp_path):
    path = write_json(tmp_path / "m.json", HYP)
    result = runner.invoke(main, ["classify", "--input", path])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["kind"] == "hyperbolic"
    assert body["lambda"] == [2.0, 0.0]


def test_classify_domain_error_exits_2(runner, tmp_path):
    bad = [[[2.0, 0, 0, 0], [0, 0, 0, 0]], [[0, 0, 0, 0], [2.0, 0, 0, 0]]]
    path = write_json(tmp_path / "m.json", bad)
    result = runner.invoke(main, ["classify", "--input", path])
    assert result.exit_code == 2
    assert "not SL-normalized" in result.output


def test_fixedpoints_to_output_file(runner, tmp_path):
    path = write_json(tmp_path / "m.json", HYP)
    out = tmp_path / "points.json"
    result = runner.invoke(main, ["fixedpoints", "--input", path,
                                  "--output", str(out)])
    assert result.exit_code == 0
    points = json.loads(out.read_text())["points"]
    assert len(points) == 2


def test_jorgensen_assert_exit_codes(runner, tmp_path):
    payload = {"test": "shimizu_translation",
               "S": [[[1, 0, 0, 0], [0, 0, 0, 0]],
                     [[0.25, 0, 0, 0], [1, 0, 0, 0]]],
               "mu": [2, 0, 0, 0]}
    path = write_json(tmp_path / "j.json", payload)
    plain = runner.invoke(main, ["jorgensen", "--input", path])
    assert plain.exit_code == 0
    assert json.loads(plain.output)["verdict"] == "violated"
    checked = runner.invoke(main, ["jorgensen", "--input", path, "--assert"])
    assert checked.exit_code == 1


def test_testmap_assert_passes_when_admissible(runner, tmp_path):
    par = [[[1, 0, 0, 0], [0.5, 0, 0, 0]], [[0, 0, 0, 0], [1, 0, 0, 0]]]
    path = write_json(tmp_path / "m.json", par)
    result = runner.invoke(main, ["testmap", "--input", path, "--assert"])
    assert result.exit_code == 0
    assert json.loads(result.output)["verdict"] == "satisfied"


def test_experiment_writes_jsonl(runner, tmp_path):
    config = {"trials": 1, "sequence_length": 8}
    path = write_json(tmp_path / "config.json", config)
    out = tmp_path / "records.jsonl"
    result = runner.invoke(main, ["experiment", "--mode", "thm1_elliptic",
                                  "--input", path, "--seed", "7",
                                  "--output", str(out)])
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 9
    for line in lines:
        record = json.loads(line)
        assert set(record) == {"trial", "n", "matrix", "monitored",
                               "certificate"}
    summary = json.loads(result.output)
    assert summary["mode"] == "thm1_elliptic"
    assert summary["trials"][0]["violation_index"] is not None


def test_experiment_bytes_match_core(runner, tmp_path):
    config = {"trials": 1, "sequence_length": 8}
    path = write_json(tmp_path / "config.json", config)
    out = tmp_path / "records.jsonl"
    result = runner.invoke(main, ["experiment", "--mode", "thm1_elliptic",
                                  "--input", path, "--seed", "7",
                                  "--output", str(out)])
    assert result.exit_code == 0
    report = run_testmap_experiment(
        ExperimentConfig(seed=7, trials=1, sequence_length=8),
        "thm1_elliptic")
    expected = "".join(line + "\n" for line in report.jsonl_lines())
    assert out.read_text() == expected


def test_experiment_stdout_lines(runner, tmp_path):
    path = write_json(tmp_path / "config.json",
                      {"trials": 1, "sequence_length": 4})
    result = runner.invoke(main, ["experiment", "--mode", "thm1_parabolic",
                                  "--input", path, "--seed", "2"])
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.strip()]
    assert len(lines) == 5
    assert all(json.loads(l)["trial"] == 0 for l in lines)


def test_experiment_assert_flags_violations(runner, tmp_path):
    path = write_json(tmp_path / "config.json",
                      {"trials": 1, "sequence_length": 8})
    result = runner.invoke(main, ["experiment", "--mode", "thm1_elliptic",
                                  "--input", path, "--seed", "7", "--assert"])
    assert result.exit_code == 1


def test_experiment_unknown_mode_is_usage_error(runner):
    result = runner.invoke(main, ["experiment", "--mode", "thm9_spiral"])
    assert result.exit_code == 2


def test_help_lists_subcommands(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for name in ("det", "inverse", "classify", "fixedpoints", "jorgensen",
                 "testmap", "experiment", "serve"):
        assert name in result.output
