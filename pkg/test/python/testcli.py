"""
Command line tests
"""

import io

import pytest
import yaml

from evostab.cli import EXIT_IO, EXIT_OK, EXIT_VALIDATION, dispatch


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "matrix.csv"
    path.write_text("sunny,rainy\n0.9,0.1\n0.2,0.8\n")
    return str(path)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "small.yaml"
    path.write_text(yaml.safe_dump({"base_population": 30, "size_min": 5, "size_max": 120, "generations": 12, "runs": 3, "window": 5, "request": [15, 40, 72]}))
    return str(path)


def invoke(*argv):
    out = io.StringIO()
    status = dispatch(list(argv), out)
    return status, out.getvalue()


def test_markov_invariant(matrix_file):
    status, output = invoke("markov", "--matrix", matrix_file, "--invariant")
    assert status == EXIT_OK
    assert output.strip() == "(0.6667, 0.3333)"


def test_markov_classify_and_steps(matrix_file):
    status, output = invoke("markov", "--matrix", matrix_file, "--classify", "--steps", "2")
    assert status == EXIT_OK
    lines = output.strip().splitlines()
    assert lines[0] == "irreducible=True aperiodic=True periods=[1, 1]"
    assert lines[1:] == ["0.83,0.17", "0.34,0.66"]


def test_markov_limit(matrix_file):
    status, output = invoke("markov", "--matrix", matrix_file, "--limit")
    assert status == EXIT_OK
    assert output.strip() == "(0.6667, 0.3333) converged=True"


def test_markov_invalid_matrix(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n0.5,0.4\n0.2,0.8\n")
    assert invoke("markov", "--matrix", str(path), "--invariant")[0] == EXIT_VALIDATION


def test_markov_missing_file(tmp_path):
    assert invoke("markov", "--matrix", str(tmp_path / "missing.csv"), "--invariant")[0] == EXIT_IO


def test_bad_rate():
    assert invoke("run", "--mutation", "1.5", "--generations", "2")[0] == EXIT_VALIDATION


def test_unknown_flag():
    assert invoke("run", "--mutations", "0.1")[0] == EXIT_VALIDATION
    assert invoke("frobnicate")[0] == EXIT_VALIDATION


def test_run_reproducible(tmp_path, config_file):
    outputs = []
    for root in ("a", "b"):
        status, output = invoke("run", "--config", config_file, "--seed", "7", "--checkpoints", "12", "--out-dir", str(tmp_path / root), "--name", "run")
        assert status == EXIT_OK
        outputs.append(output)
    assert outputs[0] == outputs[1]
    for name in ("config.yaml", "fitness.csv", "population_12.txt"):
        assert (tmp_path / "a" / "run" / name).read_bytes() == (tmp_path / "b" / "run" / name).read_bytes()


def test_config_echo_reloads(tmp_path, config_file):
    invoke("run", "--config", config_file, "--seed", "7", "--out-dir", str(tmp_path / "a"), "--name", "run")
    echo = str(tmp_path / "a" / "run" / "config.yaml")
    assert invoke("run", "--config", echo, "--out-dir", str(tmp_path / "b"), "--name", "run")[0] == EXIT_OK
    assert (tmp_path / "a" / "run" / "fitness.csv").read_bytes() == (tmp_path / "b" / "run" / "fitness.csv").read_bytes()


def test_ensemble(tmp_path, config_file):
    status, output = invoke("ensemble", "--config", config_file, "--seed", "3", "--out-dir", str(tmp_path), "--name", "ensemble")
    assert status == EXIT_OK
    assert output.startswith("p_max=")
    assert (tmp_path / "ensemble" / "macrostates.csv").exists()


def test_sweep(tmp_path, config_file):
    status, output = invoke(
        "sweep", "--config", config_file, "--seed", "3", "--mutation-grid", "0,1", "--crossover-grid", "0:1:0.5", "--out-dir", str(tmp_path), "--name", "sweep"
    )
    assert status == EXIT_OK
    rows = [line.split(",") for line in output.strip().splitlines()]
    assert len(rows) == 2
    assert all(len(row) == 3 for row in rows)
    assert all(0.0 <= float(value) <= 1.0 for row in rows for value in row)


def test_sweep_bad_grid(tmp_path, config_file):
    assert invoke("sweep", "--config", config_file, "--mutation-grid", "0,2", "--out-dir", str(tmp_path))[0] == EXIT_VALIDATION


def test_visualize(tmp_path, config_file):
    status, output = invoke("visualize", "--config", config_file, "--seed", "5", "--cell", "2", "--out-dir", str(tmp_path), "--name", "picture")
    assert status == EXIT_OK
    assert output.strip().endswith("population_12.ppm")
    with open(output.strip(), "rb") as f:
        assert f.read(2) == b"P6"


def test_visualize_snapshot_uses_run_request(tmp_path):
    drawn = tmp_path / "drawn.yaml"
    drawn.write_text(yaml.safe_dump({"base_population": 30, "size_min": 5, "size_max": 120, "generations": 12}))
    assert invoke("run", "--config", str(drawn), "--seed", "7", "--checkpoints", "12", "--out-dir", str(tmp_path), "--name", "run")[0] == EXIT_OK

    snapshot = str(tmp_path / "run" / "population_12.txt")
    status, output = invoke("visualize", "--snapshot", snapshot, "--out-dir", str(tmp_path), "--name", "picture")
    assert status == EXIT_OK
    assert output.strip().endswith("population_12.ppm")

    run_echo = yaml.safe_load((tmp_path / "run" / "config.yaml").read_text())
    picture_echo = yaml.safe_load((tmp_path / "picture" / "config.yaml").read_text())
    assert picture_echo["request"] == run_echo["request"]


def test_visualize_snapshot_needs_request(tmp_path, config_file):
    assert invoke("run", "--config", config_file, "--seed", "7", "--checkpoints", "12", "--out-dir", str(tmp_path), "--name", "run")[0] == EXIT_OK
    text = (tmp_path / "run" / "population_12.txt").read_text()

    # No echo next to the snapshot
    orphan = tmp_path / "orphan"
    orphan.mkdir()
    (orphan / "population_12.txt").write_text(text)
    assert invoke("visualize", "--snapshot", str(orphan / "population_12.txt"), "--out-dir", str(tmp_path))[0] == EXIT_VALIDATION

    # Echo of a different experiment
    stale = tmp_path / "stale"
    stale.mkdir()
    (stale / "population_12.txt").write_text(text)
    (stale / "config.yaml").write_text(yaml.safe_dump({"request": [1, 2, 3], "master_seed": 1}))
    assert invoke("visualize", "--snapshot", str(stale / "population_12.txt"), "--out-dir", str(tmp_path))[0] == EXIT_VALIDATION

    # An explicit request needs no echo
    assert invoke("visualize", "--config", config_file, "--snapshot", str(orphan / "population_12.txt"), "--out-dir", str(tmp_path))[0] == EXIT_OK
