"""Command line behaviors: happy paths, exit codes, emitted files."""

import json

import pytest

import polywalk.cli as cli_mod
from polywalk.cli import main
from polywalk.errors import RetriesExhausted
from polywalk.instances import gen_hypercube, write_instance
from polywalk.shadow import ShadowPath


@pytest.fixture
def cube_file(tmp_path):
    path = tmp_path / "cube3.json"
    write_instance(gen_hypercube(3), path)
    return path


def test_generate_then_path(tmp_path, capsys):
    inst_file = tmp_path / "inst.json"
    assert main(["generate", "--family", "hypercube", "--n", "3",
                 "--out", str(inst_file)]) == 0
    assert inst_file.exists()
    capsys.readouterr()

    assert main(["path", "--instance", str(inst_file), "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "status=Completed" in out
    assert "length=3" in out
    assert "slopes=" in out


def test_path_explicit_endpoints(cube_file, capsys):
    code = main(["path", "--instance", str(cube_file),
                 "--x1", "1,1,1", "--x2", "0,0,0", "--seed", "5"])
    assert code == 0
    assert "length=3" in capsys.readouterr().out


def test_path_json_deterministic(cube_file, tmp_path, capsys):
    out1 = tmp_path / "p1.json"
    out2 = tmp_path / "p2.json"
    for out in (out1, out2):
        assert main(["path", "--instance", str(cube_file), "--seed", "7",
                     "--json", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    record = json.loads(out1.read_text())
    assert record["status"] == "Completed" and len(record["vertices"]) == 4
    capsys.readouterr()


def test_path_bad_coordinates(cube_file, capsys):
    assert main(["path", "--instance", str(cube_file),
                 "--x1", "zero,0,0", "--x2", "1,1,1", "--seed", "0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_missing_instance_file(tmp_path, capsys):
    assert main(["delta", "--instance", str(tmp_path / "nope.json")]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_instance_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["path", "--instance", str(bad), "--seed", "0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_delta_output(cube_file, capsys):
    assert main(["delta", "--instance", str(cube_file)]) == 0
    out = capsys.readouterr().out
    assert "delta=1.0" in out
    assert "method=enumeration" in out
    assert "bases_checked=8" in out


def test_delta_cap_exit_code(tmp_path, capsys):
    big = tmp_path / "big.json"
    write_instance(gen_hypercube(30), big)
    assert main(["delta", "--instance", str(big)]) == 3
    assert "error:" in capsys.readouterr().err


def test_bound_check_cube(cube_file, capsys):
    assert main(["bound-check", "--instance", str(cube_file)]) == 0
    out = capsys.readouterr().out
    assert "Delta=1" in out
    assert "bound_on_inv_delta=3" in out
    assert "certificate=holds" in out


def test_bound_check_skips_non_integral(tmp_path, capsys):
    inst_file = tmp_path / "sphere.json"
    assert main(["generate", "--family", "random-sphere", "--n", "3",
                 "--seed", "1", "--out", str(inst_file)]) == 0
    capsys.readouterr()
    assert main(["bound-check", "--instance", str(inst_file)]) == 0
    assert "certificate=skipped" in capsys.readouterr().out


def test_bound_check_violated_exit(cube_file, capsys, monkeypatch):
    monkeypatch.setattr(cli_mod, "certify_delta_Delta",
                        lambda inst: (False, -1.0))
    assert main(["bound-check", "--instance", str(cube_file)]) == 2
    assert "certificate=violated" in capsys.readouterr().out


def test_path_retries_exhausted_exit(cube_file, tmp_path, capsys, monkeypatch):
    failed = ShadowPath(vertices=(), slopes=(), projections=(),
                        pivot_trace=(), status="Failed(VerticalEdge)",
                        seed=0, retries=16)

    def exhausted(inst, x1, x2, seed):
        raise RetriesExhausted("forced", ["VerticalEdge"] * 16, path=failed)

    monkeypatch.setattr(cli_mod, "find_path", exhausted)
    out_json = tmp_path / "failed.json"
    code = main(["path", "--instance", str(cube_file), "--seed", "0",
                 "--json", str(out_json)])
    assert code == 2
    assert "status=Failed(VerticalEdge)" in capsys.readouterr().out
    assert json.loads(out_json.read_text())["status"] == "Failed(VerticalEdge)"


def test_experiment_writes_reports(cube_file, tmp_path, capsys):
    out_dir = tmp_path / "exp"
    code = main(["experiment", "--instance", str(cube_file),
                 "--trials", "20", "--seed", "0", "--out", str(out_dir)])
    assert code == 0
    out = capsys.readouterr().out
    assert "trials=20" in out and "mean_length=3.0" in out
    csv_text = (out_dir / "report.csv").read_text()
    assert csv_text.startswith(
        "instance_id,m,n,delta,trials,mean,stderr,bound,ratio,bfs_lower")
    record = json.loads((out_dir / "report.json").read_text())
    assert record["bfs_lower"] == 3
    assert record["bound_8mn2_over_delta2"] == 432.0


def test_experiment_requires_endpoints(tmp_path, capsys):
    from polywalk.polytope import build_instance

    inst = build_instance([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
                          [1.0, 1.0, 0.0, 0.0], name="square")
    path = tmp_path / "square.json"
    write_instance(inst, path)
    code = main(["experiment", "--instance", str(path),
                 "--trials", "5", "--seed", "0", "--out", str(tmp_path / "out")])
    assert code == 1
    assert "endpoints" in capsys.readouterr().err


def test_experiment_deterministic_outputs(cube_file, tmp_path, capsys):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    for d in (d1, d2):
        assert main(["experiment", "--instance", str(cube_file),
                     "--trials", "15", "--seed", "3", "--out", str(d)]) == 0
    assert (d1 / "report.csv").read_bytes() == (d2 / "report.csv").read_bytes()
    assert (d1 / "report.json").read_bytes() == (d2 / "report.json").read_bytes()
    capsys.readouterr()
