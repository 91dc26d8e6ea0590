import io
import json
import math

import numpy as np
import pytest

from helpers import L22
from sparse_logdet.cli import main
from sparse_logdet.mmio import read_matrix_market


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_generate_grid():
    code, out, _ = run("generate", "--grid", "2", "2")
    assert code == 0
    np.testing.assert_array_equal(read_matrix_market(io.StringIO(out)).to_dense(), L22)


def test_generate_path():
    code, out, _ = run("generate", "--grid", "2", "1")
    assert code == 0
    np.testing.assert_array_equal(read_matrix_market(io.StringIO(out)).to_dense(), [[2, -1], [-1, 2]])


def test_generate_to_file(tmp_path):
    path = tmp_path / "r.mtx"
    assert run("generate", "--random", "30", "2", "5", "--output", str(path))[0] == 0
    with open(path, "rb") as fh:
        assert read_matrix_market(fh).n == 30


def test_generate_invalid_grid():
    code, _, err = run("generate", "--grid", "1", "2")
    assert code == 2
    assert "N >= 2" in err


def test_missing_subcommand():
    assert run()[0] == 2


def test_estimate_micro_json():
    code, out, _ = run("estimate", "--grid", "2", "2", "-m", "2", "--oracle", "auto",
                       "--format", "json", "--workers", "1")
    assert code == 0
    data = json.loads(out)
    assert data["exact_source"] == "oracle"
    assert data["records"][1]["rel_err_D"] < 1e-10
    assert data["records"][0]["D"] == pytest.approx(math.log(196.875), rel=1e-12)


def test_estimate_reference():
    code, out, _ = run("estimate", "--grid", "3", "2", "-m", "2", "--reference", "10.0",
                       "--format", "json", "--workers", "1")
    data = json.loads(out)
    assert data["exact"] == 10.0 and data["exact_source"] == "reference"
    rec = data["records"][0]
    assert rec["rel_err_D"] == pytest.approx(abs(rec["D"] - 10.0) / 10.0)


def test_estimate_oracle_off():
    code, out, _ = run("estimate", "--grid", "3", "2", "--oracle", "off", "--workers", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "j,density,D,S,rel_err_D,rel_err_S"
    assert len(lines) == 5
    assert lines[1].endswith(",,,")


def test_estimate_force_uses_sparse_above_limit():
    code, out, _ = run("estimate", "--grid", "4", "2", "-m", "2", "--oracle", "force",
                       "--dense-limit", "4", "--format", "json", "--workers", "1")
    assert code == 0
    assert json.loads(out)["exact_source"] == "oracle"


def test_estimate_auto_skips_above_limit():
    code, out, _ = run("estimate", "--grid", "4", "2", "--dense-limit", "4",
                       "--format", "json", "--workers", "1")
    assert json.loads(out)["exact"] is None


def test_estimate_identical_output(tmp_path):
    args = ("estimate", "--random", "200", "3", "4", "-m", "3", "--format", "json")
    a = run(*args, "--workers", "1")[1]
    b = run(*args, "--workers", "1")[1]
    c = run(*args, "--workers", "2")[1]
    assert a == b == c


def test_estimate_timings():
    code, out, _ = run("estimate", "--grid", "3", "2", "--timings", "--format", "json", "--workers", "1")
    data = json.loads(out)
    assert set(data["timings"]) == {"load", "estimate", "spline", "oracle"}
    assert data["peak_memory_kb"] > 0


def test_workers_from_environment(monkeypatch):
    monkeypatch.setenv("LOGDET_WORKERS", "2")
    code, out, _ = run("estimate", "--grid", "6", "2", "--format", "json")
    assert code == 0


def test_estimate_input_file(tmp_path):
    path = tmp_path / "g.mtx"
    run("generate", "--grid", "2", "2", "--output", str(path))
    code, out, _ = run("estimate", "--input", str(path), "-m", "1", "--format", "json", "--workers", "1")
    data = json.loads(out)
    assert data["matrix"]["name"] == "g.mtx"
    assert data["notes"] == ["m = 1: no spline extrapolation"]


def test_estimate_not_positive_definite(tmp_path):
    path = tmp_path / "bad.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 1\n2 1 2\n2 2 1\n")
    code, _, err = run("estimate", "--input", str(path), "--workers", "1")
    assert code == 4
    assert "row 1" in err


def test_input_errors(tmp_path):
    path = tmp_path / "bad.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 x 4.0\n")
    assert run("estimate", "--input", str(path))[0] == 3
    assert run("estimate", "--input", str(tmp_path / "missing.mtx"))[0] == 3


def test_usage_errors():
    assert run("estimate", "--grid", "2", "2", "-m", "0")[0] == 2
    assert run("estimate", "--grid", "2", "2", "--workers", "0")[0] == 2
    assert run("estimate", "--grid", "2", "2", "--variant", "nope")[0] == 2
    assert run("estimate", "--grid", "2", "2", "--random", "3", "1", "1")[0] == 2


def test_exact(tmp_path):
    path = tmp_path / "eye.mtx"
    path.write_text("%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 1\n2 2 1\n3 3 1\n")
    code, out, _ = run("exact", "--input", str(path))
    assert code == 0 and float(out) == 0.0
    code, out, _ = run("exact", "--grid", "2", "2")
    assert float(out) == pytest.approx(5.25750, abs=5e-6)
    code, out, _ = run("exact", "--grid", "2", "2", "--sparse")
    assert float(out) == pytest.approx(math.log(192), rel=1e-12)


def test_exact_too_large():
    code, _, err = run("exact", "--grid", "10", "2", "--dense-limit", "50")
    assert code == 5
    assert "limit" in err


def test_bench_micro():
    code, out, _ = run("bench", "micro", "--workers", "1")
    assert code == 0
    assert out.splitlines()[0] == "# L(2,2)"
    assert out.splitlines()[1] == "j,density,D,S,rel_err_D,rel_err_S"


def test_bench_fig2_mini():
    code, out, _ = run("bench", "fig2-mini", "--workers", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# L(10,3)"
    assert len(lines) == 2 + 6


def test_bench_unknown():
    code, _, err = run("bench", "nope")
    assert code == 2
    assert "unknown suite" in err
