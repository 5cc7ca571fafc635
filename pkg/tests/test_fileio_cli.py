import json

import numpy as np
import pytest

from polysum import cli
from polysum.fileio import (
    format_number,
    load_coefficients,
    load_polytope,
    pieces_as_dict,
    save_coefficients,
    save_polytope,
    write_csv,
)
from polysum.geometry import gauge, hypercube, triangulate
from polysum.generators import random_trig_polynomial


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path / "square.json"
    save_polytope(hypercube(2), path)
    return path


@pytest.fixture
def coeff_file(tmp_path):
    path = tmp_path / "coeffs.json"
    save_coefficients(random_trig_polynomial(2, 3, 0.7, seed=3), path)
    return path


# ---------------------------------------------------------------------------
# file formats


def test_polytope_roundtrip(tmp_path, square_file):
    P = load_polytope(square_file)
    assert P.dim == 2 and P.m == 4
    rng = np.random.default_rng(0)
    X = rng.uniform(-2, 2, size=(100, 2))
    assert np.allclose(gauge(P, X), np.max(np.abs(X), axis=1))


def test_polytope_accepts_unnormalized_h_rows(tmp_path):
    path = tmp_path / "p.json"
    data = {"dim": 2, "H": {"A": [[2, 0], [-2, 0], [0, 2], [0, -2]], "b": [4, 4, 4, 4]}}
    path.write_text(json.dumps(data))
    P = load_polytope(path)
    assert np.all(P.b == 1.0)
    assert gauge(P, [2.0, 0.0]) == pytest.approx(1.0)


def test_polytope_v_form(tmp_path):
    path = tmp_path / "v.json"
    data = {"dim": 2, "V": {"vertices": [[1, 0], [-1, 0], [0, 1], [0, -1]]}}
    path.write_text(json.dumps(data))
    P = load_polytope(path)
    assert gauge(P, [1.0, 2.0]) == pytest.approx(3.0)


def test_polytope_malformed_raises(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        load_polytope(bad)
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"dim": 2}))
    with pytest.raises(ValueError):
        load_polytope(empty)
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"dim": 2, "H": {"A": [[1, 0]]}}))
    with pytest.raises(ValueError):
        load_polytope(missing)


def test_coefficient_roundtrip(tmp_path, coeff_file):
    f = random_trig_polynomial(2, 3, 0.7, seed=3)
    g = load_coefficients(coeff_file)
    assert g.coeff_dict() == f.coeff_dict()


def test_pieces_as_dict_structure():
    P = hypercube(2)
    payload = pieces_as_dict(P, triangulate(P))
    assert payload["dim"] == 2
    assert len(payload["pieces"]) == 4
    first = payload["pieces"][0]
    assert set(first) == {"facet_index", "a", "b", "generators", "cone_rows"}
    assert len(first["generators"]) == 2


def test_write_csv_and_format(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(path, ["hello"], ["a", "b"], [[1, 0.5], [2, 0.25]])
    text = path.read_text()
    assert text == "# hello\na,b\n1,0.5\n2,0.25\n"
    assert format_number(np.float64(0.1)) == "0.1"
    assert format_number(np.int64(3)) == "3"
    assert format_number(True) == "True"


# ---------------------------------------------------------------------------
# CLI


def test_cli_triangulate(square_file, tmp_path, capsys):
    out = tmp_path / "fan.json"
    assert cli.main(["triangulate", str(square_file), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["pieces"]) == 4
    assert cli.main(["triangulate", str(square_file)]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 2


def test_cli_partial_sum_deterministic(square_file, coeff_file, tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["partial-sum", "--polytope", str(square_file), "--coeffs", str(coeff_file),
            "--lam", "2.0", "--out"]
    assert cli.main(args + [str(out1)]) == 0
    assert cli.main(args + [str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0].startswith("# config")
    assert lines[1] == "j1,j2,re,im"
    assert len(lines) == 2 + 7 * 7  # resolution defaults to 2B+1 = 7


def test_cli_variation_field(square_file, coeff_file, tmp_path):
    out = tmp_path / "field.csv"
    assert cli.main([
        "variation-field", "--polytope", str(square_file), "--coeffs", str(coeff_file),
        "--r", "3.0", "--out", str(out),
    ]) == 0
    rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert rows[0] == "j1,j2,value"
    vals = np.array([float(r.split(",")[-1]) for r in rows[1:]])
    assert np.all(vals >= 0.0)


def test_cli_variation_field_norm_summary(square_file, coeff_file, tmp_path):
    out = tmp_path / "field.csv"
    norms = tmp_path / "norms.csv"
    assert cli.main([
        "variation-field", "--polytope", str(square_file), "--coeffs", str(coeff_file),
        "--r", "3.0", "--p", "2.0", "--out", str(out), "--norms-out", str(norms),
    ]) == 0
    rows = [ln.split(",") for ln in norms.read_text().splitlines() if not ln.startswith("#")]
    assert rows[0] == ["quantity", "p", "r", "value"]
    table = {r[0]: float(r[3]) for r in rows[1:]}
    assert table["field_weak_lp"] <= table["field_lp"] + 1e-12
    assert table["ratio"] == pytest.approx(table["field_lp"] / table["f_lp"])


def test_cli_missing_required_option_is_clean_error(capsys):
    assert cli.main(["partial-sum", "--lam", "1.0"]) == 2
    assert "missing required option" in capsys.readouterr().err


def test_cli_verify_pass_and_report(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    assert cli.main(["verify", "--seed", "42", "--out", str(out)]) == 0
    text = out.read_text()
    assert "suite,check,passed,detail" in text
    assert "False" not in text.split("\n", 3)[3]
    stdout = capsys.readouterr().out
    assert "checks passed" in stdout


def test_cli_verify_corrupt_polytope_no_partial_csv(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    out = tmp_path / "verify.csv"
    status = cli.main(["verify", "--polytope", str(bad), "--out", str(out)])
    assert status != 0
    assert not out.exists()


def test_cli_verify_byte_identical_reports(tmp_path):
    out1, out2 = tmp_path / "v1.csv", tmp_path / "v2.csv"
    assert cli.main(["verify", "--seed", "7", "--out", str(out1)]) == 0
    assert cli.main(["verify", "--seed", "7", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_ratio_with_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bandwidths": [2, 3], "ensemble": 2, "seed": 11, "r": 3.0}))
    out = tmp_path / "ratio.csv"
    assert cli.main(["ratio", "--config", str(cfg), "--ensemble", "3",
                     "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    header = [ln for ln in lines if not ln.startswith("#")][0]
    assert header.startswith("member,bandwidth,r,p,")
    data = [ln.split(",") for ln in lines if not ln.startswith("#")][1:]
    assert len(data) == 6  # flag override: 3 members per bandwidth
    keys = [(int(row[1]), int(row[0])) for row in data]
    assert keys == sorted(keys)
    ratios = [float(row[6]) for row in data]
    assert all(np.isfinite(ratios))
    assert "median ratio" in capsys.readouterr().out


def test_cli_ratio_rejects_bad_exponents(tmp_path):
    assert cli.main(["ratio", "--r", "2.0", "--bandwidths", "2",
                     "--ensemble", "1", "--out", str(tmp_path / "x.csv")]) == 2


def test_cli_converge(tmp_path):
    out = tmp_path / "conv.csv"
    assert cli.main(["converge", "--bandwidth", "4", "--out", str(out)]) == 0
    rows = [ln.split(",") for ln in out.read_text().splitlines() if not ln.startswith("#")][1:]
    errs = [float(r[2]) for r in rows]
    mins = [float(r[3]) for r in rows]
    tails = [float(r[4]) for r in rows]
    assert errs[-1] == 0.0
    assert all(b <= a for a, b in zip(mins, mins[1:]))
    assert all(e <= t + 1e-10 for e, t in zip(errs, tails))


def test_cli_missing_subcommand_errors():
    with pytest.raises(SystemExit):
        cli.main([])


def test_verify_csv_identical_across_blas_thread_counts(tmp_path):
    import os
    import subprocess
    import sys

    outs = []
    for threads in ("1", "4"):
        out = tmp_path / f"v{threads}.csv"
        env = dict(os.environ, OMP_NUM_THREADS=threads, OPENBLAS_NUM_THREADS=threads)
        subprocess.run(
            [sys.executable, "-m", "polysum.cli", "verify", "--seed", "3",
             "--out", str(out)],
            check=True, env=env, capture_output=True,
        )
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
