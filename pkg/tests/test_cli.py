import json

import pytest

from approxlab.cli import RunConfig, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_norm_example(capsys):
    code, out, _ = run(capsys, "norm", "--fn", "cosx", "--p", "2")
    assert code == 0 and abs(float(out.split("=")[1]) - 0.70710678) < 1e-6


def test_modulus_example(capsys):
    code, out, _ = run(capsys, "modulus", "omega", "--fn", "const", "--k", "2", "--t", "0.5")
    assert code == 0 and float(out.split("=")[1]) == 0


def test_alpha_above_r_rejected(capsys):
    code, _, err = run(capsys, "holder-norm", "--fn", "cosx", "--r", "1", "--alpha", "1.5")
    assert code == 2 and "alpha <= r" in err


@pytest.mark.parametrize("argv,needle", [
    (["norm", "--fn", "cosx", "--p", "-1"], "p must be positive"),
    (["norm", "--fn", "nosuch"], "unknown function"),
    (["best-approx", "--fn", "cosx", "--p", "0.5", "--budget", "0"], "budget"),
    (["best-approx", "--fn", "cosx", "--n", "8", "--grid-size", "10"], "grid size"),
    (["means", "--fn", "cosx", "--kernel", "jackson"], "unknown kernel"),
])
def test_invalid_configs(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2 and needle in err


def test_config_file_overridden_by_flags(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"fn": "cosx", "p": "inf", "n": 3}))
    code, out, _ = run(capsys, "norm", "--config", str(cfg))
    assert code == 0 and float(out.split("=")[1]) == pytest.approx(1.0)
    code, out, _ = run(capsys, "norm", "--config", str(cfg), "--p", "2")
    assert float(out.split("=")[1]) == pytest.approx(2 ** -0.5)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "norm", "--config", str(bad))[0] == 2


def test_best_approx_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "best-approx", "--fn", "triangle", "--p", "1", "--n", "4", "--out", str(tmp_path),
                       "--format", "json")
    assert code == 0
    rep = json.loads((tmp_path / "best-approx.json").read_text())
    assert rep["rows"][0]["quantity"] == "E_n(upper)"
    assert len(rep["parameters"]["poly"]["re"]) == 9


def test_means_below_one(capsys):
    code, out, _ = run(capsys, "means", "--fn", "triangle", "--p", "0.5", "--n", "4", "--kernel", "vp",
                       "--lam-points", "8")
    assert code == 0 and "holder_error_pbar" in out


def test_verify_csv_is_byte_identical(tmp_path, capsys):
    args = ["verify", "stechkin", "--p", "1", "--ns", "8,16", "--trials", "3", "--format", "csv"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert (a / "stechkin.csv").read_bytes() == (b / "stechkin.csv").read_bytes()


def test_help_lists_suites():
    text = build_parser().format_help()
    for suite in ("jackson", "stechkin", "direct-inverse", "sandwich", "counterexample", "strong-converse",
                  "pr2", "integral-condition", "modulus-properties"):
        assert suite in text


def test_defaults_recorded():
    assert RunConfig().as_dict()["format"] == "csv"
