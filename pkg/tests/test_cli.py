"""CLI subcommands, exit codes, report schema, reproducibility."""

import json

import pytest

from pak.cli import main
from pak.formparse import FormSyntaxError, parse_form, parse_scalar_token
from pak.padic import Qp


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_double_index_pass(capsys):
    code, rep = run(capsys, ["double-index", "--prime", "5", "--f", "dlog t", "--g", "dlog (t-2)"])
    assert code == 0
    assert rep["schema"] == "pak/1"
    assert rep["ok"] and rep["global_vanishes"]
    assert len(rep["locals"]) == 3


def test_double_index_second_kind_locals(capsys):
    code, rep = run(capsys, ["double-index", "--f", "dt/t^2", "--g", "dlog (t-1)"])
    assert code == 0
    units = sorted(r["index"]["digits"][:1] or [0] for r in rep["locals"])
    assert units == [[0], [1], [4]]  # 0, +1, -1 mod 5


def test_double_index_parse_error(capsys):
    assert main(["double-index", "--f", "dlog t", "--g", "what is this"]) == 2


def test_curvature_cmd(capsys):
    code, rep = run(capsys, ["curvature", "--genus", "3"])
    assert code == 0 and rep["ok"]
    assert all(rep["identities"].values())


def test_green_cmd_roundtrip(tmp_path, capsys):
    fix = tmp_path / "t.json"
    code, _ = run(capsys, ["green", "--make-fixture", "--seed", "4", "--genus", "2",
                           "--out", str(fix)])
    assert code == 0
    code, rep = run(capsys, ["green", "--table", str(fix), "--check-formula"])
    assert code == 0 and rep["reproduced"]


def test_green_cmd_missing_file(capsys):
    assert main(["green", "--table", "/nonexistent/t.json", "--check-formula"]) == 2


def test_cube_diff_cmd(capsys):
    code, rep = run(capsys, ["cube-diff", "--n", "3", "--degree", "2"])
    assert code == 0 and rep["ok"]


def test_ledger_validate_character(tmp_path, capsys):
    f = tmp_path / "char.toml"
    f.write_text(
        '[character]\np = 5\nlambda = "0"\nstandard = true\n'
        'generators = ["2", "3", "1/2", "-1", "5"]\n\n'
        '[character.finite]\n2 = "-log(2)"\n3 = "-log(3)"\n'
    )
    code, rep = run(capsys, ["ledger", "validate-character", str(f)])
    assert code == 0 and rep["ok"]


def test_ledger_validate_character_missing(capsys):
    assert main(["ledger", "validate-character", "/nonexistent.toml"]) == 2


def test_ledger_riemann_roch(capsys):
    code, rep = run(capsys, ["ledger", "riemann-roch", "--rescale", "1",
                             "--genus", "2", "--degree", "3", "--seed", "9"])
    assert code == 0 and rep["ok"]
    code, rep = run(capsys, ["ledger", "riemann-roch", "--rescale=-log(2)",
                             "--genus", "3", "--degree=-2", "--seed", "9"])
    assert code == 0 and rep["ok"]


def test_ledger_adjunction(capsys):
    code, rep = run(capsys, ["ledger", "adjunction", "--seed", "3"])
    assert code == 0 and rep["ok"]
    assert rep["terms"]["residual"]["digits"] == []


def test_reports_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["ledger", "riemann-roch", "--seed", "5", "--out", str(a)])
    main(["ledger", "riemann-roch", "--seed", "5", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_form_grammar():
    K = Qp(5, 32)
    f = parse_form(K, "dt/(t(t-1))")
    assert len(f.body.den) == 3
    with pytest.raises(FormSyntaxError):
        parse_form(K, "t^2")
    with pytest.raises(FormSyntaxError):
        parse_form(K, "dt + 1")
    v = parse_scalar_token(K, "-log(2)")
    assert v.valuation() >= 1
    assert parse_scalar_token(K, "0").is_exact_zero()
