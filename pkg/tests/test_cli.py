"""Command-line interface: argument handling, output shape, exit codes."""

import pytest
from mpmath import fabs, mpc, mpf

from twistlab.cli import _parse_s, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_s_forms():
    assert fabs(_parse_s("2") - mpc(2)) < mpf("1e-30")
    assert fabs(_parse_s("1.8,3") - mpc("1.8", "3")) < mpf("1e-30")
    assert fabs(_parse_s("2+50i") - mpc(2, 50)) < mpf("1e-30")
    assert fabs(_parse_s("2+50j") - mpc(2, 50)) < mpf("1e-30")
    with pytest.raises(ValueError):
        _parse_s("nonsense")


def test_invariants_command(capsys):
    code, out, err = run_cli(capsys, "invariants", "zeta_chi3")
    assert code == 0
    assert "# precision: 256 bits" in out
    assert "degree" in out and "conductor" in out
    assert "H(0)" in out and "H(4)" in out


def test_invariants_unknown_name_exits_2(capsys):
    code, out, err = run_cli(capsys, "invariants", "nope")
    assert code == 2
    assert "error" in err


def test_bits_flag_changes_header(capsys):
    code, out, err = run_cli(capsys, "--bits", "128", "invariants", "zeta2")
    assert code == 0
    assert "# precision: 128 bits" in out


def test_check_sum_lemma_csv(capsys):
    code, out, err = run_cli(capsys, "check", "sum-lemma", "--name", "zeta2",
                             "--q", "2", "--s", "2", "--n-terms", "4000")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert lines[0] == "check,fname,q_or_p,s_re,s_im,n_terms,residual,tail_radius,pass"
    parts = lines[1].split(",")
    assert parts[0] == "sum_lemma" and parts[1] == "zeta2" and parts[-1] == "1"


def test_check_twist_decomp(capsys):
    code, out, err = run_cli(capsys, "check", "twist-decomp", "--name", "zeta2",
                             "--p", "3", "--s", "2", "--n-terms", "4000")
    assert code == 0
    assert "twist_decomp,zeta2,3," in out


def test_check_gk(capsys):
    code, out, err = run_cli(capsys, "check", "gk", "--name", "zeta_chi3",
                             "--q", "3", "--s", "2", "--tau", "25",
                             "--n-terms", "20000")
    assert code == 0
    assert "gk,zeta_chi3,3," in out


def test_expansion_summary_and_csv(capsys, tmp_path):
    code, out, err = run_cli(capsys, "expansion", "--name", "zeta2",
                             "--nu-max", "3")
    assert code == 0
    assert "deg R" in out or "R_" in out

    code, out, err = run_cli(capsys, "expansion", "--name", "zeta2",
                             "--nu-max", "3", "--emit", "csv")
    assert code == 0
    rows = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    assert rows[0] == "kind,index,coeff_index,re,im"
    kinds = {r.split(",")[0] for r in rows[1:]}
    assert kinds == {"R", "V", "Q"}
    # R_1 = 2 s^2 shows up as its quadratic coefficient
    r1_rows = [r for r in rows[1:] if r.startswith("R,1,2,")]
    assert len(r1_rows) == 1 and r1_rows[0].split(",")[3] == "2.0"

    out_path = str(tmp_path / "z.exptable")
    code, out, err = run_cli(capsys, "expansion", "--name", "zeta2",
                             "--nu-max", "3", "--emit", "cache",
                             "--out", out_path)
    assert code == 0
    from twistlab.expansion import load_tables

    t = load_tables(out_path)
    assert t.n_cutoff >= 3


def test_tau_search_command(capsys):
    code, out, err = run_cli(capsys, "tau-search", "--q", "6",
                             "--eps", "1,1", "--k", "10")
    assert code == 0
    assert "tau" in out
    assert "53" in out  # frozen lattice index


def test_tau_search_bound_exhausted_exit_1(capsys):
    code, out, err = run_cli(capsys, "tau-search", "--q", "6",
                             "--eps", "1,1", "--k", "10", "--bound", "300")
    assert code == 1
    assert "best" in out or "best" in err


def test_extract_euler_command(capsys):
    code, out, err = run_cli(capsys, "extract-euler", "--name", "zeta_chi3",
                             "--p", "3", "--m", "1", "--s", "2,0",
                             "--grid", "8", "--k", "20", "--n-terms", "16384")
    assert code == 0
    assert "estimate" in out and "reference" in out


def test_probe_command(capsys):
    code, out, err = run_cli(capsys, "probe-theorem2", "--name", "zeta2",
                             "--alpha", "1/3", "--K", "2", "--t-max", "5",
                             "--n-terms", "8192")
    assert code == 0
    assert "telescoping" in out


def test_campaign_command_with_config(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("precision_bits = 128\nchecks = kluyver\nkluyver.limit = 30\n",
                   encoding="utf-8")
    out_path = tmp_path / "rows.csv"
    code, out, err = run_cli(capsys, "campaign", "--config", str(cfg),
                             "--out", str(out_path))
    assert code == 0
    text = out_path.read_text(encoding="utf-8")
    assert text.splitlines()[0].startswith("check,fname")
    assert ",1" in text


def test_campaign_config_error_exit_2(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("checks = nosuch\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "campaign", "--config", str(cfg))
    assert code == 2
    assert "line 1" in err or "line 1" in out or "(line 1)" in err
