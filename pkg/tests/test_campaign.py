"""Campaign config parsing, job dispatch, CSV emission, and determinism."""

import pytest
from mpmath import mpf

from twistlab.campaign import (
    CSV_HEADER,
    CampaignConfig,
    CampaignError,
    CheckRow,
    default_config,
    parse_config,
    parse_config_text,
    rows_to_csv,
    run_campaign,
    run_job,
)


def test_header_schema_fixed():
    assert CSV_HEADER == "check,fname,q_or_p,s_re,s_im,n_terms,residual,tail_radius,pass"


def test_parse_minimal_config():
    cfg = parse_config_text("precision_bits = 128\nchecks = kluyver\n")
    assert cfg.precision_bits == 128
    assert cfg.checks == ["kluyver"]


def test_parse_comments_and_blanks():
    cfg = parse_config_text("# a comment\n\nchecks = invariants\n")
    assert cfg.checks == ["invariants"]


def test_parse_per_check_params():
    cfg = parse_config_text(
        "checks = sum_lemma\nsum_lemma.n_terms = 5000\nsum_lemma.entries = zeta2:2\n"
    )
    assert cfg.params["sum_lemma"]["n_terms"] == "5000"
    assert cfg.get("sum_lemma", "n_terms", "1") == "5000"
    assert cfg.get("sum_lemma", "missing", "fallback") == "fallback"


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("precision_bits\n", 1, "key = value"),
        ("precision_bits = x\n", 1, "integer"),
        ("precision_bits = 32\n", 1, ">= 64"),
        ("checks = nosuch\n", 1, "unknown check"),
        ("\nwhatever = 3\n", 2, "unknown key"),
        ("checks = kluyver\nchecks = kluyver\n", 2, "duplicate"),
        ("nosuch.param = 3\n", 1, "unknown check"),
        ("= 3\n", 1, "empty key"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(CampaignError) as exc:
        parse_config_text(text)
    assert exc.value.line_no == line
    assert fragment in str(exc.value)


def test_parse_config_from_file(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("precision_bits = 192\nchecks = invariants\n", encoding="utf-8")
    cfg = parse_config(str(p))
    assert cfg.precision_bits == 192
    # errors name the file
    p2 = tmp_path / "bad.cfg"
    p2.write_text("oops\n", encoding="utf-8")
    with pytest.raises(CampaignError) as exc:
        parse_config(str(p2))
    assert "bad.cfg" in str(exc.value)


def test_default_config_parses_and_covers_all_checks():
    cfg = default_config()
    assert cfg.precision_bits == 256
    for check in ("invariants", "kluyver", "sum_lemma", "twist_decomp",
                  "expansion", "decay", "tau_search", "gk", "extraction",
                  "probe", "mellin"):
        assert check in cfg.checks


def test_empty_checks_campaign_exits_zero():
    cfg = parse_config_text("precision_bits = 128\n")
    rep = run_campaign(cfg)
    assert rep.rows == []
    assert rep.all_pass
    assert rep.exit_code == 0
    csv = rows_to_csv(rep.rows)
    assert csv.strip() == CSV_HEADER


def test_unknown_catalog_name_fails_eagerly():
    cfg = parse_config_text(
        "checks = sum_lemma\nsum_lemma.entries = nosuchseries:2\n"
    )
    with pytest.raises(CampaignError) as exc:
        run_campaign(cfg)
    assert "sum_lemma.entries" in str(exc.value)


def test_run_job_invariants_rows():
    rows = run_job("invariants", {}, 192)
    assert len(rows) >= 4
    for row in rows:
        assert row.check == "invariants"
        assert row.ok
        parts = row.as_csv().split(",")
        assert len(parts) == 9
        assert parts[-1] in ("0", "1")


def test_run_job_kluyver_passes():
    rows = run_job("kluyver", {"limit": 40}, 128)
    assert all(r.ok for r in rows)


def test_small_campaign_runs_and_is_deterministic():
    text = (
        "precision_bits = 128\n"
        "checks = kluyver, sum_lemma\n"
        "kluyver.limit = 30\n"
        "sum_lemma.entries = zeta2:2\n"
        "sum_lemma.s_grid = 2\n"
        "sum_lemma.n_terms = 4000\n"
    )
    rep1 = run_campaign(parse_config_text(text))
    rep2 = run_campaign(parse_config_text(text))
    assert rep1.exit_code == 0
    assert rows_to_csv(rep1.rows) == rows_to_csv(rep2.rows)
    lines = rows_to_csv(rep1.rows).splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) > 1
    for row_line in lines[1:]:
        assert len(row_line.split(",")) == 9


def test_campaign_parallel_matches_sequential():
    text = (
        "precision_bits = 128\n"
        "checks = kluyver, invariants\n"
        "kluyver.limit = 25\n"
    )
    seq = run_campaign(parse_config_text(text), workers=1)
    par = run_campaign(parse_config_text(text), workers=2)
    assert rows_to_csv(seq.rows) == rows_to_csv(par.rows)


def test_failing_row_sets_exit_code():
    rows = [CheckRow("sum_lemma", "zeta2", "2", mpf(2), 100, mpf(1), mpf(0), False)]
    from twistlab.campaign import CampaignReport

    rep = CampaignReport(config=CampaignConfig(), rows=rows)
    assert not rep.all_pass
    assert rep.exit_code == 1
