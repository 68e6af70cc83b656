"""Script language and CLI driver.

Frozen oracles: over GF(101)[x,y]/(x^2,y^2) the residue field has Betti
numbers 1,2,3,...; over the quadric w*x-y*z the column module
coker(w,x,y,z)^T has projective dimension 1.  Exit codes follow the
documented lattice: parse 5 > violation 3 > resource 4 > hypothesis 2 > 0.
"""

import json
import re

import pytest

from extlab.cli import main
from extlab.errors import ParseError
from extlab.script import (
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RESOURCE,
    EXIT_VIOLATION,
    RunFlags,
    _worse,
    parse_script,
    render_report_text,
    report_json,
    run_script,
)
from extlab.vanishing import CheckReport

NILSQUARES = "ring A = GF(101)[x, y] / (x^2, y^2);\n"


def run_text(text, **kw):
    return run_script(parse_script(text), RunFlags(**kw))


# -- parsing ------------------------------------------------------------------


def test_parse_example_shapes():
    s = parse_script(
        "ring Q = GF(101)[w, x, y, z] / (w*x - y*z);\n"
        "module N = coker Q [[w], [x], [y], [z]];\n"
        "let M1 = syzygy(N, 1);\n"
        "scan ext(k, dual(N), 1..10);\n"
        "check theorem21(M1, N, 10);\n"
        'emit json "out.json";\n'
    )
    kinds = [st.kind for st in s.statements]
    assert kinds == ["ring", "module", "let", "scan", "check", "emit"]
    assert s.statements[0].relations == ("w*x-y*z",)
    assert s.statements[1].rows == (("w",), ("x",), ("y",), ("z",))
    assert s.statements[3].hi == 10
    assert s.statements[4].args[-1] == 10
    assert s.statements[5].path == "out.json"


def test_parse_empty_and_comments():
    assert parse_script("").statements == []
    assert parse_script("# just a comment\n").statements == []


def test_statement_source_is_recorded():
    s = parse_script(NILSQUARES + "betti k, 3;\n")
    assert s.statements[0].source == NILSQUARES.strip()
    assert s.statements[1].source == "betti k, 3;"
    assert s.statements[1].line == 2


def test_use_before_define_names_the_identifier():
    with pytest.raises(ParseError, match="undefined identifier 'Q'"):
        parse_script(NILSQUARES + "scan ext(k, Q, 1..5);")


def test_builtins_cannot_be_rebound():
    with pytest.raises(ParseError, match="built-in"):
        parse_script("ring k = GF(101)[x];")


def test_builtins_undefined_before_any_ring():
    with pytest.raises(ParseError, match="undefined identifier 'k'"):
        parse_script("betti k, 3;")


def test_ring_name_where_module_expected_is_allowed():
    s = parse_script(NILSQUARES + "scan ext(k, A, 1..5);")
    assert s.statements[1].right.ident == "A"


def test_module_requires_ring_name():
    text = NILSQUARES + "module M = coker A [[x]];\nmodule P = coker M [[x]];"
    with pytest.raises(ParseError, match="'M' is a module, expected ring"):
        parse_script(text)


def test_parse_error_positions():
    # missing semicolon: the complaint lands on the next statement's keyword
    with pytest.raises(ParseError) as e:
        parse_script("ring A = GF(101)[x]\nmodule M = coker A [[x]];")
    assert e.value.line == 2
    assert e.value.column >= 1


def test_scan_window_must_start_at_one():
    with pytest.raises(ParseError, match="start at 1"):
        parse_script(NILSQUARES + "scan ext(k, k, 2..8);")


def test_unknown_statement_check_and_search():
    with pytest.raises(ParseError, match="unknown statement"):
        parse_script("frobnicate x;")
    with pytest.raises(ParseError, match="unknown check"):
        parse_script(NILSQUARES + "check theorem99(k, k);")
    with pytest.raises(ParseError, match="unknown search"):
        parse_script(NILSQUARES + "search everything(5);")
    with pytest.raises(ParseError, match="unknown operation"):
        parse_script(NILSQUARES + "let M = kernel(k);")


def test_ragged_matrix_rejected():
    with pytest.raises(ParseError, match="unequal"):
        parse_script(NILSQUARES + "module M = coker A [[x, y], [x]];")


def test_nested_parens_in_polynomials():
    s = parse_script("ring A = GF(101)[x, y] / (x*(x+y), y^2);")
    assert s.statements[0].relations == ("x*(x+y)", "y^2")


# -- execution ----------------------------------------------------------------


def test_run_ring_module_let():
    rep = run_text(
        NILSQUARES
        + "module M = coker A [[x], [y]];\n"
        + "let M1 = syzygy(M, 1);\n"
    )
    assert rep["exit_code"] == EXIT_OK
    ring_r, mod_r, let_r = (e["result"] for e in rep["statements"])
    assert ring_r == {"ring": "A", "dimension": 0, "artinian": True, "length": 4}
    assert mod_r["generators"] == 2
    assert let_r["generators"] >= 1


def test_run_scan_and_betti_oracle():
    rep = run_text(NILSQUARES + "scan tor(k, k, 1..5);\nbetti k, 4;\n")
    scan = rep["statements"][1]["result"]["scan"]
    assert scan["dims"] == {str(i): i + 1 for i in range(1, 6)}
    assert scan["tail_vanishing"] is False
    betti = rep["statements"][2]["result"]
    assert betti["betti"]["totals"] == [1, 2, 3, 4, 5]
    assert "total:" in betti["text"]


def test_run_quadric_column_module_pd_one():
    rep = run_text(
        "ring Q = GF(101)[w, x, y, z] / (w*x - y*z);\n"
        "module N = coker Q [[w], [x], [y], [z]];\n"
        "scan tor(k, N, 1..10);\n"
    )
    scan = rep["statements"][2]["result"]["scan"]
    assert scan["tail_vanishing"] is True
    assert scan["last_nonzero"] == 1


def test_check_consistent_and_hypothesis_exit():
    rep = run_text(NILSQUARES + "check symmetry(k, k, 8);\n")
    assert rep["exit_code"] == EXIT_OK
    assert rep["statements"][1]["result"]["report"]["verdict"] == "consistent"

    # non-MCM argument over the 3-dimensional quadric: hypotheses fail
    rep = run_text(
        "ring Q = GF(101)[w, x, y, z] / (w*x - y*z);\n"
        "module N = coker Q [[w], [x], [y], [z]];\n"
        "check theorem21(N, N, 8);\n"
    )
    assert rep["exit_code"] == EXIT_HYPOTHESIS
    assert rep["statements"][2]["result"]["report"]["verdict"] == "hypothesis not met"


def test_check_default_window_comes_from_flags():
    rep = run_text(NILSQUARES + "check symmetry(k, k);\n", window=7)
    assert rep["statements"][1]["result"]["report"]["window"] == 7


def test_runtime_error_recorded_and_run_continues():
    # mixed rings inside one scan: a runtime precondition failure
    rep = run_text(
        NILSQUARES
        + "ring B = GF(101)[s] / (s^2);\n"
        + "scan ext(A, k, 1..5);\n"
        + "betti k, 2;\n"
    )
    entries = rep["statements"]
    assert entries[2]["status"] == "error"
    assert "different contexts" in entries[2]["error"]
    assert entries[3]["status"] == "ok"
    assert rep["exit_code"] == EXIT_HYPOTHESIS


def test_violation_verdict_sets_exit_three(monkeypatch):
    import extlab.script as scr

    def fake_check(M, N, H):
        return CheckReport(name="symmetry-dims", verdict="VIOLATION", window=H)

    monkeypatch.setattr(scr, "symmetry_check", fake_check)
    rep = run_text(NILSQUARES + "check symmetry(k, k, 8);\n")
    assert rep["exit_code"] == EXIT_VIOLATION


def test_timeout_stops_the_run():
    rep = run_text(NILSQUARES + "betti k, 3;\n", timeout_secs=1e-9)
    assert rep["exit_code"] == EXIT_RESOURCE
    assert rep["statements"][0]["status"] == "error"
    assert "time budget" in rep["statements"][0]["error"]
    assert len(rep["statements"]) == 1


def test_severity_lattice():
    assert _worse(EXIT_OK, EXIT_HYPOTHESIS) == EXIT_HYPOTHESIS
    assert _worse(EXIT_HYPOTHESIS, EXIT_RESOURCE) == EXIT_RESOURCE
    assert _worse(EXIT_VIOLATION, EXIT_RESOURCE) == EXIT_VIOLATION
    assert _worse(EXIT_PARSE, EXIT_VIOLATION) == EXIT_PARSE
    assert _worse(EXIT_VIOLATION, EXIT_OK) == EXIT_VIOLATION


def test_search_lemma36_counts_hypothesis_skips():
    rep = run_text(NILSQUARES + "search lemma36(3);\n")
    result = rep["statements"][1]["result"]
    # embedding dimension 2 fails the short-Gorenstein gate on every trial
    assert result == {"search": "lemma36", "trials": 3, "ran": 0,
                      "hypothesis_skipped": 3, "violations": 0}
    assert rep["exit_code"] == EXIT_OK


def test_search_harness_runs_and_logs_structure():
    rep = run_text(NILSQUARES + "search harness(2);\n", seed=5)
    out = rep["statements"][1]["result"]["report"]
    assert len(out["trials"]) == 2
    assert out["candidates"] == []
    assert out["config"]["seed"] == 5


def test_expression_operations_evaluate():
    rep = run_text(
        "ring G = GF(101)[x, y, z] / (x*y, x*z, y*z, x^2 - y^2, x^2 - z^2);\n"
        "let H = hom(k, R);\n"
        "let T = tensor(k, k);\n"
        "let S = stablehom(k, k);\n"
        "let D = matlis(k);\n"
        "check theorem59(k, k);\n"
    )
    assert rep["exit_code"] == EXIT_OK
    for entry in rep["statements"]:
        assert entry["status"] == "ok"
    # Hom(k, R) over this Gorenstein ring is the one-dimensional socle
    assert rep["statements"][1]["result"]["generators"] == 1


# -- report rendering ---------------------------------------------------------


STRIP = re.compile(r'"elapsed_ms": [0-9.]+')


def test_reports_deterministic_apart_from_timing():
    text = (
        NILSQUARES
        + "module M = coker A [[x], [y]];\n"
        + "scan ext(k, M, 1..6);\n"
        + "check theorem21(k, M, 8);\n"
        + "search harness(2);\n"
    )
    a = report_json(run_text(text, seed=3))
    b = report_json(run_text(text, seed=3))
    assert STRIP.sub("X", a) == STRIP.sub("X", b)
    assert json.loads(a)["seed"] == 3
    assert json.loads(a)["engine_version"]


def test_emit_json_and_table(tmp_path):
    out = tmp_path / "report.json"
    tbl = tmp_path / "report.txt"
    rep = run_text(
        NILSQUARES
        + f'emit json "{out}";\n'
        + f'emit table "{tbl}";\n'
    )
    assert rep["exit_code"] == EXIT_OK
    data = json.loads(out.read_text())
    assert data["statements"][0]["kind"] == "ring"
    assert "exit code" in tbl.read_text()


def test_render_report_text_shows_verdicts():
    rep = run_text(NILSQUARES + "check symmetry(k, k, 6);\nbetti k, 2;\n")
    text = render_report_text(rep)
    assert "verdict consistent" in text
    assert "total:" in text
    assert text.endswith("exit code 0\n")


# -- CLI ----------------------------------------------------------------------


def write_script(tmp_path, body):
    p = tmp_path / "script.gor"
    p.write_text(body)
    return str(p)


def test_cli_json_run(tmp_path, capsys):
    path = write_script(tmp_path, NILSQUARES + "betti k, 3;\n")
    code = main([path, "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["exit_code"] == 0
    assert [e["kind"] for e in data["statements"]] == ["ring", "betti"]


def test_cli_table_run(tmp_path, capsys):
    path = write_script(tmp_path, NILSQUARES + "scan ext(k, k, 1..5);\n")
    code = main([path, "--format", "table", "--window", "6"])
    assert code == 0
    assert "nonvanishing tail" in capsys.readouterr().out


def test_cli_parse_error_exit_five(tmp_path, capsys):
    path = write_script(tmp_path, "ring A = GF(101)[x];\nscan ext(k, Q, 1..5);\n")
    assert main([path]) == EXIT_PARSE
    err = capsys.readouterr().err
    assert "'Q'" in err and "line 2" in err


def test_cli_missing_file_exit_five(capsys):
    assert main(["/nonexistent/script.gor"]) == EXIT_PARSE
    assert "extlab:" in capsys.readouterr().err


def test_cli_seed_flag_reaches_harness(tmp_path, capsys):
    path = write_script(tmp_path, NILSQUARES + "search harness(1);\n")
    assert main([path, "--seed", "9"]) == 0
    data = json.loads(capsys.readouterr().out)
    report = data["statements"][1]["result"]["report"]
    assert report["config"]["seed"] == 9
