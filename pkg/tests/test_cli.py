import csv
import io

import pytest

from exactreals import cli
from exactreals.cli import BenchRow, main, read_suite, rows_to_csv, run_row


def test_eval_prints_digits(capsys):
    assert main(["eval", "pi", "--digits", "30"]) == 0
    assert capsys.readouterr().out.strip() == "3.141592653589793238462643383280"


def test_eval_default_digits(capsys):
    assert main(["eval", "1/7"]) == 0
    assert capsys.readouterr().out.strip() == "0.14285714285714285714"


def test_eval_errors(capsys):
    assert main(["eval", "1/(pi-3)"]) == 1
    err = capsys.readouterr().err
    assert "--witness" in err and "column 2" in err
    assert main(["eval", "1/(pi-3)", "--witness", "-3", "--digits", "5"]) == 0
    assert capsys.readouterr().out.strip() == "7.06251"
    assert main(["eval", "exp(", "--digits", "5"]) == 1
    assert main(["eval", "pi", "--digits", "-1"]) == 2


def test_missing_command_exits():
    with pytest.raises(SystemExit):
        main([])


def test_bench_empty_suite_prints_header(tmp_path, capsys):
    suite = tmp_path / "empty.csv"
    suite.write_text("expr,digits\n# nothing here\n")
    assert main(["bench", "--suite", str(suite)]) == 0
    assert capsys.readouterr().out == "expr,digits,correct,nanos\n"


def test_bench_writes_csv(tmp_path):
    suite = tmp_path / "suite.csv"
    suite.write_text("pi,50\nexp(1),40\narctan(1/3),20\n")
    out = tmp_path / "out.csv"
    assert main(["bench", "--suite", str(suite), "--csv", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [r["expr"] for r in rows] == ["pi", "exp(1)", "arctan(1/3)"]
    assert all(r["correct"] == "true" for r in rows)
    assert all(int(r["nanos"]) > 0 for r in rows)
    assert [int(r["digits"]) for r in rows] == [50, 40, 20]


def test_bench_reports_failures(tmp_path, capsys):
    suite = tmp_path / "suite.csv"
    suite.write_text("1/(pi-3),10\n")
    assert main(["bench", "--suite", str(suite)]) == 1
    captured = capsys.readouterr()
    assert "1/(pi-3),10,false," in captured.out
    assert "--witness" in captured.err


def test_run_row_checks_against_oracles(monkeypatch):
    assert run_row("sqrt(2)", 100).correct
    assert run_row("exp(pi) - pi", 25).correct
    # a corrupted evaluator must be caught
    monkeypatch.setattr(cli, "evaluate", lambda tree, digits, witness=None: "3.0000")
    assert not run_row("pi", 4).correct
    assert not run_row("exp(1)/3", 4).correct


def test_rows_to_csv_format():
    text = rows_to_csv([BenchRow("pi", 3, True, 12), BenchRow("a,b", 1, False, 5)])
    assert text == 'expr,digits,correct,nanos\npi,3,true,12\n"a,b",1,false,5\n'


def test_read_suite(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("# comment\nexpr,digits\n pi , 7\n\n\"arctan(1/2)\",3\n")
    assert read_suite(p) == [("pi", 7), ("arctan(1/2)", 3)]
    p.write_text("pi\n")
    with pytest.raises(ValueError):
        read_suite(p)
