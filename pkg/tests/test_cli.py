"""CLI surface: subcommands, output shapes, exit codes."""

import pytest

from l1sweep.cli import main


def test_lvalue_single_conductor(capsys):
    assert main(["lvalue", "--q", "3"]) == 0
    out = capsys.readouterr().out
    assert "0.604599788078" in out
    assert "parity=odd" in out and "verdict=pass" in out


def test_lvalue_no_primitive(capsys):
    assert main(["lvalue", "--q", "6"]) == 0
    assert "no primitive characters" in capsys.readouterr().out


def test_lvalue_index_selector(capsys):
    assert main(["lvalue", "--q", "5", "--index", "2"]) == 0
    out = capsys.readouterr().out
    assert out.count("q=5") == 1 and "parity=even" in out
    assert main(["lvalue", "--q", "5", "--index", "0"]) == 1  # principal: not primitive


def test_lvalue_marks_inapplicable_conductors(capsys):
    assert main(["lvalue", "--q", "5"]) == 0
    assert "[3 does not divide q]" in capsys.readouterr().out


def test_count_subcommand(capsys):
    assert main(["count", "--qmax", "9"]) == 0
    assert capsys.readouterr().out.strip() == "5"
    assert main(["count", "--qmax", "4", "--all-q"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_sweep_subcommand_and_exit_code(tmp_path, capsys):
    out = str(tmp_path / "rows.csv")
    assert main(["sweep", "--qmin", "3", "--qmax", "120", "--out", out]) == 0
    text = capsys.readouterr().out
    assert "theorem exceptions:    none" in text
    with open(out, encoding="utf-8") as fh:
        assert fh.readline().startswith("q,parity,")


def test_sweep_unwritable_output(capsys):
    code = main(["sweep", "--qmin", "3", "--qmax", "9",
                 "--out", "/nonexistent-dir/rows.csv"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_figure_data_subcommand(tmp_path, capsys):
    rows = str(tmp_path / "rows.csv")
    main(["sweep", "--qmin", "3", "--qmax", "60", "--out", rows])
    capsys.readouterr()
    fig = str(tmp_path / "fig.txt")
    assert main(["figure-data", "--in", rows, "--parity", "odd", "--out", fig]) == 0
    assert "wrote" in capsys.readouterr().out


def test_figure_data_missing_or_malformed_input(tmp_path, capsys):
    assert main(["figure-data", "--in", str(tmp_path / "nope.csv"),
                 "--parity", "odd", "--out", str(tmp_path / "o.txt")]) == 1
    bad = tmp_path / "bad.csv"
    bad.write_text("definitely,not,a,sweep,file\n")
    assert main(["figure-data", "--in", str(bad), "--parity", "odd",
                 "--out", str(tmp_path / "o2.txt")]) == 1


def test_usage_errors_exit_1():
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--qmin", "3"])  # missing --qmax/--out
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_check_lemmas_small_grid(capsys):
    assert main(["check-lemmas", "--grid", "8"]) == 0
    out = capsys.readouterr().out
    assert "j-integral" in out and "inner-sum-bound" in out
    assert "fail" not in out
