"""Command-line behavior: output, exit codes, the repl loop."""

import io
import json
import pathlib

from ldcs.cli import main

KB = str(pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "demo.tsv")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_prints_sorted_values(capsys):
    code, out, err = run(capsys, "eval", "-k", KB, "PlaceOfBirth.Seattle")
    assert code == 0
    assert out == "Alice\nCarol\n"


def test_eval_numbers_sort_after_entities(capsys):
    code, out, _ = run(capsys, "eval", "-k", KB, "Type.City | count(Type.City)")
    assert code == 0
    assert out == "Portland\nSeattle\n2\n"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "-k", KB, "count(Type.USState)", "--json")
    assert code == 0
    assert json.loads(out) == [3]
    code, out, _ = run(capsys, "eval", "-k", KB, "PlaceOfBirth.Seattle", "--json")
    assert json.loads(out) == ["Alice", "Carol"]


def test_eval_exit_codes(capsys):
    code, _, err = run(capsys, "eval", "-k", KB, "Type.(")
    assert code == 1 and "error:" in err
    code, _, err = run(capsys, "eval", "-k", KB, "Nope.Seattle")
    assert code == 1 and "unknown property" in err
    code, _, err = run(capsys, "eval", "-k", "/no/such/file.tsv", "Seattle")
    assert code == 1
    code, _, err = run(capsys, "eval", "-k", KB, "argmax(Type.USState, Border)")
    assert code == 2 and "non-numeric" in err


def test_lc_simplified_and_raw(capsys):
    code, out, _ = run(capsys, "lc", "PlaceOfBirth.Seattle")
    assert code == 0
    assert out == "lambda x . PlaceOfBirth(x,Seattle)\n"
    code, raw_out, _ = run(capsys, "lc", "PlaceOfBirth.Seattle", "--raw")
    assert code == 0
    assert raw_out == "lambda x . exists y . PlaceOfBirth(x,y) & [y = Seattle]\n"


def test_lc_needs_no_kb(capsys):
    code, out, _ = run(capsys, "lc", "UnheardOf.Thing")
    assert code == 0
    assert out == "lambda x . UnheardOf(x,Thing)\n"


def test_sparql_command(capsys):
    code, out, _ = run(capsys, "sparql", "PlaceOfBirth.Seattle")
    assert code == 0
    assert out.startswith("SELECT DISTINCT ?x WHERE {")
    assert out.endswith("}\n")
    code, out, _ = run(capsys, "sparql", "PlaceOfBirth.Seattle",
                       "--prefix", "http://example.org/")
    assert "<http://example.org/PlaceOfBirth>" in out


def test_sparql_unsupported_exit_code(capsys):
    code, _, err = run(capsys, "sparql", "(mu x . Children.Influenced.x)")
    assert code == 3 and "cannot compile" in err


def test_check_command(capsys):
    code, out, _ = run(capsys, "check", "-k", KB, "--trials", "30", "--seed", "5")
    assert code == 0
    assert out.strip() == "trials=30 mismatches=0"


def test_check_zero_trials_needs_no_kb(capsys):
    code, out, _ = run(capsys, "check", "--trials", "0")
    assert code == 0
    assert out.strip() == "trials=0 mismatches=0"


def test_check_without_kb_fails(capsys):
    code, _, err = run(capsys, "check", "--trials", "5")
    assert code == 1 and "needs a KB" in err


def _run_repl(monkeypatch, capsys, lines, *argv):
    stdin = io.StringIO("".join(line + "\n" for line in lines))
    monkeypatch.setattr("sys.stdin", stdin)
    code = main(["repl", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_repl_eval_and_quit(monkeypatch, capsys):
    code, out, err = _run_repl(
        monkeypatch, capsys,
        ["PlaceOfBirth.Seattle", ":quit"],
        "-k", KB,
    )
    assert code == 0
    assert out == "Alice\nCarol\n"
    assert err == ""


def test_repl_commands_and_recovery(monkeypatch, capsys):
    code, out, err = _run_repl(
        monkeypatch, capsys,
        [
            ":lc PlaceOfBirth.Seattle",
            "this ( is broken",
            ":sparql Type.City",
            ":unknown",
            "",
            "Type.City",
        ],
        "-k", KB,
    )
    assert code == 0
    assert "lambda x . PlaceOfBirth(x,Seattle)" in out
    assert "SELECT DISTINCT ?x WHERE {" in out
    assert out.endswith("Portland\nSeattle\n")
    assert "error:" in err and "unknown command" in err


def test_repl_load(monkeypatch, capsys, tmp_path):
    other = tmp_path / "mini.tsv"
    other.write_text("A\tP\tB\n", encoding="utf-8")
    code, out, err = _run_repl(
        monkeypatch, capsys,
        ["P.B", f":load {other}", "P.B"],
    )
    assert code == 0
    assert "no KB loaded" in err
    assert "loaded 1 triples" in out
    assert out.endswith("A\n")
