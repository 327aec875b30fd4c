import csv
import json
import subprocess
import sys

import pytest

from distk.canon import is_isomorphic
from distk.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, certify_lines, main, run_claim
from distk.graph import Graph, edge_count
from distk.graph6 import emit_graph6, parse_graph6


def write(path, *graphs):
    path.write_text("".join(emit_graph6(g) + "\n" for g in graphs))
    return str(path)


# -- transform ------------------------------------------------------------------

def test_transform_p4_k3(tmp_path, capsys):
    src = write(tmp_path / "p4.g6", Graph.path(4))
    assert main(["transform", src, "--k", "3"]) == EXIT_OK
    (line,) = capsys.readouterr().out.split()
    g3 = parse_graph6(line)
    assert list(g3.edges()) == [(0, 3)]


def test_transform_k1_reemits_input(tmp_path):
    gs = [Graph.cycle(5), Graph.path(6), Graph.complete(3)]
    src = write(tmp_path / "in.g6", *gs)
    out = tmp_path / "out.g6"
    assert main(["transform", src, "--k", "1", "--out", str(out)]) == EXIT_OK
    assert [parse_graph6(s) for s in out.read_text().split()] == gs


def test_transform_empty_input(tmp_path):
    src = tmp_path / "empty.g6"
    src.write_text("")
    out = tmp_path / "out.g6"
    assert main(["transform", str(src), "--k", "2", "--out", str(out)]) == EXIT_OK
    assert out.read_text() == ""


def test_transform_errors(tmp_path, capsys):
    assert main(["transform", str(tmp_path / "missing.g6"), "--k", "2"]) == EXIT_USAGE
    bad = tmp_path / "bad.g6"
    bad.write_text("A_\nD?\n")
    assert main(["transform", str(bad), "--k", "2"]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


# -- construct ------------------------------------------------------------------

@pytest.mark.parametrize("argv,summary", [
    (["double-broom", "--n", "9", "--k", "3", "--a", "3", "--b", "4"], "|E(G_3)|=12"),
    (["g2-extremal", "--n", "5"], "|E(G_2)|=5"),
    (["spider", "--n", "9", "--legs", "4"], "|E(G_3)|=12"),
    (["--json", '{"variant": "turan", "n": 6, "r": 2}', "--summary-k", "2"], "|E(G_2)|=6"),
])
def test_construct_summaries(argv, summary, capsys):
    assert main(["construct", *argv]) == EXIT_OK
    cap = capsys.readouterr()
    parse_graph6(cap.out.strip())
    assert summary in cap.err


def test_construct_g2_n5_is_c5(capsys):
    main(["construct", "g2-extremal", "--n", "5"])
    assert is_isomorphic(parse_graph6(capsys.readouterr().out.strip()), Graph.cycle(5))


def test_construct_to_file(tmp_path, capsys):
    out = tmp_path / "b.g6"
    assert main(["construct", "double-broom", "--n", "9", "--k", "3", "--a", "3", "--b", "4",
                 "--out", str(out)]) == EXIT_OK
    assert edge_count(parse_graph6(out.read_text())) == 8
    assert "|E(G_3)|=12" in capsys.readouterr().out


def test_construct_names_violated_invariant(capsys):
    assert main(["construct", "double-broom", "--n", "9", "--k", "3", "--a", "3", "--b", "3"]) == EXIT_USAGE
    assert "constraint violated" in capsys.readouterr().err
    assert main(["construct", "turan", "--n", "5"]) == EXIT_USAGE


# -- solve ----------------------------------------------------------------------

def test_solve_prints_optimum(capsys):
    assert main(["solve", "--n", "5", "--k", "2"]) == EXIT_OK
    assert "ex_2(n=5, K_3) = 5" in capsys.readouterr().out
    assert main(["solve", "--n", "6", "--k", "3"]) == EXIT_OK
    assert "ex_3(n=6, K_3) = 4" in capsys.readouterr().out


def test_solve_n8_k3_prints_note(capsys):
    assert main(["solve", "--n", "8", "--k", "3", "--shards", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ex_3(n=8, K_3) = 9" in out
    assert "note:" in out


def test_solve_writes_json_and_witnesses(tmp_path, capsys):
    js, wit = tmp_path / "o.json", tmp_path / "w.g6"
    assert main(["solve", "--n", "6", "--k", "2", "--out", str(js), "--witnesses", str(wit)]) == EXIT_OK
    d = json.loads(js.read_text())
    assert d["optimum"] == 7
    assert d["problem"]["n"] == 6 and d["problem"]["k"] == 2
    assert wit.read_text().split() == d["witnesses"]
    assert main(["certify", str(wit), "--k", "2", "--claim", "7"]) == EXIT_OK


def test_solve_from_file(tmp_path, capsys):
    src = write(tmp_path / "in.g6", Graph.path(4), Graph.cycle(4), Graph.complete(4))
    assert main(["solve", "--n", "4", "--k", "2", "--source", "file", "--input", src]) == EXIT_OK
    assert "= 2" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["solve", "--n", "11", "--k", "3"],
    ["solve", "--n", "5", "--k", "2", "--source", "file"],
    ["solve", "--n", "5", "--k", "0"],
])
def test_solve_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--k", "2"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["verify", "thm9"])
    assert exc.value.code == EXIT_USAGE


# -- certify --------------------------------------------------------------------

def test_certify_k5(tmp_path, capsys):
    src = write(tmp_path / "k5.g6", Graph.complete(5))
    assert main(["certify", src, "--k", "2", "--t", "2", "--claim", "0"]) == EXIT_OK
    assert "line 1: PASS" in capsys.readouterr().out


def test_certify_c6_fails(tmp_path, capsys):
    src = write(tmp_path / "c6.g6", Graph.cycle(6))
    assert main(["certify", src, "--k", "3", "--claim", "2"]) == EXIT_FAIL
    assert "|E(G_3)|=3" in capsys.readouterr().out


def test_certify_lines_skips_blanks():
    lines = [emit_graph6(Graph.cycle(5)), "", emit_graph6(Graph.complete(3))]
    assert certify_lines(lines, 2, 2, 5) == [(1, True, 5, 2), (3, False, 0, 1)]


# -- verify ---------------------------------------------------------------------

def test_verify_thm3_noniso(tmp_path, capsys):
    assert main(["verify", "thm3-noniso", "--n-range", "9", "--out", str(tmp_path)]) == EXIT_OK
    rep = json.loads((tmp_path / "thm3-noniso" / "report.json").read_text())
    assert list(rep) == ["claim_id", "n_range", "rows", "overall", "provenance"]
    assert rep["overall"] == "pass"
    row = rep["rows"][0]
    assert row["computed"] == {"double_broom": 12, "spider": 12, "isomorphic": False}
    assert set(row) >= {"n", "computed", "expected", "match", "witnesses_path"}
    assert set(rep["provenance"]) == {"tool", "version", "timestamp"}
    with open(tmp_path / "thm3-noniso" / "report.csv") as fh:
        header, *rows = list(csv.reader(fh))
    assert header == ["claim_id", "n", "computed", "expected", "match", "witnesses_path"]
    assert len(rows) == 1


def test_verify_thm1_formula_witnesses_recertify(tmp_path, capsys):
    assert main(["verify", "thm1-formula", "--n-range", "5..7", "--report", str(tmp_path)]) == EXIT_OK
    rep = json.loads((tmp_path / "thm1-formula" / "report.json").read_text())
    assert [r["computed"] for r in rep["rows"]] == [5, 7, 10]
    for r in rep["rows"]:
        assert main(["certify", r["witnesses_path"], "--k", "2", "--claim", str(r["computed"])]) == EXIT_OK


def test_verify_failing_claim_exits_one(tmp_path, capsys):
    # ex_3(7) is 7, one more than the formula value
    assert main(["verify", "conj2-small", "--n-range", "6,7", "--out", str(tmp_path)]) == EXIT_FAIL
    rep = json.loads((tmp_path / "conj2-small" / "report.json").read_text())
    assert [r["match"] for r in rep["rows"]] == [True, False]
    assert rep["overall"] == "fail"


def test_verify_bad_range(tmp_path):
    assert main(["verify", "thm3-noniso", "--n-range", "8", "--out", str(tmp_path)]) == EXIT_USAGE


def test_run_claim_overall_is_conjunction(tmp_path):
    rep = run_claim("thm4-bound", [5, 6], tmp_path)
    assert rep["overall"] == "pass"
    assert all(r["match"] for r in rep["rows"])


def test_module_entry_point(tmp_path):
    src = write(tmp_path / "p4.g6", Graph.path(4))
    res = subprocess.run([sys.executable, "-m", "distk", "transform", src, "--k", "3"],
                         capture_output=True, text=True, check=True)
    assert parse_graph6(res.stdout.strip()) == Graph.from_edges(4, [(0, 3)])
