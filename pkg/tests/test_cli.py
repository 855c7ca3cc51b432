from __future__ import annotations

import io
import json

import pytest

from quivhom.cli import main

TRIANGLE_COMMUTING = "x0,x1,2\nx1,x2,3\nx0,x2,6\n"
TRIANGLE_BROKEN = "x0,x1,2\nx1,x2,3\nx0,x2,5\n"
TWO_CYCLE = "a,b,1\nb,a,1\n"


@pytest.fixture
def edges_file(tmp_path):
    def write(text, name="edges.csv"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_homology_commuting_triangle(edges_file, capsys):
    assert main(["homology", edges_file(TRIANGLE_COMMUTING)]) == 0
    assert "dim H1 = 1" in capsys.readouterr().out


def test_homology_broken_triangle(edges_file, capsys):
    assert main(["homology", edges_file(TRIANGLE_BROKEN)]) == 0
    assert "dim H1 = 0" in capsys.readouterr().out


def test_homology_two_cycle_without_dagify_exits_2(edges_file, capsys):
    assert main(["homology", edges_file(TWO_CYCLE)]) == 2
    err = capsys.readouterr().err
    assert "cycle" in err
    assert "a" in err and "b" in err  # the message names the cycle


def test_homology_two_cycle_with_dagify(edges_file, capsys):
    assert main(["homology", edges_file(TWO_CYCLE), "--dagify"]) == 0
    assert "dim H1 = 0" in capsys.readouterr().out


def test_homology_kernel_and_matrix_flags(edges_file, capsys):
    rc = main(["homology", edges_file(TRIANGLE_COMMUTING), "--kernel-basis", "--matrix"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "kernel: (-1, -2, 1)" in out
    assert "-1 0 -1" in out


def test_homology_dot_output(edges_file, tmp_path):
    dot = tmp_path / "quiver.dot"
    assert main(["homology", edges_file(TRIANGLE_COMMUTING), "--dot", str(dot)]) == 0
    assert '"x0" -> "x1" [label="2"];' in dot.read_text()


def test_homology_reads_stdin(edges_file, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TRIANGLE_COMMUTING))
    assert main(["homology", "-"]) == 0
    assert "dim H1 = 1" in capsys.readouterr().out


def test_homology_parse_error_exits_1(edges_file, capsys):
    assert main(["homology", edges_file("a,b,zzz\n")]) == 1
    assert "line 1" in capsys.readouterr().err


def test_homology_missing_file_exits_1(capsys):
    assert main(["homology", "/nonexistent/edges.csv"]) == 1


def test_homology_zero_weight_exits_2(edges_file, capsys):
    assert main(["homology", edges_file("a,b,0\n")]) == 2


def test_features_csv_deterministic(edges_file, tmp_path, capsys):
    src = edges_file(TRIANGLE_COMMUTING)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["features", src, "-H", "2", "--seed", "9", "-o", str(out1)]) == 0
    assert main(["features", src, "-H", "2", "--seed", "9", "-o", str(out2),
                 "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header = out1.read_text().splitlines()[0]
    assert header == "vertex,h1,h2"
    assert "seed=9" in capsys.readouterr().err


def test_features_json_has_config(edges_file, tmp_path):
    src = edges_file(TRIANGLE_COMMUTING)
    out = tmp_path / "fm.json"
    assert main(["features", src, "--format", "json", "--seed", "3",
                 "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["seed"] == 3
    assert doc["vertices"] == ["x0", "x1", "x2"]


def test_features_star_row(edges_file, capsys):
    assert main(["features", edges_file("v,a,2\nv,b,3\n"), "-H", "1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1] == "v,0"


def test_fas_two_cycle_reports_one_feedback_arc(edges_file, capsys):
    assert main(["fas", edges_file(TWO_CYCLE), "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "arcs = 2, kept = 1, feedback = 1" in out
    assert out.count("feedback:") == 1


def test_fas_dag_input_keeps_at_least_half(edges_file, capsys):
    assert main(["fas", edges_file(TRIANGLE_COMMUTING), "--seed", "0"]) == 0
    out = capsys.readouterr().out
    line = next(l for l in out.splitlines() if l.startswith("arcs"))
    arcs = int(line.split("arcs = ")[1].split(",")[0])
    kept = int(line.split("kept = ")[1].split(",")[0])
    assert kept * 2 >= arcs


def test_fas_empty_graph(edges_file, capsys):
    assert main(["fas", edges_file("")]) == 0
    assert "arcs = 0, kept = 0, feedback = 0" in capsys.readouterr().out


def test_oracle_triangle_table_and_cross_check(edges_file, capsys):
    assert main(["oracle", edges_file(TRIANGLE_COMMUTING), "--n-max", "3"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert any(l.split() == ["0", "3", "1"] for l in lines)
    assert any(l.split() == ["1", "4", "1"] for l in lines)
    assert any(l.split() == ["2", "1", "0"] for l in lines)
    assert "matches fast path: yes" in out


def test_oracle_truncated(edges_file, capsys):
    assert main(["oracle", edges_file(TRIANGLE_COMMUTING), "--ell", "1"]) == 0
    out = capsys.readouterr().out
    assert "truncated H1 = 1" in out


def test_oracle_chain_cap_exits_3(edges_file, capsys):
    assert main(["oracle", edges_file(TRIANGLE_COMMUTING), "--chain-cap", "2"]) == 3
    assert "cap" in capsys.readouterr().err


def test_oracle_guard_handles_deep_graphs(edges_file, capsys):
    # a long chain has ~1.1M degree-1 morphisms; the guard must refuse
    # without exhausting memory or the recursion limit
    text = "".join(f"v{i},v{i + 1}\n" for i in range(1500))
    assert main(["oracle", edges_file(text), "--chain-cap", "10000"]) == 3
    assert "exceeds cap" in capsys.readouterr().err


def test_jaccard_subcommand(edges_file, tmp_path, capsys):
    src = edges_file("u,v\n")
    attrs = tmp_path / "attrs.csv"
    attrs.write_text("u,1,1,0\nv,0,1,1\n")
    assert main(["jaccard", src, str(attrs)]) == 0
    assert capsys.readouterr().out == "u,v,2/3\n"


def test_orient_subcommand(edges_file, capsys):
    src = edges_file("7,3\n1,2\n", name="pairs.csv")
    assert main(["orient", src]) == 0
    assert capsys.readouterr().out == "3,7,4\n1,2,1\n"


def test_unknown_flag_is_an_error(edges_file):
    with pytest.raises(SystemExit):
        main(["homology", edges_file(TRIANGLE_COMMUTING), "--no-such-flag"])


def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for name in ("homology", "features", "fas", "oracle", "jaccard", "orient"):
        assert name in out
