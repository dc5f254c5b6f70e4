import io
import json
import sys

import pytest

from c4star.cli import main
from c4star.coloring import EdgeColoring, is_critical
from c4star.constructions import build_g
from c4star.formats import decode_graph6, encode_graph6
from c4star.graph import cycle_graph


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_writes_files(tmp_path, capsys):
    prefix = tmp_path / "g313"
    code, out, _ = run(["construct", "--family", "c4-star", "--k", "3", "--n", "13",
                        "--out", str(prefix), "--dot"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["e"] == 30 == rep["predicted_e"]
    assert rep["certificate_provenance"] == "closed-form-sigma"
    g = decode_graph6((tmp_path / "g313.g6").read_text().strip())
    assert g.edge_count() == 30
    col = json.loads((tmp_path / "g313.coloring.json").read_text())
    c, k = EdgeColoring.from_json(col)
    assert k == 3 and is_critical(g, 3, c)
    roles = json.loads((tmp_path / "g313.roles.json").read_text())
    assert len(roles["roles"]["R"]) == 4
    assert "color=red" in (tmp_path / "g313.dot").read_text()


def test_construct_k2(capsys):
    code, out, _ = run(["construct", "--family", "c4-star-k2", "--n", "10"], capsys)
    assert code == 0 and json.loads(out)["e"] == 17


@pytest.mark.parametrize("argv", [
    ["construct", "--family", "c4-star-k2", "--n", "7"],
    ["construct", "--family", "c4-star", "--k", "3", "--n", "11"],
    ["construct", "--family", "c4-star", "--n", "13"],
])
def test_construct_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def test_construct_missing_n_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "--family", "c4-star-k2"])
    assert info.value.code == 2


def test_verify_true_false_indeterminate(tmp_path, capsys):
    path = tmp_path / "g.g6"
    path.write_text(encode_graph6(build_g(3, 13)[0]) + "\n")
    code, out, _ = run(["verify", "--input", str(path), "--k", "3", "--jobs", "1"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] is True and len(rep["stats"]["non_edges"]) == 48
    assert rep["manifest"]["command"] == "verify"
    code, out, _ = run(["verify", "--input", str(path), "--k", "3", "--jobs", "1",
                        "--budget-nodes", "1"], capsys)
    assert code == 3

    c5 = tmp_path / "c5.g6"
    c5.write_text(encode_graph6(cycle_graph(5)))
    code, out, _ = run(["verify", "--input", str(c5), "--k", "2", "--jobs", "1"], capsys)
    assert code == 1 and json.loads(out)["verdict"] is False


def test_verify_stdin_edgelist(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("0 1\n1 2\n2 3\n3 4\n4 0\n"))
    code, _, _ = run(["verify", "--input", "-", "--input-format", "edgelist", "--k", "2",
                      "--jobs", "1"], capsys)
    assert code == 1


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_text("Dhc?\n")
    code, _, err = run(["verify", "--input", str(bad), "--k", "2"], capsys)
    assert code == 2 and "byte offset 3" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, _ = run(["verify", "--input", str(tmp_path / "nope"), "--k", "2"], capsys)
    assert code == 2


def test_enumerate_saturated_and_cocritical(capsys):
    code, out, _ = run(["enumerate", "--mode", "saturated", "--n", "6"], capsys)
    assert code == 0 and json.loads(out)["minimum"] == 6
    code, out, _ = run(["enumerate", "--mode", "cocritical", "--n", "5", "--k", "2", "--jobs", "1"], capsys)
    assert code == 0 and json.loads(out)["minimum"] == 7


def test_enumerate_refuses_large_scan(capsys):
    code, _, err = run(["enumerate", "--mode", "saturated", "--n", "9"], capsys)
    assert code == 2 and "--force" in err


def test_enumerate_colorings(tmp_path, capsys):
    path = tmp_path / "g.g6"
    path.write_text(encode_graph6(build_g(4, 15)[0]))
    code, out, _ = run(["enumerate", "--mode", "colorings", "--input", str(path), "--k", "4",
                        "--limit", "5"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["raw_count"] == 5 and rep["truncated"]
    assert 1 <= rep["reduced_count"] <= rep["raw_count"]


def test_deterministic_output_is_byte_identical(tmp_path, capsys):
    path = tmp_path / "g.g6"
    path.write_text(encode_graph6(build_g(3, 13)[0]))
    argv = ["verify", "--input", str(path), "--k", "3", "--jobs", "1", "--deterministic"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    assert "time_ms" not in a and "timestamp" not in a


def test_table_format(capsys):
    code, out, _ = run(["construct", "--family", "c4-star-k2", "--n", "6", "--format", "table"], capsys)
    assert code == 0 and "e: 9" in out and "manifest:" in out


def test_out_file(tmp_path, capsys):
    target = tmp_path / "sat.json"
    code, out, _ = run(["enumerate", "--mode", "saturated", "--n", "5", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["minimum"] == 5
