import json

import pytest

from branchdepth.cli import main
from branchdepth.decomposition import Decomposition, width
from branchdepth.formats import dump_graph, dump_matrix, parse_graph
from branchdepth.graph import edge_oracle, generate
from branchdepth.wqo import LabeledMatrix


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def p4(tmp_path):
    return write(tmp_path, "p4.txt", dump_graph(generate("path", 4)))


def test_graph_params(capsys, p4):
    code, out, _ = run(capsys, "graph-params", p4)
    report = json.loads(out)
    assert code == 0
    assert (report["td"], report["bd"], report["rd"]) == (3, 2, 2)
    assert all(c["ok"] for c in report["checks"])


def test_graph_params_single_edge(capsys, tmp_path):
    code, out, _ = run(capsys, "graph-params", write(tmp_path, "k2.txt", dump_graph(generate("path", 2))))
    report = json.loads(out)
    assert code == 0 and report["bd"] == 0 and report["td"] == 2


def test_graph_params_bounds_only(capsys, tmp_path):
    path = write(tmp_path, "p12.txt", dump_graph(generate("path", 12)))
    code, out, _ = run(capsys, "graph-params", path, "--bd-cap", "6")
    report = json.loads(out)
    assert code == 0 and report["bounds_only"] and report["bd"] is None
    lo, hi = report["bd_bounds"]
    assert lo <= 2 <= hi


def test_parse_error_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "graph-params", write(tmp_path, "bad.txt", "p graph x 1\n"))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "graph-params", str(tmp_path / "missing.txt"))
    assert code == 2


def test_cap_exit_code(capsys, tmp_path):
    path = write(tmp_path, "k5.txt", dump_graph(generate("complete", 5)))
    code, _, _ = run(capsys, "decompose", path, "--cap", "5")
    assert code == 3


def test_bad_flag_exits_2(capsys, p4):
    with pytest.raises(SystemExit) as exc:
        main(["graph-params", p4, "--nope"])
    assert exc.value.code == 2


def test_matroid_params(capsys, tmp_path):
    code, out, _ = run(capsys, "matroid-params", write(tmp_path, "u.txt", "uniform 1 4\n"))
    report = json.loads(out)
    assert code == 0 and (report["cd"], report["dd"]) == (2, 4)
    path = write(tmp_path, "k3p.txt", dump_graph(generate("k3_plus"), graphic=True))
    report = json.loads(run(capsys, "matroid-params", path)[1])
    assert report["dd"] == 3 and all(c["ok"] for c in report["checks"])


def test_decompose_json_round_trip(capsys, tmp_path):
    g = generate("cycle", 5)
    path = write(tmp_path, "c5.txt", dump_graph(g))
    code, out, _ = run(capsys, "decompose", path, "--out", "json")
    data = json.loads(out)
    g = parse_graph(dump_graph(g))
    dec = Decomposition.from_dict(data, g.edge_names)
    assert code == 0 and width(dec, edge_oracle(g)) == data["width"] and dec.radius() == data["radius"]


def test_decompose_dot_to_file(capsys, p4, tmp_path):
    target = tmp_path / "out.dot"
    code, _, err = run(capsys, "decompose", p4, "--out", "dot", "-o", str(target))
    assert code == 0 and "branch-depth 2" in err
    assert target.read_text().startswith("graph")


def test_decompose_rank_and_matroid_oracles(capsys, p4, tmp_path):
    assert run(capsys, "decompose", p4, "--oracle", "rank")[0] == 0
    m = write(tmp_path, "m.txt", "p matrix 2 2 3\n1 0 1\n0 1 1\n")
    assert run(capsys, "decompose", m, "--oracle", "matroid")[0] == 0
    assert run(capsys, "decompose", m, "--oracle", "edge")[0] == 2


def test_decompose_trivial(capsys, tmp_path):
    code, out, err = run(capsys, "decompose", write(tmp_path, "k2.txt", dump_graph(generate("path", 2))))
    assert code == 0 and json.loads(out)["decomposition"] is None and "no decomposition" in err


def test_shrubbery_command(capsys, p4):
    code, out, _ = run(capsys, "shrubbery", p4)
    report = json.loads(out)
    assert code == 0 and report["rank_depth"] == 2
    assert {"tree", "depth", "colors", "adjacencyTable"} <= set(report)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "main-td", "--max-size", "4")
    assert code == 0 and json.loads(out)["ok"]
    code, _, _ = run(capsys, "verify", "seymour", "--seed", "7", "--max-size", "6")
    assert code == 0
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-suite"])
    assert exc.value.code == 2


def test_verify_output_is_deterministic(capsys):
    first = run(capsys, "verify", "chain", "--max-size", "5", "--seed", "3")[1]
    second = run(capsys, "verify", "chain", "--max-size", "5", "--seed", "3")[1]
    assert first == second


def cycle_file(tmp_path, n):
    rows = [[1 if j in (i, (i - 1) % n) else 0 for j in range(n)] for i in range(n - 1)]
    return write(tmp_path, f"c{n}.txt", dump_matrix(LabeledMatrix.of(rows, 2)))


def test_wqo_scan(capsys, tmp_path):
    files = [cycle_file(tmp_path, n) for n in (3, 4, 5)]
    code, out, _ = run(capsys, "wqo-scan", *files)
    assert code == 0 and json.loads(out)["pair"] is None
    code, out, _ = run(capsys, "wqo-scan", files[0], files[0])
    assert json.loads(out)["pair"] == [1, 2]
    with pytest.raises(SystemExit) as exc:
        main(["wqo-scan"])
    assert exc.value.code == 2


def test_json_reports_are_byte_identical(capsys, p4):
    a = run(capsys, "graph-params", p4)[1]
    b = run(capsys, "graph-params", p4)[1]
    assert a == b
