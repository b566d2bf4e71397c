"""End-to-end command-line behavior, driven in-process through main()."""

import io
import json

import pytest

from pqstab import __version__
from pqstab.cli import build_parser, main
from pqstab.graphs import from_spec, write_graph6
from pqstab.probe import run_probe
from pqstab.stabilize import stabilize_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_stabilize_text(capsys):
    code, out, err = run(capsys, "stabilize", "--gen", "petersen", "--k", "2")
    assert code == 0 and err == ""
    assert "stabilize: n=10 k=2 mode=count" in out
    assert "rounds (class counts): [2, 2]" in out
    assert "final classes: 2" in out


def test_stabilize_json_envelope(capsys):
    doc = run_json(capsys, "stabilize", "--gen", "cycle:6")
    assert doc["meta"]["tool"] == "pqstab"
    assert doc["meta"]["version"] == __version__
    assert doc["meta"]["command"] == "stabilize"
    opts = doc["meta"]["options"]
    assert opts["gen"] == "cycle:6" and opts["k"] == 2 and opts["mode"] == "count"
    assert "format" not in opts and "out" not in opts and "input" not in opts
    assert doc["data"] == stabilize_graph(from_spec("cycle:6"), 2).to_dict()


def test_certify_assembled_twisted_cube(capsys):
    code, out, _ = run(
        capsys, "certify", "--gen", "twisted_cube", "--k", "3",
        "--partition", "assembled",
    )
    assert code == 0
    assert "mp: NO" in out
    assert '"subspace":[1,2]' in out  # witness emitted inline
    doc = run_json(
        capsys, "certify", "--gen", "twisted_cube", "--k", "3",
        "--partition", "assembled",
    )
    wit = doc["data"]["verdicts"]["mp"]["witness"]
    assert wit["multiplicities"] == [2, 1]
    assert doc["meta"]["options"]["partition"] == "assembled"


def test_certify_stabilized_is_default(capsys):
    doc = run_json(capsys, "certify", "--gen", "petersen")
    assert doc["data"]["verdicts"]["strongly_regular"]["holds"] is True


def test_orbits(capsys):
    doc = run_json(capsys, "orbits", "--gen", "petersen")
    assert doc["data"] == {
        "n": 10,
        "k": 2,
        "aut_order": 120,
        "orbit_classes": 2,
        "stabilized_classes": 2,
        "stabilized_is_automorphic": True,
    }


def test_compare_text(capsys):
    code, out, _ = run(
        capsys, "compare", "--gen", "rook4", "--gen2", "shrikhande", "--k", "2"
    )
    assert code == 0
    assert "Equivalent" in out and "does NOT assert isomorphism" in out
    code, out, _ = run(
        capsys, "compare", "--gen", "rook4", "--gen2", "shrikhande", "--k", "3"
    )
    assert code == 0
    assert "Distinguished" in out and "conclusively different" in out


def test_srg(capsys):
    code, out, _ = run(capsys, "srg", "--gen", "petersen")
    assert code == 0
    assert "n=10 degree=3 lambda=0 mu=1" in out
    assert "parameters constant: True" in out
    doc = run_json(capsys, "srg", "--gen", "petersen")
    assert doc["data"]["srg"]["holds"] is True
    assert doc["data"]["intersection_numbers"]["ok"] is True


def test_probe7_matches_library(capsys):
    doc = run_json(capsys, "probe7", "--gen", "complete:5")
    assert doc["data"] == run_probe(from_spec("complete:5"))
    code, out, _ = run(capsys, "probe7", "--gen", "complete:5")
    assert code == 0 and "flag raised: False" in out


def test_sx(capsys):
    doc = run_json(capsys, "sx", "--gen", "cycle:5")
    data = doc["data"]
    assert data["variables"] == 20
    assert data["rank"] <= min(data["equations"], data["variables"])
    assert data["constants_solve"] is True


def test_stdin_graph6(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(write_graph6(from_spec("petersen")) + "\n"))
    code, out, _ = run(capsys, "stabilize", "--input", "-")
    assert code == 0 and "n=10" in out


def test_file_inputs(capsys, tmp_path):
    g6 = tmp_path / "c6.g6"
    g6.write_text(write_graph6(from_spec("cycle:6")) + "\n")
    code, out, _ = run(capsys, "stabilize", "--input", str(g6))
    assert code == 0 and "n=6" in out

    jsonfile = tmp_path / "c6.json"
    jsonfile.write_text(from_spec("cycle:6").to_json())
    code, out, _ = run(capsys, "stabilize", "--input", str(jsonfile))
    assert code == 0 and "n=6" in out

    dimacs = tmp_path / "tri.dimacs"
    dimacs.write_text("p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    code, out, _ = run(capsys, "stabilize", "--input", str(dimacs))
    assert code == 0 and "n=4" in out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "srg", "--gen", "petersen", "--format", "json", "--out", str(target)
    )
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["data"]["srg"]["lambda"] == 0


def test_repeat_runs_are_byte_identical(capsys):
    _, first, _ = run(capsys, "probe7", "--gen", "petersen", "--format", "json")
    _, second, _ = run(capsys, "probe7", "--gen", "petersen", "--format", "json")
    assert first == second


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (("stabilize", "--gen", "moebius"), "unknown generator"),
        (("stabilize",), "exactly one of --input/--gen"),
        (("stabilize", "--gen", "cube", "--input", "x.g6"), "exactly one of"),
        (("stabilize", "--input", "/nonexistent/g.g6"), "cannot read"),
        (("certify", "--gen", "cube", "--partition", "assembled"), "needs --k >= 3"),
        (("compare", "--gen", "cube"), "exactly one of --input2/--gen2"),
    ],
)
def test_usage_errors(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error: ")
    assert fragment in err


def test_bad_graph_file(capsys, tmp_path):
    bad = tmp_path / "bad.g6"
    bad.write_text("D?\n")
    code, _, err = run(capsys, "stabilize", "--input", str(bad))
    assert code == 2 and "truncated" in err


def test_empty_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    code, _, err = run(capsys, "stabilize", "--input", "-")
    assert code == 2 and "no graph6 line" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert f"pqstab {__version__}" in capsys.readouterr().out


def test_argparse_rejections():
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["stabilize", "--k", "7", "--gen", "cube"])
    with pytest.raises(SystemExit):
        parser.parse_args(["nonsense"])
