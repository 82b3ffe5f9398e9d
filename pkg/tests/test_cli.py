import io
import json

import pytest

from hyperpack.cli import main
from hyperpack.io import parse_hypergraph, read_hypergraph


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main([str(a) for a in argv], out=out, err=err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return {
        "e4": write("e4.hyp", "h 4 3 1\ne 1 2 3\n"),
        "star": write("star.hyp", "c K13\nh 4 2 3\ne 1 2\ne 1 3\ne 1 4\n"),
        "match": write("match.hyp", "h 4 2 2\ne 1 2\ne 3 4\n"),
        "edge": write("edge.hyp", "h 4 2 1\ne 1 2\n"),
        "n5": write("n5.hyp", "h 5 2 0\n"),
        "dup": write("dup.hyp", "h 4 2 2\ne 1 2\ne 1 2\n"),
        "dir": tmp_path,
    }


def test_check_single_edges(files):
    status, out, _ = run("check", files["e4"], files["e4"])
    assert status == 0
    assert "condition=NAROSKI lhs=1 rhs=4 packs=true" in out
    assert "condition=BETA lhs=2 rhs=3 packs=true beta=1" in out


def test_check_negative(files):
    status, out, _ = run("check", files["star"], files["match"])
    assert status == 1 and "packs=true" not in out


def test_check_structured(files):
    status, out, _ = run("--format", "structured", "check", files["e4"], files["e4"])
    doc = json.loads(out)
    assert doc["exit_status"] == status == 0
    assert {r["condition"] for r in doc["reports"]} == {"NAROSKI", "RRT", "BETA"}


def test_pack_brute_negative(files):
    status, out, _ = run("pack", "--brute", files["star"], files["match"])
    assert status == 1 and "outcome=no-packing-proven" in out


def test_pack_emits_permutation_and_verifies(files):
    status, out, _ = run("pack", "--trace", files["edge"], files["match"])
    assert status == 0
    assert "switch beta=1" in out
    perm = [line for line in out.splitlines() if "->" in line and not line.startswith("switch")]
    assert len(perm) == 4
    p = files["dir"] / "perm.txt"
    p.write_text(out)
    assert run("verify", files["edge"], files["match"], p)[0] == 0
    assert run("verify", files["star"], files["match"], p)[0] == 1


def test_pack_quiet_hides_trace(files):
    _, out, _ = run("--quiet", "pack", "--trace", files["edge"], files["match"])
    assert "switch beta" not in out


def test_pack_unknown_exit(files):
    k = files["dir"] / "k3.hyp"
    k.write_text("h 3 2 3\ne 1 2\ne 1 3\ne 2 3\n")
    status, out, _ = run("pack", "--beta", "1", "--restarts", "2", k, k)
    assert status == 2 and "outcome=unknown" in out


def test_pack_deterministic(files):
    a = run("pack", "--auto", "--seed", "3", "--trace", files["star"], files["match"])
    b = run("pack", "--auto", "--seed", "3", "--trace", files["star"], files["match"])
    assert a == b


def test_parse_error_has_line_number(files):
    status, _, err = run("check", files["star"], files["dup"])
    assert status == 65 and "dup.hyp:3" in err


def test_parameter_mismatch_echoes_both(files):
    status, _, err = run("check", files["star"], files["n5"])
    assert status == 65 and "(n=4, k=2)" in err and "(n=5, k=2)" in err


def test_usage_errors(files):
    assert run()[0] == 64
    assert run("pack", files["star"])[0] == 64
    assert run("pack", "--beta", "1", "--brute", files["star"], files["match"])[0] == 64
    assert run("check", files["dir"] / "missing.hyp", files["star"])[0] == 64


def test_design_round_trip(tmp_path):
    out_file = tmp_path / "fano.hyp"
    status, out, _ = run("design", "--t", 2, "--n", 7, "--k", 3, "--lambda", 1, "--out", out_file)
    assert status == 0 and "blocks=7" in out
    h, comments = parse_hypergraph(out_file.read_text())
    assert comments == ["design t=2 lambda=1"] and h.size == 7
    assert run("design", "--t", 2, "--n", 7, "--k", 3, "--verify", out_file)[0] == 0
    broken = tmp_path / "broken.hyp"
    lines = out_file.read_text().splitlines()
    broken.write_text("\n".join(["h 7 3 6"] + [x for x in lines if x.startswith("e")][1:]) + "\n")
    status, out, _ = run("design", "--t", 2, "--n", 7, "--k", 3, "--verify", broken)
    assert status == 1 and "coverage=0" in out


def test_design_prints_blocks():
    status, out, _ = run("design", "--t", 2, "--n", 7, "--k", 3)
    assert status == 0 and "c design t=2 lambda=1" in out and out.count("\ne ") == 7


def test_design_negative_and_budget():
    status, out, _ = run("design", "--t", 2, "--n", 8, "--k", 3)
    assert status == 1 and "exhausted=false" in out
    status, out, _ = run("design", "--t", 2, "--n", 13, "--k", 4, "--budget", 2)
    assert status == 2 and "budget-exceeded" in out


def test_extremal_even(tmp_path):
    prefix = tmp_path / "p13"
    status, out, _ = run("extremal", "--n", 13, "--k", 4, "--out-prefix", prefix)
    assert status == 0 and "total=68" in out
    h1 = read_hypergraph(f"{prefix}.h1.hyp")
    h2 = read_hypergraph(f"{prefix}.h2.hyp")
    assert h1.size + h2.size == 68
    assert "certified=true" in (tmp_path / "p13.cert.txt").read_text()


def test_extremal_odd_and_padded(tmp_path):
    status, out, _ = run("extremal", "--n", 21, "--k", 3, "--odd-t", 3, "--out-prefix", tmp_path / "o")
    assert status == 0 and "total=127" in out
    status, out, _ = run("extremal", "--n", 14, "--k", 4, "--pad", 1, "--out-prefix", tmp_path / "p")
    assert status == 1 and "certified=false" in out
    cert = (tmp_path / "p.cert.txt").read_text()
    assert "packing:" in cert and "ceil(r/alpha)+1" in cert


def test_extremal_bad_parameters(tmp_path):
    assert run("extremal", "--n", 7, "--k", 2, "--out-prefix", tmp_path / "x")[0] == 65
    assert run("extremal", "--n", 13, "--k", 4, "--odd-t", 2, "--out-prefix", tmp_path / "x")[0] == 64


def test_bounds_graph():
    status, out, _ = run("bounds", "--n", 4, "--k", 2)
    assert status == 0 and "m(4,2)=5" in out and "lower_bound=5" in out


def test_bounds_even_and_odd():
    _, out, _ = run("bounds", "--n", 13, "--k", 4)
    assert "upper_bound=68" in out
    _, out, _ = run("bounds", "--n", 27, "--k", 3)
    assert "upper_bound=178" in out and "odd_exponent=5/3" in out
    _, out, _ = run("bounds", "--n", 8, "--k", 4)
    assert "upper_bound=unavailable" in out


def test_structured_is_byte_identical(files):
    a = run("--format", "structured", "pack", files["star"], files["match"])
    b = run("--format", "structured", "pack", files["star"], files["match"])
    assert a == b
    json.loads(a[1])
