import json

import pytest

from monorel.cli import main
from monorel.problems import (
    ProblemFormatError,
    parse_point,
    parse_problem_text,
    parse_seq,
    subspace_problem,
    write_problem_text,
)
from monorel.pairing import Subspace

DIAG_FILE = """kind subspace
n 1
basis 1 1
"""

CONE_FILE = """kind doublecone
n 2
gen 0 1 1 1
gen 1 1 1 0
gen 1 0 1 0
"""

SUM_FILE = """kind sum
n 1
m 1
mrow 1 1
nrow 1 1
arow 1
"""


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def diag(tmp_path):
    p = tmp_path / "diag.txt"
    p.write_text(DIAG_FILE)
    return str(p)


@pytest.fixture
def cone(tmp_path):
    p = tmp_path / "cone.txt"
    p.write_text(CONE_FILE)
    return str(p)


# ---------------------------------------------------------------- parsing


def test_round_trip_byte_identical():
    pf = parse_problem_text(DIAG_FILE)
    assert write_problem_text(pf) == DIAG_FILE
    pf2 = parse_problem_text(CONE_FILE)
    assert write_problem_text(pf2) == CONE_FILE
    pf3 = parse_problem_text(SUM_FILE)
    assert write_problem_text(pf3) == SUM_FILE


def test_canonical_writer_from_subspace():
    sub = Subspace.from_vectors(1, [(2, 2)])
    text = write_problem_text(subspace_problem(sub))
    assert text == DIAG_FILE


def test_parse_rejects_garbage():
    with pytest.raises(ProblemFormatError):
        parse_problem_text("kind nope\nn 1\n")
    with pytest.raises(ProblemFormatError):
        parse_problem_text("n 1\nbasis 1 1\n")
    with pytest.raises(ProblemFormatError):
        parse_problem_text("kind subspace\nn 1\nbasis 1\n")
    with pytest.raises(ProblemFormatError):
        parse_problem_text("kind subspace\nn 1\nbasis 1 1/0\n")


def test_parse_point_and_seq():
    z = parse_point("1/2, -3", 1)
    assert z.x == (parse_point("1/2 -3", 1).x)
    with pytest.raises(ProblemFormatError):
        parse_point("1,2,3", 1)
    s = parse_seq(["1:1", "2:-1/2"])
    assert s.coeff(2) == -parse_seq(["2:1/2"]).coeff(2)
    with pytest.raises(ProblemFormatError):
        parse_seq(["nonsense"])


# ---------------------------------------------------------------- subcommands


def test_classify_diag(capsys, diag):
    rc, out, _ = run(capsys, "classify", diag, "--json")
    assert rc == 0
    doc = json.loads(out)
    flags = doc["flags"]
    for name in ("monotone", "ni", "unique", "maximal"):
        assert flags[name]["value"] is True
        assert flags[name]["tier"] == "exact"
        assert flags[name]["criterion"]


def test_classify_zero_subspace(capsys, tmp_path):
    p = tmp_path / "zero.txt"
    p.write_text("kind subspace\nn 1\n")
    rc, out, _ = run(capsys, "classify", str(p), "--json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["flags"]["skew"]["value"] is True
    assert doc["flags"]["unique"]["value"] is False
    assert doc["flags"]["maximal"]["value"] is False


def test_classify_cone_reports_hull(capsys, cone):
    rc, out, _ = run(capsys, "classify", cone, "--json", "--samples", "1500")
    doc = json.loads(out)
    assert rc == 0
    assert doc["flags"]["monotone"]["value"] is True
    assert doc["hull_monotone"] is False
    assert doc["hull_witness"] == {"x": ["-1", "-1"], "y": ["0", "1"]}


def test_eval_fitz_penot_sigma(capsys, diag):
    rc, out, _ = run(capsys, "eval", diag, "1,3", "--which", "fitz", "--json")
    assert rc == 0 and json.loads(out)["value"] == "4"
    rc, out, _ = run(capsys, "eval", diag, "1,0", "--which", "penot", "--json")
    assert rc == 0 and json.loads(out)["value"] == "inf"
    rc, out, _ = run(capsys, "eval", diag, "1,3", "--which", "sigma", "--json")
    assert rc == 0 and json.loads(out)["value"] == "16"


def test_eval_skew_line(capsys, tmp_path):
    p = tmp_path / "skew.txt"
    p.write_text("kind subspace\nn 1\nbasis 1 0\n")
    rc, out, _ = run(capsys, "eval", str(p), "5,0", "--json")
    assert rc == 0 and json.loads(out)["value"] == "0"


def test_extend_zero(capsys, tmp_path):
    p = tmp_path / "zero.txt"
    p.write_text("kind subspace\nn 1\n")
    rc, out, _ = run(capsys, "extend", str(p), "--json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["dim"] == 1
    assert doc["contains_input"] is True
    assert doc["flags"]["maximal"]["value"] is True


def test_extend_rejects_non_monotone(capsys, tmp_path):
    p = tmp_path / "full.txt"
    p.write_text("kind subspace\nn 1\nbasis 1 0\nbasis 0 1\n")
    rc, out, err = run(capsys, "extend", str(p))
    assert rc == 1 and "monotone" in err


def test_mrt(capsys, diag):
    rc, out, _ = run(capsys, "mrt", diag, "1,1", "--json")
    assert rc == 0 and json.loads(out)["in_plus"] is True
    rc, out, _ = run(capsys, "mrt", diag, "1,0", "--json")
    assert rc == 0 and json.loads(out)["in_plus"] is False


def test_sum(capsys, tmp_path):
    p = tmp_path / "sum.txt"
    p.write_text(SUM_FILE)
    rc, out, _ = run(capsys, "sum", str(p), "--json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["basis"] == [["1", "2"]]
    assert doc["flags"]["maximal"]["value"] is True


def test_gossez_apply(capsys):
    rc, out, _ = run(capsys, "gossez", "apply", "1:1", "--json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["head"] == ["0"] and doc["tail"] == "-1"


def test_gossez_apply_empty(capsys):
    rc, out, _ = run(capsys, "gossez", "apply", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["head"] == [] and doc["tail"] == "0"


def test_gossez_identities(capsys):
    rc, out, _ = run(
        capsys, "gossez", "identities", "--x", "1:1", "2:-1", "--v", "1:1", "--json"
    )
    doc = json.loads(out)
    assert rc == 0
    assert doc["all_hold"] is True
    assert doc["checks"]["nonskew_value"]["residual"] == "0"


def test_oracle_subspace(capsys, diag):
    rc, out, _ = run(capsys, "oracle", diag, "--samples", "100", "--json")
    doc = json.loads(out)
    assert rc == 0
    assert doc["monotone_pairs"]["passed"] is True
    assert doc["maximal_probe"]["passed"] is True


def test_oracle_cone(capsys, cone):
    rc, out, _ = run(capsys, "oracle", cone, "--samples", "100", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["monotone_pairs"]["passed"] is True


def test_bad_file_exits_one(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("kind subspace\nbasis 1 1\n")
    rc, _, err = run(capsys, "classify", str(p))
    assert rc == 1 and "error" in err


def test_missing_file_exits_one(capsys):
    rc, _, err = run(capsys, "classify", "/does/not/exist")
    assert rc == 1


def test_wrong_kind_for_subcommand(capsys, cone):
    rc, _, err = run(capsys, "extend", cone)
    assert rc == 1


def test_determinism(capsys, cone):
    rc1, out1, _ = run(capsys, "classify", cone, "--json", "--seed", "5",
                       "--samples", "500")
    rc2, out2, _ = run(capsys, "classify", cone, "--json", "--seed", "5",
                       "--samples", "500")
    assert rc1 == rc2 == 0 and out1 == out2
