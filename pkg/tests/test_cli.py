import json
import subprocess
import sys
from pathlib import Path

import pytest

from toricjets.cli import main

GOLDEN = Path(__file__).parent / "golden"


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize(
    "p,q,m",
    [(2, 3, 5), (3, 5, 4), (5, 7, 3)],
)
def test_analyze_json_matches_golden(capsys, p, q, m):
    code, out, err = _run(
        capsys,
        ["analyze", "--p", str(p), "--q", str(q), "--m", str(m), "--format", "json"],
    )
    assert code == 0 and err == ""
    want = (GOLDEN / f"analyze_p{p}_q{q}_m{m}.json").read_text()
    assert out == want


def test_analyze_json_is_canonical(capsys):
    code, out, _ = _run(capsys, ["analyze", "--p", "3", "--q", "5", "--m", "4",
                                 "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_analyze_md_default(capsys):
    code, out, _ = _run(capsys, ["analyze", "--p", "3", "--q", "5", "--m", "4"])
    assert code == 0
    assert out.startswith("# analyze p=3 q=5 m=4\n")
    assert "| (2,1,1) | (2,1,1) (3,1,2) | 1 | 10 | 10 |" in out
    assert "x1*x4 = x2*x3^2" in out
    assert "- N enumerated: 4" in out


def test_analyze_csv(capsys):
    code, out, _ = _run(capsys, ["analyze", "--p", "3", "--q", "5", "--m", "4",
                                 "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "canonical_i,canonical_s,canonical_l,s,codim,dim,members"
    assert lines[1] == "2,1,1,1,10,10,2:1:1;3:1:2"
    assert len(lines) == 5


def test_analyze_rejects_bad_input(capsys):
    for argv, fragment in [
        (["analyze", "--p", "4", "--q", "6", "--m", "2"], "gcd"),
        (["analyze", "--p", "5", "--q", "3", "--m", "2"], "0 < p < q"),
        (["analyze", "--p", "1", "--q", "7", "--m", "2"], "embedding dimension"),
        (["analyze", "--p", "2", "--q", "3", "--m", "0"], "m must be >= 1"),
    ]:
        code, out, err = _run(capsys, argv)
        assert code == 2
        assert out == ""
        assert fragment in err


def test_witness_json_frozen(capsys):
    code, out, _ = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "4",
                                 "--i", "3", "--s", "1", "--l", "2",
                                 "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["v"] == [1, 1]
    assert doc["inside"] is True
    assert doc["member"] is True
    assert doc["orders"] == [1, 1, 1, 2]
    assert doc["realized"] == [1, 2]
    assert doc["over_origin"] is True
    assert doc["jet"]["characteristic"] == 0
    assert doc["jet"]["coords"][0] == ["0/1", "1/1", "0/1", "0/1", "0/1"]
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_witness_md(capsys):
    code, out, _ = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "4",
                                 "--i", "3", "--s", "1", "--l", "1"])
    assert code == 0
    assert "- contact vector v: (2, 3)" in out
    assert "x1 = t^3" in out
    assert "x4 = t" in out
    assert "- realized (s, l): (1, 1)" in out


def test_witness_censored_order_serialization(capsys):
    # (3,5) label (3,1,1) has v=(2,3) with <u1,v>=3 above m=2: shown as above_m
    code, out, _ = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "2",
                                 "--i", "3", "--s", "1", "--l", "1",
                                 "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["orders"] == ["above_m", 2, 1, 1]
    assert doc["realized"] == [1, 1]


def test_witness_csv(capsys):
    code, out, _ = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "4",
                                 "--i", "3", "--s", "1", "--l", "2",
                                 "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("p,q,m,i,s,l,v1,v2,inside,member,orders,"
                        "realized_s,realized_l")
    assert lines[1] == "3,5,4,3,1,2,1,1,yes,yes,1;1;1;2,1,2"


def test_witness_rejects_l_outside_cap(capsys):
    code, out, err = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "4",
                                   "--i", "2", "--s", "1", "--l", "2"])
    assert code == 2
    assert "[1, 1]" in err  # the valid interval for i=2, s=1


def test_witness_rejects_bad_i(capsys):
    code, _, err = _run(capsys, ["witness", "--p", "3", "--q", "5", "--m", "4",
                                 "--i", "4", "--s", "1", "--l", "1"])
    assert code == 2


def test_verify_md_passes(capsys):
    code, out, _ = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "2",
                                 "--field", "3"])
    assert code == 0
    assert "- [PASS] grading: 3 generators checked" in out
    assert "- [PASS] order_propagation_s1: full space at m=1" in out
    assert "- [PASS] stratum_count_prediction:" in out
    assert "- result: PASS" in out


def test_verify_json_fields(capsys):
    code, out, _ = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                                 "--field", "3", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"] == "pass"
    assert doc["points_visited"] == 3 ** 4 + 3 ** 8
    assert isinstance(doc["runtime_ms"], int)
    names = [c["name"] for c in doc["checks"]]
    assert names == [
        "grading",
        "monomial_arc_witnesses",
        "count_agreement",
        "order_propagation_s1",
        "stratum_nonempty",
        "stratum_min_order",
        "stratum_disjoint",
        "no_impossible_profiles",
        "stratum_count_prediction",
    ]
    assert all(c["status"] == "pass" for c in doc["checks"])
    experimental = doc["checks"][-1]
    assert experimental["hard"] is False
    assert doc["strata"] == [
        {"count": 36, "label": [2, 1, 1], "match": True, "predicted": 36},
        {"count": 36, "label": [3, 1, 1], "match": True, "predicted": 36},
    ]
    assert doc["coverage"]["total"] == 81


def test_verify_strict_marks_prediction_hard(capsys):
    code, out, _ = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                                 "--field", "3", "--format", "json", "--strict"])
    assert code == 0  # predictions match, so strict still passes
    doc = json.loads(out)
    assert doc["checks"][-1]["name"] == "stratum_count_prediction"
    assert doc["checks"][-1]["hard"] is True


def test_verify_csv(capsys):
    code, out, _ = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                                 "--field", "3", "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "check,status,hard,detail"
    assert lines[1].startswith("grading,pass,yes,")


def test_verify_guard_flag(capsys):
    code, out, err = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "2",
                                   "--field", "3", "--guard", "100"])
    assert code == 3
    assert "531441" in err
    assert "raise the guard" in err


def test_verify_guard_env(capsys, monkeypatch):
    monkeypatch.setenv("TORICJETS_GUARD", "100")
    code, _, err = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "2",
                                 "--field", "3"])
    assert code == 3
    assert "531441" in err
    # explicit flag wins over the environment
    monkeypatch.setenv("TORICJETS_GUARD", "100")
    code, _, _ = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                               "--field", "2", "--guard", str(1 << 26)])
    assert code == 0


def test_verify_guard_env_must_be_integer(capsys, monkeypatch):
    monkeypatch.setenv("TORICJETS_GUARD", "plenty")
    code, _, err = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                                 "--field", "3"])
    assert code == 2
    assert "TORICJETS_GUARD" in err


def test_verify_rejects_composite_field(capsys):
    code, _, err = _run(capsys, ["verify", "--p", "2", "--q", "3", "--m", "1",
                                 "--field", "6"])
    assert code == 2
    assert "prime" in err


def test_verify_jobs_flag(capsys):
    code_seq, out_seq, _ = _run(capsys, ["verify", "--p", "3", "--q", "5", "--m", "2",
                                         "--field", "2", "--format", "csv"])
    code_par, out_par, _ = _run(capsys, ["verify", "--p", "3", "--q", "5", "--m", "2",
                                         "--field", "2", "--format", "csv",
                                         "--jobs", "2"])
    assert code_seq == code_par == 0
    assert out_seq == out_par


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--p", "2", "--q", "3"])  # missing --m
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--p", "2", "--q", "3", "--m", "2", "--format", "xml"])
    assert exc.value.code == 2


def test_console_script_roundtrip():
    proc = subprocess.run(
        [sys.executable, "-m", "toricjets.cli", "analyze", "--p", "5", "--q", "7",
         "--m", "3", "--format", "json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "analyze_p5_q7_m3.json").read_text()
