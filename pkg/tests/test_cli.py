"""Command-line entry: subcommands, formats, exit codes."""

import json

import pytest

from intersets.cli import main
from intersets.serialize import TSV_COLUMNS, report_from_json

FAMILY_JSON = {
    "family": "tail",
    "core": {
        "kind": "union",
        "parts": [
            {"kind": "congruence", "modulus": "4", "residues": ["0"]},
            {"kind": "finite", "elements": ["1"]},
        ],
    },
}


@pytest.fixture
def family_file(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps(FAMILY_JSON))
    return str(path)


def test_hset_tsv(family_file, capsys):
    assert main(["hset", "--family", family_file, "--hmax", "4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split("\t") == list(TSV_COLUMNS)
    assert len(lines) == 5
    statuses = [ln.split("\t")[1] for ln in lines[1:]]
    assert statuses == ["CertifiedIn", "CertifiedOut", "CertifiedOut", "CertifiedIn"]


def test_hset_json_round_trips(family_file, capsys):
    assert main(["hset", "--family", family_file, "--hmax", "3",
                 "--format", "json"]) == 0
    rep = report_from_json(json.loads(capsys.readouterr().out))
    assert rep.statuses == ("CertifiedIn", "CertifiedOut", "CertifiedOut")
    assert rep.verdicts[1].witness == -1


def test_hset_out_file(family_file, tmp_path, capsys):
    out = tmp_path / "report.tsv"
    assert main(["hset", "--family", family_file, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().startswith("h\tstatus")


def test_hset_missing_file(tmp_path, capsys):
    assert main(["hset", "--family", str(tmp_path / "absent.json")]) == 2
    assert "error" in capsys.readouterr().err.lower()


def test_hset_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["hset", "--family", str(bad)]) == 2


def test_verify_pass(capsys):
    assert main(["verify", "countable", "--hmax", "3"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "[FAIL]" not in out
    assert out.strip().endswith("checks)")


def test_verify_fail_exit_code(capsys):
    # a window this small makes the coverage claims fail honestly
    assert main(["verify", "sharp", "--window", "0:4"]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_verify_json(capsys):
    assert main(["verify", "countable", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["scenario"] == "countable"
    assert doc["ok"] is True
    assert all(a["passed"] for a in doc["assertions"])


def test_verify_unknown_scenario():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "galaxies"])
    assert exc.value.code == 2


def test_bad_window_format(family_file, capsys):
    # argparse surfaces value errors itself, with the same exit code
    for bad in ("abc", "5:1"):
        with pytest.raises(SystemExit) as exc:
            main(["hset", "--family", family_file, "--window", bad])
        assert exc.value.code == 2


def test_negative_window_lo(family_file, capsys):
    # leading '-' with a ':' in the value must still parse
    assert main(["hset", "--family", family_file, "--window", "-100:100"]) == 0


def test_sumset_closed(capsys):
    assert main(["sumset", "--set", "halftail:2", "--h", "3"]) == 0
    line = capsys.readouterr().out.strip()
    tag, payload = line.split("\t")
    assert tag == "closed"
    assert json.loads(payload) == {"kind": "half-tail", "threshold": "6"}


def test_sumset_windowed_members(capsys):
    assert main(["sumset", "--set", "finite:0,1,3", "--h", "2",
                 "--window", "-2:8"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x"
    assert [int(v) for v in lines[1:]] == [0, 1, 2, 3, 4, 6]


def test_sumset_no_closed_form_hint(capsys):
    # lazy intersections have no sum rule and no window was given
    assert main(["sumset", "--set", "all", "--h", "0"]) == 2


def test_repfn_tsv_golden(capsys):
    assert main(["repfn", "--set", "finite:0,1,3", "--h", "2",
                 "--window", "0:6"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x\tcount\texact"
    counts = [ln.split("\t")[1] for ln in lines[1:]]
    assert counts == ["1", "2", "1", "2", "2", "0", "1"]


def test_repfn_infinite(capsys):
    assert main(["repfn", "--set", "congruence:2:0", "--h", "2",
                 "--target", "4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[1] == "4\tinf\tyes"


def test_repfn_cap_exit_code(capsys):
    assert main(["repfn", "--set", "halftail:0", "--h", "2",
                 "--target", "1000000"]) == 3
    assert "cap" in capsys.readouterr().err.lower()


def test_repfn_needs_target_or_window(capsys):
    assert main(["repfn", "--set", "finite:0,1", "--h", "2"]) == 2
