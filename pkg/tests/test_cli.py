"""Command-line surface: subcommands, exit codes, JSON schemas.

Exit codes 0 and 1 are exercised on real inputs.  Codes 2 (route
disagreement) and 3 (falsified conjecture) never occur on honest data, so
those paths are checked by stubbing the backend and confirming the wiring.
"""

import io
import json

import pytest

import schubreg.cli as cli
from schubreg.cli import entry
from schubreg.perm import Permutation
from schubreg.reg import ScanResult, regularity

GOLDEN = ("1423576", "7314562")

ANALYZE_KEYS = [
    "cm_status",
    "conjecture_flags",
    "covexillary",
    "dim",
    "discrepant",
    "elapsed_ms",
    "formula_reg",
    "groebner_reg",
    "h_coeffs",
    "height",
    "homogeneous_ideal",
    "kl_degree",
    "method",
    "n",
    "n_vars",
    "reg",
    "v",
    "w",
]


def run(argv):
    buf = io.StringIO()
    code = entry(argv, out=buf)
    return code, buf.getvalue()


def kv(text):
    """Parse the key-value report format back into a dict."""
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(" ")
        out[key] = value.strip()
    return out


def test_analyze_text_report_on_golden_pair():
    code, text = run(["analyze", "--v", GOLDEN[0], "--w", GOLDEN[1], "--method", "both"])
    assert code == 0
    report = kv(text)
    assert report["pair"] == "v=1423576 w=7314562 (n=7)"
    assert report["method"] == "both"
    assert report["reg"] == "2"
    assert report["formula_reg"] == "2"
    assert report["groebner_reg"] == "2"
    assert report["cm_status"] == "proven"
    assert report["covexillary"] == "yes"
    assert (report["dim"], report["height"], report["n_vars"]) == ("8", "10", "18")
    assert report["homogeneous"] == "no"
    assert report["H"] == "1 + 3*q + q^2"


def test_analyze_json_schema_is_frozen():
    code, text = run(["analyze", "--v", GOLDEN[0], "--w", GOLDEN[1], "--json", "--with-kl"])
    assert code == 0
    payload = json.loads(text)
    assert sorted(payload) == ANALYZE_KEYS
    assert payload["v"] == GOLDEN[0] and payload["w"] == GOLDEN[1]
    assert payload["n"] == 7
    assert payload["reg"] == 2 and payload["kl_degree"] == 2
    assert payload["method"] == "formula" and payload["h_coeffs"] is None
    # --ps-order bolts the Hilbert function onto the same payload.
    code, text = run(["analyze", "--v", "123", "--w", "321", "--json", "--ps-order", "3"])
    assert code == 0
    payload = json.loads(text)
    assert sorted(payload) == sorted(ANALYZE_KEYS + ["ps_coeffs", "multiplicity"])
    assert payload["ps_coeffs"] == [1, 3, 6, 10]
    assert payload["multiplicity"] == 1


def test_usage_and_math_errors_exit_1(capsys):
    cases = [
        (["analyze", "--v", "1x3", "--w", "321"], "cannot parse permutation"),
        (["analyze", "--v", "321", "--w", "123"], "not Bruhat-comparable in the required direction"),
        (["analyze", "--v", "1234", "--w", "3412", "--method", "formula"], "3412"),
        (["analyze", "--v", "123", "--w", "321", "--ps-order", "-1"], "must be nonnegative"),
        (["analyze", "--v", "123"], "required"),
        ([], "required"),
        (["scan", "--n", "1"], "need n >= 2"),
        (["scan", "--n", "8"], "not supported"),
        (["scan", "--n", "3", "--checks", "bogus"], "unknown check"),
    ]
    for argv, fragment in cases:
        code, _ = run(argv)
        err = capsys.readouterr().err
        assert code == 1, argv
        assert err.startswith("error:") and fragment in err, argv


def test_budget_flag_and_environment(capsys, monkeypatch):
    slow = ["analyze", "--v", GOLDEN[0], "--w", GOLDEN[1], "--method", "groebner"]
    code, _ = run(slow + ["--budget-ms", "0"])
    assert code == 1
    assert "budget" in capsys.readouterr().err
    monkeypatch.setenv("SCHUBREG_BUDGET_MS", "0")
    assert run(slow)[0] == 1
    capsys.readouterr()
    # An explicit flag wins over the environment.
    code, text = run(slow + ["--budget-ms", "600000"])
    assert code == 0 and kv(text)["reg"] == "2"
    monkeypatch.setenv("SCHUBREG_BUDGET_MS", "abc")
    assert run(slow)[0] == 1
    assert "SCHUBREG_BUDGET_MS must be an integer" in capsys.readouterr().err


def test_scan_text_output():
    code, text = run(["scan", "--n", "3", "--checks", "h-nonneg"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0].split() == ["scan", "n=3", "restrict=all", "pairs=19"]
    assert lines[1].split() == ["maxReg", "0"]
    # Regularity 0 everywhere, so every pair is an argmax.
    assert sum(1 for line in lines if line.startswith("argmax")) == 19
    tally = [line for line in lines if line.startswith("check h-nonneg")]
    assert len(tally) == 1
    assert tally[0].split()[2:] == ["pass=19", "fail=0", "not-checkable=0"]


def test_scan_json_payload():
    code, text = run(["scan", "--n", "4", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert sorted(payload) == [
        "argmax",
        "check_counts",
        "failures",
        "max_is_lower_bound",
        "max_reg",
        "n",
        "pairs",
        "restrict",
    ]
    assert payload["n"] == 4 and payload["restrict"] == "all"
    assert payload["pairs"] == 213 and payload["max_reg"] == 1
    assert payload["max_is_lower_bound"] is False
    assert payload["failures"] == []
    assert {"v": "1234", "w": "4231"} in payload["argmax"]
    code, text = run(["scan", "--n", "4", "--covexillary-only", "--json"])
    payload = json.loads(text)
    assert code == 0 and payload["pairs"] == 199
    assert payload["restrict"] == "covexillary-only" and payload["max_reg"] == 1


def test_scan_cache_file_roundtrip(tmp_path):
    cache = tmp_path / "s3.jsonl"
    code, first = run(["scan", "--n", "3", "--cache", str(cache)])
    assert code == 0
    blob = cache.read_bytes()
    assert len(blob.splitlines()) == 19
    code, second = run(["scan", "--n", "3", "--cache", str(cache)])
    assert code == 0
    assert second == first
    assert cache.read_bytes() == blob


def test_groth_text_report():
    code, text = run(["groth", "--u", "312", "--poly"])
    assert code == 0
    report = kv(text)
    assert report["u"] == "312 (n=3)"
    assert (report["length"], report["degree"], report["min_degree"]) == ("2", "2", "2")
    assert report["vexillary"] == "yes" and report["formula_degree"] == "2"
    assert report["spec_1mq"] == "1 - 2*q + q^2"
    assert report["poly"] == "x_1^2"


def test_groth_json_on_non_vexillary_input():
    code, text = run(["groth", "--u", "21543", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert sorted(payload) == [
        "degree",
        "formula_degree",
        "length",
        "min_degree",
        "n",
        "spec_1mq_coeffs",
        "u",
        "vexillary",
    ]
    assert payload["vexillary"] is False and payload["formula_degree"] is None
    assert (payload["length"], payload["min_degree"], payload["degree"]) == (4, 4, 8)
    assert payload["spec_1mq_coeffs"] == [1, -1, 0, -7, 14, -7, 0, -1, 1]
    code, text = run(["groth", "--u", "21543", "--json", "--poly"])
    assert "poly" in json.loads(text)


def test_verify_lists_every_check():
    code, text = run(["verify", "--v", GOLDEN[0], "--w", GOLDEN[1]])
    assert code == 0
    report = kv(text)
    assert report["reg"] == "2" and report["kl_degree"] == "2"
    for name in (
        "deg-bound",
        "dual-path",
        "h-nonneg",
        "h-semicontinuity",
        "kl-degree",
        "reg-le-deg-p",
        "reg-semicontinuity",
        "finalps-identity",
    ):
        assert "check %s pass" % name in " ".join(text.split()), name


def test_verify_json_on_non_covexillary_pair():
    code, text = run(["verify", "--v", "1234", "--w", "3412", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert sorted(payload) == sorted(ANALYZE_KEYS + ["failures", "finalps_identity"])
    assert payload["finalps_identity"] is None  # needs the covexillary route
    assert payload["failures"] == []
    flags = payload["conjecture_flags"]
    assert flags["h-nonneg"] == "pass" and flags["deg-bound"] == "pass"
    for name in ("dual-path", "kl-degree", "reg-le-deg-p", "reg-semicontinuity"):
        assert flags[name] == "not-checkable"


def test_export_m2_writes_a_deterministic_script(tmp_path, capsys):
    path = tmp_path / "golden.m2"
    code, text = run(["export-m2", "--v", GOLDEN[0], "--w", GOLDEN[1], "-o", str(path)])
    assert code == 0
    assert text.startswith("wrote %s (" % path)
    body = path.read_text()
    for needle in ("tangentCone", "hilbertSeries", "regularity", "z_(5,1)"):
        assert needle in body, needle
    assert "z_5_1" not in body  # would parse as a double subscript in M2
    again = tmp_path / "again.m2"
    run(["export-m2", "--v", GOLDEN[0], "--w", GOLDEN[1], "-o", str(again)])
    assert again.read_text() == body
    # A trivial chart still yields a script, with the expected constants.
    triv = tmp_path / "triv.m2"
    code, _ = run(["export-m2", "--v", "321", "--w", "321", "-o", str(triv)])
    assert code == 0
    assert "the chart ideal is zero" in triv.read_text()
    code, _ = run(["export-m2", "--v", "123", "--w", "321", "-o", str(tmp_path / "no" / "x.m2")])
    assert code == 1
    assert "cannot write" in capsys.readouterr().err


def test_exit_2_when_routes_disagree(monkeypatch, capsys):
    v = Permutation((1, 2, 3))
    w = Permutation((3, 2, 1))
    report = regularity(v, w, method="groebner")
    report.discrepant = True
    report.formula_reg = 99
    monkeypatch.setattr(cli, "regularity", lambda *a, **k: report)
    code, text = run(["analyze", "--v", "123", "--w", "321", "--method", "both"])
    assert code == 2
    assert kv(text)["reg"] == "DISCREPANT"
    code, _ = run(["verify", "--v", "123", "--w", "321"])
    assert code == 2


def test_exit_3_when_a_scan_falsifies_a_check(monkeypatch):
    real = cli.max_reg_scan

    def poisoned(n, **kwargs):
        result = real(n, **kwargs)
        return ScanResult(
            n=result.n,
            restrict=result.restrict,
            max_reg=result.max_reg,
            argmax=result.argmax,
            records=result.records,
            partial=result.partial,
            conjecture_failures=(("123", "321", "h-nonneg"),),
        )

    monkeypatch.setattr(cli, "max_reg_scan", poisoned)
    code, text = run(["scan", "--n", "3"])
    assert code == 3
    falsified = [line for line in text.splitlines() if line.startswith("FALSIFIED")]
    assert len(falsified) == 1
    assert "h-nonneg at v=123 w=321" in falsified[0]
    assert "schubreg verify --v 123 --w 321" in falsified[0]
    code, text = run(["scan", "--n", "3", "--json"])
    assert code == 3
    assert json.loads(text)["failures"] == [{"check": "h-nonneg", "v": "123", "w": "321"}]


def test_entry_defaults_to_stdout(capsys):
    code = entry(["groth", "--u", "21"])
    assert code == 0
    assert "degree" in capsys.readouterr().out


def test_version_flag_uses_argparse_exit(capsys):
    with pytest.raises(SystemExit) as info:
        entry(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("schubreg ")
