"""Check records, report documents, and individual suite checks."""

import json

import pytest

from hetsol.reportio import (
    REPORT_SCHEMA,
    make_report,
    normalized_json,
    records_to_csv,
    report_to_json,
    write_csv,
    write_report,
)
from hetsol.suites import (
    CheckRecord,
    SuiteConfig,
    check_background_residual,
    check_classification,
    check_dictionary_roundtrip,
    check_formulations,
    run_verify_suite,
)


def _rec(name="demo/check", passed=True, seconds=0.25):
    return CheckRecord(name, "exact", 3, 0.0, True, passed, seconds, "note text")


# ---------------------------------------------------------------------------
# Records and reports


def test_check_record_as_dict_fields():
    d = _rec().as_dict()
    assert d == {
        "name": "demo/check", "mode": "exact", "trials": 3, "defect": 0.0,
        "exact": True, "passed": True, "seconds": 0.25, "note": "note text",
    }


def test_report_document_shape():
    rep = make_report("verify", "exact", 7, [_rec(), _rec("demo/other")],
                      config={"trials": 3})
    doc = json.loads(report_to_json(rep))
    assert doc["schema"] == REPORT_SCHEMA
    assert doc["command"] == "verify"
    assert doc["summary"] == {"total": 2, "passed": 2, "failed": 0,
                              "all_passed": True}
    assert doc["config"] == {"trials": 3}
    assert {r["name"] for r in doc["records"]} == {"demo/check", "demo/other"}
    assert rep.passed


def test_report_failure_is_visible_in_summary():
    rep = make_report("verify", "exact", 7, [_rec(passed=False)])
    assert not rep.passed
    doc = json.loads(report_to_json(rep))
    assert doc["summary"]["failed"] == 1
    assert not doc["summary"]["all_passed"]


def test_normalized_json_strips_only_volatile_fields():
    r1 = make_report("verify", "exact", 7, [_rec(seconds=0.1)], {"trials": 3})
    r2 = make_report("verify", "exact", 7, [_rec(seconds=9.9)], {"trials": 3})
    j1, j2 = report_to_json(r1), report_to_json(r2)
    assert j1 != j2  # timings differ
    assert normalized_json(j1) == normalized_json(j2)
    kept = json.loads(normalized_json(j1))
    assert "timings" not in kept
    assert all("seconds" not in r for r in kept["records"])
    assert kept["records"][0]["defect"] == 0.0  # substance is preserved


def test_csv_export(tmp_path):
    text = records_to_csv([_rec(), _rec("demo/other", passed=False)])
    lines = text.strip().splitlines()
    assert lines[0] == "name,mode,trials,defect,exact,passed,seconds,note"
    assert len(lines) == 3
    assert lines[1].startswith("demo/check,exact,3,")
    path = tmp_path / "records.csv"
    write_csv([_rec()], str(path))
    assert path.read_text().splitlines()[0] == lines[0]


def test_write_report_round_trips(tmp_path):
    rep = make_report("verify", "float", 3, [_rec()])
    path = tmp_path / "report.json"
    write_report(rep, str(path))
    assert json.loads(path.read_text())["seed"] == 3


# ---------------------------------------------------------------------------
# Suite configuration and individual checks


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(tol=0.0)
    with pytest.raises(ValueError):
        SuiteConfig(mode="symbolic")


def test_dictionary_roundtrip_check_both_modes():
    for mode in ("exact", "float"):
        rec = check_dictionary_roundtrip(SuiteConfig(seed=7, trials=5, mode=mode))
        assert rec.passed
        assert rec.mode == mode
        assert rec.trials == 5
        assert rec.exact == (mode == "exact")
        if mode == "exact":
            assert rec.defect == 0.0


def test_formulations_check_small():
    rec = check_formulations(SuiteConfig(seed=7, trials=3))
    assert rec.passed and rec.exact


def test_classification_check_small():
    rec = check_classification(SuiteConfig(seed=7, trials=3))
    assert rec.passed
    assert rec.name == "classify/constants"


def test_background_residual_check_small():
    rec = check_background_residual(SuiteConfig(seed=7, trials=3))
    assert rec.passed


def test_checks_are_deterministic_modulo_seconds():
    cfg = SuiteConfig(seed=7, trials=3)
    for fn in (check_dictionary_roundtrip, check_classification):
        d1 = fn(cfg).as_dict()
        d2 = fn(cfg).as_dict()
        d1.pop("seconds")
        d2.pop("seconds")
        assert d1 == d2


def test_run_verify_suite_all_green():
    rows = [r.as_dict() for r in run_verify_suite(SuiteConfig(seed=7, trials=2))]
    assert len(rows) == 16
    assert all(d["passed"] for d in rows)
    names = [d["name"] for d in rows]
    assert names == sorted(names)  # stable, ordered check ids
