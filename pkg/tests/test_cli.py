import csv
import io
import json

import pytest

from ksimplex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None


def test_count_json(capsys):
    code, doc = run_json(capsys, "count", "--a", "3003", "--k", "2")
    assert code == 0
    assert set(doc) == {"command", "params", "result", "elapsed_ms", "version"}
    assert doc["result"]["N"] == 8
    assert doc["result"]["a"] == "3003"


def test_count_two(capsys):
    code, doc = run_json(capsys, "count", "--a", "2", "--k", "5")
    assert code == 0 and doc["result"]["N"] == 10


def test_count_one_rejected(capsys):
    code, out, err = run(capsys, "count", "--a", "1", "--k", "3")
    assert code == 2
    assert "infinitely" in err
    assert out == ""


def test_bad_k(capsys):
    code, _, _ = run(capsys, "count", "--a", "10", "--k", "1")
    assert code == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["count", "--a", "-5", "--k", "2"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["audit", "nonsense"])
    assert e.value.code == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "count", "--a", "1" + "0" * 80, "--k", "7", "--budget", "100")
    assert code == 3
    assert "budget" in err


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("SIMPLEX_CENSUS_BUDGET", "50")
    code, _, _ = run(capsys, "census", "--k", "3", "--layers", "250")
    assert code == 3


def test_byte_identical(capsys):
    _, a = run_json(capsys, "count", "--a", "2671465728531600", "--k", "4")
    _, b = run_json(capsys, "count", "--a", "2671465728531600", "--k", "4")
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert json.dumps(a) == json.dumps(b)
    assert a["result"]["N"] == 180


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--a", "6", "--k", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["N"] == "10"
    assert rows[0]["witnesses"] == "0 1 5:6;0 2 2:3;1 1 1:1"


def test_census(capsys):
    code, doc = run_json(capsys, "census", "--k", "3", "--layers", "3")
    assert code == 0
    assert doc["result"]["by_multiplicity"] == {"3": 1}
    assert doc["result"]["entries_total"] == "10"


def test_census_resume(capsys, tmp_path):
    fresh = run_json(capsys, "census", "--k", "3", "--layers", "40")[1]["result"]
    code, _ = run_json(capsys, "census", "--k", "3", "--layers", "20",
                       "--checkpoint-dir", str(tmp_path))
    assert code == 0
    code, doc = run_json(capsys, "census", "--k", "3", "--layers", "40", "--jobs", "2",
                         "--checkpoint-dir", str(tmp_path), "--resume")
    assert code == 0
    assert doc["result"] == fresh


def test_census_resume_missing(capsys, tmp_path):
    code, _, err = run(capsys, "census", "--k", "2", "--layers", "10",
                       "--checkpoint-dir", str(tmp_path / "none"), "--resume")
    assert code == 2


def test_scan(capsys):
    code, doc = run_json(capsys, "scan", "--k", "2", "--cap", "100000", "--threshold", "6")
    assert code == 0
    assert [h["a"] for h in doc["result"]] == ["120", "210", "1540", "3003", "7140", "11628", "24310"]


def test_sumcheck(capsys):
    code, doc = run_json(capsys, "sumcheck", "--M", "1000", "--k", "2")
    assert code == 0
    r = doc["result"]
    assert r["agree"] and r["sum_via_counts"] == r["sum_via_simplex"]


def test_orders(capsys):
    code, doc = run_json(capsys, "orders", "--M", "500", "--k", "3")
    assert code == 0
    assert doc["result"]["f"] == 1
    assert doc["result"]["g"] + doc["result"]["h"] == 498


@pytest.mark.parametrize(
    "argv, code, status",
    [
        (["audit", "identities"], 0, "confirmed"),
        (["audit", "prop3", "--k", "4", "--m", "28"], 0, "confirmed"),
        (["audit", "prop4", "--k", "7", "--m", "72"], 4, "partially-confirmed"),
        (["audit", "fibonacci"], 0, "confirmed"),
        (["audit", "large-values"], 0, "confirmed"),
        (["audit", "prop2", "--k", "4", "--x", "10000"], 0, "confirmed"),
    ],
)
def test_audit_exit_codes(capsys, argv, code, status):
    got, doc = run_json(capsys, *argv)
    assert got == code
    assert doc["result"]["status"] == status


def test_audit_bad_params(capsys):
    code, _, _ = run(capsys, "audit", "prop3", "--m", "20")
    assert code == 2
