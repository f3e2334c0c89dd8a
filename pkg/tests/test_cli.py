import json

import jsonschema
import pytest

from spinsym.cli import main, parse_spin
from spinsym.reports import Report, item, validate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    lines = [json.loads(line) for line in text.splitlines() if line]
    for r in lines:
        validate(r)
    return lines[:-1], lines[-1]


def test_spin_parsing():
    assert parse_spin("3/2") == 3 and parse_spin("1") == 2 and parse_spin("1/2") == 1
    with pytest.raises(Exception):
        parse_spin("1/3")


def test_killing_command(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "json", "--cache-dir", str(tmp_path), "killing", "--type", "1,1")
    items, summary = records(out)
    assert code == 0 and items[0]["rank"] == 15 and summary["pass"]
    assert list(tmp_path.glob("killing_1_1_*.json"))


def test_killing_without_formula(capsys):
    code, out, err = run(capsys, "killing", "--type", "2,0", "--no-cache")
    assert code == 4 and "10" in out and "no closed-form" in err


def test_verify_conformal_spin_three_halves(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "--spin", "3/2", "--family", "conformal")
    items, summary = records(out)
    assert code == 0 and summary["passed"] == 15 == summary["total"]


def test_corrupted_chiral_exits_one(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "--spin", "1/2", "--family", "chiral",
                       "--corrupt", "c11")
    items, summary = records(out)
    assert code == 1 and summary["failed"] == 7


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--spin", "1", "--family", "scaling", "--corrupt", "c21")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "--family", "nonsense"])
    assert e.value.code == 2


def test_capacity_error(capsys):
    code, _, err = run(capsys, "verify", "--spin", "1", "--family", "chiral", "--order", "1")
    assert code == 3 and "--order" in err


def test_reports_are_deterministic(capsys):
    argv = ["--format", "json", "--seed", "4", "verify", "--spin", "1/2", "--family", "lie", "--samples", "3"]
    first = run(capsys, *argv)[1]
    assert first == run(capsys, *argv)[1]
    items, _ = records(first)
    assert len(items) == 3 and all(r["order"] == 2 for r in items)


def test_dimensions_table(capsys):
    code, out, _ = run(capsys, "dimensions", "--spin", "1", "--max-r", "3")
    assert code == 0
    for v in ("2", "32", "270", "1248"):
        assert v in out
    code, out, _ = run(capsys, "--format", "json", "dimensions", "--spin", "1/2", "--max-r", "1", "--constructive")
    items, _ = records(out)
    assert [r["rank"] for r in items] == [2, 52]
    code, out, _ = run(capsys, "--format", "json", "dimensions", "--theory", "dirac", "--max-r", "1",
                       "--constructive")
    assert records(out)[0][0]["rank"] == 208


def test_schema_rejects_malformed_records():
    with pytest.raises(jsonschema.ValidationError):
        validate({"record": "item", "family": "x"})
    rec = item("verify", "x", {}, 1, True)
    rec["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        validate(rec)
    rep = Report("verify", {})
    rep.add(item("verify", "x", {"a": (1, 2)}, 0, False, 3))
    assert rep.finish(1)["failed"] == 1


def test_global_flags_after_subcommand(capsys):
    before = run(capsys, "--format", "json", "--seed", "5", "verify", "--spin", "1/2", "--family", "conformal")
    after = run(capsys, "verify", "--spin", "1/2", "--family", "conformal", "--format", "json", "--seed", "5")
    assert before == after and before[0] == 0
