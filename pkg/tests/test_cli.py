import json
import subprocess
import sys

import pytest

from endoq import scheduling
from endoq.cli import EXIT_CAP, EXIT_EMPTY_CORE, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from endoq.verify import default_fixtures_dir

FIX = default_fixtures_dir()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_private_game_table(capsys):
    code, out, _ = run(capsys, "game", "--problem", str(FIX / "example2.json"),
                       "--family", "private", "--variant", "swaps")
    assert code == EXIT_OK
    assert json.loads(out)["worth"]["2,4,5"] == "38"


def test_public_game_table(capsys):
    code, out, _ = run(capsys, "game", "--problem", str(FIX / "example3.json"),
                       "--family", "public")
    assert code == EXIT_OK
    assert json.loads(out)["worth"]["1,2,3,4"] == "37"


def test_single_agent_queueing_table(capsys, tmp_path):
    p = tmp_path / "one.json"
    p.write_text('{"weights": {"ann": 7}, "machine_cost": "3/2"}')
    code, out, _ = run(capsys, "game", "--problem", str(p))
    assert code == EXIT_OK
    assert json.loads(out)["worth"] == {"ann": "17/2"}
    code, out, _ = run(capsys, "game", "--problem", str(p), "--format", "text")
    assert "{ann}" in out and "17/2" in out


@pytest.mark.parametrize("fixture, family, extra, want", [
    ("example2", "private", [], EXIT_EMPTY_CORE),
    ("example2", "private", ["--variant", "no-swaps"], EXIT_EMPTY_CORE),
    ("example3", "public", [], EXIT_EMPTY_CORE),
    ("example1", "queueing", ["--machine-cost", "50"], EXIT_OK),
    ("example1", "reduced", ["--machine-cost", "50"], EXIT_OK),
])
def test_core_exit_codes(capsys, fixture, family, extra, want):
    code, out, _ = run(capsys, "core", "--problem", str(FIX / f"{fixture}.json"),
                       "--family", family, *extra)
    assert code == want
    data = json.loads(out)
    assert data["verdict"] == ("empty" if want == EXIT_EMPTY_CORE else "nonempty")


def test_core_text_shows_the_contradiction(capsys):
    code, out, _ = run(capsys, "core", "--problem", str(FIX / "example2.json"),
                       "--family", "private", "--format", "text")
    assert code == EXIT_EMPTY_CORE
    assert "core empty" in out and "97 > 92" in out


def test_regimes(capsys):
    code, out, _ = run(capsys, "regimes", "--problem", str(FIX / "example1.json"))
    assert code == EXIT_OK
    regions = json.loads(out)["regions"]
    assert regions[-1]["hi"] is None
    code, out, _ = run(capsys, "regimes", "--problem", str(FIX / "example1.json"),
                       "--format", "text")
    assert "core empty" in out


def test_regimes_rejects_requeueing_input(capsys):
    code, out, err = run(capsys, "regimes", "--problem", str(FIX / "example2.json"))
    assert code == EXIT_INPUT and out == "" and "initial" in err


@pytest.mark.parametrize("argv", [
    ["game", "--problem", "/nonexistent.json"],
    ["game"],
    ["game", "--problem", str(FIX / "example1.json"), "--family", "private"],
    ["game", "--problem", str(FIX / "example2.json"), "--variant", "sideways"],
    ["game", "--problem", str(FIX / "example1.json"), "--machine-cost", "x"],
    ["bogus"],
])
def test_bad_input_exits_2_without_output(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_INPUT and out == ""


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"weights": [1, -2], "machine_cost": 1}')
    code, out, _ = run(capsys, "core", "--problem", str(p))
    assert code == EXIT_INPUT and out == ""


def test_cap_exits_3(capsys):
    code, out, _ = run(capsys, "game", "--problem", str(FIX / "example2.json"),
                       "--family", "private", "--max-n", "3")
    assert code == EXIT_CAP and out == ""


def test_output_is_deterministic(capsys):
    argv = ["core", "--problem", str(FIX / "example3.json"), "--family", "public"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
    argv = ["oracle-check", "--seed", "3", "--instances", "10"]
    first = run(capsys, *argv)
    assert first[0] == EXIT_OK
    assert run(capsys, *argv) == first


KNOWN = {"queue.regime_empty_15_20", "queue.machines_20_35", "private.variants_agree_elsewhere"}


def test_verify_paper_reports_the_known_mismatches(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == EXIT_MISMATCH
    failed = {c["claim"] for c in json.loads(out)["claims"] if not c["passed"]}
    assert failed == KNOWN


def test_verify_paper_localises_a_perturbed_weight(capsys, tmp_path):
    for src in FIX.glob("*.json"):
        (tmp_path / src.name).write_text(src.read_text())
    doc = json.loads((tmp_path / "example2.json").read_text())
    doc["weights"][4] = 6
    (tmp_path / "example2.json").write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify-paper", "--fixtures-dir", str(tmp_path))
    assert code == EXIT_MISMATCH
    failed = {c["claim"] for c in json.loads(out)["claims"] if not c["passed"]}
    new = failed - KNOWN
    assert new and all(name.startswith("private.") for name in new)
    assert "private.swaps_values" in new


def test_oracle_check_catches_an_off_by_one_ceiling(capsys, monkeypatch):
    monkeypatch.setattr(scheduling, "ceil_div", lambda a, b: (a + b) // b)
    code, out, _ = run(capsys, "oracle-check", "--instances", "20")
    assert code == EXIT_MISMATCH
    data = json.loads(out)
    assert data["minimal_failure"]["check"] == "brute_force_equivalence"
    assert "weights" in data["minimal_failure"]["problem"]


def test_oracle_check_on_single_agents(capsys):
    code, out, _ = run(capsys, "oracle-check", "--max-n", "1", "--instances", "5")
    assert code == EXIT_OK and json.loads(out)["passed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "endoq", "game", "--problem",
                           str(FIX / "example1.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "cost"
