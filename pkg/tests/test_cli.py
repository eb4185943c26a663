import json
import subprocess
import sys

import pytest

from hallp1 import cli, qrel
from hallp1.hallhopf import case, report


def _run(capsys, *argv):
    code = cli.run(list(argv))
    return code, capsys.readouterr()


def test_zeta(capsys):
    code, out = _run(capsys, "zeta", "--q", "2", "--terms", "5")
    assert code == 0
    assert [int(x) for x in json.loads(out.out)] == [1, 3, 7, 15, 31]


def test_zeta_allows_prime_powers(capsys):
    code, _ = _run(capsys, "zeta", "--q", "4")
    assert code == 0


def test_mul_line_bundles(capsys):
    code, out = _run(capsys, "mul", "--q", "2", "[O(1)]", "[O(0)]")
    assert code == 0
    doc = json.loads(out.out)
    assert len(doc["terms"]) == 1


def test_serre_verify(capsys):
    code, out = _run(capsys, "verify", "serre", "--quiver", "kronecker", "--q", "2")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["relation"] == "5.2.9" and doc["status"] == "pass"


def test_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(qrel, "serre_check", lambda Q, i, j: report("qrel", "5.2.9", [case("x", False, 1, 0)]))
    code, out = _run(capsys, "serre", "--q", "2")
    assert code == 1
    assert json.loads(out.out)["status"] == "fail"


@pytest.mark.parametrize("argv", [["bogus"], ["zeta", "--q", "1"], ["mul", "--q", "4", "[O(0)]"],
                                  ["mul", "--q", "2", "[O(0"], ["basis-check", "--window", "1"]])
def test_usage_errors_exit_2(capsys, argv):
    code, _ = _run(capsys, *argv)
    assert code == 2


def test_output_is_deterministic(capsys):
    _, a = _run(capsys, "hl", "--mu", "2,1", "--n", "3")
    _, b = _run(capsys, "hl", "--mu", "2,1", "--n", "3")
    assert a.out == b.out and a.out


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"q": 3, "terms": 3}))
    code, out = _run(capsys, "--config", str(cfg), "zeta")
    assert code == 0
    assert [int(x) for x in json.loads(out.out)] == [1, 4, 13]


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("[1, 2]")
    assert _run(capsys, "--config", str(cfg), "zeta")[0] == 2
    assert _run(capsys, "--config", str(tmp_path / "missing.json"), "zeta")[0] == 2


def test_output_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HALLP1_OUTPUT_DIR", str(tmp_path))
    code, out = _run(capsys, "zeta", "--out", "z.json")
    assert code == 0 and out.out == ""
    assert json.loads((tmp_path / "z.json").read_text())


def test_ledger_rows_are_backed():
    rows = cli.ledger_entries()
    locs = [r["paperLocation"] for r in rows]
    assert "(3.6.6)" in locs and "(6.7.5)" in locs
    assert all(set(r) == {"paperLocation", "printedForm", "computedForm", "suite"} for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hallp1.cli", "zeta", "--terms", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)
