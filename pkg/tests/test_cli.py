import csv
import io
import json
import math
import subprocess
import sys

import pytest

from baxterq import cli
from baxterq.errors import ConfigError


def run_main(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    def test_complex_forms(self):
        assert abs(cli.parse_complex("1.5,-0.5", "x") - (1.5 - 0.5j)) < 1e-15
        assert abs(cli.parse_complex("1+2j", "x") - (1 + 2j)) < 1e-15
        assert abs(cli.parse_complex("0.25", "x") - 0.25) < 1e-15

    def test_bad_complex(self):
        with pytest.raises(ConfigError):
            cli.parse_complex("abc", "x")

    def test_grid(self):
        g = cli.parse_grid("-1:1:0.5")
        assert len(g) == 5
        assert abs(g[0] + 1) < 1e-15
        assert abs(g[-1] - 1) < 1e-12


class TestEvalS2:
    def test_csv_content(self, tmp_path, capsys):
        path = tmp_path / "s2.csv"
        code, _, _ = run_main(["eval-s2", "--omega", "1,0", "1,0", "--grid", "-1:1:0.5", "--csv", str(path)], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(path.read_text())))
        assert list(rows[0].keys()) == cli.CSV_COLUMNS
        assert len(rows) == 5
        by_re = {float(r["re_z"]): r for r in rows}
        assert by_re[0.0]["status"] == "zero"
        assert abs(float(by_re[0.5]["re_s2"]) - math.sqrt(2)) < 1e-10
        assert abs(float(by_re[1.0]["re_s2"]) - 1.0) < 1e-10
        assert float(by_re[0.5]["reflection_residual"]) < 1e-10

    def test_pole_row(self, capsys):
        code, out, _ = run_main(["eval-s2", "--omega", "1,0", "1,0", "--grid", "2:2:1"], capsys)
        assert code == 0
        row = list(csv.DictReader(io.StringIO(out)))[0]
        assert row["status"] == "pole"


class TestVerifyCommands:
    def test_duality_quick(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        code, _, _ = run_main(["verify-theorem2", "--preset", "quick", "-o", str(out)], capsys)
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["pass"] is True
        assert rep["config"]["preset"] == "quick"

    def test_kernel_identity_stdout(self, capsys):
        code, out, _ = run_main(["verify-kernel-identity", "--n", "2", "--samples", "5", "--no-timing"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert "timing" not in rep
        assert all(s["pass"] for s in rep["suites"])

    def test_failing_tolerance_exit_one(self, tmp_path, capsys):
        ini = tmp_path / "c.ini"
        ini.write_text("[tolerances]\nkernel_identity = 0\n")
        code, _, _ = run_main(["verify-kernel-identity", "--samples", "3", "--config", str(ini), "--no-timing"], capsys)
        assert code == 1


class TestConfig:
    def test_unknown_section(self, tmp_path, capsys):
        ini = tmp_path / "c.ini"
        ini.write_text("[bogus]\nx = 1\n")
        code, _, err = run_main(["verify-s2", "--config", str(ini)], capsys)
        assert code == 2
        assert "configuration error" in err

    def test_bad_period(self, capsys):
        code, _, _ = run_main(["verify-s2", "--omega", "-1,0", "1,0"], capsys)
        assert code == 2

    def test_file_and_override(self, tmp_path, capsys):
        ini = tmp_path / "c.ini"
        ini.write_text("[params]\nomega1 = 1,0\nomega2 = 1.5,0\ng = 0.4\n[run]\nseed = 7\npreset = quick\n")
        out = tmp_path / "r.json"
        code, _, _ = run_main(["verify-kernel-identity", "--config", str(ini), "--seed", "3", "--samples", "3", "-o", str(out)], capsys)
        assert code == 0
        cfg = json.loads(out.read_text())["config"]
        assert cfg["seed"] == 3
        assert cfg["preset"] == "quick"

    def test_deterministic_report(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            run_main(["verify-s2", "--seed", "5", "--no-timing", "-o", str(path)], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run([sys.executable, "-m", "baxterq", "verify-kernel-identity", "--samples", "2", "--no-timing"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["pass"] is True
