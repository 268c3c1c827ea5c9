import json
import subprocess
import sys

import numpy as np
import pytest

from reductionlab import classical, cli, scenarios, suites
from reductionlab.errors import ConfigError


def sign_flipped_calogero(l):
    good = classical_calogero_field(l)

    def field(t, y):
        out = good(t, y)
        out[..., 2:] *= -1.0
        return out

    return field


classical_calogero_field = classical.calogero_field


class TestRegistry:
    def test_list(self, capsys):
        assert cli.main(["list"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) >= 14
        names = [ln.split(" - ", 1)[0] for ln in lines]
        assert names == sorted(names)
        assert all(len(ln.split(" - ", 1)[1]) > 5 for ln in lines)

    def test_unknown_param(self):
        with pytest.raises(ConfigError):
            scenarios.get_scenario("calogero").resolve({"nope": 1})

    def test_param_coercion(self):
        sc = scenarios.get_scenario("riccati")
        p = sc.resolve({"A": "[[1, 0], [0, -1]]", "T": "0.5"})
        assert p["A"] == [[1.0, 0.0], [0.0, -1.0]] and p["T"] == 0.5
        with pytest.raises(ConfigError):
            sc.resolve({"A": "[1, 2]"})
        with pytest.raises(ConfigError):
            scenarios.get_scenario("calogero").resolve({"n": "2.5"})

    def test_seed_env(self, monkeypatch):
        monkeypatch.setenv("REDUCTIONLAB_SEED", "7")
        assert scenarios.seed_from_env() == 7
        monkeypatch.setenv("REDUCTIONLAB_SEED", "x")
        with pytest.raises(ConfigError):
            scenarios.seed_from_env()


class TestRun:
    def test_calogero(self, tmp_path):
        assert cli.main(["run", "calogero", "--out", str(tmp_path)]) == 0
        header = (tmp_path / "calogero.csv").read_text().splitlines()[0]
        assert header == "t,q1,q2,p1,p2,l_drift"
        report = json.loads((tmp_path / "calogero.report.json").read_text())
        names = [c["name"] for c in report["checks"]]
        assert len(names) == len(set(names))
        assert "calogero-eigenvalue-match" in names and report["passed"]

    def test_riccati(self, tmp_path):
        code = cli.main(["run", "riccati", "--param", "A=[[0,1],[-1,0]]", "--out", str(tmp_path)])
        assert code == 0
        header = (tmp_path / "riccati.csv").read_text().splitlines()[0]
        assert "cross_ratio_drift" in header.split(",")

    def test_unknown_scenario_writes_nothing(self, tmp_path):
        out = tmp_path / "out"
        assert cli.main(["run", "foo", "--out", str(out)]) == 2
        assert not out.exists()

    def test_bad_param(self, tmp_path):
        out = tmp_path / "out"
        assert cli.main(["run", "calogero", "--param", "nope=1", "--out", str(out)]) == 2
        assert cli.main(["run", "calogero", "--param", "novalue", "--out", str(out)]) == 2
        assert not out.exists()

    def test_bad_config(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text("{not json")
        assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2
        assert not (tmp_path / "o").exists()

    def test_config_file(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"scenario": "hamilton-jacobi", "parameters": {"n": 5},
                                   "output_dir": str(tmp_path / "o")}))
        assert cli.main(["run", "--config", str(cfg)]) == 0
        assert (tmp_path / "o" / "hamilton-jacobi.csv").exists()

    def test_check_failure_exit_1(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"scenario": "hamilton-jacobi", "tolerances": {"check_tol": 1e-30}}))
        assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1
        report = json.loads((tmp_path / "hamilton-jacobi.report.json").read_text())
        assert report["passed"] is False

    def test_bad_tolerance(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"scenario": "calogero", "tolerances": {"nope": 1}}))
        assert cli.main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for d in (a, b):
            assert cli.main(["run", "burgers", "--out", str(d)]) == 0
        assert (a / "burgers.csv").read_bytes() == (b / "burgers.csv").read_bytes()

    def test_csv_round_trip(self, tmp_path):
        cli.main(["run", "sl2-function-group", "--out", str(tmp_path)])
        rows = (tmp_path / "sl2-function-group.csv").read_text().splitlines()[1:]
        for field in rows[3].split(","):
            assert repr(float(field)) == field

    def test_no_command(self):
        assert cli.main([]) == 2


class TestVerify:
    def test_filter_module(self):
        chosen = suites.select("star")
        assert chosen and all(s.module == "star-algebra" for s in chosen)

    def test_filter_glob(self):
        assert [s.name for s in suites.select("*/calogero-eigen*")] == [
            "classical-reduction/calogero-eigenvalue-match"]

    def test_no_match(self):
        assert cli.main(["verify", "--filter", "zzz"]) == 2

    def test_filtered_pass(self, capsys):
        assert cli.main(["verify", "--filter", "star"]) == 0
        assert "all" in capsys.readouterr().out

    def test_mutation_is_named(self, monkeypatch, capsys):
        monkeypatch.setattr(classical, "calogero_field", sign_flipped_calogero)
        assert cli.main(["verify", "--filter", "classical-reduction"]) == 1
        last = capsys.readouterr().out.strip().splitlines()[-1]
        assert last.startswith("failed:")
        assert "calogero-eigenvalue-match" in last

    def test_module_entry_point(self):
        out = subprocess.run([sys.executable, "-m", "reductionlab", "list"], capture_output=True, text=True)
        assert out.returncode == 0 and "calogero" in out.stdout
