import csv
import io
import json
import math

import numpy as np
import pytest
from scipy import integrate

from dunkl_landau.angular import Sector
from dunkl_landau.cli import ConfigError, RunConfig, build_config, build_parser, main, parse_sector
from dunkl_landau.spectrum import ModelParams

NATURAL = ["--mu1", "0.5", "--mu2", "0.5", "--B", "0"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestSpectrum:
    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "spectrum", *NATURAL, "--n-max", "0", "--sector", "1,1,0")
        assert code == 0
        table = rows(out)
        assert list(table[0]) == ["n", "ell", "s1", "s2", "lambda_sign", "lambda", "k", "e_tilde",
                                  "E_plus", "E_minus", "source", "status"]
        chain = [r for r in table if r["source"] == "derivation-chain"]
        assert len(chain) == 1 and float(chain[0]["E_plus"]) == pytest.approx(3.0, rel=1e-14)

    def test_sources_agree_without_field(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--B", "0", "--n-max", "2")
        table = rows(out)
        by_key = {}
        for r in table:
            key = (r["n"], r["ell"], r["s1"], r["s2"], r["lambda_sign"])
            by_key.setdefault(key, []).append(float(r["E_plus"]))
        assert all(len(v) == 2 and v[0] == pytest.approx(v[1], rel=1e-12) for v in by_key.values())

    def test_row_order(self, capsys):
        _, out, _ = run(capsys, "spectrum", "--B", "0.5", "--n-max", "1", "--ell-max", "1")
        keys = [(int(r["s1"]), int(r["s2"]), float(r["ell"]), int(r["n"]), int(r["lambda_sign"]), r["source"])
                for r in rows(out)]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("argv", [
        ["--n-max", "-1"],
        ["--mu1", "0"],
        ["--omega", "-2"],
        ["--sector", "1,1,0.5"],
        ["--sector", "1,1"],
    ])
    def test_bad_config_exits_2(self, capsys, argv):
        code, _, err = run(capsys, "spectrum", *argv)
        assert code == 2 and err.startswith("error:")

    def test_deterministic(self, capsys):
        argv = ["spectrum", "--B", "0.8", "--n-max", "3"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b and len(a) > 1000

    def test_json_format_and_nan(self, capsys):
        # the verbatim formula goes negative here; NaN must become null
        _, out, _ = run(capsys, "spectrum", "--B", "5", "--n-max", "0", "--sector", "1,1,2", "--format", "json")
        data = json.loads(out)
        bad = [r for r in data if r["status"] == "negative_discriminant"]
        assert bad and bad[0]["E_plus"] is None

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "table.csv"
        code, out, _ = run(capsys, "spectrum", "--n-max", "0", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("n,ell,")


class TestConfig:
    def test_round_trip(self, tmp_path, capsys):
        _, dumped, _ = run(capsys, "dump-config", "--B", "0.4", "--mu1", "1.2", "--sector=-1,1,1.5,-1", "--n-max", "5")
        path = tmp_path / "cfg.json"
        path.write_text(dumped)
        _, again, _ = run(capsys, "spectrum", "--config", str(path), "--dump-config")
        assert again == dumped
        cfg = build_config(build_parser().parse_args(["spectrum", "--config", str(path)]))
        assert cfg.params == ModelParams(B=0.4, mu1=1.2)
        assert cfg.sectors == [Sector(-1, 1, 1.5, -1)] and cfg.n_max == 5

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"B": 2.0, "omega": 3.0}))
        cfg = build_config(build_parser().parse_args(["spectrum", "--config", str(path), "--B", "0.1"]))
        assert cfg.params.B == 0.1 and cfg.params.omega == 3.0

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"colour": 1}', '{"n_max": 1.5}'])
    def test_bad_file(self, tmp_path, capsys, content):
        path = tmp_path / "cfg.json"
        path.write_text(content)
        code, _, _ = run(capsys, "spectrum", "--config", str(path))
        assert code == 2

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "spectrum", "--config", str(tmp_path / "nope.json"))[0] == 2

    def test_run_config_invariants(self):
        with pytest.raises(ConfigError):
            RunConfig(format="xml")
        with pytest.raises(ConfigError):
            RunConfig(n_max=-3)

    def test_parse_sector(self):
        assert parse_sector("1,-1,0.5") == Sector(1, -1, 0.5, 1)
        assert parse_sector([-1, -1, 2, -1]) == Sector(-1, -1, 2.0, -1)


class TestWavefunction:
    def samples(self, capsys, *extra):
        code, out, _ = run(capsys, "wavefunction", "--B", "0.6", "--m", "1.5", *extra)
        assert code == 0
        table = rows(out)
        return {k: np.array([float(r[k]) for r in table]) for k in table[0]}

    def test_row_count(self, capsys):
        data = self.samples(capsys, "--n-rho", "17", "--n-phi", "23")
        assert len(data["rho"]) == 17 * 23

    def test_vanishes_at_origin(self, capsys):
        data = self.samples(capsys, "--sector", "1,1,1", "--n", "1", "--n-rho", "11", "--n-phi", "13")
        assert np.all(data["abs2"][data["rho"] == 0] == 0)

    @pytest.mark.parametrize("sector,n", [("1,1,0", 0), ("1,1,1,-1", 1), ("-1,1,1.5", 2)])
    def test_normalised_on_emitted_grid(self, capsys, sector, n):
        mu1, mu2 = 0.3, 0.7
        data = self.samples(capsys, f"--sector={sector}", "--n", str(n))
        n_phi = len(np.unique(data["phi"]))
        rho = data["rho"].reshape(-1, n_phi)
        phi = data["phi"].reshape(-1, n_phi)
        dens = data["abs2"].reshape(-1, n_phi)
        assert np.allclose(data["abs2"], data["re"] ** 2 + data["im"] ** 2)
        weight = rho ** (1 + 2 * (mu1 + mu2)) * np.abs(np.cos(phi)) ** (2 * mu1) * np.abs(np.sin(phi)) ** (2 * mu2)
        inner = integrate.trapezoid(dens * weight, phi[0], axis=1)
        total = integrate.trapezoid(inner, rho[:, 0])
        assert total == pytest.approx(1.0, abs=0.02)

    def test_bad_grid(self, capsys):
        assert run(capsys, "wavefunction", "--n-rho", "1")[0] == 2
        assert run(capsys, "wavefunction", "--n", "-1")[0] == 2


class TestVerify:
    def test_quick_report(self, capsys, monkeypatch):
        monkeypatch.delenv("DUNKL_LANDAU_SEED", raising=False)
        code, out, err = run(capsys, "verify", "--quick")
        report = json.loads(out)
        assert report["schema_version"] == "1"
        assert report["paper_formula_discrepancy"]
        assert {"B", "delta_E2"} <= set(report["paper_formula_discrepancy"][0])
        # the only failing required check is the J / H commutator
        assert report["failed_required"] == ["jh_commutator"]
        assert code == 1 and "jh_commutator" in err

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("DUNKL_LANDAU_SEED", "12345")
        _, out, _ = run(capsys, "verify", "--quick")
        assert json.loads(out)["seed"] == 12345

    def test_bad_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("DUNKL_LANDAU_SEED", "twelve")
        code, _, err = run(capsys, "verify", "--quick")
        assert code == 2 and "DUNKL_LANDAU_SEED" in err


class TestOracleCommand:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "oracle", "--B", "1", "--sector", "1,1,1", "--levels", "3", "--grid", "0,14,4000")
        assert code == 0
        table = rows(out)
        assert [int(r["n"]) for r in table] == [0, 1, 2]
        for r in table:
            assert abs(float(r["dE_chain"])) <= float(r["E_tolerance"])
            assert math.isfinite(float(r["E_verbatim"]))

    @pytest.mark.parametrize("argv", [["--levels", "0"], ["--grid", "0,14"], ["--grid", "0,5,4000"]])
    def test_bad_args(self, capsys, argv):
        assert run(capsys, "oracle", "--sector", "1,1,1", *argv)[0] == 2
