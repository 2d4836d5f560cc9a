import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from skdv.cli import EXPERIMENTS, main
from skdv.config import ConfigError, parse_config, parse_config_text, resolved_dict, write_resolved
import tomli_w

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

MINIMAL = """
seed = 42
noise = "off"
[model]
gamma = 1.0
n_modes = 64
[time]
dt = 1e-3
horizon = 1.0
"""

BLOW_UP = """
seed = 0
noise = "off"
[model]
gamma = 0.0
n_modes = 16
cutoff_radius = inf
[time]
dt = 0.1
horizon = 50.0
[initial]
kind = "random_hs"
amp = 1000.0
s = 0.0
"""


class TestParse:
    def test_minimal(self):
        rc = parse_config_text(MINIMAL)
        s = rc.sim
        assert s.model.gamma == 1.0 and s.model.galerkin_dim == 64
        assert s.grid.n_points == 256 and s.noise_off and s.seed == 42

    def test_dt_exceeds_horizon(self):
        with pytest.raises(ConfigError, match="dt <= horizon"):
            parse_config_text(MINIMAL.replace("dt = 1e-3", "dt = 2.0"))

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError, match="model.gama"):
            parse_config_text(MINIMAL.replace("gamma", "gama"))
        with pytest.raises(ConfigError, match="noise.presets.sigmas"):
            parse_config_text("[noise.presets]\nsigmas = [0.1]\n")

    def test_malformed_location(self):
        with pytest.raises(ConfigError, match=r"line 5, column 9"):
            parse_config_text(MINIMAL.replace("gamma = 1.0", "gamma = = 1.0"))

    def test_invalid_value(self):
        with pytest.raises(ConfigError):
            parse_config_text(MINIMAL.replace("n_modes = 64", "n_modes = 0"))
        with pytest.raises(ConfigError):
            parse_config_text('noise = "on"\n')

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            parse_config(tmp_path / "nope.toml")

    @pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.toml")), ids=lambda p: p.name)
    def test_shipped_configs_round_trip(self, path, tmp_path):
        rc = parse_config(path)
        write_resolved(rc, tmp_path / "r.toml")
        again = parse_config(tmp_path / "r.toml")
        assert again == rc
        assert resolved_dict(again) == resolved_dict(rc)

    @settings(max_examples=25)
    @given(gamma=st.floats(0, 10), modes=st.integers(1, 64), steps=st.integers(1, 50),
           seed=st.integers(0, 2**31))
    def test_round_trip_property(self, gamma, modes, steps, seed):
        doc = {"seed": seed, "noise": "off", "model": {"gamma": gamma, "n_modes": modes},
               "time": {"dt": 0.01, "horizon": 0.01 * steps}}
        rc = parse_config_text(tomli_w.dumps(doc))
        assert parse_config_text(tomli_w.dumps(resolved_dict(rc))) == rc


def write(tmp_path, text, name="c.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestCli:
    def test_experiment_list(self):
        assert set(EXPERIMENTS) >= {"simulate", "decay", "conservation", "moments", "balance",
                                    "convergence", "stability", "ergodic", "audit", "validate-noise"}

    def test_simulate_artifacts_and_determinism(self, tmp_path, capsys):
        cfg = str(CONFIGS / "jumps.toml")
        for d in ("a", "b"):
            assert main(["simulate", "--config", cfg, "--out", str(tmp_path / d)]) == 0
        a, b = tmp_path / "a", tmp_path / "b"
        for name in ("trajectory.csv", "final_state.bin", "jumps.bin", "resolved-config.toml"):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name
        rep = json.loads((a / "simulate.json").read_text())["simulate"]
        assert rep["passed"] and rep["records"] > 1
        assert (a / "run.log").read_text()

    def test_resolved_reproduces(self, tmp_path):
        cfg = str(CONFIGS / "jumps.toml")
        main(["simulate", "--config", cfg, "--out", str(tmp_path / "a"), "--seed", "9"])
        main(["simulate", "--config", str(tmp_path / "a" / "resolved-config.toml"),
              "--out", str(tmp_path / "b")])
        assert (tmp_path / "a" / "trajectory.csv").read_bytes() == \
            (tmp_path / "b" / "trajectory.csv").read_bytes()

    def test_decay_summary(self, tmp_path, capsys):
        status = main(["decay", "--config", str(CONFIGS / "decay.toml"), "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert status == 0
        assert "fitted_rate=-1.0000 expected=-1.0" in out

    def test_assert_exit_code(self, tmp_path):
        text = (CONFIGS / "conservation.toml").read_text() + "\n[experiment]\ndrift_tolerance = 1e-30\n"
        text = text.replace("n_modes = 128", "n_modes = 32").replace("horizon = 1.0", "horizon = 0.01")
        path = write(tmp_path, text)
        assert main(["conservation", "--config", path, "--out", str(tmp_path / "o")]) == 0
        assert main(["conservation", "--config", path, "--out", str(tmp_path / "o"), "--assert"]) == 3

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_blow_up(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert main(["simulate", "--config", write(tmp_path, BLOW_UP), "--out", str(out)]) == 2
        assert (out / "partial_trajectory.csv").exists()
        rep = json.loads((out / "simulate.json").read_text())["simulate"]
        assert rep["error"] == "blow-up"

    def test_config_error_status(self, tmp_path, capsys):
        bad = write(tmp_path, MINIMAL.replace("gamma", "gama"))
        assert main(["simulate", "--config", bad, "--out", str(tmp_path / "o")]) == 1
        assert "model.gama" in capsys.readouterr().err

    def test_unknown_experiment(self, tmp_path, capsys):
        assert main(["fly", "--config", write(tmp_path, MINIMAL), "--out", str(tmp_path)]) == 1
        assert "unknown experiment" in capsys.readouterr().err

    def test_threads_env(self, tmp_path, monkeypatch):
        cfg = str(CONFIGS / "ergodic.toml")
        monkeypatch.setenv("SKDV_THREADS", "2")
        assert main(["tightness", "--config", cfg, "--out", str(tmp_path / "a"), "--paths", "6"]) == 0
        monkeypatch.setenv("SKDV_THREADS", "1")
        assert main(["tightness", "--config", cfg, "--out", str(tmp_path / "b"), "--paths", "6"]) == 0
        assert (tmp_path / "a" / "tightness.csv").read_bytes() == (tmp_path / "b" / "tightness.csv").read_bytes()
        log = (tmp_path / "a" / "run.log").read_text()
        assert "threads=2" in log
        monkeypatch.setenv("SKDV_THREADS", "many")
        assert main(["tightness", "--config", cfg, "--out", str(tmp_path / "c")]) == 1

    @pytest.mark.parametrize("exp", ["audit", "validate-noise"])
    def test_quick_experiments(self, exp, tmp_path):
        assert main([exp, "--config", str(CONFIGS / "balance.toml"), "--out", str(tmp_path),
                     "--assert"]) == 0
        assert json.loads((tmp_path / f"{exp}.json").read_text())[exp]["passed"]
