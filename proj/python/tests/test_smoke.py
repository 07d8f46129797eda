import math
import os
import pathlib

import pytest

import caccsim

ROOT = pathlib.Path(os.environ.get("CACCSIM_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
SCENARIOS = ROOT / "scenarios"


def test_spacing_policy_and_gains():
    assert caccsim.desired_spacing(10.0, 1.0, 3.0) == pytest.approx(13.0)
    assert caccsim.gains_from_bandwidth(2.0) == (4.0, 2.0)
    with pytest.raises(ValueError):
        caccsim.gains_from_bandwidth(0.0)


def test_feedforward_filter_step_response():
    f = caccsim.FeedforwardFilter(0.4, 1.0)
    out = [f.step(1.0, 0.01) for _ in range(101)]
    assert out[0] == pytest.approx(0.4)
    assert out[100] == pytest.approx(1.0 - 0.6 * math.exp(-1.0), abs=1e-9)


def test_idm_equilibrium_is_a_fixed_point():
    p = caccsim.IdmParams()
    s = caccsim.idm_equilibrium_gap(5.556, p)
    assert s == pytest.approx(7.559, abs=1e-3)
    assert caccsim.idm_acceleration(5.556, s, 0.0, p) == pytest.approx(0.0, abs=1e-9)


def test_polar_to_cartesian():
    x, y, _ = caccsim.polar_to_cartesian(10.0, 0.0)
    assert (x, y) == pytest.approx((10.0, 0.0))


def test_run_compare_pair():
    scenario = caccsim.Scenario.load(str(SCENARIOS / "paper_idm_1s.cfg"))
    acc = caccsim.run(scenario.with_mode("acc"))
    cacc = caccsim.run(scenario.with_mode("cacc"))
    assert not acc.collided and not cacc.collided
    assert acc.column(0, "v") == cacc.column(0, "v")
    assert caccsim.max_abs_spacing_error(cacc, 1) < caccsim.max_abs_spacing_error(acc, 1)
    assert len(acc) == len(acc.time())


def test_trace_csv_round_trip():
    scenario = caccsim.Scenario.default()
    scenario.duration = 2.0
    trace = caccsim.run(scenario)
    text = trace.to_csv()
    assert caccsim.Trace.from_csv(text).to_csv() == text


def test_default_config_round_trip():
    scenario = caccsim.Scenario.default()
    assert caccsim.Scenario.from_text(scenario.emit()) == scenario


def test_unknown_key_is_rejected():
    text = caccsim.Scenario.default().emit().replace("duration:", "duraton:")
    with pytest.raises(caccsim.ConfigError, match="did you mean 'duration'"):
        caccsim.Scenario.from_text(text)


def test_cli_bad_path(tmp_path):
    code, _, err = caccsim.run_cli(["run", str(tmp_path / "missing.cfg")])
    assert code == 1
    assert "error" in err


def test_cli_platoon(tmp_path):
    code, out, _ = caccsim.run_cli(
        ["--out", str(tmp_path), "--quiet", "platoon", str(SCENARIOS / "chain.cfg"), "--n", "3"]
    )
    assert code == 0
    assert out == ""
    text = (tmp_path / "metrics.txt").read_text()
    assert "amplification_ratio_2=" in text
