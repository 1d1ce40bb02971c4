import json
from math import isnan

import numpy as np
import pytest

from dickelab.analysis.sweep import (
    SWEEP_COLUMNS,
    SweepConfig,
    evaluate_row,
    interpolate_zero_crossing,
    run_sweep,
)
from dickelab.data.io import read_table


@pytest.fixture(scope="module")
def default_result():
    return run_sweep(SweepConfig())


class TestSweepConfig:
    def test_defaults(self):
        config = SweepConfig()
        assert len(config.q2_grid) == 51
        assert config.q2_grid[-1] == 0.5

    @pytest.mark.parametrize(
        "settings",
        [dict(q1=0.6), dict(q2_stop=0.7), dict(q2_start=0.3, q2_stop=0.2), dict(steps=1), dict(output_format="xml")],
    )
    def test_invalid(self, settings):
        with pytest.raises(ValueError):
            SweepConfig(**settings)

    @pytest.mark.parametrize(
        "settings",
        [
            dict(steps=3.5),
            dict(steps="5"),
            dict(steps=True),
            dict(workers=2.0),
            dict(seed="0"),
            dict(q1=None),
            dict(q3="high"),
        ],
    )
    def test_wrong_types(self, settings):
        with pytest.raises(ValueError):
            SweepConfig(**settings)

    def test_numpy_integers_accepted(self):
        config = SweepConfig(steps=np.int64(5), workers=np.int32(2))
        assert config.steps == 5
        assert type(config.steps) is int

    @pytest.mark.parametrize("payload", [[1, 2, 3], "sweep", {"q2_grid": [0.0, 0.5, 3]}])
    def test_file_must_hold_object(self, tmp_path, payload):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError):
            SweepConfig.from_file(path)

    def test_nested_grid(self):
        config = SweepConfig.from_dict(q1=0.1, q2_grid={"start": 0.0, "stop": 0.2, "steps": 5}, format="json")
        assert config.steps == 5
        assert config.q2_stop == 0.2
        assert config.output_format == "json"

    def test_constr_round_trip(self):
        config = SweepConfig(q1=0.02, steps=7, output_format="json")
        assert SweepConfig.from_constr(config.constr) == config

    def test_replace_ignores_none(self):
        config = SweepConfig().replace(q1=None, steps=5)
        assert config.q1 == 0.05
        assert config.steps == 5


class TestSweep:
    def test_columns_and_order(self, default_result):
        assert list(default_result.rows.columns) == list(SWEEP_COLUMNS)
        assert np.all(np.diff(default_result.rows["q2"]) > 0)

    def test_closed_form_agreement(self, default_result):
        rows = default_result.rows
        assert np.max(np.abs(rows["wbar_matrix"] - rows["wbar_closed_form"])) <= 1e-9

    def test_rounded_curve(self, default_result):
        assert default_result.max_curve_deviation <= 5e-4

    def test_curve_deviation_only_at_fit_point(self):
        result = run_sweep(SweepConfig(q1=0.02, steps=5))
        assert isnan(result.max_curve_deviation)
        assert result.summary()["max_curve_deviation"] is None

    def test_wbar_nondecreasing_in_q2(self, default_result):
        assert np.all(np.diff(default_result.rows["wbar_matrix"].to_numpy()) >= -1e-12)

    def test_zero_crossing(self, default_result):
        assert default_result.zero_crossing == pytest.approx(0.2656, abs=2e-3)

    def test_robustness_column(self, default_result):
        rows = default_result.rows
        negative = rows["wbar_matrix"] < 0
        assert np.allclose(rows.loc[negative, "er_bound"], -rows.loc[negative, "wbar_matrix"], atol=1e-12)
        assert np.all(rows.loc[~negative, "er_bound"] == 0.0)

    def test_fidelity_bound_below_fidelity(self, default_result):
        rows = default_result.rows
        assert np.all(2 / 3 - rows["wmult"] / 3 <= rows["fidelity"] + 1e-12)

    def test_operating_point(self):
        row = evaluate_row(0.0175, q1=0.05, q3=0.05, check=True)
        assert row.wbar_matrix == pytest.approx(-0.415, abs=1e-3)

    def test_workers_match_serial(self):
        serial = run_sweep(SweepConfig(steps=9))
        threaded = run_sweep(SweepConfig(steps=9, workers=3))
        assert serial.render("csv") == threaded.render("csv")


class TestOutput:
    def test_csv_deterministic(self, tmp_path):
        config = SweepConfig(steps=11, seed=7)
        a = run_sweep(config).write(tmp_path / "a.csv")
        b = run_sweep(config).write(tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_json_deterministic(self, tmp_path):
        config = SweepConfig(steps=11, output_format="json")
        a = run_sweep(config).write(tmp_path / "a.json")
        b = run_sweep(config).write(tmp_path / "b.json")
        assert a.read_bytes() == b.read_bytes()
        payload = json.loads(a.read_text())
        assert payload["config"]["q2_grid"]["steps"] == 11
        assert list(payload["rows"][0]) == list(SWEEP_COLUMNS)

    def test_csv_round_trip_precision(self, tmp_path, default_result):
        path = default_result.write(tmp_path / "sweep.csv")
        table = read_table(path)
        assert table["wbar_matrix"].tolist() == default_result.rows["wbar_matrix"].tolist()

    def test_missing_output_path(self, default_result):
        with pytest.raises(ValueError):
            default_result.write()


class TestZeroCrossing:
    def test_interpolation(self):
        q2 = np.array([0.0, 1.0, 2.0])
        assert interpolate_zero_crossing(q2, np.array([-2.0, -1.0, 1.0])) == pytest.approx(1.5)

    def test_none(self):
        assert isnan(interpolate_zero_crossing(np.array([0.0, 1.0]), np.array([-1.0, -0.5])))
