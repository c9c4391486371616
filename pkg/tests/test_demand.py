import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roofpv.demand import (
    COMPONENTS,
    DemandParams,
    DemandSeries,
    annual_breakdown,
    calibrate,
    default_schedule,
    hourly_schedule,
    load_params,
    load_targets,
    save_params,
    synthesize_demand,
)
from roofpv.errors import CalibrationError, DomainError, ShapeError
from roofpv.geometry import BuildingSpec, ScenarioSpec, derive_metrics

from conftest import constant_year

S0_TARGETS_GWH = {"lighting": 7.7, "equipment": 42.2, "heating": 1.2, "cooling": 11.3}


def _autocorr(x, lag):
    x = x - x.mean()
    return float(x[:-lag] @ x[lag:] / (x @ x))


class TestCalibration:
    def test_round_trip_targets(self, metrics, tokyo, demand_params):
        totals = synthesize_demand(metrics[0], tokyo, demand_params).totals
        for c in COMPONENTS:
            assert totals[c] / 1e6 == pytest.approx(S0_TARGETS_GWH[c], rel=0.01)

    def test_unit_floor_consumption(self, metrics, tokyo, demand_params):
        d = synthesize_demand(metrics[0], tokyo, demand_params)
        assert d.unit_floor_consumption == pytest.approx(337, abs=1)

    def test_equipment_intensity(self, demand_params):
        assert demand_params.equipment_intensity == pytest.approx(42.2e6 / 185_000, rel=1e-5)
        assert round(demand_params.equipment_intensity, 1) == 228.1

    def test_doubling_target_doubles_coefficient(self, metrics, tokyo):
        base = calibrate(metrics[0], tokyo, S0_TARGETS_GWH)
        doubled = calibrate(metrics[0], tokyo, {**S0_TARGETS_GWH, "lighting": 15.4, "heating": 2.4, "cooling": 22.6})
        assert doubled.lighting_intensity == pytest.approx(2 * base.lighting_intensity)
        assert doubled.heating_envelope_coeff == pytest.approx(2 * base.heating_envelope_coeff)
        assert doubled.cooling_gain_coeff == pytest.approx(2 * base.cooling_gain_coeff)

    def test_no_heating_degree_hours(self, metrics):
        with pytest.raises(CalibrationError):
            calibrate(metrics[0], constant_year(temp=30.0), S0_TARGETS_GWH)

    def test_no_cooling_degree_hours(self, metrics):
        with pytest.raises(CalibrationError):
            calibrate(metrics[0], constant_year(temp=10.0), S0_TARGETS_GWH)

    def test_envelope_cooling_overshoots(self, metrics, tokyo):
        with pytest.raises(CalibrationError):
            calibrate(metrics[0], tokyo, {**S0_TARGETS_GWH, "heating": 40.0, "cooling": 0.1})

    def test_missing_component(self, metrics, tokyo):
        with pytest.raises(CalibrationError):
            calibrate(metrics[0], tokyo, {"lighting": 1.0})

    def test_targets_file_units(self, tmp_path):
        path = tmp_path / "t.json"
        path.write_text('{"unit": "MWh", "lighting": 7700, "equipment": 42200, "heating": 1200, "cooling": 11300}')
        assert load_targets(path) == pytest.approx(S0_TARGETS_GWH)
        path.write_text('{"unit": "TWh", "lighting": 1, "equipment": 1, "heating": 1, "cooling": 1}')
        with pytest.raises(CalibrationError):
            load_targets(path)


class TestSynthesis:
    def test_dead_band(self, metrics, demand_params):
        d = synthesize_demand(metrics[0], constant_year(temp=20.0), demand_params)
        assert d.totals["heating"] == 0 and d.totals["cooling"] == 0
        assert d.totals["lighting"] > 0

    def test_zero_floor_area(self, metrics, tokyo, demand_params):
        empty = metrics[0].__class__(**{**metrics[0].as_dict(), "total_floor_area": 0.0,
                                        "above_ground_surface_area": 0.0})
        d = synthesize_demand(empty, tokyo, demand_params)
        assert not d.hourly_total.any()
        assert d.unit_floor_consumption == 0.0

    def test_non_negative_and_total(self, metrics, tokyo, demand_params):
        d = synthesize_demand(metrics[3], tokyo, demand_params)
        for c in COMPONENTS:
            assert (getattr(d, c) >= 0).all() and getattr(d, c).size == 8760
        assert d.total == pytest.approx(d.hourly_total.sum(), rel=1e-12)

    def test_schedule_starts_on_monday_2018(self, tokyo):
        occ = hourly_schedule(tokyo, default_schedule())
        # 1 Jan 2018 was a Monday; 6 Jan a Saturday
        assert occ[10] == 1.0 and occ[2] < 1.0
        assert occ[5 * 24 + 10] < 1.0

    def test_weekly_cycle(self, metrics, tokyo, demand_params):
        total = synthesize_demand(metrics[0], tokyo, demand_params).hourly_total
        assert _autocorr(total, 168) > _autocorr(total, 100)


class TestAcrossScenarios:
    def test_heating_monotone_in_surface(self, metrics, tokyo, demand_params):
        pairs = sorted((m.above_ground_surface_area, synthesize_demand(m, tokyo, demand_params).totals["heating"])
                       for m in metrics)
        heat = [h for _, h in pairs]
        assert all(a < b for a, b in zip(heat, heat[1:]))

    def test_lighting_equipment_equal(self, metrics, tokyo, demand_params):
        series = [synthesize_demand(m, tokyo, demand_params).totals for m in metrics]
        for c in ("lighting", "equipment"):
            vals = [t[c] for t in series]
            assert max(vals) - min(vals) < 1e-5 * max(vals)  # floor areas agree to centimetre rounding

    def test_total_spread(self, metrics, tokyo, demand_params):
        totals = np.array([synthesize_demand(m, tokyo, demand_params).total for m in metrics])
        assert (totals.max() - totals.min()) / totals.mean() < 0.015


class TestBreakdown:
    def test_target_shares(self, metrics, tokyo, demand_params):
        b = annual_breakdown(synthesize_demand(metrics[0], tokyo, demand_params))
        expected = {"lighting": 12, "equipment": 68, "heating": 2, "cooling": 18}
        for c, pct in expected.items():
            assert b.shares[c] == pytest.approx(pct, abs=0.6)
        assert sum(b.shares.values()) == pytest.approx(100.0)

    def test_single_component(self):
        z = np.zeros(24)
        b = annual_breakdown(DemandSeries(np.ones(24), z, z, z, 10.0))
        assert b.shares["lighting"] == 100.0

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(0, 1e4), min_size=4, max_size=4).filter(lambda v: sum(v) > 1), st.floats(0.01, 100))
    def test_scale_invariance(self, parts, k):
        d = DemandSeries(*(np.full(5, v) for v in parts), 100.0)
        a, b = annual_breakdown(d), annual_breakdown(d.scaled(k))
        for c in COMPONENTS:
            assert b.shares[c] == pytest.approx(a.shares[c], rel=1e-9, abs=1e-9)


class TestParams:
    def test_round_trip(self, demand_params, tmp_path):
        save_params(demand_params, tmp_path / "p.json")
        assert load_params(tmp_path / "p.json") == demand_params

    def test_invariants(self):
        with pytest.raises(ShapeError):
            DemandParams(schedule=[1.0] * 24)
        with pytest.raises(DomainError):
            DemandParams(heating_cop=1.0)
        with pytest.raises(DomainError):
            DemandParams(lighting_intensity=-1.0)
        with pytest.raises(DomainError):
            DemandParams(schedule=[1.5] * 168)

    def test_linear_in_intensity(self, tokyo):
        m = derive_metrics(ScenarioSpec("x", 1e4, [BuildingSpec("a", 1000.0, 30.0)]))
        one = synthesize_demand(m, tokyo, DemandParams(lighting_intensity=10.0, heating_envelope_coeff=1.0))
        two = synthesize_demand(m, tokyo, DemandParams(lighting_intensity=20.0, heating_envelope_coeff=2.0))
        assert np.allclose(two.hourly_total, 2 * one.hourly_total, rtol=1e-12)
