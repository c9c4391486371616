import numpy as np
import pytest

from roofpv.errors import DomainError
from roofpv.solar import (
    PvArraySpec,
    SolarAngles,
    calibrate_loss,
    degraded_annual,
    generation_series,
    poa_irradiance,
    solar_angles,
    sun_position,
    weather_angles,
)

from conftest import TARGET_SPECIFIC_YIELD, constant_year


def _min_zenith_over_day(lat, lon, tz, month, day, year=2018):
    minutes = np.arange(0, 24 * 60) / 60.0
    z = solar_angles(lat, lon, tz, year, np.full(minutes.size, month), np.full(minutes.size, day), minutes).zenith
    return z.min()


class TestSunPosition:
    def test_equator_equinox_noon(self):
        assert _min_zenith_over_day(0.0, 0.0, 0.0, 3, 20) < 1.0

    def test_tokyo_winter_solstice_noon(self):
        # declination geometry: lat + 23.44
        assert _min_zenith_over_day(35.6, 139.7, 9.0, 12, 21) == pytest.approx(35.6 + 23.44, abs=0.7)

    @pytest.mark.parametrize("lat", [35.6, 51.5, -33.9])
    def test_midnight_winter_below_horizon(self, lat):
        month = 12 if lat > 0 else 6
        assert sun_position(lat, 139.7, 9.0, month, 21, 0).zenith > 90

    def test_noon_azimuth_south_in_north(self):
        minutes = np.arange(0, 24 * 60) / 60.0
        ang = solar_angles(35.6, 139.7, 9.0, 2018, np.full(minutes.size, 12), np.full(minutes.size, 1), minutes)
        noon = int(np.argmin(ang.zenith))
        assert abs(ang.azimuth[noon] - 180) < 1.0
        # Tokyo sits east of the 135E zone meridian, so solar noon comes before 12:00
        assert 11.0 < minutes[noon] < 12.0

    def test_invalid_date(self):
        with pytest.raises(DomainError):
            sun_position(35.6, 139.7, 9, 2, 30, 12)

    def test_midpoint_convention(self):
        a = sun_position(35.6, 139.7, 9, 6, 1, 10)
        b = solar_angles(35.6, 139.7, 9, 2018, 6, 1, 10.5)
        assert a == b

    @pytest.mark.parametrize("year", [1950, 1985, 2018, 2050])
    @pytest.mark.parametrize("lat,lon,tz", [(35.6, 139.7, 9.0), (0.0, 0.0, 0.0), (-33.9, 151.2, 10.0),
                                            (64.1, -21.9, 0.0), (39.7, -105.0, -7.0)])
    def test_against_spa_ephemeris(self, year, lat, lon, tz):
        pd = pytest.importorskip("pandas")
        pvlib = pytest.importorskip("pvlib")
        times = pd.date_range(f"{year}-01-01 00:30", periods=8760, freq="h",
                              tz=f"Etc/GMT{-int(tz):+d}" if tz else "UTC")
        times = times[(times.month != 2) | (times.day != 29)]
        ref = pvlib.solarposition.spa_python(times, lat, lon, altitude=0, pressure=101325, temperature=12)
        ours = solar_angles(lat, lon, tz, year, times.month.values, times.day.values,
                            times.hour.values + times.minute.values / 60)
        assert np.max(np.abs(ours.zenith - ref["zenith"].values)) < 0.5
        ok = ref["zenith"].values > 1.0  # azimuth is ill-conditioned at the zenith
        daz = (ours.azimuth[ok] - ref["azimuth"].values[ok] + 180) % 360 - 180
        assert np.max(np.abs(daz)) < 0.5


class TestPoa:
    def test_hand_worked_facing_array(self):
        # beam 800 + sky 100*(1+cos30)/2 + ground 793*0.2*(1-cos30)/2
        array = PvArraySpec(1.0, tilt=30, azimuth=180, ground_albedo=0.2)
        poa = poa_irradiance(SolarAngles(30.0, 180.0), 793.0, 800.0, 100.0, array)
        assert poa == pytest.approx(800 + 100 * 0.9330127 + 793 * 0.2 * 0.0669873, rel=1e-6)
        assert poa == pytest.approx(903.9, abs=0.05)

    def test_horizontal_identity(self):
        z = np.array([10.0, 40.0, 70.0, 85.0])
        dni = np.array([850.0, 700.0, 300.0, 50.0])
        dhi = np.array([90.0, 120.0, 150.0, 40.0])
        ghi = dni * np.cos(np.radians(z)) + dhi
        poa = poa_irradiance(SolarAngles(z, np.full(4, 150.0)), ghi, dni, dhi, PvArraySpec(1.0, tilt=0))
        assert np.allclose(poa, ghi, rtol=1e-12)

    def test_night(self):
        assert poa_irradiance(SolarAngles(120.0, 0.0), 0.0, 0.0, 0.0, PvArraySpec(1.0)) == 0.0

    def test_sun_below_horizon_keeps_diffuse(self):
        array = PvArraySpec(1.0, tilt=30, ground_albedo=0.2)
        poa = poa_irradiance(SolarAngles(92.0, 180.0), 20.0, 500.0, 20.0, array)
        assert poa == pytest.approx(20 * (1 + np.cos(np.radians(30))) / 2 + 20 * 0.2 * (1 - np.cos(np.radians(30))) / 2)

    def test_back_of_array_gets_no_beam(self):
        array = PvArraySpec(1.0, tilt=90, azimuth=180, ground_albedo=0.0)
        poa = poa_irradiance(SolarAngles(45.0, 0.0), 600.0, 800.0, 0.0, array)
        assert poa == 0.0


class TestArraySpec:
    @pytest.mark.parametrize("kw", [dict(capacity=-1), dict(tilt=95), dict(azimuth=360),
                                    dict(system_loss_fraction=1.0), dict(degradation_rate=0.06)])
    def test_invariants(self, kw):
        args = dict(capacity=1.0) | kw
        with pytest.raises(DomainError):
            PvArraySpec(**args)


class TestGeneration:
    def test_zero_capacity(self, tokyo):
        g = generation_series(tokyo, PvArraySpec(0.0))
        assert g.annual_kwh == 0 and not g.hourly_kwh.any()

    def test_linear_in_capacity(self, tokyo):
        a = generation_series(tokyo, PvArraySpec(100.0))
        b = generation_series(tokyo, PvArraySpec(200.0))
        assert np.allclose(b.hourly_kwh, 2 * a.hourly_kwh, rtol=1e-12, atol=0)
        assert a.specific_yield == pytest.approx(b.specific_yield, rel=1e-12)

    def test_sum_and_yield(self, tokyo):
        g = generation_series(tokyo, PvArraySpec(50.0))
        assert g.annual_kwh == pytest.approx(g.hourly_kwh.sum())
        assert g.specific_yield == pytest.approx(g.annual_kwh / 50.0)
        assert (g.hourly_kwh >= 0).all()

    def test_dark_hours_generate_nothing(self, tokyo):
        g = generation_series(tokyo, PvArraySpec(10.0))
        z = weather_angles(tokyo).zenith
        dark = (z > 95) & (tokyo.dhi == 0)
        assert dark.sum() > 3000
        assert not g.hourly_kwh[dark].any()

    def test_calibrated_loss_hits_target(self, tokyo, calibrated_loss):
        assert 0.10 <= calibrated_loss <= 0.18
        g = generation_series(tokyo, PvArraySpec(2885.7, system_loss_fraction=calibrated_loss))
        assert g.specific_yield == pytest.approx(TARGET_SPECIFIC_YIELD, rel=1e-9)

    def test_unreachable_yield(self, tokyo):
        with pytest.raises(DomainError):
            calibrate_loss(tokyo, PvArraySpec(1.0), 5000.0)

    def test_south_beats_north(self, tokyo):
        south = generation_series(tokyo, PvArraySpec(1.0, azimuth=180)).annual_kwh
        north = generation_series(tokyo, PvArraySpec(1.0, azimuth=0)).annual_kwh
        assert south > north


class TestDegradation:
    def test_examples(self):
        assert degraded_annual(1000, 0.005, 1) == 1000
        assert degraded_annual(1000, 0.005, 2) == pytest.approx(995)
        assert degraded_annual(1000, 0.005, 25) == pytest.approx(1000 * 0.995**24, rel=1e-12)
        assert abs(degraded_annual(1000, 0.005, 25) - 886.6) < 0.06

    def test_strictly_decreasing(self):
        vals = [degraded_annual(1.0, 0.007, n) for n in range(1, 30)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_year_zero_rejected(self):
        with pytest.raises(DomainError):
            degraded_annual(1000, 0.005, 0)
