import io

import numpy as np
import pytest

from roofpv.errors import DomainError, FieldError, ParseError, RecordCountError
from roofpv.weather import (
    HOURS_PER_YEAR,
    N_HEADER_LINES,
    degree_hours,
    fill_missing,
    format_epw,
    parse_epw,
    record_violations,
    validate_weather,
)

from conftest import constant_year


@pytest.fixture(scope="module")
def epw_lines(tokyo):
    return format_epw(tokyo).splitlines()


def _edit(lines, row, col, value):
    out = list(lines)
    fields = out[N_HEADER_LINES + row].split(",")
    fields[col - 1] = value
    out[N_HEADER_LINES + row] = ",".join(fields)
    return "\n".join(out) + "\n"


class TestParse:
    def test_tokyo_site_metadata(self, tokyo):
        assert tokyo.latitude == pytest.approx(35.6, abs=0.05)
        assert tokyo.longitude == pytest.approx(139.7)
        assert tokyo.timezone_offset == 9
        assert len(tokyo.records) == 8760

    def test_hours_become_start_of_interval(self, tokyo, epw_lines):
        first = epw_lines[N_HEADER_LINES].split(",")
        assert first[3] == "1"
        assert tokyo.hour[0] == 0 and tokyo.hour[-1] == 23
        assert (tokyo.month[-1], tokyo.day[-1]) == (12, 31)

    def test_bytes_and_streams(self, epw_lines):
        text = "\n".join(epw_lines)
        assert parse_epw(text.encode()) == parse_epw(io.BytesIO(text.encode()))

    def test_8759_records(self, epw_lines):
        with pytest.raises(RecordCountError):
            parse_epw("\n".join(epw_lines[:-1]))

    def test_leap_year_length_rejected(self, epw_lines):
        extra = epw_lines + epw_lines[-24:]
        with pytest.raises(RecordCountError):
            parse_epw("\n".join(extra))

    def test_leap_day_record_rejected(self, epw_lines):
        out = list(epw_lines)
        # relabel the first hour of Mar 1 as Feb 29
        i = 59 * 24
        fields = out[N_HEADER_LINES + i].split(",")
        fields[1], fields[2] = "2", "29"
        out[N_HEADER_LINES + i] = ",".join(fields)
        with pytest.raises(ParseError) as err:
            parse_epw("\n".join(out))
        assert err.value.line == N_HEADER_LINES + i + 1

    def test_non_numeric_field(self, epw_lines):
        with pytest.raises(FieldError) as err:
            parse_epw(_edit(epw_lines, 41, 14, "abc"))
        assert (err.value.row, err.value.column) == (42, 14)

    def test_malformed_header(self, epw_lines):
        bad = ["NOTLOCATION" + epw_lines[0][8:]] + epw_lines[1:]
        with pytest.raises(ParseError) as err:
            parse_epw("\n".join(bad))
        assert err.value.line == 1
        bad = ["LOCATION,x,-,-,-,-,north,139.7,9,5"] + epw_lines[1:]
        with pytest.raises(ParseError):
            parse_epw("\n".join(bad))

    def test_too_short(self):
        with pytest.raises(ParseError):
            parse_epw("LOCATION,a,b,c,d,e,35,139,9,5\n")

    def test_out_of_order_timestamp(self, epw_lines):
        with pytest.raises(ParseError) as err:
            parse_epw(_edit(epw_lines, 100, 4, "3"))
        assert err.value.line == N_HEADER_LINES + 101


class TestMissingValues:
    def test_three_record_neighbour_average(self):
        # hand-worked: the gap sits between 120 and 300 -> (120 + 300) / 2
        vals = np.array([120.0, 9999.0, 300.0])
        assert fill_missing(vals, vals >= 9999).tolist() == [120.0, 210.0, 300.0]

    def test_edge_gap_takes_nearest(self):
        vals = np.array([9999.0, 50.0, 70.0])
        assert fill_missing(vals, vals >= 9999).tolist() == [50.0, 50.0, 70.0]

    def test_all_missing(self):
        with pytest.raises(DomainError):
            fill_missing([1.0, 2.0], [True, True])

    def test_dni_sentinel_replaced_and_reported(self, tokyo, epw_lines):
        noon = 180 * 24 + 12
        w = parse_epw(_edit(epw_lines, noon, 15, "9999"))
        expected = (tokyo.dni[noon - 1] + tokyo.dni[noon + 1]) / 2
        assert w.dni[noon] == pytest.approx(expected)
        assert w.interpolated == ((noon, "dni"),)
        assert validate_weather(w).interpolated == ((noon, "dni"),)
        assert w.dni.max() < 9999

    def test_temperature_sentinel(self, epw_lines):
        w = parse_epw(_edit(epw_lines, 10, 7, "99.9"))
        assert w.dry_bulb[10] < 60
        assert (10, "dry_bulb") in w.interpolated


class TestRoundTrip:
    def test_parse_serialize_parse(self, tokyo):
        again = parse_epw(format_epw(tokyo))
        assert again == tokyo
        assert format_epw(again) == format_epw(tokyo)

    def test_weather_is_immutable(self, tokyo):
        with pytest.raises(ValueError):
            tokyo.ghi[0] = 1.0


class TestValidate:
    def test_all_zero_irradiance_is_clean(self):
        assert validate_weather(constant_year(ghi=0, dni=0, dhi=0)).violations == ()

    def test_single_negative_ghi(self):
        ghi = np.zeros(8760)
        ghi[5] = -5.0
        report = validate_weather(constant_year(ghi=ghi))
        assert [(v.index, v.kind) for v in report.violations] == [(5, "negative")]

    def test_closure_violation_at_zenith_30(self):
        # dni*cos(30) + dhi = 100 against ghi 800
        found = record_violations([20.0], [800.0], [0.0], [100.0], [30.0])
        assert [v.kind for v in found] == ["closure"]
        assert "100.0" in found[0].message

    def test_closed_record_passes(self):
        ghi = 800 * np.cos(np.radians(30)) + 100
        assert record_violations([20.0], [ghi], [800.0], [100.0], [30.0]) == []

    def test_night_dni(self):
        found = record_violations([5.0], [0.0], [50.0], [0.0], [120.0])
        assert [v.kind for v in found] == ["night"]

    def test_temperature_range(self):
        assert [v.kind for v in record_violations([75.0], [0.0], [0.0], [0.0], [100.0])] == ["range"]

    def test_synthetic_tokyo_is_clean(self, tokyo):
        assert validate_weather(tokyo).ok

    def test_validate_does_not_mutate(self, tokyo):
        before = tokyo.ghi.copy()
        validate_weather(tokyo)
        assert np.array_equal(before, tokyo.ghi)


class TestDegreeHours:
    def test_constant_above_heating_base(self):
        assert degree_hours(constant_year(temp=20), 18, "heating") == 0

    def test_constant_below_cooling_base(self):
        assert degree_hours(constant_year(temp=20), 24, "cooling") == 0

    def test_two_record_fixture(self):
        assert degree_hours(np.array([15.0, 21.0]), 18, "heating") == 3

    @pytest.mark.parametrize("base", [-1, 41])
    def test_base_out_of_range(self, base):
        with pytest.raises(DomainError):
            degree_hours(np.array([10.0]), base, "heating")

    def test_bad_mode(self):
        with pytest.raises(DomainError):
            degree_hours(np.array([10.0]), 18, "both")

    def test_partition_identity_on_tokyo(self, tokyo):
        for base in (0, 10, 18, 24, 40):
            total = degree_hours(tokyo, base, "heating") + degree_hours(tokyo, base, "cooling")
            assert total == pytest.approx(np.abs(tokyo.dry_bulb - base).sum(), rel=1e-12)
