"""EPW weather ingestion, validation and degree-hour aggregates.

Hours are stored start-of-interval (0-23) in local standard time; EPW
files count 1-24, end-of-interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, FieldError, ParseError, RecordCountError

HOURS_PER_YEAR = 8760
N_HEADER_LINES = 8

# 1-based EPW data columns
COL_YEAR, COL_MONTH, COL_DAY, COL_HOUR = 1, 2, 3, 4
COL_DRY_BULB, COL_GHI, COL_DNI, COL_DHI = 7, 14, 15, 16
N_EPW_FIELDS = 35

TEMP_MISSING = 99.9
IRRADIANCE_MISSING = 9999.0

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def canonical_calendar():
    """(month, day, hour) arrays for a 365-day year, hour 0-23."""
    month = np.repeat(np.arange(1, 13), np.array(_DAYS_IN_MONTH) * 24)
    day = np.concatenate([np.repeat(np.arange(1, n + 1), 24) for n in _DAYS_IN_MONTH])
    hour = np.tile(np.arange(24), 365)
    return month, day, hour


@dataclass(frozen=True)
class HourlyWeather:
    month: int
    day: int
    hour: int
    dry_bulb: float
    ghi: float
    dni: float
    dhi: float


def _frozen(values, dtype=float):
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class WeatherYear:
    """One canonical 8760-hour site-year.

    Series are read-only numpy arrays. ``interpolated`` lists
    ``(record_index, field_name)`` pairs that were filled from missing-value
    sentinels during parsing.
    """

    latitude: float
    longitude: float
    timezone_offset: float
    elevation: float
    dry_bulb: np.ndarray
    ghi: np.ndarray
    dni: np.ndarray
    dhi: np.ndarray
    year: int = 2018
    location: str = "unknown"
    interpolated: tuple = ()
    month: np.ndarray = field(default=None)
    day: np.ndarray = field(default=None)
    hour: np.ndarray = field(default=None)

    def __post_init__(self):
        if not -90 <= self.latitude <= 90:
            raise DomainError(f"latitude out of range: {self.latitude}")
        if not -180 <= self.longitude <= 180:
            raise DomainError(f"longitude out of range: {self.longitude}")
        for name in ("dry_bulb", "ghi", "dni", "dhi"):
            arr = _frozen(getattr(self, name))
            if arr.shape != (HOURS_PER_YEAR,):
                raise RecordCountError(arr.size)
            object.__setattr__(self, name, arr)
        month, day, hour = canonical_calendar()
        for name, default in (("month", month), ("day", day), ("hour", hour)):
            given = getattr(self, name)
            if given is not None and not np.array_equal(given, default):
                raise ParseError(f"{name} sequence is not a canonical 8760-hour calendar")
            object.__setattr__(self, name, _frozen(default, int))
        object.__setattr__(self, "interpolated", tuple(tuple(x) for x in self.interpolated))

    def __len__(self):
        return HOURS_PER_YEAR

    def __getitem__(self, i):
        return HourlyWeather(int(self.month[i]), int(self.day[i]), int(self.hour[i]),
                             float(self.dry_bulb[i]), float(self.ghi[i]), float(self.dni[i]), float(self.dhi[i]))

    @property
    def records(self):
        return [self[i] for i in range(HOURS_PER_YEAR)]

    def __eq__(self, other):
        if not isinstance(other, WeatherYear):
            return NotImplemented
        scalars = ("latitude", "longitude", "timezone_offset", "elevation", "year", "location")
        return (all(getattr(self, s) == getattr(other, s) for s in scalars)
                and all(np.array_equal(getattr(self, a), getattr(other, a))
                        for a in ("dry_bulb", "ghi", "dni", "dhi")))

    __hash__ = None


def fill_missing(values, missing):
    """Linearly interpolate entries flagged by boolean mask ``missing`` from the nearest valid neighbours.

    Leading/trailing gaps take the nearest valid value. Returns a new array.
    """
    values = np.asarray(values, dtype=float).copy()
    missing = np.asarray(missing, dtype=bool)
    if not missing.any():
        return values
    valid = np.flatnonzero(~missing)
    if valid.size == 0:
        raise DomainError("cannot interpolate: every value is missing")
    idx = np.flatnonzero(missing)
    values[idx] = np.interp(idx, valid, values[valid])
    return values


def _decode(raw):
    if isinstance(raw, (bytes, bytearray)):
        return raw.decode("utf-8-sig", errors="replace")
    if hasattr(raw, "read"):
        return _decode(raw.read())
    return raw


def _header_float(fields, col, line_no):
    try:
        return float(fields[col - 1])
    except (IndexError, ValueError):
        raise ParseError(f"LOCATION field {col} is missing or not numeric", line_no) from None


def parse_epw(raw):
    """Parse EPW text (str, bytes or a binary/text stream) into a WeatherYear."""
    lines = _decode(raw).splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < N_HEADER_LINES:
        raise ParseError(f"expected {N_HEADER_LINES} header lines, found {len(lines)}", len(lines) + 1)
    loc = [f.strip() for f in lines[0].split(",")]
    if loc[0].upper() != "LOCATION":
        raise ParseError("first header line must start with LOCATION", 1)
    lat = _header_float(loc, 7, 1)
    lon = _header_float(loc, 8, 1)
    tz = _header_float(loc, 9, 1)
    elev = _header_float(loc, 10, 1)
    if not -90 <= lat <= 90 or not -180 <= lon <= 180:
        raise ParseError(f"latitude/longitude out of range: {lat}, {lon}", 1)

    data = lines[N_HEADER_LINES:]
    if len(data) != HOURS_PER_YEAR:
        raise RecordCountError(len(data))

    cols = (COL_YEAR, COL_MONTH, COL_DAY, COL_HOUR, COL_DRY_BULB, COL_GHI, COL_DNI, COL_DHI)
    table = np.empty((HOURS_PER_YEAR, len(cols)))
    for row, line in enumerate(data, start=1):
        fields = line.split(",")
        if len(fields) < COL_DHI:
            raise ParseError(f"data record has {len(fields)} fields, need at least {COL_DHI}",
                             N_HEADER_LINES + row)
        for j, col in enumerate(cols):
            try:
                table[row - 1, j] = float(fields[col - 1])
            except ValueError:
                raise FieldError(f"non-numeric value {fields[col - 1]!r}", row, col) from None

    month, day, hour = canonical_calendar()
    got_month = table[:, 1].astype(int)
    got_day = table[:, 2].astype(int)
    got_hour = table[:, 3].astype(int) - 1
    leap = np.flatnonzero((got_month == 2) & (got_day == 29))
    if leap.size:
        raise ParseError("leap-day records are not accepted in a canonical 8760-hour year",
                         N_HEADER_LINES + int(leap[0]) + 1)
    bad = np.flatnonzero((got_month != month) | (got_day != day) | (got_hour != hour))
    if bad.size:
        i = int(bad[0])
        raise ParseError(f"timestamp {got_month[i]}/{got_day[i]} hour {got_hour[i] + 1} out of sequence",
                         N_HEADER_LINES + i + 1)

    interpolated = []
    series = {}
    for j, name, sentinel in ((4, "dry_bulb", TEMP_MISSING), (5, "ghi", IRRADIANCE_MISSING),
                              (6, "dni", IRRADIANCE_MISSING), (7, "dhi", IRRADIANCE_MISSING)):
        missing = table[:, j] >= sentinel
        interpolated.extend((int(i), name) for i in np.flatnonzero(missing))
        series[name] = fill_missing(table[:, j], missing)
    interpolated.sort()

    return WeatherYear(lat, lon, tz, elev, year=int(table[0, 0]), location=loc[1] if len(loc) > 1 else "",
                       interpolated=interpolated, **series)


def read_epw(path):
    return parse_epw(Path(path).read_bytes())


def format_epw(w):
    """Serialise to EPW text. Fields the model does not carry are written as EPW missing codes."""
    header = [
        ",".join(["LOCATION", w.location, "-", "-", "roofpv", "-",
                  repr(float(w.latitude)), repr(float(w.longitude)),
                  repr(float(w.timezone_offset)), repr(float(w.elevation))]),
        "DESIGN CONDITIONS,0",
        "TYPICAL/EXTREME PERIODS,0",
        "GROUND TEMPERATURES,0",
        "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0",
        "COMMENTS 1,written by roofpv",
        "COMMENTS 2,",
        "DATA PERIODS,1,1,Data,Sunday, 1/ 1,12/31",
    ]
    filler_8_13 = ["99.9", "999", "999999", "9999", "9999", "9999"]
    filler_17_35 = ["999999"] * 4 + ["9999", "999", "999.0", "99", "99", "9999", "99999", "9",
                                      "999999999", "999", "0.999", "999", "99", "999", "0.0", "99"]
    lines = list(header)
    for i in range(HOURS_PER_YEAR):
        fields = [str(w.year), str(int(w.month[i])), str(int(w.day[i])), str(int(w.hour[i]) + 1), "60", "*",
                  repr(float(w.dry_bulb[i]))]
        fields += filler_8_13
        fields += [repr(float(w.ghi[i])), repr(float(w.dni[i])), repr(float(w.dhi[i]))]
        fields += filler_17_35
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def write_epw(w, path):
    Path(path).write_text(format_epw(w))


@dataclass(frozen=True)
class Violation:
    index: int
    field: str
    kind: str
    message: str

    def __str__(self):
        return f"record {self.index} [{self.field}] {self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    interpolated: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __len__(self):
        return len(self.violations)


def record_violations(dry_bulb, ghi, dni, dhi, zenith, offset=0):
    """Vectorised record checks; ``offset`` shifts the reported indices."""
    dry_bulb, ghi, dni, dhi, zenith = (np.atleast_1d(np.asarray(a, dtype=float))
                                       for a in (dry_bulb, ghi, dni, dhi, zenith))
    found = []
    for name, arr in (("ghi", ghi), ("dni", dni), ("dhi", dhi)):
        for i in np.flatnonzero(arr < 0):
            found.append(Violation(int(i) + offset, name, "negative", f"{name} = {arr[i]:g} W/m2"))
    for i in np.flatnonzero((dry_bulb < -60) | (dry_bulb > 60)):
        found.append(Violation(int(i) + offset, "dry_bulb", "range", f"dry bulb {dry_bulb[i]:g} C"))
    for i in np.flatnonzero((zenith > 95) & (dni > 0)):
        found.append(Violation(int(i) + offset, "dni", "night",
                               f"dni = {dni[i]:g} W/m2 with zenith {zenith[i]:.1f} deg"))
    expected = dni * np.maximum(np.cos(np.radians(zenith)), 0.0) + dhi
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.abs(ghi - expected) / ghi
    for i in np.flatnonzero((ghi > 200) & (rel > 0.2)):
        found.append(Violation(int(i) + offset, "ghi", "closure",
                               f"ghi {ghi[i]:g} vs dni*cos(z)+dhi {expected[i]:.1f} W/m2"))
    for i in np.flatnonzero((ghi > 0) & (ghi <= 200) & (dni == 0) & (dhi == 0)):
        found.append(Violation(int(i) + offset, "ghi", "components", f"ghi {ghi[i]:g} with zero dni and dhi"))
    found.sort(key=lambda v: (v.index, v.field, v.kind))
    return found


def validate_weather(w):
    from .solar import weather_angles

    zenith = weather_angles(w).zenith
    found = record_violations(w.dry_bulb, w.ghi, w.dni, w.dhi, zenith)
    return ValidationReport(tuple(found), w.interpolated)


def degree_hours(w, base, mode="heating"):
    """Heating or cooling degree-hours (°C·h) of a WeatherYear or temperature array."""
    if not 0 <= base <= 40:
        raise DomainError(f"degree-hour base must lie in [0, 40] C, got {base}")
    temps = np.asarray(w.dry_bulb if isinstance(w, WeatherYear) else w, dtype=float)
    if mode == "heating":
        return float(np.maximum(base - temps, 0.0).sum())
    if mode == "cooling":
        return float(np.maximum(temps - base, 0.0).sum())
    raise DomainError(f"mode must be 'heating' or 'cooling', got {mode!r}")

