"""Solar geometry, plane-of-array transposition and hourly PV output.

Sun position follows the NOAA solar calculator (low-precision Meeus
series), which stays within a few hundredths of a degree of the full SPA
over 1950-2050. Positions are geometric (no refraction).
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

# julian day of 0001-01-01 00:00 minus its proleptic ordinal (1)
_JD_ORDINAL_OFFSET = 1721424.5


@dataclass(frozen=True)
class SolarAngles:
    """Zenith and azimuth in degrees; azimuth is clockwise from north."""

    zenith: float | np.ndarray
    azimuth: float | np.ndarray


@dataclass(frozen=True)
class PvArraySpec:
    capacity: float
    tilt: float = 30.0
    azimuth: float = 180.0
    system_loss_fraction: float = 0.14
    degradation_rate: float = 0.005
    ground_albedo: float = 0.2

    def __post_init__(self):
        if self.capacity < 0:
            raise DomainError(f"capacity must be >= 0, got {self.capacity}")
        if not 0 <= self.tilt <= 90:
            raise DomainError(f"tilt must lie in [0, 90], got {self.tilt}")
        if not 0 <= self.azimuth < 360:
            raise DomainError(f"azimuth must lie in [0, 360), got {self.azimuth}")
        if not 0 <= self.system_loss_fraction < 1:
            raise DomainError(f"system_loss_fraction must lie in [0, 1), got {self.system_loss_fraction}")
        if not 0 <= self.degradation_rate <= 0.05:
            raise DomainError(f"degradation_rate must lie in [0, 0.05], got {self.degradation_rate}")
        if not 0 <= self.ground_albedo <= 1:
            raise DomainError(f"ground_albedo must lie in [0, 1], got {self.ground_albedo}")

    def with_capacity(self, capacity):
        return PvArraySpec(capacity, self.tilt, self.azimuth, self.system_loss_fraction,
                           self.degradation_rate, self.ground_albedo)


@dataclass(frozen=True, eq=False)
class GenerationSeries:
    hourly_kwh: np.ndarray
    capacity: float
    annual_kwh: float = field(init=False)
    specific_yield: float = field(init=False)

    def __post_init__(self):
        hourly = np.asarray(self.hourly_kwh, dtype=float)
        hourly.setflags(write=False)
        object.__setattr__(self, "hourly_kwh", hourly)
        object.__setattr__(self, "annual_kwh", float(hourly.sum()))
        yield_ = self.annual_kwh / self.capacity if self.capacity > 0 else 0.0
        object.__setattr__(self, "specific_yield", yield_)


def _ordinals(year, month, day):
    """Proleptic Gregorian ordinals for (month, day) arrays within ``year``."""
    month = np.asarray(month, dtype=int)
    day = np.asarray(day, dtype=int)
    year = np.broadcast_to(np.asarray(year, dtype=int), month.shape)
    out = np.empty(month.shape, dtype=float)
    cache = {}
    for idx in np.ndindex(month.shape):
        key = (int(year[idx]), int(month[idx]), int(day[idx]))
        if key not in cache:
            try:
                cache[key] = _dt.date(*key).toordinal()
            except ValueError as exc:
                raise DomainError(f"invalid date {key}: {exc}") from None
        out[idx] = cache[key]
    return out


def solar_angles(lat, lon, tz, year, month, day, hour):
    """Vectorised sun position at local standard clock time ``hour`` (fractional hours).

    No midpoint shift is applied here; see :func:`sun_position`.
    """
    if not -90 <= lat <= 90:
        raise DomainError(f"latitude out of range: {lat}")
    if not -180 <= lon <= 180:
        raise DomainError(f"longitude out of range: {lon}")
    hour = np.asarray(hour, dtype=float)
    if np.any((hour < 0) | (hour > 24)):
        raise DomainError("hour must lie in [0, 24]")

    jd = _ordinals(year, month, day) + _JD_ORDINAL_OFFSET + (hour - tz) / 24.0
    jc = (jd - 2451545.0) / 36525.0

    l0 = np.mod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0)
    m = 357.52911 + jc * (35999.05029 - 0.0001537 * jc)
    ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc)
    m_r = np.radians(m)
    centre = (np.sin(m_r) * (1.914602 - jc * (0.004817 + 0.000014 * jc))
              + np.sin(2 * m_r) * (0.019993 - 0.000101 * jc)
              + np.sin(3 * m_r) * 0.000289)
    omega = np.radians(125.04 - 1934.136 * jc)
    app_long = np.radians(l0 + centre - 0.00569 - 0.00478 * np.sin(omega))
    obliq0 = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0
    obliq = np.radians(obliq0 + 0.00256 * np.cos(omega))
    decl = np.arcsin(np.sin(obliq) * np.sin(app_long))

    y = np.tan(obliq / 2) ** 2
    l0_r = np.radians(l0)
    eot = 4.0 * np.degrees(
        y * np.sin(2 * l0_r)
        - 2 * ecc * np.sin(m_r)
        + 4 * ecc * y * np.sin(m_r) * np.cos(2 * l0_r)
        - 0.5 * y * y * np.sin(4 * l0_r)
        - 1.25 * ecc * ecc * np.sin(2 * m_r)
    )
    true_solar_min = hour * 60.0 + eot + 4.0 * lon - 60.0 * tz
    hour_angle = np.radians(true_solar_min / 4.0 - 180.0)

    phi = np.radians(lat)
    cos_z = np.sin(phi) * np.sin(decl) + np.cos(phi) * np.cos(decl) * np.cos(hour_angle)
    zenith = np.degrees(np.arccos(np.clip(cos_z, -1.0, 1.0)))
    azimuth = np.mod(
        np.degrees(np.arctan2(np.sin(hour_angle),
                              np.cos(hour_angle) * np.sin(phi) - np.tan(decl) * np.cos(phi))) + 180.0,
        360.0,
    )
    if zenith.ndim == 0:
        return SolarAngles(float(zenith), float(azimuth))
    return SolarAngles(zenith, azimuth)


def sun_position(lat, lon, tz, month, day, hour, year=2018):
    """Sun position for the hour interval starting at ``hour`` (0-23), evaluated at its midpoint."""
    return solar_angles(lat, lon, tz, year, month, day, np.asarray(hour, dtype=float) + 0.5)


def weather_angles(w):
    """Interval-midpoint sun positions for every record of a WeatherYear."""
    return sun_position(w.latitude, w.longitude, w.timezone_offset, w.month, w.day, w.hour, year=w.year)


def cos_incidence(angles, tilt, azimuth):
    z = np.radians(angles.zenith)
    b = np.radians(tilt)
    return np.cos(z) * np.cos(b) + np.sin(z) * np.sin(b) * np.cos(np.radians(angles.azimuth - azimuth))


def poa_irradiance(angles, ghi, dni, dhi, array):
    """Isotropic-sky plane-of-array irradiance in W/m²."""
    cos_tilt = np.cos(np.radians(array.tilt))
    sun_up = np.asarray(angles.zenith) < 90.0
    beam = np.where(sun_up, dni * np.maximum(cos_incidence(angles, array.tilt, array.azimuth), 0.0), 0.0)
    sky = dhi * (1.0 + cos_tilt) / 2.0
    ground = ghi * array.ground_albedo * (1.0 - cos_tilt) / 2.0
    poa = np.maximum(beam + sky + ground, 0.0)
    return float(poa) if poa.ndim == 0 else poa


def generation_series(w, array, angles=None):
    """Year-1 hourly AC energy for ``array`` under weather ``w``."""
    if array.capacity == 0:
        return GenerationSeries(np.zeros(len(w)), 0.0)
    if angles is None:
        angles = weather_angles(w)
    poa = poa_irradiance(angles, w.ghi, w.dni, w.dhi, array)
    hourly = array.capacity * poa / 1000.0 * (1.0 - array.system_loss_fraction)
    return GenerationSeries(hourly, array.capacity)


def calibrate_loss(w, array, target_specific_yield):
    """Loss fraction that makes ``array`` deliver ``target_specific_yield`` kWh/kW under ``w``.

    Output is linear in (1 - loss), so the inversion is closed form.
    """
    lossless = PvArraySpec(1.0, array.tilt, array.azimuth, 0.0, array.degradation_rate, array.ground_albedo)
    raw_yield = generation_series(w, lossless).annual_kwh
    loss = 1.0 - target_specific_yield / raw_yield
    if not 0 <= loss < 1:
        raise DomainError(
            f"target yield {target_specific_yield:.1f} kWh/kW is unreachable; lossless yield is {raw_yield:.1f}"
        )
    return loss


def degraded_annual(year1_kwh, rate, n):
    if n < 1:
        raise DomainError(f"project year must be >= 1, got {n}")
    return year1_kwh * (1.0 - rate) ** (n - 1)
