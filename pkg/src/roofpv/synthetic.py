"""Deterministic synthetic weather years.

Used as the bundled Tokyo stand-in and as a test fixture. Temperatures
follow monthly normals with a diurnal swing and an AR(1) day-to-day
anomaly. Irradiance is Haurwitz clear-sky scaled by a daily cloudiness
draw and split into beam/diffuse with the Erbs correlation, so every
record satisfies ghi = dni*cos(zenith) + dhi before rounding.
"""

import numpy as np

from .solar import sun_position
from .weather import WeatherYear, canonical_calendar

# Tokyo monthly mean dry-bulb (C), Jan..Dec
TOKYO_MONTHLY_TEMP = (5.6, 7.2, 10.6, 15.4, 19.8, 22.6, 27.1, 28.4, 23.9, 19.0, 13.4, 8.3)
# mean daily fraction of clear-sky GHI, Jan..Dec
TOKYO_MONTHLY_CLEARNESS = (0.74, 0.70, 0.63, 0.63, 0.63, 0.50, 0.58, 0.64, 0.52, 0.54, 0.64, 0.72)

TOKYO_SITE = dict(latitude=35.6, longitude=139.7, timezone_offset=9.0, elevation=5.0)

_MID_MONTH_DOY = np.array([15.5, 45, 74.5, 105, 135.5, 166, 196.5, 227.5, 258, 288.5, 319, 349.5])


def _periodic_interp(doy, anchors):
    x = np.concatenate([_MID_MONTH_DOY - 365, _MID_MONTH_DOY, _MID_MONTH_DOY + 365])
    y = np.tile(np.asarray(anchors, dtype=float), 3)
    return np.interp(doy, x, y)


def erbs_diffuse_fraction(kt):
    kt = np.asarray(kt, dtype=float)
    return np.where(
        kt <= 0.22,
        1.0 - 0.09 * kt,
        np.where(kt <= 0.80,
                 0.9511 - 0.1604 * kt + 4.388 * kt**2 - 16.638 * kt**3 + 12.336 * kt**4,
                 0.165),
    )


def synthetic_year(latitude, longitude, timezone_offset, elevation=0.0, *, monthly_temp,
                   monthly_clearness, year=2018, seed=2018, location="synthetic",
                   diurnal_amplitude=3.5, anomaly_sd=2.0, round_values=True):
    rng = np.random.default_rng(seed)
    month, day, hour = canonical_calendar()
    doy = np.arange(365)
    day_index = np.repeat(doy, 24)

    # daily cloudiness: beta draws around the monthly mean
    mean_clear = _periodic_interp(doy + 0.5, monthly_clearness)
    conc = 3.0
    daily_clear = rng.beta(mean_clear * conc, (1 - mean_clear) * conc)
    hourly_clear = np.clip(daily_clear[day_index] * rng.normal(1.0, 0.08, day_index.size), 0.03, 1.0)

    anomaly = np.empty(365)
    anomaly[0] = rng.normal(0, anomaly_sd)
    shocks = rng.normal(0, anomaly_sd * np.sqrt(1 - 0.7**2), 365)
    for d in range(1, 365):
        anomaly[d] = 0.7 * anomaly[d - 1] + shocks[d]
    mean_temp = _periodic_interp(doy + 0.5, monthly_temp) + anomaly
    swing = diurnal_amplitude * (0.6 + 0.8 * daily_clear)
    dry_bulb = mean_temp[day_index] + swing[day_index] * np.cos(2 * np.pi * (hour + 0.5 - 14.0) / 24.0)

    angles = sun_position(latitude, longitude, timezone_offset, month, day, hour, year=year)
    cos_z = np.cos(np.radians(angles.zenith))
    up = cos_z > 0.0
    safe_cos = np.where(up, cos_z, 1.0)
    clear_ghi = np.where(up, 1098.0 * cos_z * np.exp(-0.057 / safe_cos), 0.0)
    ghi = clear_ghi * hourly_clear

    extra = 1367.0 * (1 + 0.033 * np.cos(2 * np.pi * (day_index + 1) / 365.0)) * np.where(up, cos_z, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        kt = np.where(extra > 0, ghi / extra, 0.0)
    dhi = np.where(cos_z > 0.065, erbs_diffuse_fraction(np.clip(kt, 0, 1)) * ghi, ghi)
    dni = np.where(cos_z > 0.065, (ghi - dhi) / safe_cos, 0.0)

    if round_values:
        dry_bulb = np.round(dry_bulb, 1)
        dni = np.round(dni)
        dhi = np.round(dhi)
        ghi = np.round(dni * np.where(up, cos_z, 0.0) + dhi)
    return WeatherYear(latitude, longitude, timezone_offset, elevation, dry_bulb, ghi, dni, dhi,
                       year=year, location=location)


def tokyo_2018(seed=2018):
    """Tokyo-like 2018 stand-in weather year (Shinagawa, 35.6N 139.7E, UTC+9)."""
    return synthetic_year(**TOKYO_SITE, monthly_temp=TOKYO_MONTHLY_TEMP,
                          monthly_clearness=TOKYO_MONTHLY_CLEARNESS, year=2018, seed=seed,
                          location="Tokyo-Shinagawa-synthetic")
