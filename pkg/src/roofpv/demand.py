"""Parametric hourly office-district electricity demand.

Lighting and equipment follow a weekly occupancy schedule scaled by floor
area. Heating is an envelope loss (surface × heating degree-hours)
converted through a heat-pump COP. Cooling has the same envelope term
driven by cooling degree-hours plus an occupancy-gated internal-gain term
proportional to floor area. Every component is linear in its
coefficient, so calibration to annual totals is closed form.
"""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CalibrationError, DomainError, ShapeError

COMPONENTS = ("lighting", "equipment", "heating", "cooling")
HEATING_COP = 2.27
COOLING_COP = 2.51


def default_schedule(weekday_start=8, weekday_end=19, occupied=1.0, night=0.25, weekend=0.4):
    """168 weekly occupancy fractions, Monday 00:00 first. No holidays."""
    week = np.full((7, 24), night)
    week[:5, weekday_start:weekday_end] = occupied
    week[5:, :] = weekend
    return tuple(float(x) for x in week.ravel())


@dataclass(frozen=True)
class DemandParams:
    lighting_intensity: float = 0.0  # kWh/m²/yr
    equipment_intensity: float = 0.0  # kWh/m²/yr
    heating_envelope_coeff: float = 0.0  # W per m² surface per K
    cooling_gain_coeff: float = 0.0  # W per m² floor per K, occupancy-weighted
    heating_cop: float = HEATING_COP
    cooling_cop: float = COOLING_COP
    heating_base: float = 18.0
    cooling_base: float = 24.0
    schedule: tuple = field(default_factory=default_schedule)

    def __post_init__(self):
        object.__setattr__(self, "schedule", tuple(float(x) for x in self.schedule))
        if len(self.schedule) != 168:
            raise ShapeError(f"schedule needs 168 hourly values, got {len(self.schedule)}")
        if any(not 0 <= x <= 1 for x in self.schedule):
            raise DomainError("schedule values must lie in [0, 1]")
        for name in ("lighting_intensity", "equipment_intensity", "heating_envelope_coeff", "cooling_gain_coeff"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        if self.heating_cop <= 1 or self.cooling_cop <= 1:
            raise DomainError("COPs must exceed 1")

    def replace(self, **changes):
        data = self.to_dict()
        data.update(changes)
        return DemandParams(**data)

    def to_dict(self):
        return {
            "lighting_intensity": self.lighting_intensity,
            "equipment_intensity": self.equipment_intensity,
            "heating_envelope_coeff": self.heating_envelope_coeff,
            "cooling_gain_coeff": self.cooling_gain_coeff,
            "heating_cop": self.heating_cop,
            "cooling_cop": self.cooling_cop,
            "heating_base": self.heating_base,
            "cooling_base": self.cooling_base,
            "schedule": list(self.schedule),
        }

    @classmethod
    def from_dict(cls, data):
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def load_params(path):
    return DemandParams.from_dict(json.loads(Path(path).read_text()))


def save_params(p, path):
    Path(path).write_text(json.dumps(p.to_dict(), indent=2) + "\n")


@dataclass(frozen=True, eq=False)
class DemandSeries:
    lighting: np.ndarray
    equipment: np.ndarray
    heating: np.ndarray
    cooling: np.ndarray
    total_floor_area: float

    def __post_init__(self):
        for name in COMPONENTS:
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def hourly_total(self):
        return self.lighting + self.equipment + self.heating + self.cooling

    @property
    def totals(self):
        return {name: float(getattr(self, name).sum()) for name in COMPONENTS}

    @property
    def total(self):
        return sum(self.totals.values())

    @property
    def unit_floor_consumption(self):
        return self.total / self.total_floor_area if self.total_floor_area > 0 else 0.0

    def scaled(self, k):
        return DemandSeries(*(getattr(self, c) * k for c in COMPONENTS), self.total_floor_area)


def hourly_schedule(w, schedule):
    """Map the weekly schedule onto each record of the weather year."""
    start = _dt.date(int(w.year), 1, 1).weekday()
    day_index = np.arange(len(w)) // 24
    weekday = (start + day_index) % 7
    return np.asarray(schedule)[weekday * 24 + np.asarray(w.hour)]


def synthesize_demand(m, w, p):
    occ = hourly_schedule(w, p.schedule)
    occ_share = occ / occ.sum() if occ.sum() > 0 else np.zeros_like(occ)
    floor = m.total_floor_area
    surface = m.above_ground_surface_area
    temps = np.asarray(w.dry_bulb)

    lighting = p.lighting_intensity * floor * occ_share
    equipment = p.equipment_intensity * floor * occ_share
    heat_dt = np.maximum(p.heating_base - temps, 0.0)
    cool_dt = np.maximum(temps - p.cooling_base, 0.0)
    heating = p.heating_envelope_coeff * surface * heat_dt / (1000.0 * p.heating_cop)
    cooling = (p.heating_envelope_coeff * surface * cool_dt
               + p.cooling_gain_coeff * floor * occ * cool_dt) / (1000.0 * p.cooling_cop)
    return DemandSeries(lighting, equipment, heating, cooling, floor)


def calibrate(m, w, targets, template=None):
    """Fit DemandParams so annual component totals equal ``targets`` (GWh).

    ``targets`` maps lighting/equipment/heating/cooling to GWh. Non-fitted
    fields (COPs, bases, schedule) come from ``template``.
    """
    p = template or DemandParams()
    missing = [c for c in COMPONENTS if c not in targets]
    if missing:
        raise CalibrationError(f"targets missing components: {missing}")
    kwh = {c: float(targets[c]) * 1e6 for c in COMPONENTS}
    if any(v < 0 for v in kwh.values()):
        raise CalibrationError("targets must be non-negative")
    floor = m.total_floor_area
    surface = m.above_ground_surface_area
    if floor <= 0:
        raise CalibrationError("calibration needs a positive floor area")

    temps = np.asarray(w.dry_bulb)
    heat_dh = float(np.maximum(p.heating_base - temps, 0.0).sum())
    cool_dt = np.maximum(temps - p.cooling_base, 0.0)
    cool_dh = float(cool_dt.sum())
    occ_cool_dh = float((hourly_schedule(w, p.schedule) * cool_dt).sum())

    if kwh["heating"] > 0 and (heat_dh == 0 or surface <= 0):
        raise CalibrationError("heating target is nonzero but the weather has no heating degree-hours")
    envelope = kwh["heating"] * 1000.0 * p.heating_cop / (surface * heat_dh) if kwh["heating"] > 0 else 0.0

    envelope_cooling = envelope * surface * cool_dh / (1000.0 * p.cooling_cop)
    remainder = kwh["cooling"] - envelope_cooling
    if kwh["cooling"] > 0 and occ_cool_dh == 0:
        raise CalibrationError("cooling target is nonzero but the weather has no occupied cooling degree-hours")
    if remainder < 0:
        raise CalibrationError(
            f"envelope cooling alone ({envelope_cooling / 1e6:.3f} GWh) exceeds the cooling target")
    gain = remainder * 1000.0 * p.cooling_cop / (floor * occ_cool_dh) if remainder > 0 else 0.0

    return p.replace(
        lighting_intensity=kwh["lighting"] / floor,
        equipment_intensity=kwh["equipment"] / floor,
        heating_envelope_coeff=envelope,
        cooling_gain_coeff=gain,
    )


@dataclass(frozen=True)
class Breakdown:
    totals: dict  # kWh/yr
    shares: dict  # percent
    total: float
    unit_floor_consumption: float


def annual_breakdown(d):
    totals = d.totals
    total = sum(totals.values())
    shares = {c: (v / total * 100.0 if total > 0 else 0.0) for c, v in totals.items()}
    return Breakdown(totals, shares, total, d.unit_floor_consumption)


def load_targets(path):
    """Targets document: ``{"unit": "GWh", "lighting": .., "equipment": .., "heating": .., "cooling": ..}``."""
    data = json.loads(Path(path).read_text())
    unit = data.get("unit", "GWh")
    scale = {"GWh": 1.0, "MWh": 1e-3, "kWh": 1e-6}.get(unit)
    if scale is None:
        raise CalibrationError(f"unknown target unit {unit!r}")
    return {c: float(data[c]) * scale for c in COMPONENTS}
