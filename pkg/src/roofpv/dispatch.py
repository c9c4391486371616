"""Hourly PV/demand balance and the energy and CO₂ indicators built on it."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, ShapeError

GRID_EMISSION_FACTOR = 0.455  # kgCO₂/kWh

BALANCE_COLUMNS = ("hour_index", "generation_kwh", "demand_kwh", "self_consumed_kwh", "exported_kwh",
                   "imported_kwh", "schema_version")
CSV_SCHEMA_VERSION = 1


def _ro(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BalanceSeries:
    generation: np.ndarray
    demand: np.ndarray
    self_consumed: np.ndarray = field(init=False)
    exported: np.ndarray = field(init=False)
    imported: np.ndarray = field(init=False)

    def __post_init__(self):
        gen = _ro(self.generation)
        dem = _ro(self.demand)
        if gen.shape != dem.shape:
            raise ShapeError(f"generation {gen.shape} and demand {dem.shape} differ in length")
        if np.any(gen < 0) or np.any(dem < 0):
            raise DomainError("generation and demand must be non-negative")
        self_consumed = np.minimum(gen, dem)
        object.__setattr__(self, "generation", gen)
        object.__setattr__(self, "demand", dem)
        object.__setattr__(self, "self_consumed", _ro(self_consumed))
        object.__setattr__(self, "exported", _ro(gen - self_consumed))
        object.__setattr__(self, "imported", _ro(dem - self_consumed))

    def annual(self):
        return {
            "generation": float(self.generation.sum()),
            "demand": float(self.demand.sum()),
            "self_consumed": float(self.self_consumed.sum()),
            "exported": float(self.exported.sum()),
            "imported": float(self.imported.sum()),
        }

    def scaled_generation(self, factor):
        return BalanceSeries(self.generation * factor, self.demand)


def hourly_balance(d, g):
    """Balance a DemandSeries (or array) against a GenerationSeries (or array)."""
    demand = d.hourly_total if hasattr(d, "hourly_total") else np.asarray(d, dtype=float)
    generation = g.hourly_kwh if hasattr(g, "hourly_kwh") else np.asarray(g, dtype=float)
    if demand.shape != generation.shape:
        raise ShapeError(f"series lengths differ: demand {demand.shape}, generation {generation.shape}")
    return BalanceSeries(generation, demand)


@dataclass(frozen=True)
class EnergyIndicators:
    energy_sufficiency: float
    self_sufficiency: float
    self_consumption: float
    co2_reduction: float
    co2_base: float
    co2_with_system: float
    notes: tuple = ()


def energy_indicators(b, emission_factor=GRID_EMISSION_FACTOR):
    a = b.annual()
    if a["demand"] <= 0:
        raise DomainError("annual demand must be positive")
    notes = []
    es = a["generation"] / a["demand"] * 100.0
    ss = a["self_consumed"] / a["demand"] * 100.0
    if a["generation"] > 0:
        sc = a["self_consumed"] / a["generation"] * 100.0
    else:
        sc = 100.0
        notes.append("self_consumption set to 100% by convention: no generation")
    co2_base = a["demand"] * emission_factor
    co2_system = a["imported"] * emission_factor
    reduction = (1.0 - co2_system / co2_base) * 100.0 if co2_base > 0 else 0.0
    return EnergyIndicators(es, ss, sc, reduction, co2_base, co2_system, tuple(notes))


def write_balance_csv(b, path):
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BALANCE_COLUMNS)
        for i in range(b.generation.size):
            writer.writerow([i, repr(float(b.generation[i])), repr(float(b.demand[i])),
                             repr(float(b.self_consumed[i])), repr(float(b.exported[i])),
                             repr(float(b.imported[i])), CSV_SCHEMA_VERSION])
