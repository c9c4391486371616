"""Scenario pipeline, multi-scenario comparison and report files.

Pipeline per scenario: geometry -> demand -> generation at the maximum
rooftop capacity -> hourly balance -> indicators -> finance per preset.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import svg
from .demand import DemandParams, annual_breakdown, calibrate, load_params, load_targets, synthesize_demand
from .dispatch import energy_indicators, hourly_balance, write_balance_csv
from .errors import RoofPVError, UsageError, ValidationError
from .finance import DEFAULT_DEGRADATION, evaluate, load_finance_params, preset
from .geometry import derive_metrics, load_scenario
from .solar import PvArraySpec, calibrate_loss, generation_series, weather_angles
from .weather import read_epw

SCHEMA_VERSION = 1
SYNTHETIC_PREFIX = "synthetic:"


@dataclass
class RunConfig:
    weather_path: str
    scenario_paths: list
    finance_presets: list = field(default_factory=lambda: ["2018", "2030"])
    finance_params_path: str | None = None
    demand_params_path: str | None = None
    calibration_targets_path: str | None = None
    calibration_scenario_path: str | None = None
    output_dir: str = "roofpv-out"
    formats: tuple = ("csv", "json")
    plots: bool = False
    tilt: float = 30.0
    azimuth: float = 180.0
    loss: float | None = None
    target_yield: float | None = None
    degradation: float = DEFAULT_DEGRADATION
    albedo: float = 0.2

    def check(self):
        if not self.scenario_paths:
            raise UsageError("at least one scenario is required")
        if self.demand_params_path is None and self.calibration_targets_path is None:
            raise UsageError("either demand params or calibration targets are required")
        bad = set(self.formats) - {"csv", "json"}
        if bad:
            raise UsageError(f"unknown output formats: {sorted(bad)}")


def load_weather(spec):
    """Read an EPW path, or build a bundled synthetic year from ``synthetic:tokyo-2018``."""
    spec = str(spec)
    if spec.startswith(SYNTHETIC_PREFIX):
        from .synthetic import tokyo_2018

        name = spec[len(SYNTHETIC_PREFIX):]
        if name != "tokyo-2018":
            raise UsageError(f"unknown synthetic weather {name!r}; available: tokyo-2018")
        return tokyo_2018()
    return read_epw(spec)


@dataclass
class Inputs:
    """Everything shared by the scenarios of one run."""

    weather: object
    angles: object
    demand_params: DemandParams
    array: PvArraySpec
    finance: dict


def prepare(cfg, weather=None):
    cfg.check()
    w = weather if weather is not None else load_weather(cfg.weather_path)
    if cfg.demand_params_path:
        params = load_params(cfg.demand_params_path)
    else:
        calib_path = cfg.calibration_scenario_path or cfg.scenario_paths[0]
        params = calibrate(derive_metrics(load_scenario(calib_path)), w, load_targets(cfg.calibration_targets_path))
    array = PvArraySpec(1.0, cfg.tilt, cfg.azimuth, 0.0, 0.0, cfg.albedo)
    if cfg.target_yield is not None:
        loss = calibrate_loss(w, array, cfg.target_yield)
    elif cfg.loss is not None:
        loss = cfg.loss
    else:
        loss = PvArraySpec(1.0).system_loss_fraction
    array = PvArraySpec(1.0, cfg.tilt, cfg.azimuth, loss, cfg.degradation, cfg.albedo)
    if cfg.finance_params_path:
        finance = {"custom": load_finance_params(cfg.finance_params_path)}
    else:
        finance = {name: preset(name) for name in cfg.finance_presets}
    return Inputs(w, weather_angles(w), params, array, finance)


@dataclass(eq=False)
class ScenarioResult:
    name: str
    label: str
    metrics: object
    breakdown: object
    generation: object
    indicators: object
    finance: dict
    array: PvArraySpec
    balance: object = None
    demand: object = None
    cash_flows: dict = None

    def to_dict(self):
        gen = self.generation
        return {
            "name": self.name,
            "label": self.label,
            "geometry": self.metrics.as_dict(),
            "demand": {
                "totals_kwh": self.breakdown.totals,
                "shares_percent": self.breakdown.shares,
                "total_kwh": self.breakdown.total,
                "unit_floor_consumption_kwh_m2": self.breakdown.unit_floor_consumption,
            },
            "generation": {
                "capacity_kw": gen.capacity,
                "annual_kwh": gen.annual_kwh,
                "specific_yield_kwh_kw": gen.specific_yield,
                "tilt": self.array.tilt,
                "azimuth": self.array.azimuth,
                "system_loss_fraction": self.array.system_loss_fraction,
                "degradation_rate": self.array.degradation_rate,
            },
            "indicators": {k: v for k, v in asdict(self.indicators).items() if k != "notes"}
            | {"notes": list(self.indicators.notes)},
            "finance": {k: v.to_dict() for k, v in self.finance.items()},
        }


def run_scenario(cfg, scenario, inputs=None):
    inputs = inputs or prepare(cfg)
    try:
        metrics = derive_metrics(scenario)
    except ValidationError as exc:
        raise ValidationError(f"[{scenario.name}] {exc}") from None
    demand = synthesize_demand(metrics, inputs.weather, inputs.demand_params)
    array = inputs.array.with_capacity(metrics.max_pv_capacity)
    gen = generation_series(inputs.weather, array, angles=inputs.angles)
    balance = hourly_balance(demand, gen)
    ef = next(iter(inputs.finance.values())).emission_factor
    indicators = energy_indicators(balance, ef)
    finance, flows = {}, {}
    for name, params in inputs.finance.items():
        finance[name], flows[name] = evaluate(balance, array.capacity, params, array.degradation_rate)
    return ScenarioResult(scenario.name, scenario.label, metrics, annual_breakdown(demand), gen, indicators,
                          finance, array, balance, demand, flows)


def run_all(cfg, weather=None, parallel=True):
    """Evaluate every scenario of ``cfg``; output order follows ``cfg.scenario_paths``."""
    inputs = prepare(cfg, weather)
    scenarios = [load_scenario(p) for p in cfg.scenario_paths]
    if parallel and len(scenarios) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda s: run_scenario(cfg, s, inputs), scenarios))
    return [run_scenario(cfg, s, inputs) for s in scenarios]


# -- comparison ------------------------------------------------------------

@dataclass
class ComparisonTable:
    scenarios: list
    rows: list  # (indicator, unit, values)

    def mean(self, values):
        return float(np.mean(values))

    def std(self, values):
        return float(np.std(values, ddof=1))

    def row(self, name):
        for indicator, unit, values in self.rows:
            if indicator == name:
                return values
        raise KeyError(name)

    def records(self):
        for indicator, unit, values in self.rows:
            clean = [v for v in values if v is not None]
            mean = self.mean(clean) if len(clean) == len(values) else None
            std = self.std(clean) if mean is not None else None
            rel = std / mean * 100.0 if mean not in (None, 0.0) else None
            yield indicator, unit, values, mean, std, rel


def compare(results):
    if len(results) < 2:
        raise UsageError("comparison needs at least two scenario results")
    rows = []

    def add(name, unit, fn):
        rows.append((name, unit, [fn(r) for r in results]))

    add("building_count", "-", lambda r: r.metrics.building_count)
    add("average_height", "m", lambda r: r.metrics.average_height)
    add("average_floors", "-", lambda r: r.metrics.average_floors)
    add("floor_area", "m2", lambda r: r.metrics.total_floor_area)
    add("far", "%", lambda r: r.metrics.far)
    add("bcr", "%", lambda r: r.metrics.bcr)
    add("total_volume", "m3", lambda r: r.metrics.total_volume)
    add("above_ground_surface_area", "m2", lambda r: r.metrics.above_ground_surface_area)
    add("surface_to_volume", "1/m", lambda r: r.metrics.surface_to_volume)
    add("rooftop_area", "m2", lambda r: r.metrics.rooftop_area)
    add("rooftop_pv_capacity", "MW", lambda r: r.metrics.max_pv_capacity / 1000.0)
    for comp in ("lighting", "equipment", "heating", "cooling"):
        add(f"{comp}_demand", "GWh", lambda r, c=comp: r.breakdown.totals[c] / 1e6)
    add("total_demand", "GWh", lambda r: r.breakdown.total / 1e6)
    add("unit_floor_consumption", "kWh/m2", lambda r: r.breakdown.unit_floor_consumption)
    add("pv_generation", "GWh/yr", lambda r: r.generation.annual_kwh / 1e6)
    add("self_sufficiency", "%", lambda r: r.indicators.self_sufficiency)
    add("self_consumption", "%", lambda r: r.indicators.self_consumption)
    add("energy_sufficiency", "%", lambda r: r.indicators.energy_sufficiency)
    add("co2_reduction", "%", lambda r: r.indicators.co2_reduction)
    for key in results[0].finance:
        add(f"lcoe_{key}", "$/kWh", lambda r, k=key: r.finance[k].lcoe)
        add(f"npv_{key}", "M$", lambda r, k=key: r.finance[k].npv / 1e6)
        add(f"payback_{key}", "yr", lambda r, k=key: r.finance[k].payback_years)
        add(f"cost_saving_{key}", "%", lambda r, k=key: r.finance[k].cost_saving)
    return ComparisonTable([r.name for r in results], rows)


def format_table(table, digits=3):
    head = ["indicator", "unit", *table.scenarios, "mean", "std", "std/mean %"]
    lines = [head]
    fmt = lambda v: "-" if v is None else f"{v:.{digits}g}" if abs(v) < 1e3 else f"{v:,.0f}"
    for indicator, unit, values, mean, std, rel in table.records():
        lines.append([indicator, unit, *map(fmt, values), fmt(mean), fmt(std), fmt(rel)])
    widths = [max(len(str(row[i])) for row in lines) for i in range(len(head))]
    return "\n".join("  ".join(str(c).rjust(w) for c, w in zip(row, widths)) for row in lines)


def write_comparison_csv(table, path):
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["indicator", "unit", *table.scenarios, "mean", "std", "std_over_mean_percent",
                         "schema_version"])
        for indicator, unit, values, mean, std, rel in table.records():
            cells = [_csv_num(v) for v in (*values, mean, std, rel)]
            writer.writerow([indicator, unit, *cells, SCHEMA_VERSION])


def _csv_num(v):
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return ""
    return repr(float(v)) if isinstance(v, float) else str(v)


# -- files -----------------------------------------------------------------

def sanitize(obj, path="$"):
    """Replace NaN/Inf with ``None`` and record why; returns (clean, reasons)."""
    reasons = []

    def walk(o, p):
        if isinstance(o, dict):
            return {k: walk(v, f"{p}.{k}") for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(v, f"{p}[{i}]") for i, v in enumerate(o)]
        if isinstance(o, (np.floating, np.integer)):
            o = o.item()
        if isinstance(o, float) and not math.isfinite(o):
            reasons.append({"path": p, "reason": f"non-finite value {o!r}"})
            return None
        return o

    return walk(obj, path), reasons


def _null_reasons(results_doc):
    out = []
    for s in results_doc["scenarios"]:
        for key, fin in s["finance"].items():
            if fin["payback_years"] is None:
                out.append({"path": f"$.scenarios[{s['name']}].finance.{key}.payback_years",
                            "reason": "cumulative savings never cover the system cost within the project period"})
            if fin["lcoe"] is None:
                out.append({"path": f"$.scenarios[{s['name']}].finance.{key}.lcoe",
                            "reason": "no PV generation"})
    return out


def results_document(results, cfg=None, weather=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "generator": "roofpv",
        "weather": None if weather is None else {
            "location": weather.location, "latitude": weather.latitude, "longitude": weather.longitude,
            "timezone_offset": weather.timezone_offset, "year": weather.year,
            "annual_ghi_kwh_m2": float(np.sum(weather.ghi)) / 1000.0,
        },
        "scenarios": [r.to_dict() for r in results],
    }
    doc, reasons = sanitize(doc)
    doc["null_reasons"] = _null_reasons(doc) + reasons
    return doc


def monthly_sums(hourly, month):
    hourly = np.asarray(hourly)
    return [float(hourly[np.asarray(month) == m].sum()) for m in range(1, 13)]


MONTH_LABELS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")


def monthly_chart(result, month):
    demand = [v / 1e6 for v in monthly_sums(result.balance.demand, month)]
    gen = [v / 1e6 for v in monthly_sums(result.balance.generation, month)]
    return svg.bar_chart(MONTH_LABELS, [("demand", demand), ("PV generation", gen)],
                         title=f"{result.name}: monthly demand and PV generation", x_label="month",
                         y_label="GWh")


def cashflow_chart(result):
    series = []
    years = None
    for key, cf in result.cash_flows.items():
        position = (np.concatenate([[0.0], np.cumsum(cf.cash_flow)]) - cf.system_cost) / 1e6
        years = list(range(cf.years + 1))
        series.append((key, [float(v) for v in position]))
    return svg.line_chart(years, series, title=f"{result.name}: cumulative cash flow (undiscounted)",
                          x_label="project year", y_label="M$")


def _safe_name(name):
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in name)


def emit_outputs(results, cfg, weather=None):
    """Write report files into ``cfg.output_dir``; returns the list of paths written."""
    out = Path(cfg.output_dir)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        if "json" in cfg.formats:
            path = out / "scenario_results.json"
            path.write_text(json.dumps(results_document(results, cfg, weather), indent=2) + "\n")
            written.append(path)
        if "csv" in cfg.formats:
            if len(results) >= 2:
                path = out / "comparison.csv"
                write_comparison_csv(compare(results), path)
                written.append(path)
            for r in results:
                path = out / f"balance_{_safe_name(r.name)}.csv"
                write_balance_csv(r.balance, path)
                written.append(path)
        if cfg.plots:
            month = weather.month if weather is not None else None
            if month is None:
                from .weather import canonical_calendar

                month = canonical_calendar()[0]
            for r in results:
                path = out / f"monthly_{_safe_name(r.name)}.svg"
                svg.write(monthly_chart(r, month), path)
                written.append(path)
                path = out / f"cashflow_{_safe_name(r.name)}.svg"
                svg.write(cashflow_chart(r), path)
                written.append(path)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write report output: {exc.strerror}", exc.filename) from None
    return written


def results_schema():
    from .data import DATA

    return json.loads((DATA / "scenario_results.schema.json").read_text())


__all__ = [
    "RunConfig", "ScenarioResult", "ComparisonTable", "prepare", "run_scenario", "run_all", "compare",
    "emit_outputs", "results_document", "format_table", "load_weather", "RoofPVError",
]
