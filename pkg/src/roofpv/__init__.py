"""Rooftop-PV techno-economics for office-district redevelopment scenarios."""

from .demand import DemandParams, annual_breakdown, calibrate, synthesize_demand
from .dispatch import BalanceSeries, energy_indicators, hourly_balance
from .finance import (
    PRESETS,
    FinanceParams,
    capacity_sweep,
    cash_flow_schedule,
    evaluate,
    lcoe,
    npv,
    payback,
    preset,
)
from .geometry import BuildingSpec, ScenarioSpec, derive_metrics, load_scenario
from .solar import PvArraySpec, calibrate_loss, generation_series, poa_irradiance, sun_position
from .weather import WeatherYear, degree_hours, format_epw, parse_epw, read_epw, validate_weather, write_epw

__version__ = "0.1.0"
