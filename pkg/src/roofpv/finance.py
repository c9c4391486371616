"""Multi-year cash flows of a rooftop PV system against a grid-only baseline.

All money is in US dollars. Capital cost is quoted per watt DC. Year 0
carries the system cost; years 1..N carry the net saving (avoided imports
at the buy price plus exports at the sell price, minus maintenance).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .dispatch import BalanceSeries
from .errors import DomainError

DEFAULT_DEGRADATION = 0.005


@dataclass(frozen=True)
class FinanceParams:
    capital_cost: float  # $/W-DC
    project_years: int = 25
    discount_rate: float = 0.03
    maintenance_cost: float = 31.4  # $/kW/yr, inverter replacement included
    buy_price: float = 0.15  # $/kWh
    sell_price: float = 0.08  # $/kWh
    emission_factor: float = 0.455  # kgCO₂/kWh
    currency_note: str = "110 JPY/USD"

    def __post_init__(self):
        if int(self.project_years) != self.project_years or self.project_years < 1:
            raise DomainError(f"project_years must be a positive integer, got {self.project_years}")
        object.__setattr__(self, "project_years", int(self.project_years))
        if not 0 <= self.discount_rate < 1:
            raise DomainError(f"discount_rate must lie in [0, 1), got {self.discount_rate}")
        for name in ("capital_cost", "maintenance_cost", "buy_price", "sell_price", "emission_factor"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")

    def replace(self, **changes):
        data = asdict(self)
        data.update(changes)
        return FinanceParams(**data)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})


def _load_presets():
    from .data import finance_presets_path

    raw = json.loads(finance_presets_path().read_text())
    return {name: FinanceParams.from_dict(doc) for name, doc in raw.items()}


PRESETS = _load_presets()


def preset(name):
    try:
        return PRESETS[str(name)]
    except KeyError:
        raise DomainError(f"unknown finance preset {name!r}; choose from {sorted(PRESETS)}") from None


def load_finance_params(path):
    """A FinanceParams document, or ``{"preset": "2018", ...overrides}``."""
    data = json.loads(Path(path).read_text())
    base = preset(data.pop("preset")).to_dict() if "preset" in data else {}
    base.update(data)
    return FinanceParams.from_dict(base)


def _ro(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CashFlows:
    capacity: float  # kW
    system_cost: float  # $ at year 0
    generation: np.ndarray  # Q_n, kWh, n = 1..N
    self_consumed: np.ndarray
    exported: np.ndarray
    savings: np.ndarray  # avoided grid cost + export revenue
    maintenance: np.ndarray  # C_n
    cash_flow: np.ndarray = field(init=False)

    def __post_init__(self):
        for name in ("generation", "self_consumed", "exported", "savings", "maintenance"):
            object.__setattr__(self, name, _ro(getattr(self, name)))
        object.__setattr__(self, "cash_flow", _ro(self.savings - self.maintenance))

    @property
    def years(self):
        return self.cash_flow.size

    @property
    def cumulative_undiscounted(self):
        return np.cumsum(self.cash_flow)


def cash_flow_schedule(balance_year1, capacity, p, degradation=DEFAULT_DEGRADATION):
    """Year-by-year cash flows; each year's generation is degraded and re-balanced against year-1 demand."""
    if capacity < 0:
        raise DomainError(f"capacity must be >= 0, got {capacity}")
    if not 0 <= degradation < 1:
        raise DomainError(f"degradation must lie in [0, 1), got {degradation}")
    n_years = p.project_years
    gen = np.asarray(balance_year1.generation)
    dem = np.asarray(balance_year1.demand)
    q = np.empty(n_years)
    sc = np.empty(n_years)
    ex = np.empty(n_years)
    for n in range(n_years):
        g = gen * (1.0 - degradation) ** n
        used = np.minimum(g, dem)
        q[n] = g.sum()
        sc[n] = used.sum()
        ex[n] = q[n] - sc[n]
    savings = p.buy_price * sc + p.sell_price * ex
    maintenance = np.full(n_years, p.maintenance_cost * capacity)
    return CashFlows(
        capacity=float(capacity),
        system_cost=p.capital_cost * capacity * 1000.0,
        generation=q,
        self_consumed=sc,
        exported=ex,
        savings=savings,
        maintenance=maintenance,
    )


def _discount(n_years, rate):
    return (1.0 + rate) ** -np.arange(1, n_years + 1)


def npv(cf, discount_rate):
    return float(cf.cash_flow @ _discount(cf.years, discount_rate) - cf.system_cost)


def payback(cf):
    """First year in which undiscounted cumulative cash flow covers the system cost, else None.

    A zero-cost system pays back at year 0.
    """
    if cf.system_cost <= 0:
        return 0
    reached = np.flatnonzero(cf.cumulative_undiscounted >= cf.system_cost)
    return int(reached[0]) + 1 if reached.size else None


def lcoe(cf, discount_rate):
    disc = _discount(cf.years, discount_rate)
    energy = float(cf.generation @ disc)
    if energy <= 0:
        raise DomainError("LCOE undefined: no discounted generation")
    return (cf.system_cost + float(cf.maintenance @ disc)) / energy


def cost_saving(npv_value, project_years, annual_base_cost):
    """Average yearly NPV as a percentage of the baseline annual grid bill."""
    if annual_base_cost <= 0:
        raise DomainError("annual base cost must be positive")
    return npv_value / project_years / annual_base_cost * 100.0


@dataclass(frozen=True)
class FinanceResult:
    npv: float
    payback_years: int | None
    lcoe: float | None
    cost_saving: float
    annual_base_cost: float
    system_cost: float
    capacity: float

    def to_dict(self):
        return asdict(self)


def evaluate(balance_year1, capacity, p, degradation=DEFAULT_DEGRADATION):
    """Run the cash-flow schedule and every financial indicator for one system."""
    cf = cash_flow_schedule(balance_year1, capacity, p, degradation)
    value = npv(cf, p.discount_rate)
    base_cost = float(np.sum(balance_year1.demand)) * p.buy_price
    try:
        levelised = lcoe(cf, p.discount_rate)
    except DomainError:
        levelised = None
    return FinanceResult(
        npv=value,
        payback_years=payback(cf),
        lcoe=levelised,
        cost_saving=cost_saving(value, p.project_years, base_cost),
        annual_base_cost=base_cost,
        system_cost=cf.system_cost,
        capacity=float(capacity),
    ), cf


@dataclass(frozen=True, eq=False)
class SweepResult:
    capacities: np.ndarray
    npvs: np.ndarray
    best_capacity: float
    best_npv: float
    profitable: bool

    def table(self):
        return [(float(c), float(v)) for c, v in zip(self.capacities, self.npvs)]


def sweep_grid(cap_max, step):
    if cap_max <= 0 or step <= 0:
        raise DomainError("cap_max and step must be positive")
    n = int(np.floor(cap_max / step + 1e-9))
    grid = step * np.arange(1, n + 1, dtype=float)
    if grid.size == 0 or not np.isclose(grid[-1], cap_max, rtol=1e-9, atol=0.0):
        grid = np.append(grid, cap_max)
    else:
        grid[-1] = cap_max
    return grid


def capacity_sweep(balance_factory, p, cap_max, step, degradation=DEFAULT_DEGRADATION):
    """NPV over capacities step, 2*step, ..., cap_max; ties go to the smaller capacity."""
    grid = sweep_grid(cap_max, step)
    values = np.array([npv(cash_flow_schedule(balance_factory(c), c, p, degradation), p.discount_rate)
                       for c in grid])
    best = int(np.argmax(values))
    return SweepResult(grid, values, float(grid[best]), float(values[best]), bool(values[best] > 0))


def linear_balance_factory(demand, unit_generation):
    """capacity -> BalanceSeries, for a generation profile that scales linearly with capacity."""
    demand = np.asarray(demand.hourly_total if hasattr(demand, "hourly_total") else demand, dtype=float)
    unit = np.asarray(unit_generation, dtype=float)
    return lambda capacity: BalanceSeries(unit * capacity, demand)
