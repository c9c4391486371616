"""
Cash flows, NPV and the capacity sweep
======================================

A rooftop system that is fully self-consumed, priced with today's and
projected capital costs.
"""

import numpy as np

from roofpv import BalanceSeries, preset
from roofpv.finance import capacity_sweep, cash_flow_schedule, evaluate, linear_balance_factory

# 3.63 GWh of PV against 62.4 GWh of demand, spread evenly over daylight hours
hours = np.arange(8760) % 24
daylight = (hours >= 7) & (hours < 17)
gen = np.where(daylight, 3.63e6 / daylight.sum(), 0.0)
dem = np.full(8760, 62.4e6 / 8760)
balance = BalanceSeries(gen, dem)

for year in ("2018", "2030"):
    result, cf = evaluate(balance, 2885.7, preset(year))
    print(year, f"NPV {result.npv / 1e6:.2f} M$, payback {result.payback_years} yr, "
                f"LCOE {result.lcoe:.3f} $/kWh, saving {result.cost_saving:.2f} %")

cf = cash_flow_schedule(balance, 2885.7, preset("2018"))
print("year 1 cash flow", round(cf.cash_flow[0]), "$; year 25", round(cf.cash_flow[-1]), "$")

# every extra kW is self-consumed, so the best size is the whole roof
factory = linear_balance_factory(dem, gen / 2885.7)
sweep = capacity_sweep(factory, preset("2018"), 2885.7, 2885.7 / 10)
for cap, value in sweep.table():
    print(f"{cap:7.0f} kW  {value / 1e6:6.2f} M$")

cheap_power = preset("2018").replace(buy_price=0.01)
print("at 0.01 $/kWh:", capacity_sweep(factory, cheap_power, 2885.7, 288.57).profitable)
