"""
A calibrated office demand surrogate
====================================

Fit the four demand coefficients to annual totals for the existing
district, then reuse them on the other layouts. Lighting and equipment
follow floor area, heating follows the envelope.
"""

import numpy as np

from roofpv import annual_breakdown, calibrate, data, derive_metrics, load_scenario, synthesize_demand
from roofpv.demand import load_targets
from roofpv.synthetic import tokyo_2018

w = tokyo_2018()
metrics = [derive_metrics(load_scenario(p)) for p in data.scenario_paths()]
targets = load_targets(data.demand_targets_path())
print("targets (GWh):", targets)

params = calibrate(metrics[0], w, targets)
print("lighting", round(params.lighting_intensity, 1), "kWh/m2, equipment", round(params.equipment_intensity, 1),
      "kWh/m2, envelope", round(params.heating_envelope_coeff, 3), "W/m2K, gain", round(params.cooling_gain_coeff, 2))

for m in metrics:
    d = synthesize_demand(m, w, params)
    b = annual_breakdown(d)
    print(f"surface {m.above_ground_surface_area:8.0f} m2  heating {b.totals['heating'] / 1e6:5.2f}  "
          f"cooling {b.totals['cooling'] / 1e6:5.2f}  total {b.total / 1e6:5.2f} GWh  {b.unit_floor_consumption:.0f} kWh/m2")

# the weekly rhythm shows up in the autocorrelation
total = synthesize_demand(metrics[0], w, params).hourly_total
x = total - total.mean()
for lag in (24, 100, 168):
    print("lag", lag, round(float(x[:-lag] @ x[lag:] / (x @ x)), 3))
