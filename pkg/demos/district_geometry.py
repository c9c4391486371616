"""
District scenarios as flat-roofed prisms
========================================

Six layouts share one site and one total floor area. Only the building
shapes differ, so the roof available for PV and the envelope area change.
"""

from roofpv import data, derive_metrics, load_scenario
from roofpv.geometry import facade_pv_estimate

scenarios = [load_scenario(p) for p in data.scenario_paths()]

print(f"{'':4} {'bldgs':>5} {'FAR %':>6} {'BCR %':>6} {'roof m2':>8} {'PV MW':>6} {'surface m2':>10} {'S/V':>6}")
for s in scenarios:
    m = derive_metrics(s)
    print(f"{s.name:4} {m.building_count:5d} {m.far:6.0f} {m.bcr:6.1f} {m.rooftop_area:8.0f} "
          f"{m.max_pv_capacity / 1000:6.2f} {m.above_ground_surface_area:10.0f} {m.surface_to_volume:6.3f}")

# 7 m2 of roof per kW: panel plus spacing and access
s2 = derive_metrics(scenarios[2])
print(s2.rooftop_area, "m2 ->", round(s2.max_pv_capacity), "kW")

# PV on the sunnier walls of the existing district, bare modules at 5 m2/kW
print(round(facade_pv_estimate(12_425, coefficient=5.0, specific_yield=1383.0) / 1e6, 2), "GWh/yr")
