"""
Comparing the six district layouts
==================================

The full chain for every scenario, then the comparison table with mean
and standard deviation columns. Output files go to a temporary folder.
"""

import tempfile

from roofpv import data
from roofpv.report import RunConfig, compare, emit_outputs, format_table, load_weather, run_all

weather = load_weather("synthetic:tokyo-2018")
out = tempfile.mkdtemp(prefix="roofpv-")
cfg = RunConfig(
    weather_path="synthetic:tokyo-2018",
    scenario_paths=[str(p) for p in data.scenario_paths()],
    calibration_targets_path=str(data.demand_targets_path()),
    output_dir=out,
    target_yield=1258.0,
    plots=True,
)

results = run_all(cfg, weather)
print(format_table(compare(results)))

for path in emit_outputs(results, cfg, weather):
    print(path)
