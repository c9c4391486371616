"""
Reading and checking an hourly weather year
===========================================

Build the synthetic Tokyo year, write it as EPW text, read it back and
look at the quantities the rest of the pipeline depends on.
"""

import numpy as np

from roofpv import degree_hours, format_epw, parse_epw, validate_weather
from roofpv.synthetic import tokyo_2018

text = format_epw(tokyo_2018())
print(text.splitlines()[0])

w = parse_epw(text)
print(len(w), "hourly records at", w.latitude, w.longitude)

# annual irradiance in kWh/m2
print("GHI", round(w.ghi.sum() / 1000, 1), "DNI", round(w.dni.sum() / 1000, 1), "DHI", round(w.dhi.sum() / 1000, 1))

# degree-hours drive the heating and cooling surrogate
print("HDH18", round(degree_hours(w, 18, "heating")), "CDH24", round(degree_hours(w, 24, "cooling")))

# a corrupted record: 9999 is the EPW missing-value code
lines = text.splitlines()
fields = lines[8 + 4000].split(",")
fields[14] = "9999"
lines[8 + 4000] = ",".join(fields)
patched = parse_epw("\n".join(lines))
print("interpolated:", patched.interpolated, "->", patched.dni[4000])

report = validate_weather(patched)
print("violations:", len(report.violations))

# monthly mean temperature
means = [w.dry_bulb[w.month == m].mean() for m in range(1, 13)]
print(np.round(means, 1))
