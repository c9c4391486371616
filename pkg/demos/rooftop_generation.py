"""
Rooftop PV generation from an hourly weather year
=================================================

Sun position, transposition onto a 30 degree south-facing plane, then a
single loss fraction tuned to a target specific yield.
"""

import numpy as np

from roofpv import PvArraySpec, calibrate_loss, generation_series, sun_position
from roofpv.synthetic import tokyo_2018

w = tokyo_2018()

# solar noon at the winter solstice, Tokyo
print(sun_position(35.6, 139.7, 9, 12, 21, 11))

lossless = generation_series(w, PvArraySpec(1.0, system_loss_fraction=0.0))
print("lossless yield", round(lossless.specific_yield), "kWh/kW")

loss = calibrate_loss(w, PvArraySpec(1.0), 1258.0)
print("loss fraction for 1258 kWh/kW:", round(loss, 4))

# tilt scan at that loss
for tilt in (0, 10, 20, 30, 40, 60, 90):
    g = generation_series(w, PvArraySpec(1.0, tilt=tilt, system_loss_fraction=loss))
    print(f"tilt {tilt:2d}  {g.specific_yield:6.0f} kWh/kW")

g = generation_series(w, PvArraySpec(2885.7, system_loss_fraction=loss))
monthly = [g.hourly_kwh[w.month == m].sum() / 1e3 for m in range(1, 13)]
print("monthly MWh:", np.round(monthly).astype(int))
