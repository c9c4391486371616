"""Regenerate the bundled district scenario files.

Each scenario holds floor area at 185,000 m² on the 46,250 m² site. Footprints
are chosen so rooftop area and building count follow the published district
table; perimeters are scaled from square-footprint values so that the
above-ground surface area (walls + roofs) hits the published totals.
"""

import json
from pathlib import Path

import numpy as np

SITE_AREA = 46_250.0
FLOOR_AREA = 185_000.0
OUT = Path(__file__).resolve().parents[1] / "src" / "roofpv" / "data" / "scenarios"

# name, label, floors per building, relative footprint weights, above-ground surface target (m²)
SCENARIOS = [
    ("S0", "Existing", [3, 5, 6, 7, 8, 8, 9, 9, 15, 10, 10, 11, 12, 13],
     [0.6, 0.9, 1.1, 1.3, 1.0, 1.2, 1.4, 0.8, 1.3, 1.1, 0.9, 1.0, 1.0, 0.8], 86_000.0, 20_200.0),
    ("S1", "Low-rise", [6] * 6, [1.1, 0.9, 1.0, 1.05, 0.95, 1.0], 64_000.0, None),
    ("S2", "High-rise", [22] * 6, [1.0, 1.1, 0.9, 1.0, 1.05, 0.95], 77_000.0, None),
    ("S3", "Center corridor", [11] * 13, [1.0, 0.9, 1.1] * 4 + [1.0], 104_000.0, None),
    ("S4", "Courtyard", [11] * 6, [1.2, 0.8, 1.0, 1.0, 1.1, 0.9], 111_000.0, None),
    ("S5", "Korean Style", [18] * 10, [1.0, 1.1, 0.9, 1.0, 1.2, 0.8, 1.0, 1.05, 0.95, 1.0], 84_000.0, None),
]


def footprints(floors, weights, rooftop):
    floors = np.asarray(floors, float)
    f0 = np.asarray(weights, float)
    if rooftop is None:
        return f0 * FLOOR_AREA / (f0 * floors).sum()
    # closest footprints to f0 (scaled) meeting both the roof and the floor-area totals
    f0 = f0 * rooftop / f0.sum()
    A = np.vstack([np.ones_like(floors), floors])
    b = np.array([rooftop, FLOOR_AREA])
    return f0 + A.T @ np.linalg.solve(A @ A.T, b - A @ f0)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, label, floors, weights, surface, rooftop in SCENARIOS:
        f = footprints(floors, weights, rooftop)
        h = np.asarray(floors, float) * 3.0
        square_walls = 4.0 * np.sqrt(f) * h
        scale = (surface - f.sum()) / square_walls.sum()
        perim = 4.0 * np.sqrt(f) * scale
        doc = {
            "name": name,
            "label": label,
            "site_area": SITE_AREA,
            "pv_area_coefficient": 7.0,
            "buildings": [
                {"id": str(i + 1), "footprint_area": round(float(fi), 2), "height": float(hi),
                 "perimeter": round(float(pi), 2)}
                for i, (fi, hi, pi) in enumerate(zip(f, h, perim))
            ],
        }
        (OUT / f"{name.lower()}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
