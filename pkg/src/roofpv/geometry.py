"""District scenarios: buildings as flat-roofed prisms and the metrics derived from them."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import DomainError, ValidationError

DEFAULT_FLOOR_HEIGHT = 3.0
DEFAULT_PV_AREA_COEFFICIENT = 7.0  # m² of roof per kW installed
DEFAULT_FACADE_DERATE = 0.55


@dataclass(frozen=True)
class BuildingSpec:
    id: str
    footprint_area: float
    height: float
    floor_height: float = DEFAULT_FLOOR_HEIGHT
    perimeter: float | None = None

    @property
    def floors(self):
        if self.floor_height <= 0:
            return 1
        return max(1, int(round(self.height / self.floor_height)))

    @property
    def floor_area(self):
        return self.footprint_area * self.floors

    @property
    def wall_area(self):
        # square footprint when no perimeter is supplied
        perimeter = self.perimeter if self.perimeter is not None else 4.0 * math.sqrt(self.footprint_area)
        return perimeter * self.height

    @property
    def volume(self):
        return self.footprint_area * self.height


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    site_area: float
    buildings: tuple
    pv_area_coefficient: float = DEFAULT_PV_AREA_COEFFICIENT
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "buildings", tuple(self.buildings))


@dataclass(frozen=True)
class DistrictMetrics:
    total_floor_area: float
    far: float
    bcr: float
    total_volume: float
    above_ground_surface_area: float
    surface_to_volume: float
    rooftop_area: float
    max_pv_capacity: float
    building_count: int
    average_height: float
    average_floors: float

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ScenarioViolation:
    kind: str  # overflow | dimension | floor_height | empty
    building: str | None
    message: str

    def __str__(self):
        where = f"building {self.building}: " if self.building is not None else ""
        return f"{self.kind}: {where}{self.message}"


_BLOCKING = {"overflow", "dimension", "empty", "site"}


def validate_scenario(s):
    """Report-only check of a ScenarioSpec; never raises."""
    found = []
    if s.site_area <= 0:
        found.append(ScenarioViolation("site", None, f"site_area must be > 0, got {s.site_area}"))
    if s.pv_area_coefficient <= 0:
        found.append(ScenarioViolation("site", None,
                                       f"pv_area_coefficient must be > 0, got {s.pv_area_coefficient}"))
    if not s.buildings:
        found.append(ScenarioViolation("empty", None, "scenario has no buildings"))
    for b in s.buildings:
        if b.footprint_area <= 0:
            found.append(ScenarioViolation("dimension", b.id, f"footprint_area {b.footprint_area} <= 0"))
        if b.height <= 0:
            found.append(ScenarioViolation("dimension", b.id, f"height {b.height} <= 0"))
        if b.floor_height <= 0:
            found.append(ScenarioViolation("dimension", b.id, f"floor_height {b.floor_height} <= 0"))
        if b.perimeter is not None and b.perimeter <= 0:
            found.append(ScenarioViolation("dimension", b.id, f"perimeter {b.perimeter} <= 0"))
        if b.height > 0 and b.floor_height > 0:
            ratio = b.height / b.floor_height
            if abs(ratio - round(ratio)) > 0.25 or round(ratio) < 1:
                found.append(ScenarioViolation(
                    "floor_height", b.id,
                    f"height {b.height} m is not within 25% of a multiple of floor height {b.floor_height} m"))
    footprint = sum(b.footprint_area for b in s.buildings)
    if s.site_area > 0 and footprint > s.site_area:
        found.append(ScenarioViolation("overflow", None,
                                       f"total footprint {footprint:.1f} m2 exceeds site area {s.site_area:.1f} m2"))
    return found


def derive_metrics(s):
    blocking = [v for v in validate_scenario(s) if v.kind in _BLOCKING]
    if blocking:
        raise ValidationError(f"scenario {s.name!r} is invalid", blocking)
    floor_area = sum(b.floor_area for b in s.buildings)
    footprint = sum(b.footprint_area for b in s.buildings)
    volume = sum(b.volume for b in s.buildings)
    surface = sum(b.wall_area + b.footprint_area for b in s.buildings)
    rooftop = footprint  # flat prisms: every footprint is a top roof
    n = len(s.buildings)
    return DistrictMetrics(
        total_floor_area=floor_area,
        far=floor_area / s.site_area * 100.0,
        bcr=footprint / s.site_area * 100.0,
        total_volume=volume,
        above_ground_surface_area=surface,
        surface_to_volume=surface / volume,
        rooftop_area=rooftop,
        max_pv_capacity=rooftop / s.pv_area_coefficient,
        building_count=n,
        average_height=sum(b.height for b in s.buildings) / n,
        average_floors=sum(b.floors for b in s.buildings) / n,
    )


def facade_pv_estimate(facade_area, coefficient=DEFAULT_PV_AREA_COEFFICIENT, specific_yield=1258.0,
                       derate=DEFAULT_FACADE_DERATE):
    """Annual kWh from PV on ``facade_area`` m², derated for the reduced insolation of vertical surfaces."""
    if facade_area < 0 or coefficient <= 0 or specific_yield < 0 or not 0 <= derate <= 1:
        raise DomainError("facade_pv_estimate needs area >= 0, coefficient > 0, yield >= 0, derate in [0, 1]")
    return facade_area / coefficient * specific_yield * derate


# -- configuration files ---------------------------------------------------

def scenario_from_dict(data):
    try:
        buildings = [
            BuildingSpec(
                id=str(b["id"]),
                footprint_area=float(b["footprint_area"]),
                height=float(b["height"]),
                floor_height=float(b.get("floor_height", DEFAULT_FLOOR_HEIGHT)),
                perimeter=None if b.get("perimeter") is None else float(b["perimeter"]),
            )
            for b in data.get("buildings", [])
        ]
        return ScenarioSpec(
            name=str(data["name"]),
            site_area=float(data["site_area"]),
            buildings=buildings,
            pv_area_coefficient=float(data.get("pv_area_coefficient", DEFAULT_PV_AREA_COEFFICIENT)),
            label=str(data.get("label", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed scenario document: {exc!r}") from None


def scenario_to_dict(s):
    out = {"name": s.name, "label": s.label, "site_area": s.site_area,
           "pv_area_coefficient": s.pv_area_coefficient, "buildings": []}
    for b in s.buildings:
        entry = {"id": b.id, "footprint_area": b.footprint_area, "height": b.height}
        if b.floor_height != DEFAULT_FLOOR_HEIGHT:
            entry["floor_height"] = b.floor_height
        if b.perimeter is not None:
            entry["perimeter"] = b.perimeter
        out["buildings"].append(entry)
    return out


def load_scenario(path):
    return scenario_from_dict(json.loads(Path(path).read_text()))


def save_scenario(s, path):
    Path(path).write_text(json.dumps(scenario_to_dict(s), indent=2) + "\n")
