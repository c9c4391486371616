"""Bundled inputs: district scenarios, finance presets and demand targets."""

from importlib.resources import files

DATA = files(__name__)


def scenario_paths():
    return [DATA / "scenarios" / f"s{i}.json" for i in range(6)]


def finance_presets_path():
    return DATA / "finance_presets.json"


def demand_targets_path():
    return DATA / "s0_demand_targets.json"
