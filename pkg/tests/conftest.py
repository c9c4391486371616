import numpy as np
import pytest

from roofpv import data
from roofpv.demand import calibrate, load_targets
from roofpv.geometry import derive_metrics, load_scenario
from roofpv.solar import PvArraySpec, calibrate_loss
from roofpv.synthetic import tokyo_2018
from roofpv.weather import WeatherYear, format_epw, parse_epw

# published S0 annual generation over the S0 roof capacity (20,200 m² / 7 m²/kW)
TARGET_SPECIFIC_YIELD = 3.63e6 / (20_200 / 7)


@pytest.fixture(scope="session")
def tokyo():
    """Synthetic Tokyo year, pushed through the EPW text path once."""
    return parse_epw(format_epw(tokyo_2018()))


@pytest.fixture(scope="session")
def scenarios():
    return [load_scenario(p) for p in data.scenario_paths()]


@pytest.fixture(scope="session")
def metrics(scenarios):
    return [derive_metrics(s) for s in scenarios]


@pytest.fixture(scope="session")
def s0_targets():
    return load_targets(data.demand_targets_path())


@pytest.fixture(scope="session")
def demand_params(metrics, tokyo, s0_targets):
    return calibrate(metrics[0], tokyo, s0_targets)


@pytest.fixture(scope="session")
def calibrated_loss(tokyo):
    return calibrate_loss(tokyo, PvArraySpec(1.0), TARGET_SPECIFIC_YIELD)


def constant_year(temp=20.0, ghi=0.0, dni=0.0, dhi=0.0, lat=35.6, lon=139.7, tz=9.0):
    n = 8760
    full = lambda v: np.full(n, float(v)) if np.isscalar(v) else np.asarray(v, float)
    return WeatherYear(lat, lon, tz, 0.0, full(temp), full(ghi), full(dni), full(dhi), year=2018,
                       location="fixture")


# -- acceptance summary ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    number, title = marker.args
    measured = "; ".join(f"{k} {v}" for k, v in item.user_properties)
    status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
    _criteria[number] = (status, title, measured)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, measured = _criteria[number]
        line = f"criterion {number}: {status}  {title}"
        terminalreporter.write_line(line + (f"  [{measured}]" if measured else ""))
