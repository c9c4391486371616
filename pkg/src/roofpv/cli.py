"""roofpv command line.

Usage:
    roofpv analyze  --weather W --scenario S0.json [S1.json ...] --calibrate-to targets.json
    roofpv compare  --weather W --scenario S0.json S1.json ... --demand-params params.json
    roofpv sweep    --weather W --scenario S0.json --calibrate-to targets.json --sweep 100
    roofpv calibrate --weather W --scenario S0.json --calibrate-to targets.json --out params.json
    roofpv validate-weather --weather W
    roofpv synth-weather --out tokyo.epw

W is an EPW path or ``synthetic:tokyo-2018``. Exit codes: 0 ok, 2 usage,
3 validation, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import data
from .demand import calibrate, load_targets, save_params
from .errors import RoofPVError, UsageError
from .finance import capacity_sweep, linear_balance_factory
from .geometry import derive_metrics, load_scenario
from .report import RunConfig, compare, emit_outputs, format_table, load_weather, prepare, run_all
from .weather import format_epw, validate_weather

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 2, 3, 4


def _add_weather(p):
    p.add_argument("--weather", required=True, help="EPW file or synthetic:tokyo-2018")


def _add_run_options(p, many=True):
    _add_weather(p)
    p.add_argument("--scenario", nargs="+" if many else 1, default=None,
                   help="scenario JSON files (default: the six bundled district scenarios)")
    p.add_argument("--year", action="append", choices=["2018", "2030"], dest="years",
                   help="finance preset, repeatable (default: both)")
    p.add_argument("--finance-params", help="finance parameter JSON (overrides --year)")
    demand = p.add_mutually_exclusive_group()
    demand.add_argument("--demand-params", help="demand parameter JSON")
    demand.add_argument("--calibrate-to", help="annual demand targets JSON (GWh per component)")
    p.add_argument("--calibration-scenario", help="scenario the targets refer to (default: first scenario; bundled S0 with the bundled targets)")
    p.add_argument("--tilt", type=float, default=30.0)
    p.add_argument("--azimuth", type=float, default=180.0)
    loss = p.add_mutually_exclusive_group()
    loss.add_argument("--loss", type=float, help="system loss fraction")
    loss.add_argument("--target-yield", type=float, help="calibrate the loss fraction to this kWh/kW/yr")
    p.add_argument("--degradation", type=float, default=0.005)
    p.add_argument("--out", default="roofpv-out", help="output directory")
    p.add_argument("--format", default="csv,json", help="comma list of csv,json")
    p.add_argument("--plots", action="store_true", help="write SVG charts")
    p.add_argument("--quiet", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="roofpv", description="Rooftop PV district scenario evaluation")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_run_options(sub.add_parser("analyze", help="evaluate one or more scenarios"))
    _add_run_options(sub.add_parser("compare", help="evaluate and tabulate two or more scenarios"))
    p = sub.add_parser("sweep", help="NPV over installed capacity per scenario")
    _add_run_options(p)
    step = p.add_mutually_exclusive_group(required=True)
    step.add_argument("--sweep", type=float, dest="step", help="capacity step in kW")
    step.add_argument("--points", type=int, help="number of grid points up to the rooftop maximum")

    p = sub.add_parser("calibrate", help="fit demand parameters to annual targets")
    _add_weather(p)
    p.add_argument("--scenario", required=True)
    p.add_argument("--calibrate-to", required=True)
    p.add_argument("--out", help="write parameters here instead of stdout")

    p = sub.add_parser("validate-weather", help="check an EPW file")
    _add_weather(p)

    p = sub.add_parser("synth-weather", help="write the synthetic Tokyo 2018 weather year as EPW")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=2018)
    return parser


def _config(args):
    scenarios = args.scenario or [str(path) for path in data.scenario_paths()]
    calibrate_to = args.calibrate_to
    calibration_scenario = args.calibration_scenario
    if args.demand_params is None and calibrate_to is None:
        # the bundled targets describe the bundled existing district
        calibrate_to = str(data.demand_targets_path())
        calibration_scenario = calibration_scenario or str(data.scenario_paths()[0])
    formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    return RunConfig(
        weather_path=args.weather,
        scenario_paths=scenarios,
        finance_presets=args.years or ["2018", "2030"],
        finance_params_path=args.finance_params,
        demand_params_path=args.demand_params,
        calibration_targets_path=calibrate_to,
        calibration_scenario_path=calibration_scenario,
        output_dir=args.out,
        formats=formats,
        plots=args.plots,
        tilt=args.tilt,
        azimuth=args.azimuth,
        loss=args.loss,
        target_yield=args.target_yield,
        degradation=args.degradation,
    )


def cmd_analyze(args, need_two=False):
    cfg = _config(args)
    if need_two and len(cfg.scenario_paths) < 2:
        raise UsageError("compare needs at least two scenarios")
    weather = load_weather(cfg.weather_path)
    results = run_all(cfg, weather)
    written = emit_outputs(results, cfg, weather)
    if not args.quiet:
        if len(results) >= 2:
            print(format_table(compare(results)))
        else:
            print(json.dumps(results[0].to_dict(), indent=2))
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args):
    cfg = _config(args)
    weather = load_weather(cfg.weather_path)
    inputs = prepare(cfg, weather)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    from .demand import synthesize_demand
    from .solar import generation_series

    unit = generation_series(weather, inputs.array, angles=inputs.angles).hourly_kwh
    rows = []
    for path in cfg.scenario_paths:
        scenario = load_scenario(path)
        metrics = derive_metrics(scenario)
        factory = linear_balance_factory(synthesize_demand(metrics, weather, inputs.demand_params), unit)
        cap_max = metrics.max_pv_capacity
        step = args.step if args.step else cap_max / args.points
        for key, params in inputs.finance.items():
            result = capacity_sweep(factory, params, cap_max, step, inputs.array.degradation_rate)
            table_path = out / f"sweep_{scenario.name}_{key}.csv"
            with open(table_path, "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["capacity_kw", "npv_usd", "schema_version"])
                for cap, value in result.table():
                    writer.writerow([repr(cap), repr(value), 1])
            rows.append((scenario.name, key, cap_max, result.best_capacity, result.best_npv, result.profitable))
    if not args.quiet:
        print(f"{'scenario':>8} {'preset':>7} {'roof max kW':>12} {'best kW':>10} {'best NPV M$':>12} profitable")
        for name, key, cap_max, best, value, ok in rows:
            print(f"{name:>8} {key:>7} {cap_max:12.1f} {best:10.1f} {value / 1e6:12.3f} {ok}")
    return EXIT_OK


def cmd_calibrate(args):
    weather = load_weather(args.weather)
    params = calibrate(derive_metrics(load_scenario(args.scenario)), weather, load_targets(args.calibrate_to))
    if args.out:
        save_params(params, args.out)
    else:
        print(json.dumps(params.to_dict(), indent=2))
    return EXIT_OK


def cmd_validate_weather(args):
    weather = load_weather(args.weather)
    report = validate_weather(weather)
    print(f"{weather.location}: {len(weather)} records, {len(report.interpolated)} interpolated values, "
          f"{len(report.violations)} violations")
    for idx, name in report.interpolated:
        print(f"  interpolated record {idx} [{name}]")
    for v in report.violations:
        print(f"  {v}")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_synth_weather(args):
    from .synthetic import tokyo_2018

    Path(args.out).write_text(format_epw(tokyo_2018(seed=args.seed)))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "compare": lambda a: cmd_analyze(a, need_two=True),
        "sweep": cmd_sweep,
        "calibrate": cmd_calibrate,
        "validate-weather": cmd_validate_weather,
        "synth-weather": cmd_synth_weather,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"roofpv: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoofPVError as exc:
        print(f"roofpv: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"roofpv: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
