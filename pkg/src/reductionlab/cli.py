"""Command line front-end: ``list``, ``run`` and ``verify``."""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import scenarios, suites
from .errors import ConfigError
from .numerics import ToleranceConfig

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _fmt(x) -> str:
    if isinstance(x, (bool, int)) and not isinstance(x, float):
        return str(int(x))
    if isinstance(x, str):
        return x
    return repr(float(x))


def csv_text(columns: Sequence[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _parse_param(item: str):
    key, sep, value = item.partition("=")
    if not sep or not key:
        raise ConfigError(f"--param expects key=value, got {item!r}")
    return key.strip(), value


def load_config(args) -> dict:
    cfg: Dict[str, object] = {"parameters": {}, "tolerances": {}}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"scenario", "parameters", "output_dir", "tolerances"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update({k: v for k, v in data.items() if v is not None})
        for key in ("parameters", "tolerances"):
            if not isinstance(cfg[key], dict):
                raise ConfigError(f"config field {key!r} must be an object")
    if args.scenario:
        if cfg.get("scenario") not in (None, args.scenario):
            raise ConfigError("scenario given both on the command line and in the config")
        cfg["scenario"] = args.scenario
    if not cfg.get("scenario"):
        raise ConfigError("no scenario given")
    params = dict(cfg["parameters"])
    for item in args.param or []:
        k, v = _parse_param(item)
        params[k] = v
    cfg["parameters"] = params
    if args.out:
        cfg["output_dir"] = args.out
    cfg.setdefault("output_dir", ".")
    try:
        cfg["tolerance_config"] = ToleranceConfig().replace(**cfg["tolerances"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad tolerances: {exc}") from exc
    return cfg


def cmd_list(args) -> int:
    for sc in scenarios.list_scenarios():
        print(f"{sc.name} - {sc.anchor}")
    return EXIT_OK


def cmd_run(args) -> int:
    try:
        cfg = load_config(args)
        sc = scenarios.get_scenario(cfg["scenario"])
        resolved = sc.resolve(cfg["parameters"])
        seed = scenarios.seed_from_env()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    start = time.perf_counter()
    result = scenarios.run_scenario(sc.name, resolved, cfg["tolerance_config"], seed)
    wall = time.perf_counter() - start
    out = Path(cfg["output_dir"])
    csv_path = out / f"{sc.name}.csv"
    report_path = out / f"{sc.name}.report.json"
    report = {
        "scenario": sc.name,
        "anchor": sc.anchor,
        "seed": seed,
        "parameters": resolved,
        "passed": result.passed,
        "checks": [c.as_dict() for c in result.checks],
        "info": {k: float(v) for k, v in result.info.items()},
        "wall_clock_s": wall,
        "artifacts": [str(csv_path), str(report_path)],
    }
    out.mkdir(parents=True, exist_ok=True)
    csv_path.write_text(csv_text(result.columns, result.rows))
    report_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    for c in result.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} value={c.value:.3e} {'<=' if c.kind == 'max' else '>='} {c.bound:.1e}")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        seed = scenarios.seed_from_env()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    chosen = suites.select(args.filter)
    if not chosen:
        print(f"error: no suite matches {args.filter!r}", file=sys.stderr)
        return EXIT_CONFIG
    outcomes = suites.run_suites(chosen, seed)
    width = max(len(o.suite.name) for o in outcomes)
    print(f"{'suite'.ljust(width)}  {'value':>11}  {'bound':>10}  status")
    for o in outcomes:
        if o.error:
            print(f"{o.suite.name.ljust(width)}  {'-':>11}  {o.suite.bound:>10.1e}  ERROR {o.error}")
            continue
        rel = "<=" if o.suite.kind == "max" else ">="
        status = "pass" if o.passed else "FAIL"
        print(f"{o.suite.name.ljust(width)}  {o.check.value:>11.3e}  {rel}{o.suite.bound:>8.1e}  {status}")
    failed = [o.suite.name for o in outcomes if not o.passed]
    if failed:
        print("failed: " + ", ".join(failed))
        return EXIT_FAIL
    print(f"all {len(outcomes)} suites passed (seed {seed})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reductionlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered scenarios")
    r = sub.add_parser("run", help="run one scenario and write CSV plus a JSON report")
    r.add_argument("scenario", nargs="?")
    r.add_argument("--param", action="append", metavar="KEY=VALUE")
    r.add_argument("--out", metavar="DIR")
    r.add_argument("--config", metavar="FILE")
    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--filter", metavar="PATTERN")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    handler = {"list": cmd_list, "run": cmd_run, "verify": cmd_verify}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
