# app.py

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from python import settings
from python.errors import BMGaussError, UsageError, exit_code_for
from python.export.csv_export import csv_text, write_csv
from python.export.svg_charts import write_curve_chart
from python.export.xlsx_export import write_bounds_workbook
from python.format_utils import fmt_fixed, fmt_interval
from python.grid.grid_scan import grid_scan
from python.measure.quadrature import QuadratureSpec
from python.notify import notify, set_quiet

PROG = "bmgauss"

# ---------- Flag parsing ----------


def _parse_float_list(text: Optional[str], name: str = "list") -> List[float]:
    raw = (text or "").strip()
    if not raw:
        raise UsageError(f"--{name} is empty")
    out: List[float] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            value = float(part)
        except ValueError as exc:
            raise UsageError(f"--{name}: not a number: {part!r}") from exc
        if not math.isfinite(value):
            raise UsageError(f"--{name}: value must be finite, got {part!r}")
        out.append(value)
    if not out:
        raise UsageError(f"--{name} is empty")
    return out


def _parse_range(text: Optional[str], name: str = "range") -> List[float]:
    """``a:b:step`` (inclusive), ``a:b`` (step 1) or a comma list."""
    raw = (text or "").strip()
    if ":" not in raw:
        return _parse_float_list(raw, name)
    parts = raw.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"--{name}: expected a:b or a:b:step, got {raw!r}")
    try:
        a, b = float(parts[0]), float(parts[1])
        step = float(parts[2]) if len(parts) == 3 else 1.0
    except ValueError as exc:
        raise UsageError(f"--{name}: not a number in {raw!r}") from exc
    if not all(math.isfinite(v) for v in (a, b, step)):
        raise UsageError(f"--{name}: bounds must be finite, got {raw!r}")
    if step <= 0.0:
        raise UsageError(f"--{name}: step must be positive, got {raw!r}")
    if b < a:
        raise UsageError(f"--{name}: range is empty, got {raw!r}")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [round(a + i * step, 12) for i in range(count)]


def _parse_int_range(text: Optional[str], name: str = "n-range") -> List[int]:
    values = _parse_range(text, name)
    if any(v != int(v) for v in values):
        raise UsageError(f"--{name}: expected integers, got {text!r}")
    return [int(v) for v in values]


def _quadrature_spec(n: int, run: settings.RunSettings) -> QuadratureSpec:
    return QuadratureSpec.default_for(
        n,
        radial_tol=run.get("radial_tol", cast=float),
        sphere_points=run.get("sphere_points", cast=int),
        samples=run.get("samples", cast=int),
        seed=run.get("seed", cast=int),
    )


def _out_dir(run: settings.RunSettings) -> Path:
    out = Path(run.get("out", cast=str))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None, help="Monte Carlo sample count")
    parser.add_argument("--radial-tol", dest="radial_tol", type=float, default=None)
    parser.add_argument("--sphere-points", dest="sphere_points", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Brunn-Minkowski exponent bounds for the generalized Gaussian measure.",
    )
    parser.add_argument("--config", default=None, help="key=value config file (flags win)")
    parser.add_argument("--quiet", action="store_true", default=None, help="suppress notices on stderr")
    parser.add_argument("--workers", type=int, default=None, help="worker threads for grid scans")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    from python.commands.command_routes import register_command_routes

    register_command_routes(subparsers, {
        "settings": settings,
        "notify": notify,
        "grid_scan": grid_scan,
        "csv_text": csv_text,
        "write_csv": write_csv,
        "write_curve_chart": write_curve_chart,
        "write_bounds_workbook": write_bounds_workbook,
        "fmt_fixed": fmt_fixed,
        "fmt_interval": fmt_interval,
        "_parse_float_list": _parse_float_list,
        "_parse_range": _parse_range,
        "_parse_int_range": _parse_int_range,
        "_quadrature_spec": _quadrature_spec,
        "_out_dir": _out_dir,
        "_add_run_flags": _add_run_flags,
    })
    return parser


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in ("handler", "command", "config")}


def _report_error(message: str) -> None:
    # errors ignore --quiet
    print(f"[ERROR] {message}", file=sys.stderr, flush=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        run = settings.RunSettings(_flag_values(args), args.config)
        set_quiet(settings.parse_bool(run.get("quiet")))
        grid_scan.workers = max(1, run.get("workers", cast=int))
        if run.config_path:
            notify("CONFIG", f"using {run.config_path} (env={settings.APP_ENV})")
        return int(args.handler(args, run))
    except BMGaussError as exc:
        _report_error(str(exc))
        return exit_code_for(exc)
    except OSError as exc:
        where = getattr(exc, "filename", None)
        _report_error(f"{where}: {exc.strerror or exc}" if where else str(exc))
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
