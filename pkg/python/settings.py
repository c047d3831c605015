import os
from pathlib import Path
from typing import Any, Dict, Optional

from python.errors import UsageError

APP_ENV = (os.getenv("BMGAUSS_ENV") or "local").strip().lower()
WORKERS = max(1, int(os.getenv("BMGAUSS_WORKERS", "1")))
SEED = int(os.getenv("BMGAUSS_SEED", "20240611"))
SAMPLES = int(os.getenv("BMGAUSS_SAMPLES", "20000"))
RADIAL_TOL = float(os.getenv("BMGAUSS_RADIAL_TOL", "1e-12"))
SPHERE_POINTS = int(os.getenv("BMGAUSS_SPHERE_POINTS", "64"))
OUT_DIR = (os.getenv("BMGAUSS_OUT_DIR") or "out").strip() or "out"
CONFIG_FILE = (os.getenv("BMGAUSS_CONFIG_FILE") or "").strip()
QUIET = (os.getenv("BMGAUSS_QUIET") or "false").strip().lower() in ("1", "true", "yes", "on")

DEFAULTS: Dict[str, Any] = {
    "workers": WORKERS,
    "seed": SEED,
    "samples": SAMPLES,
    "radial_tol": RADIAL_TOL,
    "sphere_points": SPHERE_POINTS,
    "out": OUT_DIR,
    "quiet": QUIET,
}

TRUTHY = ("1", "true", "yes", "on")


def parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    return str(value or "").strip().lower() in TRUTHY


def read_config_file(path: str | Path) -> Dict[str, str]:
    """Read a key=value file. Keys are flag names without the leading dashes."""
    cfg_path = Path(path)
    try:
        lines = cfg_path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {cfg_path}: {exc}") from exc

    values: Dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{cfg_path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lstrip("-").replace("-", "_")
        if not key:
            raise UsageError(f"{cfg_path}:{lineno}: empty key")
        values[key] = value.strip()
    return values


class RunSettings:
    """Flag > config file > environment > built-in default."""

    def __init__(self, flags: Dict[str, Any], config_path: Optional[str] = None) -> None:
        self.flags = {k: v for k, v in (flags or {}).items() if v is not None}
        path = config_path or CONFIG_FILE
        self.config_path = path or None
        self.file_values = read_config_file(path) if path else {}

    def get(self, name: str, default: Any = None, cast=None) -> Any:
        if name in self.flags:
            value = self.flags[name]
        elif name in self.file_values:
            value = self.file_values[name]
        elif name in DEFAULTS:
            value = DEFAULTS[name]
        else:
            value = default
        if cast is None or value is None:
            return value
        try:
            return cast(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"invalid value for --{name.replace('_', '-')}: {value!r}") from exc
