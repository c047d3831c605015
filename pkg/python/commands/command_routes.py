from typing import Optional

from python.bounds.bound_formulas import BoundParams
from python.commands.sections import (
    register_asymptotics_commands,
    register_bounds_table_commands,
    register_curve_commands,
    register_verification_commands,
)
from python.errors import UsageError


def register_command_routes(subparsers, deps):
    settings = deps["settings"]
    _parse_float_list = deps["_parse_float_list"]

    def _required(run, name: str, cast, hint: Optional[str] = None):
        value = run.get(name, cast=cast)
        if value is None:
            raise UsageError(f"missing --{name.replace('_', '-')}{f' ({hint})' if hint else ''}")
        return value

    def _params(run, n_default=None, p_default=None) -> BoundParams:
        n = run.get("n", default=n_default, cast=float)
        p = run.get("p", default=p_default, cast=float)
        if n is None or p is None:
            raise UsageError("both --n and --p are required")
        if n != int(n):
            raise UsageError(f"--n must be an integer, got {n:g}")
        return BoundParams(int(n), p)

    def _lambda_grid(run, default: str):
        grid = _parse_float_list(run.get("lambda_grid", default=default, cast=str), "lambda-grid")
        for lam in grid:
            if not 0.0 <= lam <= 1.0:
                raise UsageError(f"--lambda-grid values must lie in [0, 1], got {lam:g}")
        return grid

    command_ctx = dict(deps)
    command_ctx.update({
        "settings": settings,
        "_required": _required,
        "_params": _params,
        "_lambda_grid": _lambda_grid,
    })

    register_bounds_table_commands(subparsers, command_ctx)
    register_curve_commands(subparsers, command_ctx)
    register_verification_commands(subparsers, command_ctx)
    register_asymptotics_commands(subparsers, command_ctx)
