from python.bounds.bound_tables import CURVE_COLUMNS, build_curve_rows
from python.errors import UsageError

DEFAULT_RANGES = {"n": "2:50:1", "p": "1:100:1"}
DEFAULT_FIXED = {"n": 2.0, "p": 3.0}


def register_curve_commands(subparsers, ctx):
    settings = ctx["settings"]
    notify = ctx["notify"]
    write_csv = ctx["write_csv"]
    write_curve_chart = ctx["write_curve_chart"]
    _parse_range = ctx["_parse_range"]
    _out_dir = ctx["_out_dir"]
    _add_run_flags = ctx["_add_run_flags"]

    def cmd_curve(args, run):
        vary = (run.get("vary", default="n", cast=str) or "n").strip().lower()
        if vary not in ("n", "p"):
            raise UsageError(f"--vary must be n or p, got {vary!r}")
        # the fixed parameter is the other one
        fixed_name = "p" if vary == "n" else "n"
        fixed = run.get(fixed_name, default=DEFAULT_FIXED[vary], cast=float)
        values = _parse_range(run.get("range", default=DEFAULT_RANGES[vary], cast=str))
        if vary == "n" and any(v != int(v) for v in values):
            raise UsageError("--range for n must contain integers")
        loglog = settings.parse_bool(run.get("loglog", default=False))

        rows = build_curve_rows(vary, fixed, values)
        out = _out_dir(run)
        stem = f"curve_{vary}_{fixed_name}{fixed:g}"
        csv_path = write_csv(out / f"{stem}.csv", CURVE_COLUMNS, rows)
        svg_path = write_curve_chart(out / f"{stem}.svg", rows, vary, fixed, loglog=loglog)
        print(csv_path)
        print(svg_path)
        notify("CURVE", f"{len(rows)} points over {vary} with {fixed_name}={fixed:g}{' (log-log)' if loglog else ''}")
        return 0

    p = subparsers.add_parser("curve", help="bound curves against n or p (CSV + SVG)")
    p.add_argument("--vary", choices=("n", "p"), default=None)
    p.add_argument("--n", type=float, default=None, help="fixed n when varying p (default 3)")
    p.add_argument("--p", type=float, default=None, help="fixed p when varying n (default 2)")
    p.add_argument("--range", default=None, help="a:b:step, a:b or comma list")
    p.add_argument("--loglog", action="store_true", default=None)
    _add_run_flags(p)
    p.set_defaults(handler=cmd_curve)
