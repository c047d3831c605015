from python.bounds.bound_formulas import CLOSED_FORM, INTEGRAL, bound_pair, lower_bound_pair, upper_bound
from python.bounds.bound_tables import TABLE_COLUMNS, build_bound_rows


def register_bounds_table_commands(subparsers, ctx):
    notify = ctx["notify"]
    csv_text = ctx["csv_text"]
    write_csv = ctx["write_csv"]
    write_bounds_workbook = ctx["write_bounds_workbook"]
    fmt_fixed = ctx["fmt_fixed"]
    fmt_interval = ctx["fmt_interval"]
    _parse_float_list = ctx["_parse_float_list"]
    _parse_int_range = ctx["_parse_int_range"]
    _params = ctx["_params"]
    _out_dir = ctx["_out_dir"]
    _add_run_flags = ctx["_add_run_flags"]

    def cmd_bounds(args, run):
        params = _params(run)
        method = run.get("method", cast=str)
        if method:
            lower, route = lower_bound_pair(params, method)
            upper = upper_bound(params)
        else:
            pair = bound_pair(params)
            lower, upper, route = pair.lower, pair.upper, pair.method

        print(f"n={params.n} p={params.p:g}")
        print(f"lower     {fmt_fixed(lower, 6)}  ({route})")
        print(f"upper     {fmt_fixed(upper, 6)}")
        print(f"interval  {fmt_interval(lower, upper, 6)}")
        print(f"rounded   {fmt_interval(lower, upper, 3)}")
        notify("BOUNDS", f"n={params.n}, p={params.p:g} via {route}")
        return 0

    p = subparsers.add_parser("bounds", help="lower and upper exponent bounds for one (n, p)")
    p.add_argument("--n", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--method", choices=(CLOSED_FORM, INTEGRAL), default=None,
                   help="force a lower-bound evaluation route")
    p.set_defaults(handler=cmd_bounds)

    def cmd_table(args, run):
        n_values = _parse_int_range(run.get("n_range", default="2:10:1", cast=str), "n-range")
        p_values = _parse_float_list(run.get("p_list", default="1.5,2,3", cast=str), "p-list")
        rows = build_bound_rows(n_values, p_values)

        out = _out_dir(run)
        csv_path = write_csv(out / "bounds_table.csv", TABLE_COLUMNS, rows)
        xlsx_path = write_bounds_workbook(
            out / "bounds_table.xlsx",
            [("Bounds", TABLE_COLUMNS, rows)],
            widths={"method": 24, "jensen_gap": 16},
        )
        print(csv_text(TABLE_COLUMNS, rows), end="")
        notify("BOUNDS", f"{len(rows)} rows -> {csv_path}, {xlsx_path}")
        return 0

    p = subparsers.add_parser("table", help="bounds over an n range and a list of p values (CSV + XLSX)")
    p.add_argument("--n-range", dest="n_range", default=None, help="a:b:step or comma list, default 2:10:1")
    p.add_argument("--p-list", dest="p_list", default=None, help="comma list, default 1.5,2,3")
    _add_run_flags(p)
    p.set_defaults(handler=cmd_table)
