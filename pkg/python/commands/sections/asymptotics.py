from python.bounds.bound_tables import (
    ASYMPTOTIC_COLUMNS,
    build_asymptotic_rows,
    fit_convergence_order,
    residual_spread,
)
from python.errors import UsageError


def register_asymptotics_commands(subparsers, ctx):
    notify = ctx["notify"]
    write_csv = ctx["write_csv"]
    fmt_fixed = ctx["fmt_fixed"]
    _parse_int_range = ctx["_parse_int_range"]
    _out_dir = ctx["_out_dir"]
    _add_run_flags = ctx["_add_run_flags"]

    def cmd_asymptotics(args, run):
        p = run.get("p", default=2.0, cast=float)
        n_values = _parse_int_range(run.get("n_range", default="50,100,200,400", cast=str), "n-range")
        if any(b <= a for a, b in zip(n_values, n_values[1:])):
            raise UsageError("--n-range must be ascending")

        rows = build_asymptotic_rows(p, n_values)
        slope = fit_convergence_order([r["n"] for r in rows], [r["f1_expansion_error"] for r in rows])
        spread = residual_spread([r["f2_residual_n2"] for r in rows])

        print(" ".join(f"{c:>18}" for c in ASYMPTOTIC_COLUMNS))
        for r in rows:
            cells = [f"{r['n']:>18d}"] + [f"{r[c]:>18.10g}" for c in ASYMPTOTIC_COLUMNS[1:]]
            print(" ".join(cells))
        print(f"order of |f1 - two-term|: {'n/a' if slope is None else fmt_fixed(-slope, 3)}")
        print(f"spread of n^2 (f2 - leading): {'n/a' if spread is None else fmt_fixed(spread, 4)}")

        path = write_csv(_out_dir(run) / f"asymptotics_p{p:g}.csv", ASYMPTOTIC_COLUMNS, rows)
        notify("BOUNDS", f"asymptotics at p={p:g} over {len(rows)} n values -> {path}")
        return 0

    p = subparsers.add_parser("asymptotics", help="large-n behaviour of both bounds")
    p.add_argument("--p", type=float, default=None, help="default 2")
    p.add_argument("--n-range", dest="n_range", default=None, help="ascending, default 50,100,200,400")
    _add_run_flags(p)
    p.set_defaults(handler=cmd_asymptotics)
