from python.bounds.bound_formulas import BoundParams, lower_bound
from python.errors import UsageError
from python.geometry.body_files import load_body_pair
from python.verify.counterexample import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_EPS_GRID,
    DEFAULT_LAMBDA,
    DEFAULT_R,
    WITNESS_COLUMNS,
    counterexample_search,
)
from python.verify.deficit import DEFICIT_COLUMNS, deficit_reports

EXIT_VIOLATION = 1


def register_verification_commands(subparsers, ctx):
    notify = ctx["notify"]
    csv_text = ctx["csv_text"]
    write_csv = ctx["write_csv"]
    _parse_float_list = ctx["_parse_float_list"]
    _params = ctx["_params"]
    _required = ctx["_required"]
    _lambda_grid = ctx["_lambda_grid"]
    _quadrature_spec = ctx["_quadrature_spec"]
    _out_dir = ctx["_out_dir"]
    _add_run_flags = ctx["_add_run_flags"]

    def cmd_verify(args, run):
        pair = load_body_pair(_required(run, "bodies", str, "a JSON body-pair file"))
        n = run.get("n", cast=float)
        if n is not None and int(n) != pair.n:
            raise UsageError(f"--n {n:g} does not match n={pair.n} in {pair.source}")
        p = run.get("p", default=pair.p, cast=float)
        if p is None:
            raise UsageError(f"missing --p (the body file {pair.source} does not set p)")
        params = BoundParams(pair.n, p)
        alpha = run.get("alpha", cast=float)
        if alpha is None:
            alpha = lower_bound(params)
            if alpha <= 0.0:
                raise UsageError("the lower bound is 0 at p=1; pass --alpha explicitly")
        grid = _lambda_grid(run, "0.25,0.5,0.75")
        spec = _quadrature_spec(params.n, run)

        reports = deficit_reports(pair.K, pair.L, grid, alpha, params, spec)
        rows = [r.as_row() for r in reports]
        print(csv_text(DEFICIT_COLUMNS, rows), end="")
        path = write_csv(_out_dir(run) / "verify_deficits.csv", DEFICIT_COLUMNS, rows)

        violated = [r for r in reports if r.violated]
        notify("VERIFY", f"{len(reports)} lambda values at alpha={alpha:.6f}, "
                         f"{len(violated)} certified violation(s) -> {path}")
        return EXIT_VIOLATION if violated else 0

    p = subparsers.add_parser("verify", help="Brunn-Minkowski deficits for a body pair file")
    p.add_argument("--bodies", default=None, help="JSON body-pair file")
    p.add_argument("--n", type=float, default=None, help="must match the file when given")
    p.add_argument("--p", type=float, default=None, help="overrides p from the file")
    p.add_argument("--lambda-grid", dest="lambda_grid", default=None, help="comma list, default 0.25,0.5,0.75")
    p.add_argument("--alpha", type=float, default=None, help="exponent, default the lower bound")
    _add_run_flags(p)
    p.set_defaults(handler=cmd_verify)

    def cmd_counterexample(args, run):
        params = _params(run)
        q = _required(run, "q", float)
        alphas = _parse_float_list(run.get("alpha_grid", default=",".join(map(str, DEFAULT_ALPHA_GRID)), cast=str),
                                   "alpha-grid")
        epss = _parse_float_list(run.get("eps_grid", default=",".join(map(str, DEFAULT_EPS_GRID)), cast=str),
                                 "eps-grid")
        R = run.get("R", default=DEFAULT_R, cast=float)
        lam = run.get("lambda", default=DEFAULT_LAMBDA, cast=float)
        spec = _quadrature_spec(params.n, run)

        witness = counterexample_search(params, q, alphas, epss, R=R, lam=lam, spec=spec)
        rows = [witness.as_row()] if witness else []
        print(csv_text(WITNESS_COLUMNS, rows), end="")
        write_csv(_out_dir(run) / "counterexample.csv", WITNESS_COLUMNS, rows)
        return EXIT_VIOLATION if witness else 0

    p = subparsers.add_parser("counterexample", help="search cone pairs for a certified violation at exponent q")
    p.add_argument("--n", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--alpha-grid", dest="alpha_grid", default=None, help="cone angles, comma list")
    p.add_argument("--eps-grid", dest="eps_grid", default=None, help="cone drops, comma list")
    p.add_argument("--R", dest="R", type=float, default=None, help=f"truncation radius, default {DEFAULT_R:g}")
    p.add_argument("--lambda", dest="lambda", type=float, default=None, help=f"weight, default {DEFAULT_LAMBDA:g}")
    _add_run_flags(p)
    p.set_defaults(handler=cmd_counterexample)
