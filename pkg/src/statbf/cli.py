"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 report mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import __version__, binomial, normal_means, regression, report, simulate
from .bfcore import mle_bound_from_loglik, one_sided_adjust, posterior_prob_h0, PriorOdds
from .errors import NumericalError

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_MISMATCH = 0, 1, 2, 3
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _pair(text: str, kind=float) -> tuple:
    try:
        a, b = text.split(",")
        return kind(a), kind(b)
    except ValueError:
        raise UsageError(f"expected two comma-separated values, got {text!r}") from None


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.4g}"
    return "" if x is None else str(x)


def _inputs(args) -> dict:
    skip = {"format", "handler"}
    out = {"command": args.command_path}
    out.update({k: v for k, v in vars(args).items() if k not in skip and k != "command_path" and v is not None})
    return out


def _result(args, method, bf01, diagnostics=None, table=None, summary=None) -> dict:
    out = {"inputs": _inputs(args), "method": method, "bf01": bf01, "diagnostics": dict(diagnostics or {})}
    if table is not None:
        out["table"] = table
    if summary:
        out["summary"] = summary
    return out


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_clean(result), sort_keys=True, allow_nan=False)
    table = result.get("table")
    if fmt == "csv":
        buf = io.StringIO()
        if table:
            w = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(_clean(table))
        else:
            row = {"method": result["method"], "bf01": result["bf01"], **result["diagnostics"]}
            w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
            w.writeheader()
            w.writerow(_clean(row))
        return buf.getvalue().rstrip("\n")
    lines = []
    if result.get("summary"):
        lines.append(result["summary"])
    if result["bf01"] is not None:
        lines.append(f"method: {result['method']}")
        lines.append(f"bf01: {_fmt(result['bf01'])}")
    for k, v in result["diagnostics"].items():
        lines.append(f"{k}: {_fmt(v)}")
    if table:
        cols = list(table[0])
        cells = [cols] + [[_fmt(r[c]) for c in cols] for r in table]
        widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
        for row in cells:
            lines.append("  ".join(s.ljust(w) for s, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


# -- handlers -----------------------------------------------------------------


def _bf_normal(args):
    if args.A is not None:
        if any(v is not None for v in (args.n, args.sigma, args.tau)):
            raise UsageError("give either --A or --n/--sigma/--tau, not both")
        if args.approx:
            # sqrt(n) tau / sigma = sqrt(A - 1)
            tau = math.sqrt(args.A - 1.0) if args.A > 1 else 0.0
            res = normal_means.approx_bf(normal_means.NormalMeansProblem(args.t, 1), normal_means.NormalPrior(0.0, tau))
        else:
            res = normal_means.occam_bf(args.t, args.A)
    else:
        if any(v is None for v in (args.n, args.sigma, args.tau)):
            raise UsageError("bf normal needs --A or all of --n, --sigma, --tau")
        problem = normal_means.NormalMeansProblem(args.t, args.n, args.sigma)
        prior = normal_means.NormalPrior(0.0, args.tau)
        res = (normal_means.approx_bf if args.approx else normal_means.exact_bf)(problem, prior)
    return _result(args, res.method, res.bf01, res.diagnostics)


def _bf_cauchy(args):
    if args.exact:
        res = normal_means.cauchy_bf_quadrature(
            normal_means.NormalMeansProblem(args.t, args.n, args.sigma),
            normal_means.CauchyPrior(0.0, args.sigma),
        )
    else:
        res = normal_means.cauchy_bf_asymptotic(args.t, args.n, args.sigma)
    return _result(args, res.method, res.bf01, res.diagnostics)


def _beta_prior(text: str) -> binomial.BetaPrior:
    if text == "uniform":
        return binomial.UNIFORM
    if text.startswith("beta:"):
        return binomial.BetaPrior(*_pair(text[5:]))
    raise UsageError(f"--prior must be 'uniform' or 'beta:<a>,<b>', got {text!r}")


def _bf_binom(args):
    exp = binomial.BinomialExperiment(args.n, args.r, args.theta0)
    res = binomial.binom_bf(exp, _beta_prior(args.prior))
    return _result(args, res.method, res.bf01, res.diagnostics)


def _bf_fstat(args):
    res = regression.connelly_bf(regression.NestedFTest(args.n, args.k, args.d, args.F))
    diag = dict(res.diagnostics)
    diag["note"] = "formula read as BF10 and inverted; Zellner-Siow prior constant not included"
    return _result(args, res.method, res.bf01, diag)


def _bound(args):
    if (args.t is None) == (args.binom is None):
        raise UsageError("bound needs exactly one of --t or --binom")
    if args.t is not None:
        b = mle_bound_from_loglik(-0.5 * args.t**2, 0.0)
    else:
        n, r = _pair(args.binom, int)
        b = binomial.binom_mle_bound(binomial.BinomialExperiment(n, r))
    odds = PriorOdds(args.prior_odds)
    one = one_sided_adjust(b)
    diag = {
        "bound": b,
        "one_sided_bound": one,
        "posterior_h0": posterior_prob_h0(b, odds),
        "posterior_h0_one_sided": posterior_prob_h0(one, odds),
    }
    summary = f"bound / one-sided / Pr(H0|y) >= {_fmt(b)} / {_fmt(one)} / {_fmt(diag['posterior_h0'])}"
    return _result(args, "bound", one if args.one_sided else b, diag, summary=summary)


def _calibrate(args):
    if args.cauchy:
        if args.n is None or args.coverage is None or args.halfwidth is not None or args.null_odds is not None:
            raise UsageError("calibrate --cauchy needs --n and --coverage (and optionally --sigma)")
        w, A = normal_means.calibrate_cauchy(args.n, args.sigma if args.sigma is not None else 1.0, args.coverage)
        method, diag = "calibrate-cauchy", {"halfwidth": w, "A": A}
    elif args.null_odds is not None:
        if args.halfwidth is not None or args.coverage is not None:
            raise UsageError("--null-odds cannot be combined with --halfwidth/--coverage")
        A = normal_means.spread_from_null_odds(args.null_odds).A
        method, diag = "calibrate-null-odds", {"A": A}
    else:
        if args.halfwidth is None or args.coverage is None:
            raise UsageError("calibrate needs --halfwidth with --coverage, --null-odds, or --cauchy")
        A = normal_means.calibrate_spread(args.halfwidth, args.coverage).A
        method, diag = "calibrate-interval", {"A": A}
    # BF01 one would report on observing t = 0.
    return _result(args, method, math.sqrt(diag["A"]), diag)


def _lindley(args):
    try:
        ns = [int(x) for x in args.ns.split(",")]
    except ValueError:
        raise UsageError(f"--ns must be comma-separated integers, got {args.ns!r}") from None
    rows = normal_means.lindley_sweep(args.t, 1.0, ns)
    table = []
    for row in rows:
        printed = report.LINDLEY_PRINTED.get(row.n)
        table.append({"n": row.n, "A": row.A, "bf01": row.bf01, "published": printed})
    return _result(args, "exact-normal", None, {"t": args.t, "sigma_over_tau": 1.0}, table=table)


def _simulate(args):
    alt = simulate.parse_alternative(args.alt) if args.alt else None
    if args.mode == "sequential":
        res = simulate.sequential_demo(args.looks, args.alpha, args.bf_threshold, args.reps or 10_000, args.seed)
        diag = {
            "looks": res.looks,
            "freq_ever_reject_classical": res.freq_ever_reject_classical,
            "freq_ever_cross_bayes": res.freq_ever_cross_bayes,
        }
        return _result(args, "simulate-sequential", None, diag)
    if alt is None:
        alt = simulate.UniformT(20.0) if args.mode == "band" else simulate.NormalSpread(40.0)
    cfg = simulate.MixtureConfig(args.reps or 1_000_000, alt, 0.5, args.seed)
    recs = simulate.run_mixture(cfg)
    if args.dump:
        recs.to_csv(args.dump)
    if args.mode == "band":
        band = _pair(args.band)
        res = simulate.band_analysis(recs, band, two_sided=args.two_sided)
        diag = {
            "p_band_h0": res.p_band_h0,
            "p_band_h1": res.p_band_h1,
            "null_fraction": res.null_fraction,
            **{f"count_{k}": v for k, v in res.counts.items()},
        }
        if not args.two_sided:
            p0, p1, frac = simulate.band_prediction(alt, band)
            diag.update(predicted_p_band_h0=p0, predicted_p_band_h1=p1, predicted_null_fraction=frac)
        return _result(args, "simulate-band", None, diag)
    res = simulate.rejection_audit(recs, args.alpha)
    diag = {"rejections": res.rejections, "fraction_true_null": res.fraction_true_null}
    return _result(args, "simulate-audit", None, diag)


def _report(args):
    claims = report.build_report()
    table = report.claims_as_dicts(claims)
    counts = {v: sum(c.verdict == v for c in claims) for v in (report.PASS, report.FAIL, report.INCONSISTENT)}
    return _result(args, "report", None, counts, table=table)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")

    p = _Parser(prog="statbf", description="Default Bayes factors from observed test statistics.", parents=[fmt])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bf = sub.add_parser("bf", help="Bayes factor from a test statistic", parents=[fmt])
    bfs = bf.add_subparsers(dest="family", required=True, parser_class=_Parser)

    q = bfs.add_parser("normal", help="normal prior, known sigma", parents=[fmt])
    q.add_argument("--t", type=float, required=True, help="observed t-ratio")
    q.add_argument("--A", type=float, help="spread factor of t under H1")
    q.add_argument("--n", type=int, help="sample size")
    q.add_argument("--sigma", type=float, help="sampling standard deviation")
    q.add_argument("--tau", type=float, help="prior standard deviation under H1")
    q.add_argument("--approx", action="store_true", help="large-tau approximation")
    q.set_defaults(handler=_bf_normal, command_path=["bf", "normal"])

    q = bfs.add_parser("cauchy", help="Cauchy(theta0, sigma) prior", parents=[fmt])
    q.add_argument("--t", type=float, required=True, help="observed t-ratio")
    q.add_argument("--n", type=int, required=True, help="sample size")
    q.add_argument("--sigma", type=float, default=1.0, help="sampling standard deviation (default 1)")
    q.add_argument("--exact", action="store_true", help="quadrature instead of the large-n form")
    q.set_defaults(handler=_bf_cauchy, command_path=["bf", "cauchy"])

    q = bfs.add_parser("binom", help="coin tossing with a Beta prior", parents=[fmt])
    q.add_argument("--n", type=int, required=True, help="number of tosses")
    q.add_argument("--r", type=int, required=True, help="number of heads")
    q.add_argument("--theta0", type=float, default=0.5, help="null success probability (default 0.5)")
    q.add_argument("--prior", default="uniform", help="uniform | beta:<a>,<b>")
    q.set_defaults(handler=_bf_binom, command_path=["bf", "binom"])

    q = bfs.add_parser("fstat", help="nested linear models from an F-statistic", parents=[fmt])
    q.add_argument("--n", type=int, required=True, help="observations")
    q.add_argument("--k", type=int, required=True, help="parameters in the larger model")
    q.add_argument("--d", type=int, required=True, help="difference in dimension")
    q.add_argument("--F", type=float, required=True, help="observed F-statistic")
    q.set_defaults(handler=_bf_fstat, command_path=["bf", "fstat"])

    q = sub.add_parser("bound", help="prior-free lower bound on BF01", parents=[fmt])
    q.add_argument("--t", type=float, help="observed t-ratio")
    q.add_argument("--binom", help="<n>,<r> coin-tossing outcome")
    q.add_argument("--one-sided", action="store_true", help="report the doubled, one-sided bound as bf01")
    q.add_argument("--prior-odds", type=float, default=1.0, help="p(H0)/p(H1) (default 1)")
    q.set_defaults(handler=_bound, command_path=["bound"])

    q = sub.add_parser("calibrate", help="elicit the spread factor A", parents=[fmt])
    q.add_argument("--halfwidth", type=float, help="half-width of the assessed interval for t")
    q.add_argument("--coverage", type=float, help="probability assigned to the interval")
    q.add_argument("--null-odds", type=float, help="BF01 you would report on seeing t = 0")
    q.add_argument("--cauchy", action="store_true", help="interval implied by a Cauchy prior")
    q.add_argument("--n", type=int, help="sample size (with --cauchy)")
    q.add_argument("--sigma", type=float, help="sampling standard deviation (with --cauchy)")
    q.set_defaults(handler=_calibrate, command_path=["calibrate"])

    q = sub.add_parser("lindley", help="BF01 at fixed t across sample sizes", parents=[fmt])
    q.add_argument("--t", type=float, default=normal_means.T_ONE_PERCENT, help="t-ratio (default 2.5758)")
    q.add_argument("--ns", default="10,100,1000,1000000", help="comma-separated sample sizes")
    q.set_defaults(handler=_lindley, command_path=["lindley"])

    q = sub.add_parser("simulate", help="Monte Carlo demonstrations", parents=[fmt])
    q.add_argument("mode", choices=("band", "audit", "sequential"))
    q.add_argument("--reps", type=int, help="replications")
    q.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    q.add_argument("--alt", help="A:<real> | uniform:<real> | prior:<tau>,<n>,<sigma>")
    q.add_argument("--band", default="1.96,2.58", help="<a>,<b> band for t")
    q.add_argument("--two-sided", action="store_true", help="band on |t| instead of t")
    q.add_argument("--alpha", type=float, default=0.05, help="classical test level")
    q.add_argument("--looks", type=int, default=1000, help="interim looks (sequential)")
    q.add_argument("--bf-threshold", type=float, default=10.0, help="Bayes stopping threshold (sequential)")
    q.add_argument("--dump", help="write records as CSV to this path")
    q.set_defaults(handler=_simulate, command_path=["simulate"])

    q = sub.add_parser("report", help="recompute every published number", parents=[fmt])
    q.set_defaults(handler=_report, command_path=["report"])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    if hasattr(args, "format"):
        del args.format
    del args.command
    if hasattr(args, "family"):
        del args.family
    try:
        result = args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"statbf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"statbf: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"statbf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(result, fmt))
    if result["method"] == "report" and result["diagnostics"].get(report.FAIL):
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
