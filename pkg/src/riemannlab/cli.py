"""Command line entry point: ``riemannlab {covariance,sequence,simulate,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import covariance as cov
from .functions import SpecError, spec_from_json
from .sequences import sequence_report
from .stats import stream_base, variance_convergence_study
from .verify import format_report, run_battery
from .wiener import MASK64, sample_lattice_path

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def fmt_real(x):
    """Locale-independent 12-significant-digit decimal."""
    return format(float(x), ".12g")


def fmt_rational(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_range(text):
    """``"5"``, ``"2..10"`` or ``"1,4,9"`` into a list of positive integers."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"range must be non-empty and positive: {text!r}")
    return values


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer: {text!r}")
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _samples(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"samples must be an integer: {text!r}")
    if value < 100:
        raise argparse.ArgumentTypeError("samples must be at least 100")
    return value


def render(rows, fmt):
    """Rows (dicts of already-formatted cells) as CSV or JSON text."""
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def _json_real(x):
    return float(fmt_real(x))


def _real(fmt):
    return _json_real if fmt == "json" else fmt_real


def covariance_rows(args):
    real = _real(args.format)
    rows = []
    failed = False
    limit = float("inf") if args.check else cov.BRUTE_FORCE_LIMIT
    min_sum = cov.min_sum_bruteforce if args.check else cov.min_sum
    for n in args.n or []:
        ex2 = cov.ex_n_squared(n)
        exx = cov.ex_n_xnp1(n)
        ey2 = cov.ey_n_squared(n)
        ok = min_sum(n, n) == ex2 and min_sum(n, n + 1) == exx and ey2 == Fraction(1, 2)
        failed |= not ok
        rows.append(
            {
                "n": n,
                "ex_n_squared": fmt_rational(ex2),
                "ex_n_xnp1": fmt_rational(exx),
                "ey_n_squared": fmt_rational(ey2),
                "ex_n_squared_dec": real(ex2),
                "ex_n_xnp1_dec": real(exx),
                "ey_n_squared_dec": real(ey2),
                "agree": "ok" if ok else "FAIL",
            }
        )
    for s in args.s or []:
        closed = cov.cross_covariances(s)
        # --check forces enumeration even where min_sum would take the split path
        brute = cov.cross_covariances_bruteforce(s, limit)
        eyy = cov.ey4s_y2s(s)
        var = cov.var_ydiff(s)
        ok = brute == closed and eyy == Fraction(12 * s * s + 9 * s + 2, 32 * s * s + 24 * s + 4)
        failed |= not ok
        rows.append(
            {
                "s": s,
                "ex4s_x2s": fmt_rational(closed[0]),
                "ex4s1_x2s1": fmt_rational(closed[1]),
                "ex4s1_x2s": fmt_rational(closed[2]),
                "ex4s_x2s1": fmt_rational(closed[3]),
                "ey4s_y2s": fmt_rational(eyy),
                "var_ydiff": fmt_rational(var),
                "ey4s_y2s_dec": real(eyy),
                "var_ydiff_dec": real(var),
                "agree": "ok" if ok else "FAIL",
            }
        )
    return rows, failed


def cmd_covariance(args):
    if not args.n and not args.s:
        raise UsageError("covariance needs --n or --s")
    if args.n and args.s:
        raise UsageError("covariance takes --n or --s, not both")
    rows, failed = covariance_rows(args)
    return render(rows, args.format), EXIT_FAIL if failed else EXIT_OK


def _load_spec(text):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}")
    try:
        return spec_from_json(text)
    except SpecError as exc:
        raise UsageError(f"invalid function spec: {exc}")


def cmd_sequence(args):
    spec = _load_spec(args.spec)
    ns = args.n or [1]
    n_min, n_max = min(ns), max(ns)
    report = sequence_report(
        spec, n_min, n_max, tail_window=args.window, quadrature_points=args.quadrature
    )
    real = _real(args.format)
    wanted = set(ns)
    rows = [
        {k: (v if k == "n" else real(v)) for k, v in row.items()}
        for row in report.rows()
        if row["n"] in wanted
    ]
    return render(rows, args.format), EXIT_OK


def cmd_simulate(args):
    s_values = args.s or [1]
    summaries = variance_convergence_study(s_values, args.samples, args.seed)
    real = _real(args.format)
    rows = []
    for m in summaries:
        rows.append(
            {
                "s": m.s,
                "n_samples": m.n_samples,
                "mean": real(m.mean),
                "variance": real(m.variance),
                "exact_target": fmt_rational(m.exact_target),
                "exact_target_dec": real(m.exact_target),
                "ci_radius": real(m.variance_ci_radius),
                "ks_statistic": real(m.ks_statistic),
                "ks_pvalue": real(m.ks_pvalue),
                "ks_pass": "true" if m.ks_pass else "false",
                "verdict": m.verdict,
            }
        )
    if args.export_path:
        # replicate 0 of the first s, the same stream the study used
        path = sample_lattice_path(s_values[0], args.seed, stream_base(0, s_values[0]))
        with open(args.export_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(path.to_csv())
    code = EXIT_FAIL if any(m.hard_failed for m in summaries) else EXIT_OK
    return render(rows, args.format), code


def cmd_verify(args):
    results = run_battery(seed=args.seed, quick=args.quick)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if args.format == "json":
        rows = [{"criterion": r.key, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results]
        return render(rows, "json"), code
    return format_report(results), code


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="64-bit RNG seed (default 0)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="riemannlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("covariance", parents=[common], help="exact covariance identities")
    p.add_argument("--n", type=parse_range, help="grid sizes, e.g. 5 or 2..200")
    p.add_argument("--s", type=parse_range, help="dyadic indices, e.g. 1 or 1..100")
    p.add_argument("--check", action="store_true", help="always compare against brute-force sums")
    p.set_defaults(func=cmd_covariance)

    p = sub.add_parser("sequence", parents=[common], help="tabulate x_n, y_n, x_n/n")
    p.add_argument("--spec", required=True, help="function spec JSON, or @file.json")
    p.add_argument("--n", type=parse_range, help="index range, e.g. 2..100")
    p.add_argument("--window", type=int, default=None, help="tail window for oscillation")
    p.add_argument("--quadrature", type=int, default=8, help="Gauss-Legendre order for residuals")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo variance of y_4s - y_2s")
    p.add_argument("--s", type=parse_range, help="dyadic indices (default 1)")
    p.add_argument("--samples", type=_samples, default=100_000)
    p.add_argument("--export-path", metavar="PATH", help="write one sampled path as CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    p.add_argument("--quick", action="store_true", help="reduced sample counts")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"riemannlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
