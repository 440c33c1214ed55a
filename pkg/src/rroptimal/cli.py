"""Command-line front end.

Exit codes: 0 ok, 2 usage error, 3 domain/parameter violation, 4 metric and
parameter mismatch, 5 certification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import estimation, exponents, information, mechanisms, privacy, verify
from .core import MechanismPair, PrivacyBudget, RROptimalError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_METRIC = 4
EXIT_CERT = 5

GAP_FLOOR = -1e-9
GRID_GAP_CEILING = 1e-3

EXIT_CODES_HELP = """exit codes:
  0  success
  2  invalid or missing flags
  3  parameter outside its domain (e.g. delta not in (0,1))
  4  metric requested without the parameters it needs
  5  certification failure: a feasible pair beat the closed form
"""

METRICS = ("fisher", "uc", "dp", "renyi", "kl", "chernoff", "stein", "hoeffding", "hk")


class MetricMismatch(Exception):
    pass


class CertificationFailure(Exception):
    def __init__(self, payload: str):
        super().__init__("certification failed")
        self.payload = payload


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _dump(obj) -> str:
    return json.dumps({k: _num(v) for k, v in obj.items()}, separators=(",", ":"))


def _csv_row(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def _load_mech(path: str) -> MechanismPair:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise RROptimalError(f"cannot read mechanism file {path}: {exc.strerror}") from exc
    return MechanismPair.from_json(text)


def _budget(args) -> PrivacyBudget:
    return PrivacyBudget(args.delta, args.weight)


# ---------------------------------------------------------------------------


def cmd_mech(args, parser) -> str:
    scheme = args.scheme
    if scheme in ("optimal2", "holohan") and args.theta is None:
        parser.error(f"--scheme {scheme} requires --theta")
    if scheme == "greenberg" and args.eta is None:
        parser.error("--scheme greenberg requires --eta")
    if scheme == "family" and args.family_spec is None:
        parser.error("--scheme family requires --family-spec")
    if scheme == "optimal3":
        pair = mechanisms.optimal_three_symbol(_budget(args))
    elif scheme == "optimal2":
        pair = mechanisms.optimal_two_symbol(_budget(args), args.theta)
    elif scheme == "warner":
        pair = mechanisms.warner(args.delta)
    elif scheme == "greenberg":
        pair = mechanisms.greenberg(args.delta, args.eta)
    elif scheme == "holohan":
        pair = mechanisms.holohan(args.delta, args.theta)
    else:
        try:
            layout = json.loads(Path(args.family_spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise RROptimalError(f"cannot load family layout: {exc}") from exc
        r = layout.get("r") or [layout.get("r1"), layout.get("r2"), layout.get("r3")]
        if "b" not in layout or len(r) != 3 or None in r:
            raise RROptimalError('family layout needs "b" and "r": [r1, r2, r3]')
        params = mechanisms.OptimalFamilyParams(tuple(layout["b"]), *r)
        pair = mechanisms.optimal_family(_budget(args), params)
    return pair.to_json()


def _need(args, metric, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + m.replace("_", "-") for m in missing)
        raise MetricMismatch(f"metric {metric!r} needs {flags}")


def cmd_eval(args, parser) -> str:
    pair = _load_mech(args.mech)
    metrics = args.metric or ["fisher"]
    out = {}
    for m in metrics:
        if m == "fisher":
            _need(args, m, "theta")
            out[m] = information.fisher_information(pair, args.theta)
        elif m == "uc":
            out[m] = privacy.uc_security(pair, args.weight)
        elif m == "dp":
            out[m] = privacy.dp_delta(pair, args.epsilon)
        elif m == "renyi":
            _need(args, m, "theta1", "theta2", "s")
            out[m] = information.renyi_divergence(pair, args.theta1, args.theta2, args.s)
        elif m == "kl":
            _need(args, m, "theta1", "theta2")
            out[m] = information.relative_entropy(pair, args.theta1, args.theta2)
        elif m == "chernoff":
            _need(args, m, "theta1", "theta2")
            out[m] = exponents.chernoff_exponent(pair, args.theta1, args.theta2).value
        elif m == "stein":
            _need(args, m, "theta1", "theta2")
            out[m] = exponents.stein_exponent(pair, args.theta1, args.theta2)
        elif m == "hoeffding":
            _need(args, m, "theta1", "theta2", "rate")
            out[m] = exponents.hoeffding_exponent(pair, args.theta1, args.theta2, args.rate).value
        elif m == "hk":
            _need(args, m, "theta1", "theta2", "rate")
            out[m] = exponents.han_kobayashi(pair, args.theta1, args.theta2, args.rate).value
    return _dump(out)


def _grid(n: int):
    return [i / (n + 1) for i in range(1, n + 1)]


def sweep_rows(figure: int, delta: float, weight: float, grid: int) -> list[str]:
    """CSV lines (header first) for one of the three figure sweeps."""
    budget = PrivacyBudget(delta, weight)
    thetas = _grid(grid)
    if figure == 2:
        lines = ["theta,max_y2,max_y3"]
        for t in thetas:
            lines.append(_csv_row([t, information.max_fisher(budget, t, 2),
                                   information.max_fisher(budget, t, 3)]))
    elif figure == 3:
        lines = ["theta,warner,greenberg_eta_half,holohan,optimal3"]
        w_pair = mechanisms.warner(delta)
        g_pair = mechanisms.greenberg(delta, 0.5)
        o_pair = mechanisms.optimal_three_symbol(budget)
        for t in thetas:
            lines.append(_csv_row([
                t,
                information.fisher_information(w_pair, t),
                information.fisher_information(g_pair, t),
                information.fisher_information(mechanisms.holohan(delta, t), t),
                information.fisher_information(o_pair, t),
            ]))
    else:
        lines = ["theta1,theta2,max_relative_entropy"]
        for t1 in thetas:
            for t2 in thetas:
                lines.append(_csv_row([t1, t2, information.max_renyi(budget, t1, t2, 0.0)]))
    return lines


def cmd_sweep(args, parser) -> str | None:
    if args.grid < 1:
        parser.error("--grid must be at least 1")
    text = "\n".join(sweep_rows(args.figure, args.delta, args.weight, args.grid)) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
        return None
    return text.rstrip("\n")


def cmd_simulate(args, parser) -> str:
    pair = _load_mech(args.mech)
    if args.data is not None:
        data = estimation.SurveyDataset.from_csv(Path(args.data).read_text())
        est = estimation.mle(pair, data, args.alpha)
        return _dump({
            "theta_hat": est.theta_hat,
            "fisher_at_hat": est.fisher_at_hat,
            "ci_lo": est.ci_lo,
            "ci_hi": est.ci_hi,
            "alpha": est.alpha,
            "n": est.n,
            "uninformative": est.uninformative,
        })
    if args.theta is None or args.n is None:
        parser.error("simulate needs --theta and --n (or --data)")
    if args.n < 1 or args.trials < 1:
        raise RROptimalError("--n and --trials must be at least 1")
    summary = estimation.simulate(pair, args.theta, args.n, args.trials, args.seed, args.alpha)
    if args.counts_out:
        first = estimation.sample_survey(pair, args.theta, args.n, args.seed)
        with open(args.counts_out, "w", newline="\n") as fh:
            fh.write(first.to_csv())
    return _dump({
        "theta": summary.theta,
        "n": summary.n,
        "trials": summary.trials,
        "seed": args.seed,
        "alpha": summary.alpha,
        "mean_theta_hat": summary.mean_theta_hat,
        "std_theta_hat": summary.std_theta_hat,
        "mse": summary.mse,
        "crb": summary.crb,
        "mse_over_crb": summary.mse_over_crb,
        "coverage": summary.coverage,
        "uninformative_trials": summary.uninformative_trials,
    })


def cmd_verify(args, parser) -> str:
    budget = _budget(args)
    extra = {}
    if args.objective == "fisher":
        if args.theta is None:
            parser.error("--objective fisher requires --theta")
        obj = verify.fisher_objective(args.theta)
        closed = information.max_fisher(budget, args.theta, args.size)
    else:
        if args.theta1 is None or args.theta2 is None:
            parser.error(f"--objective {args.objective} requires --theta1 and --theta2")
        s = 0.0 if args.objective == "kl" else args.s
        if s is None:
            parser.error("--objective renyi requires --s")
        f = information.KL if s == 0.0 else information.power_generator(s)
        obj = verify.f_divergence_objective(args.theta1, args.theta2, f)
        closed = information.max_f_divergence(budget, args.theta1, args.theta2, f) if args.size >= 3 else None
    if args.expect is not None:
        closed = args.expect
    report = verify.brute_force_max(budget, obj, args.size, args.grid, args.samples, args.seed, closed)
    if args.objective == "renyi" and args.s != 0.0:
        extra = {
            "renyi_best": math.log(abs(report.best_value)) / args.s,
            "renyi_closed_form": math.log(abs(report.closed_form_value)) / args.s,
        }
    payload = json.dumps({**report.to_dict(), **extra}, separators=(",", ":"))
    if report.gap < GAP_FLOOR or report.grid_gap > GRID_GAP_CEILING:
        raise CertificationFailure(payload)
    return payload


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rroptimal",
        description="Optimal binary randomized response under an l1 privacy budget.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=EXIT_CODES_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        return p

    p = add("mech", "Construct a mechanism and print it as JSON.")
    p.add_argument("--scheme", required=True,
                   choices=["optimal3", "optimal2", "warner", "greenberg", "holohan", "family"])
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--weight", type=float, default=0.5)
    p.add_argument("--theta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--family-spec", help='JSON file {"b": [...], "r": [r1, r2, r3]}')
    p.set_defaults(handler=cmd_mech)

    p = add("eval", "Evaluate privacy and utility metrics of a mechanism file.")
    p.add_argument("--mech", required=True)
    p.add_argument("--metric", action="append", choices=METRICS)
    p.add_argument("--theta", type=float)
    p.add_argument("--theta1", type=float)
    p.add_argument("--theta2", type=float)
    p.add_argument("--weight", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--s", type=float)
    p.add_argument("--rate", type=float)
    p.set_defaults(handler=cmd_eval)

    p = add("sweep", "Write the data behind a figure as CSV.")
    p.add_argument("--figure", type=int, required=True, choices=[2, 3, 4])
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--weight", type=float, default=0.5)
    p.add_argument("--grid", type=int, default=99)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_sweep)

    p = add("simulate", "Simulate surveys and compare the MLE with the Cramer-Rao bound.")
    p.add_argument("--mech", required=True)
    p.add_argument("--theta", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--data", help="estimate from a symbol,count CSV instead of simulating")
    p.add_argument("--counts-out", help="write the first simulated survey as CSV")
    p.set_defaults(handler=cmd_simulate)

    p = add("verify", "Brute-force search certifying a closed-form maximum.")
    p.add_argument("--objective", required=True, choices=["fisher", "kl", "renyi"])
    p.add_argument("--theta", type=float)
    p.add_argument("--theta1", type=float)
    p.add_argument("--theta2", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--weight", type=float, default=0.5)
    p.add_argument("--size", type=int, default=3, choices=[2, 3])
    p.add_argument("--grid", type=int, default=400)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--expect", type=float, help="override the closed-form value (harness self-test)")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.handler(args, parser)
    except MetricMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METRIC
    except CertificationFailure as exc:
        print(exc.payload)
        print("error: a feasible pair beat the closed-form maximum", file=sys.stderr)
        return EXIT_CERT
    except (RROptimalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if out is not None:
        print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
