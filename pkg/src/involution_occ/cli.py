"""Command-line entry point: ``involution-occ <command> [options]``.

Every command writes one report (JSON by default, CSV with ``--format csv``)
to stdout or ``--output-path``.  Options may also come from a JSON file given
by ``--config``; explicit flags win over file values.

Exit status: 0 on success, 1 on invalid input, 2 on internal failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable

from . import report as rpt
from .asymptotic import average_log, chebyshev_bound, main_term, theorem3_threshold, threshold_c
from .core import canonical_involution, load_involution
from .errors import ModelError
from .exact import exact_stats
from .experiments import threshold_experiment, witness_experiment
from .montecarlo import default_window, estimate, resolve_jobs
from .numtheory import distinct_lower_bound, factorial_profile, poisson_comparison
from .oracle import oracle_report

log = logging.getLogger("involution_occ")

DEFAULTS: dict[str, dict[str, Any]] = {
    "exact": {},
    "oracle": {"f": 0},
    "sample": {"f": 0, "k_max": 2, "trials": 10_000},
    "concentration": {"f": 0, "k_max": 2, "trials": 10_000, "slack": 0.01},
    "threshold": {"m": 2000, "trials": 100, "mu": 0.003, "fraction": 0.87, "lower_fraction": 0.86, "random_phis": 100},
    "witness": {"m": 2000, "trials": 50, "mu": 0.01, "max_draws": 100_000},
    "factorial": {"k_max": 5},
}
REQUIRED = {
    "exact": ("m", "f"),
    "oracle": ("m",),
    "sample": ("m", "seed"),
    "concentration": ("m", "seed"),
    "threshold": ("seed",),
    "witness": ("r", "s", "seed"),
    "factorial": ("p",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of option values (flags override it)")
    p.add_argument("--format", dest="output_format", choices=("json", "csv"), help="report format (default json)")
    p.add_argument("--output-path", help="write the report here instead of stdout")


def _jobs(p):
    p.add_argument("--jobs", type=int, help="worker processes (default $INVOLUTION_OCC_JOBS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="involution-occ", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact average, S2 and variance as rationals")
    p.add_argument("--m", type=int, help="universe size (even)")
    p.add_argument("--f", type=int, help="number of fixed points of the involution")
    p.add_argument("--k", type=int, help="occurrence count (default: every k in 0..m)")
    _common(p)

    p = sub.add_parser("oracle", help="brute-force sums over every symmetric vector")
    p.add_argument("--m", type=int, help="universe size (even)")
    p.add_argument("--f", type=int, help="fixed points of the canonical involution (default 0)")
    p.add_argument("--involution", help='JSON file {"m": .., "map": [..]} overriding --m/--f')
    p.add_argument("--k-max", type=int, help="largest k reported (default m)")
    _common(p)

    for name, text in (
        ("sample", "Monte Carlo estimate of m_k/m"),
        ("concentration", "Monte Carlo window fractions against the Chebyshev bound"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--m", type=int, help="universe size (even)")
        p.add_argument("--f", type=int, help="fixed points of the canonical involution (default 0)")
        p.add_argument("--involution", help="JSON involution file overriding --m/--f")
        p.add_argument("--k-max", type=int, help="largest k reported (default 2)")
        p.add_argument("--trials", type=int, help="number of sampled vectors (default 10000)")
        p.add_argument("--seed", type=int, help="master seed (required)")
        p.add_argument("--window", type=float, help="window half-width (default m**-0.25)")
        if name == "concentration":
            p.add_argument("--slack", type=float, help="allowed shortfall below the bound (default 0.01)")
        _jobs(p)
        _common(p)

    p = sub.add_parser("threshold", help="single-link witnesses around the 1/2 + 1/e density")
    p.add_argument("--m", type=int, help="universe size (default 2000)")
    p.add_argument("--trials", type=int, help="sampled vectors (default 100)")
    p.add_argument("--seed", type=int, help="master seed (required)")
    p.add_argument("--mu", type=float, help="relative band width for m_0 (default 0.003)")
    p.add_argument("--fraction", type=float, help="density of b above the threshold (default 0.87)")
    p.add_argument("--lower-fraction", type=float, help="density of b below the threshold (default 0.86)")
    p.add_argument("--random-phis", type=int, help="random bijections per vector (default 100)")
    _jobs(p)
    _common(p)

    p = sub.add_parser("witness", help="two-sided witnesses at |b| = ceil(c m) + 1")
    p.add_argument("--m", type=int, help="universe size (default 2000)")
    p.add_argument("--r", type=int, help="occurrence cap for u")
    p.add_argument("--s", type=int, help="occurrence cap for phi(u)")
    p.add_argument("--mu", type=float, help="relative band width (default 0.01)")
    p.add_argument("--trials", type=int, help="band-passing vectors to test (default 50)")
    p.add_argument("--max-draws", type=int, help="sampling budget (default 100000)")
    p.add_argument("--seed", type=int, help="master seed (required)")
    _jobs(p)
    _common(p)

    p = sub.add_parser("factorial", help="occurrence profile of n! mod p")
    p.add_argument("--p", type=int, help="odd prime")
    p.add_argument("--k-max", type=int, help="largest k in the comparison table (default 5)")
    _common(p)
    return parser


def resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults < config file < explicit flags."""
    cfg: dict[str, Any] = dict(DEFAULTS[args.command])
    cfg["output_format"] = "json"
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        known = set(vars(args))
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in known or key in ("command", "config"):
                raise UsageError(f"unknown config key {key!r} for {args.command}")
            cfg[key] = value
    for key, value in vars(args).items():
        if value is not None and key != "config":
            cfg[key] = value
    for key in REQUIRED[args.command]:
        if cfg.get(key) is None and not (key == "m" and cfg.get("involution")):
            raise UsageError(f"--{key.replace('_', '-')} is required for {args.command}")
    return cfg


def _psi(cfg):
    if cfg.get("involution"):
        return load_involution(cfg["involution"])
    return canonical_involution(cfg["m"], cfg["f"])


def cmd_exact(cfg):
    m, f = cfg["m"], cfg["f"]
    ks = [cfg["k"]] if cfg.get("k") is not None else range(m + 1)
    stats = [exact_stats(m, f, k) for k in ks]
    rows = [rpt.exact_stats_json(s) for s in stats]
    if len(rows) == 1:
        body = {"m": m, "f": f, **rows[0]}
    else:
        body = {"m": m, "f": f, "per_k": rows}
    csv_rows = [
        {
            "m": m, "f": f, "k": s.k, "a": str(s.a), "s2": str(s.s2),
            "s2_normalized": str(s.s2_normalized), "var": str(s.variance),
            "a_float": float(s.a), "var_float": float(s.variance),
        }
        for s in stats
    ]
    return body, csv_rows


def cmd_oracle(cfg):
    rep = oracle_report(_psi(cfg), cfg.get("k_max"))
    csv_rows = [{"m": rep.m, "f": rep.f, "k": k, "sum_mk": s, "sum_mk_sq": sq} for k, s, sq in rep.per_k]
    return rpt.oracle_json(rep), csv_rows


def _summary(cfg):
    psi = _psi(cfg)
    window = cfg.get("window") or default_window(psi.m)
    jobs = resolve_jobs(cfg.get("jobs"))
    return psi, estimate(psi, cfg["k_max"], cfg["trials"], cfg["seed"], window, jobs)


def cmd_sample(cfg):
    _, summary = _summary(cfg)
    rows = [
        {"k": s.k, "mean_ratio": s.mean_ratio, "sample_variance": s.sample_variance,
         "within_window_fraction": s.within_window_fraction, "standard_error": summary.standard_error(s.k)}
        for s in summary.per_k
    ]
    return rpt.summary_json(summary), rows


def cmd_concentration(cfg):
    psi, summary = _summary(cfg)
    m, f = psi.m, psi.fixed_count
    rows = []
    for s in summary.per_k:
        bound = chebyshev_bound(m, f, s.k, summary.window)
        mean = average_log(m, f, s.k)
        se = summary.standard_error(s.k)
        rows.append({
            "k": s.k,
            "main_term": main_term(s.k, f / m),
            "average": mean,
            "mean_ratio": s.mean_ratio,
            "standard_error": se,
            "mean_z": (s.mean_ratio - mean) / se if se > 0 else 0.0,
            "within_window_fraction": s.within_window_fraction,
            "chebyshev_bound": bound,
            "bound_ok": s.within_window_fraction >= bound - cfg["slack"],
        })
    body = rpt.summary_json(summary)
    body["checks"] = rows
    return body, rows


def cmd_threshold(cfg):
    rep = threshold_experiment(
        cfg["m"], cfg["trials"], cfg["seed"], cfg["mu"], cfg["fraction"], cfg["lower_fraction"],
        cfg["random_phis"], resolve_jobs(cfg.get("jobs")),
    )
    rows = [
        {"index": t.index, "m0": t.m0, "band_inside": t.band.inside, "upper_linked": t.upper_linked,
         "upper_failures": t.upper_failures, "upper_checked": t.upper_checked,
         "lower_succeeded": t.lower_succeeded, "lower_witness": t.lower_witness}
        for t in rep.trials
    ]
    body = {
        "m": rep.m, "seed": str(rep.seed), "mu": rep.mu, "vectors": rep.vectors,
        "threshold": theorem3_threshold(), "band_passing": len(rep.band_passing),
        "positive_rate": rpt.clean_float(rep.positive_rate),
        "negative_rate": rpt.clean_float(rep.negative_rate),
        "trials": [rpt.dataclass_json(t) for t in rep.trials],
    }
    return body, rows


def cmd_witness(cfg):
    rep = witness_experiment(cfg["m"], cfg["r"], cfg["s"], cfg["seed"], cfg["mu"], cfg["trials"], cfg["max_draws"])
    rows = [
        {"index": t.index, "b_kind": t.b_kind, "b_size": t.b_size, "phi_kind": t.phi_kind,
         "found": t.witness is not None,
         "u": t.witness.u if t.witness else None, "v": t.witness.v if t.witness else None}
        for t in rep.trials
    ]
    body = {
        "m": rep.m, "r": rep.r, "s": rep.s, "mu": rep.mu, "c": threshold_c(rep.r, rep.s, rep.mu),
        "b_size": rep.b_size, "seed": str(rep.seed), "draws": rep.draws, "band_passing": rep.band_passing,
        "success_rate": rpt.clean_float(rep.success_rate),
        "trials": [rpt.dataclass_json(t) for t in rep.trials],
    }
    return body, rows


def cmd_factorial(cfg):
    prof = factorial_profile(cfg["p"])
    table = poisson_comparison(prof, cfg["k_max"])
    bound = distinct_lower_bound(prof.p)
    if prof.distinct_count < bound:
        log.warning("p=%d: distinct count %d below soft floor %d", prof.p, prof.distinct_count, bound)
    rows = [{"row": "k", "k": r.k, "count": prof.profile[r.k], "empirical_ratio": r.empirical_ratio,
             "model_ratio": r.model_ratio, "abs_gap": r.abs_gap} for r in table]
    rows.append({"row": "summary", "distinct_count": prof.distinct_count, "wilson_ok": prof.wilson_ok,
                 "distinct_floor": bound})
    body = {
        "p": prof.p,
        "note": "heuristic comparison: factorials are not claimed to be a uniform symmetric vector",
        "distinct_count": prof.distinct_count,
        "distinct_floor": bound,
        "wilson_ok": prof.wilson_ok,
        "counts": {str(k): prof.profile[k] for k in range(len(table))},
        "comparison": [rpt.dataclass_json(r) for r in table],
    }
    return body, rows


COMMANDS: dict[str, Callable] = {
    "exact": cmd_exact,
    "oracle": cmd_oracle,
    "sample": cmd_sample,
    "concentration": cmd_concentration,
    "threshold": cmd_threshold,
    "witness": cmd_witness,
    "factorial": cmd_factorial,
}


def run(cfg: dict[str, Any]) -> str:
    body, rows = COMMANDS[cfg["command"]](cfg)
    if cfg["output_format"] == "csv":
        return rpt.dumps_csv(rows)
    return rpt.dumps_json(rpt.envelope(cfg["command"], body))


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        text = run(cfg)
    except (UsageError, ModelError, OSError) as exc:
        print(f"involution-occ: error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        log.exception("internal failure")
        return 2
    if cfg.get("output_path"):
        with open(cfg["output_path"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
