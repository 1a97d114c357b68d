"""Command line driver: ``cleft catalog|resolve|torsor|run``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .catalog import TAGS, make_scheme
from .errors import CleftError, ConfigInvalid
from .localized import DEFAULT_KMAX, LocalizedRing
from .polynomial import check_prime, parse_poly, scan_names
from .report import build_report, render, report_ok
from .serialize import hopf_to_dict
from .suites import DEFAULT_GRID, SUITES, lam_label, run_suite, xy_example_suite
from .torsors import torsor_suite

ALLOWED_PRIMES = (2, 3, 5)
MAX_ORDER = 9
RESOLVE_SUITES = ("mu", "gamma", "diagram")

_TABLE_CACHE: dict = {}


# -- configuration ---------------------------------------------------------------

def parse_lambda(text):
    if text is None:
        return None
    if text == "sym":
        return "sym"
    try:
        return int(text)
    except ValueError:
        raise ConfigInvalid(f"--lambda must be 'sym' or an integer, got {text!r}") from None


def parse_suites(text, allowed=SUITES):
    if text is None:
        return list(allowed)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in allowed]
    if unknown or not names:
        raise ConfigInvalid(f"unknown suite(s) {unknown}; choose from {', '.join(allowed)}")
    return names


def check_grid_point(p, n, allow_large=False):
    if not isinstance(p, int) or p < 2:
        raise ConfigInvalid(f"p = {p} is not a prime")
    try:
        check_prime(p)
    except ValueError:
        raise ConfigInvalid(f"p = {p} is not a prime") from None
    if n < 1:
        raise ConfigInvalid("n must be positive")
    if allow_large:
        return
    if p not in ALLOWED_PRIMES:
        raise ConfigInvalid(f"p = {p} is outside {ALLOWED_PRIMES}; pass --allow-large to override")
    if p ** n > MAX_ORDER:
        raise ConfigInvalid(f"p^n = {p ** n} exceeds {MAX_ORDER}; pass --allow-large to override")


def grid_from(args):
    if args.p is None:
        if args.n is not None or args.lam is not None:
            raise ConfigInvalid("--n and --lambda need --p")
        return list(DEFAULT_GRID)
    n = args.n if args.n is not None else 1
    lams = [args.lam] if args.lam is not None else ["sym", 0, 1]
    check_grid_point(args.p, n, args.allow_large)
    return [(args.p, n, lam) for lam in lams]


def thread_count():
    raw = os.environ.get("CLEFT_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise ConfigInvalid(f"CLEFT_THREADS must be a positive integer, got {raw!r}") from None
    if k < 1:
        raise ConfigInvalid("CLEFT_THREADS must be positive")
    return k


# -- jobs ----------------------------------------------------------------------------

def _run_job(job):
    suite, p, n, lam, kmax, degree = job
    start = time.perf_counter()
    if suite == "xy-example":
        checks = xy_example_suite(search_degree=degree, kmax=kmax)
    else:
        checks = run_suite(suite, p, n, lam, cache=_TABLE_CACHE, kmax=kmax, search_degree=degree)
    return checks, time.perf_counter() - start


def plan_jobs(grid, suites, kmax, degree, include_example):
    jobs, seen_torsor = [], set()
    for p, n, lam in grid:
        for s in suites:
            if s == "torsor":
                # torsor checks depend on (p, lam) only
                if (p, lam_label(lam)) in seen_torsor:
                    continue
                seen_torsor.add((p, lam_label(lam)))
            jobs.append((s, p, n, lam, kmax, degree))
    if include_example and "torsor" in suites:
        jobs.append(("xy-example", 2, 1, "X+1", kmax, degree))
    return jobs


def execute(jobs):
    """Run jobs (in parallel when CLEFT_THREADS > 1); results keep job order."""
    workers = min(thread_count(), max(len(jobs), 1))
    if workers == 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs))


def job_key(job):
    suite, p, n, lam = job[:4]
    return f"{suite}.p{p}n{n}.{lam_label(lam)}"


def report_for(jobs, config, timings=False):
    results = execute(jobs)
    entries = [(job_key(j), checks) for j, (checks, _) in zip(jobs, results)]
    times = {job_key(j): dt for j, (_, dt) in zip(jobs, results)} if timings else None
    return build_report(config, entries, times)


def emit(report, args):
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report_ok(report) else 1


# -- subcommands ---------------------------------------------------------------------

def cmd_run(args):
    grid = grid_from(args)
    suites = parse_suites(args.suite)
    include_example = args.p is None or args.p == 2
    jobs = plan_jobs(grid, suites, args.kmax, args.search_degree, include_example)
    config = {"command": "run", "grid": [[p, n, lam_label(lam)] for p, n, lam in grid],
              "suites": suites, "kMax": args.kmax, "degreeBound": args.search_degree}
    return emit(report_for(jobs, config, args.timings), args)


def cmd_resolve(args):
    if args.p is None:
        raise ConfigInvalid("resolve needs --p")
    grid = grid_from(args)
    suites = parse_suites(args.suite, RESOLVE_SUITES)
    jobs = plan_jobs(grid, suites, args.kmax, args.search_degree, False)
    config = {"command": "resolve", "grid": [[p, n, lam_label(lam)] for p, n, lam in grid],
              "suites": suites, "kMax": args.kmax}
    return emit(report_for(jobs, config, args.timings), args)


def cmd_catalog(args):
    p = args.p if args.p is not None else 2
    n = args.n if args.n is not None else 1
    check_grid_point(p, n, args.allow_large)
    lam = args.lam if args.lam is not None else "sym"
    tags = [args.scheme] if args.scheme else list(TAGS)
    for t in tags:
        if t not in TAGS:
            raise ConfigInvalid(f"unknown scheme {t!r}; choose from {', '.join(TAGS)}")
    docs = [hopf_to_dict(make_scheme(t, p, n, lam=lam).hopf) for t in tags]
    text = json.dumps(docs if len(docs) > 1 else docs[0], indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_torsor(args):
    start = time.perf_counter()
    if args.example:
        checks = xy_example_suite(search_degree=args.search_degree, kmax=args.kmax)
        config = {"command": "torsor", "instance": "xy-example", "kMax": args.kmax,
                  "degreeBound": args.search_degree}
    else:
        p = args.p
        if p is None or args.a is None or args.c is None or args.lam_expr is None:
            raise ConfigInvalid("torsor needs --p, --lambda, --a and --c (or --example)")
        check_grid_point(p, 1, args.allow_large)
        texts = [args.lam_expr, args.a, args.c] + ([args.invert] if args.invert else [])
        names = []
        for t in texts:
            try:
                names.extend(v for v in scan_names(t) if v not in names)
            except CleftError as exc:
                raise ConfigInvalid(str(exc)) from None
        variables = tuple(names)
        try:
            lam, a, c = (parse_poly(t, p, variables) for t in texts[:3])
            if args.invert:
                den = parse_poly(args.invert, p, variables)
            else:
                den = a ** p + lam ** p * c
        except CleftError as exc:
            raise ConfigInvalid(str(exc)) from None
        dens = [] if den.is_constant() else [den]
        R = LocalizedRing(variables, dens, p, variables, name="R")
        prefix = f"torsor.p{p}.custom"
        checks = torsor_suite(R, R.frac(lam), R.frac(a), R.frac(c), prefix, args.search_degree, args.kmax)
        config = {"command": "torsor", "p": p, "lambda": args.lam_expr, "a": args.a, "c": args.c,
                  "inverted": str(den) if dens else "1", "kMax": args.kmax, "degreeBound": args.search_degree}
    times = {"torsor": time.perf_counter() - start} if args.timings else None
    return emit(build_report(config, [("torsor", checks)], times), args)


# -- entry point ----------------------------------------------------------------------

def _common(parser, lam_is_expr=False):
    parser.add_argument("--p", type=int)
    parser.add_argument("--n", type=int)
    if lam_is_expr:
        parser.add_argument("--lambda", dest="lam_expr", help="polynomial expression for lambda")
    else:
        parser.add_argument("--lambda", dest="lam_raw", help="'sym' or an integer")
    parser.add_argument("--kmax", type=int, default=DEFAULT_KMAX // 2 if lam_is_expr else DEFAULT_KMAX)
    parser.add_argument("--search-degree", type=int, default=2)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--allow-large", action="store_true")
    parser.add_argument("--timings", action="store_true", help="add elapsed seconds to each entry")


def build_parser():
    parser = argparse.ArgumentParser(prog="cleft", description="Verify Hopf-algebraic identities over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run suites over a grid of (p, n, lambda)")
    _common(run)
    run.add_argument("--suite", help=f"comma-separated subset of {','.join(SUITES)}")
    resolve = sub.add_parser("resolve", help="coinvariant and comparison-diagram suites")
    _common(resolve)
    resolve.add_argument("--suite", help="comma-separated subset of mu,gamma,diagram")
    cat = sub.add_parser("catalog", help="print scheme presentations")
    _common(cat)
    cat.add_argument("--scheme", help=f"one of {', '.join(TAGS)}")
    tors = sub.add_parser("torsor", help="torsor checks for given lambda, a, c")
    _common(tors, lam_is_expr=True)
    tors.add_argument("--a")
    tors.add_argument("--c")
    tors.add_argument("--invert", help="polynomial to invert in the base (default a^p + lambda^p c)")
    tors.add_argument("--example", action="store_true", help="use the built-in two-variable example")
    return parser


COMMANDS = {"run": cmd_run, "resolve": cmd_resolve, "catalog": cmd_catalog, "torsor": cmd_torsor}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "lam_raw"):
            args.lam = parse_lambda(args.lam_raw)
        for name in ("kmax", "search_degree"):
            if getattr(args, name) < 0:
                raise ConfigInvalid(f"--{name.replace('_', '-')} must be non-negative")
        return COMMANDS[args.command](args)
    except ConfigInvalid as exc:
        print(f"cleft: invalid configuration: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
