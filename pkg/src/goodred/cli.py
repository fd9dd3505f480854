"""Command line entry point: census, constants, field counts, kappa, lcm and
epsilon reports."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .constants import DEFAULT_Q, D_MAX, D_MIN, TAIL_FROM, constant_report, explicit_abc_epsilon
from .goodd import (
    DEFAULT_MIN_R_MAX,
    Census,
    assumption_bound,
    assumption_violations,
    enumerate_good_d,
    good_count_curve,
    read_census_csv,
    write_census_csv,
)
from .granville import kappa_prime
from .lcmsparse import build_tight_set, count_lcm_pairs_many, fit_sparsity_exponent, log_spaced
from .setzer import count_R_I

log = logging.getLogger("goodred")

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION = 0, 1, 2


class PreconditionError(Exception):
    pass


def g12(v: float) -> float:
    """Round to 12 significant digits for emission."""
    return float(f"{v:.12g}")


def parse_number(text: str):
    """Accepts 1e141, 10^141 or plain integers; the power form stays exact."""
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    try:
        return int(text)
    except ValueError:
        return float(text)


def load_config(path: str) -> dict:
    """key=value lines; '#' starts a comment. Keys use option names with dashes or underscores."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise PreconditionError(f"bad config line: {raw.rstrip()}")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _header(args) -> dict:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "config_values")}
    return {"program": "goodred", "version": __version__, "command": args.command, "flags": flags}


def _emit(obj, args) -> None:
    sys.stdout.write(json.dumps({"header": _header(args), **obj}, sort_keys=False) + "\n")


def _load_census(path: str) -> Census:
    if not path:
        raise PreconditionError("--census is required")
    if not os.path.exists(path):
        raise PreconditionError(f"census file not found: {path}")
    return read_census_csv(path)


def cmd_good_d(args) -> int:
    D = int(args.max_d)
    r_max = int(args.r_max) if args.r_max is not None else max(DEFAULT_MIN_R_MAX, D)
    if D < 0 or r_max < 0:
        raise PreconditionError("--max-d and --r-max must be nonnegative")
    log.info("scanning |r| <= %d for |d| <= %d", r_max, D)
    census = enumerate_good_d(D, r_max, threads=args.threads) if D > 0 else Census([], max_d=0, r_max=r_max)
    hdr = {"command": "good-d", "max_d": D, "r_max": r_max, "version": __version__}
    if args.out in (None, "-"):
        write_census_csv(census, sys.stdout, header=hdr)
    else:
        write_census_csv(census, args.out, header=hdr)
    grid = sorted({D} | {g for g in (10, 100, 1000, 10000, 50000) if g < D}) if D > 0 else [0]
    curve = good_count_curve(census.records, grid)
    violations = assumption_violations(census.records)
    summary = {
        "G": [{"D": d, "G": g, "bound_5D^0.35": g12(assumption_bound(d)) if d else 0.0} for d, g in curve],
        "assumption_holds": not violations,
        "incomplete": census.incomplete,
        "degenerate_d": [rec.d for rec in census.records if rec.degenerate],
    }
    if args.out in (None, "-"):
        sys.stderr.write(json.dumps(summary) + "\n")
    else:
        _emit(summary, args)
    return EXIT_OK


def cmd_constants(args) -> int:
    census = _load_census(args.census)
    rep = constant_report(census, args.which, Q=int(args.q), d_min=int(args.d_min), d_max=int(args.d_max), tail_from=int(args.tail_from))
    _emit(rep.as_json(), args)
    return EXIT_PRECONDITION if rep.incomplete else EXIT_OK


def cmd_setzer_count(args) -> int:
    census = _load_census(args.census)
    x = parse_number(str(args.x))
    fc = count_R_I(x, census)
    _emit({**fc.as_json(), "incomplete": fc.incomplete}, args)
    return EXIT_PRECONDITION if fc.incomplete else EXIT_OK


def cmd_kappa(args) -> int:
    res = kappa_prime(int(args.p_max))
    _emit(res.as_json(), args)
    return EXIT_OK


def cmd_lcm_exp(args) -> int:
    grid = [parse_number(g) for g in str(args.grid).split(",") if g.strip()]
    S = build_tight_set(float(args.kappa), grid, squarefree_only=args.squarefree_only)
    n = int(args.x_points)
    xs = [int(g) for g in grid] if n <= 0 else log_spaced(grid[0], grid[-1], n)
    counts = count_lcm_pairs_many(S, xs)
    slope = fit_sparsity_exponent(list(zip(xs, counts)))
    out = sys.stdout
    out.write("# " + json.dumps(_header(args)) + "\n")
    out.write(f"# size={len(S)} declared_beta={g12(S.declared_beta)}\n")
    out.write("x,count,fitted_slope\n")
    for x, c in zip(xs, counts):
        out.write(f"{x},{c},{g12(slope)}\n")
    return EXIT_OK


def cmd_abc_eps(args) -> int:
    k = parse_number(str(args.k))
    eps = explicit_abc_epsilon(k)
    _emit({"k": str(args.k), "epsilon": g12(eps), "nontrivial": eps < 0.2}, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goodred", description=__doc__)
    ap.add_argument("--config", help="key=value file with default option values")
    ap.add_argument("--threads", type=int, default=None, help="worker cap (default: logical cores)")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("good-d", help="census of good d")
    p.add_argument("--max-d", type=int, default=10000)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_good_d)

    p = sub.add_parser("constants", help="bounds for c_R or c_I")
    p.add_argument("--census")
    p.add_argument("--which", choices=("R", "I"), default="R")
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--d-min", type=int, default=D_MIN)
    p.add_argument("--d-max", type=int, default=D_MAX)
    p.add_argument("--tail-from", type=int, default=TAIL_FROM)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("setzer-count", help="R(x) and I(x)")
    p.add_argument("--x", default="20000")
    p.add_argument("--census")
    p.set_defaults(func=cmd_setzer_count)

    p = sub.add_parser("kappa", help="the constant kappa' with its components")
    p.add_argument("--p-max", type=int, default=10000)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("lcm-exp", help="pair-lcm counts for a tight sparse set")
    p.add_argument("--kappa", type=float, default=1 / 3)
    p.add_argument("--grid", default="7,49,2401,1e7")
    p.add_argument("--x-points", type=int, default=0, help="0 evaluates at the grid points")
    p.add_argument("--squarefree-only", action="store_true")
    p.set_defaults(func=cmd_lcm_exp)

    p = sub.add_parser("abc-eps", help="epsilon(k) of the explicit abc remark")
    p.add_argument("--k", default="10^141")
    p.set_defaults(func=cmd_abc_eps)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = load_config(known.config)
    # subparser defaults are what the config overrides; explicit flags still win
    for action in ap._subparsers._group_actions:  # noqa: SLF001
        for sp in action.choices.values():
            dests = {a.dest: a for a in sp._actions}  # noqa: SLF001
            sp.set_defaults(**{k: (dests[k].type(v) if dests[k].type else v) for k, v in values.items() if k in dests})
    top = {a.dest: a for a in ap._actions}  # noqa: SLF001
    ap.set_defaults(**{k: (top[k].type(v) if top[k].type else v) for k, v in values.items() if k in top and k != "config"})


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    ap = build_parser()
    try:
        _apply_config(ap, argv)
    except (OSError, PreconditionError, ValueError) as e:
        sys.stderr.write(f"goodred: {e}\n")
        return EXIT_PRECONDITION
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (PreconditionError, ValueError) as e:
        sys.stderr.write(f"goodred: {e}\n")
        return EXIT_PRECONDITION
    except Exception:  # pragma: no cover
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
