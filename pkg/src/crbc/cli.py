"""Command-line entry point: ``crbc region|limit|dmc-eval|verify``.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 no feasible point.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from crbc import acceptance
from crbc import dmc as d
from crbc import gaussian as g
from crbc.formats import FormatError, parse_tables, read_channel, read_factored
from crbc.frontier import AXES, SCHEMES, SweepConfig, trace_family
from crbc.info import InvalidDistributionError

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3

HEADER = ("scheme", "a", "alpha", "beta", "gamma", "nc", "re1", "re2")
HEADER_TWO_SIDED = ("scheme", "a1", "a2", "alpha", "beta1", "beta2", "nc1", "nc2", "re1", "re2")


class InputError(Exception):
    """Bad input detected after argument parsing; reported with exit code 2."""


# ----------------------------------------------------------------------------
# argument types


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a finite number > 0, got {text}")
    return v


def _positive_list(text: str) -> list[float]:
    return [_positive(t) for t in text.split(",") if t.strip()] or _fail(f"empty list {text!r}")


def _fail(msg: str):
    raise argparse.ArgumentTypeError(msg)


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        _fail(f"expected comma-separated integers, got {text!r}")
    if not vals or len(vals) > 3 or any(v < 2 for v in vals):
        _fail(f"expected 1 to 3 point counts, each >= 2, got {text!r}")
    return vals


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        _fail(f"expected 'lo,hi', got {text!r}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        _fail(f"need finite lo < hi, got {text!r}")
    return lo, hi


def _nc_policy(text: str):
    if text == "min":
        return "min"
    try:
        v = float(text)
    except ValueError:
        _fail(f"expected 'min' or a number >= 0, got {text!r}")
    if not (math.isfinite(v) and v >= 0):
        _fail(f"expected 'min' or a number >= 0, got {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        _fail(f"not an integer: {text!r}")
    if v < 0:
        _fail(f"must be >= 0, got {v}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        _fail(f"must be >= 1, got {v}")
    return v


# ----------------------------------------------------------------------------
# region


def _cell(x, precision: int) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x + 0.0:.{precision}f}".replace("-0." + "0" * precision, "0." + "0" * precision)


def _sweep_config(args) -> SweepConfig:
    grid = args.grid or []
    names = AXES[args.scheme]
    points = {"alpha_points": 101, "beta_points": 51, "gamma_points": 81}
    keys = {"alpha": "alpha_points", "beta": "beta_points", "beta1": "beta_points",
            "beta2": "beta_points", "gamma": "gamma_points"}
    axis_keys = list(dict.fromkeys(keys[n] for n in names))
    if len(grid) > len(axis_keys):
        raise InputError(f"--grid: {args.scheme} has {len(axis_keys)} grid axes ({', '.join(names)}), got {len(grid)} counts")
    for k, n in zip(axis_keys, grid):
        points[k] = n
    return SweepConfig(
        scheme=args.scheme,
        gamma_range=args.gamma_range,
        nc=args.nc,
        refine_passes=args.refine,
        workers=args.threads,
        printed=not args.errata,
        **points,
    )


def _region_rows(scheme: str, families: dict, precision: int) -> list[str]:
    lines = []
    for a, pts in families.items():
        for pt in sorted(pts, key=lambda p: (p.re1, -p.re2)):
            sp = pt.params
            if scheme == "prop5":
                cells = (scheme, *a, sp.alpha, sp.beta1, sp.beta2, sp.nc1, sp.nc2, pt.re1, pt.re2)
            else:
                cells = (scheme, a, sp.alpha, sp.beta, sp.gamma, sp.nc, pt.re1, pt.re2)
            lines.append(",".join(c if isinstance(c, str) else _cell(c, precision) for c in cells))
    return lines


def cmd_region(args, out=sys.stdout) -> int:
    scheme = args.scheme
    if scheme == "prop5":
        if args.a1 is None or args.a2 is None:
            raise InputError("--a1 and --a2 are required for prop5")
        if len(args.a1) != len(args.a2):
            raise InputError(f"--a1 and --a2 need the same number of values ({len(args.a1)} vs {len(args.a2)})")
        a_list = list(zip(args.a1, args.a2))
        params = g.TwoSidedGaussianParams(P=args.P, a1=a_list[0][0], a2=a_list[0][1], N1=args.N1, N2=args.N2)
    else:
        if args.a is None:
            raise InputError(f"--a is required for {scheme}")
        a_list = list(dict.fromkeys(args.a))
        params = g.GaussianCrbcParams(P=args.P, a=a_list[0], N1=args.N1, N2=args.N2)
    config = _sweep_config(args)
    families = trace_family(config, params, a_list)

    header = HEADER_TWO_SIDED if scheme == "prop5" else HEADER
    text = "\n".join([",".join(header), *_region_rows(scheme, families, args.precision)]) + "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        summary_stream = out
    else:
        out.write(text)
        summary_stream = sys.stderr

    total = 0
    for a, pts in families.items():
        total += len(pts)
        label = f"a1={a[0]:g} a2={a[1]:g}" if isinstance(a, tuple) else f"a={a:g}"
        if pts:
            print(
                f"{scheme} {label}: {len(pts)} frontier points, "
                f"max re1 {max(p.re1 for p in pts):.{args.precision}f}, "
                f"max re2 {max(p.re2 for p in pts):.{args.precision}f}",
                file=summary_stream,
            )
        else:
            print(f"{scheme} {label}: no feasible point", file=summary_stream)
    if scheme != "prop5":
        print(f"sato bound on re2: {g.gaussian_sato_bound(args.P, args.N1, args.N2):.{args.precision}f}", file=summary_stream)

    if args.plot and total:
        from crbc.plotting import plot_family

        hlines = [] if scheme == "prop5" else [(g.gaussian_sato_bound(args.P, args.N1, args.N2), "Sato bound")]
        plot_family(families, args.plot, title=f"{scheme}, P={args.P:g}, N1={args.N1:g}, N2={args.N2:g}", hlines=hlines)
        print(f"figure written to {args.plot}", file=summary_stream)
    return EXIT_OK if total else EXIT_INFEASIBLE


# ----------------------------------------------------------------------------
# limit


def cmd_limit(args, out=sys.stdout) -> int:
    lim = g.corollary1_limit(args.P, args.N1, args.N2)
    sato = g.gaussian_sato_bound(args.P, args.N1, args.N2)
    p = args.precision
    print(f"corollary1_limit {lim:.{p}f}", file=out)
    print(f"gaussian_sato_bound {sato:.{p}f}", file=out)
    return EXIT_OK


# ----------------------------------------------------------------------------
# dmc-eval


def _print_values(out, pairs, p: int) -> None:
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        print(f"{k:<{width}} {_cell(v, p) if not isinstance(v, str) else v}", file=out)


def _single_table(path: str, name: str) -> np.ndarray:
    with open(path) as fh:
        tables = parse_tables(fh.read(), path)
    if set(tables) != {name}:
        raise FormatError(path, 0, f"expected exactly one factor named {name!r}, found {sorted(tables)}")
    return tables[name]


def cmd_dmc_eval(args, out=sys.stdout) -> int:
    p = args.precision
    dmc_ = read_channel(args.channel)
    th = args.theorem
    if (th == 5) != dmc_.two_sided:
        raise InputError(f"--theorem {th} needs a {'dmc2' if th == 5 else 'dmc'} channel file")

    if th in (1, 4, 5):
        if not args.dist:
            raise InputError(f"--dist is required for theorem {th}")
        fj = read_factored(args.dist, th)
        ev = {1: d.eval_theorem1, 4: d.eval_theorem4, 5: d.eval_theorem5}[th](dmc_, fj)
        pairs = [("R1", ev.r1), ("R2", ev.r2), ("R_sum", ev.r_sum),
                 ("Re1_raw", ev.re1_raw), ("Re2_raw", ev.re2_raw), ("Re1", ev.re1), ("Re2", ev.re2)]
        for i, (s, ok) in enumerate(zip(ev.slacks, ev.constraint_satisfied), start=1):
            pairs.append((f"slack{i}", s))
            pairs.append((f"constraint{i}", "satisfied" if ok else "VIOLATED"))
        pairs.append(("feasible", "yes" if ev.feasible else "no"))
        _print_values(out, pairs, p)
        return EXIT_OK

    if th == 2:
        if not args.dist:
            raise InputError("--dist is required for theorem 2")
        aux = _single_table(args.dist, "paux")
        pt = d.eval_theorem2_point(dmc_, aux)
        _print_values(out, [("Re1_tilde", pt.re1_tilde), ("Re2_tilde", pt.re2_tilde),
                            ("Re1_bar", pt.re1_bar), ("Re2_bar", pt.re2_bar),
                            ("R1", pt.r1), ("R2", pt.r2), ("Re1", pt.re1), ("Re2", pt.re2)], p)
        return EXIT_OK

    # theorem 3
    if args.maximize:
        value, pmf = d.maximize_theorem3(dmc_, resolution=args.resolution, workers=args.threads)
        pairs = [("sato_bound_max", value)]
        pairs += [(f"p_xx1[{x},{x1}]", pmf[x, x1]) for x, x1 in np.ndindex(*pmf.shape)]
    else:
        src = args.input_dist or args.dist
        if not src:
            raise InputError("theorem 3 needs --input-dist <path> or --maximize")
        pairs = [("sato_bound", d.eval_theorem3(dmc_, _single_table(src, "pxx1")))]
    _print_values(out, pairs, p)
    return EXIT_OK


# ----------------------------------------------------------------------------
# verify


def cmd_verify(args, out=sys.stdout) -> int:
    if args.filter and not acceptance.select(args.filter):
        raise InputError(f"--filter {args.filter!r} matches no criterion")
    results = acceptance.run(args.filter, echo=lambda line: print(line, file=out, flush=True))
    print(acceptance.summary(results), file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crbc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="{region,limit,dmc-eval,verify}")

    def channel_flags(p, required=True):
        p.add_argument("--P", type=_positive, required=required, help="source power")
        p.add_argument("--N1", type=_positive, required=True, help="noise variance at user 1")
        p.add_argument("--N2", type=_positive, required=True, help="noise variance at user 2")

    def common(p):
        p.add_argument("--precision", type=_nonneg_int, default=6, help="decimal places (default 6)")

    r = sub.add_parser("region", help="frontier of an achievable equivocation region (CSV)")
    r.add_argument("--scheme", choices=SCHEMES, required=True)
    channel_flags(r)
    r.add_argument("--a", type=_positive_list, help="relay power ratio(s), comma-separated")
    r.add_argument("--a1", type=_positive_list, help="prop5: power ratio(s) of user 1's relay")
    r.add_argument("--a2", type=_positive_list, help="prop5: power ratio(s) of user 2's relay")
    r.add_argument("--grid", type=_int_list, help="grid point counts per axis: alpha[,beta[,gamma]]")
    r.add_argument("--gamma-range", type=_range, default=(-2.0, 2.0), help="lo,hi (default -2,2)")
    r.add_argument("--nc", type=_nc_policy, default="min", help="'min' (default) or a fixed compression noise")
    r.add_argument("--refine", type=_nonneg_int, default=20, help="refinement passes per frontier point")
    r.add_argument("--errata", action="store_true", help="prop5: use the symmetric corrected rate formulas")
    r.add_argument("--threads", type=_pos_int, default=None, help="worker threads (default CRBC_THREADS or all cores)")
    r.add_argument("--out", help="CSV path (default: standard output; summary goes to standard error)")
    r.add_argument("--plot", help="also render the frontiers to this image file")
    common(r)
    r.set_defaults(func=cmd_region)

    lim = sub.add_parser("limit", help="large-relay-power limit and the Sato-type bound")
    lim.add_argument("--P", type=_positive, required=True, help="source power")
    lim.add_argument("--N1", type=_positive, required=True)
    lim.add_argument("--N2", type=_positive, required=True)
    common(lim)
    lim.set_defaults(func=cmd_limit)

    e = sub.add_parser("dmc-eval", help="evaluate finite-alphabet bounds at given distributions")
    e.add_argument("--channel", required=True, help="channel file")
    e.add_argument("--theorem", type=int, choices=(1, 2, 3, 4, 5), required=True)
    e.add_argument("--dist", help="factored distribution file")
    e.add_argument("--input-dist", help="theorem 3: file with a 'pxx1' factor")
    e.add_argument("--maximize", action="store_true", help="theorem 3: maximise over the input pmf")
    e.add_argument("--resolution", type=_pos_int, default=64, help="theorem 3 grid resolution (default 64)")
    e.add_argument("--threads", type=_pos_int, default=None)
    common(e)
    e.set_defaults(func=cmd_dmc_eval)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--filter", help="run only criteria with this tag (gaussian, dmc, frontier, anchor) or number")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "maximize", False) and args.theorem != 3:
            parser.error("--maximize applies to --theorem 3 only")
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (InputError, FormatError, InvalidDistributionError, g.InvalidParameterError,
            d.MarkovViolationError, d.SizeCapError, OSError) as e:
        print(f"crbc {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
