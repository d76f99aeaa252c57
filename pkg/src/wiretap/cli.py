"""
Command-line entry point.

Subcommands: ``solve``, ``sweep``, ``compare-ne``, ``verify``, ``dump``.
Exit codes: 0 success, 1 failed verification, 2 unreadable or unwritable
file, 3 malformed channel file, 4 invalid power or flag value.
The default seed is read from ``WIRETAP_SEED`` when set.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import baselines, core, formats, montecarlo

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_MALFORMED, EXIT_INVALID = 0, 1, 2, 3, 4

VERIFY_CONFIGS = ((1, 1), (2, 1), (2, 2), (4, 2))
VERIFY_POWERS = (1.0, 4.0, 16.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _default_seed():
    raw = os.environ.get("WIRETAP_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def _float_list(text):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}")


def _methods(text):
    items = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in items if m not in montecarlo.METHODS]
    if bad or not items:
        raise argparse.ArgumentTypeError(
            f"methods must be among {','.join(montecarlo.METHODS)}")
    return tuple(items)


def _fail(code, msg):
    print(f"wiretap: {msg}", file=sys.stderr)
    return code


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxx Commands xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
def cmd_solve(args):
    try:
        ch, p_file = formats.read_channel_file(args.channel)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read {args.channel}: {exc.strerror}")
    except core.InvalidInputError as exc:
        return _fail(EXIT_MALFORMED, f"malformed channel file: {exc}")
    p = args.power if args.power is not None else p_file
    if p is None or not math.isfinite(p) or p < 0:
        return _fail(EXIT_INVALID, f"invalid power P={p}")

    sol = core.solve(ch, p)
    rows = [formats.ResultRow.at_power(
        "proposed", p, sol.rate, theta=sol.theta, lambda1=sol.lambda1,
        lambda2=sol.lambda2)]
    if args.oracle:
        g = baselines.grid_oracle(
            ch, p, baselines.GridSpec(args.grid, args.grid))
        rows.append(formats.ResultRow.at_power(
            "grid_oracle", p, g.rate, theta=g.theta, lambda1=g.lambda1,
            lambda2=g.lambda2))
    if args.baselines:
        rows.append(formats.ResultRow.at_power(
            "gsvd_ep", p, baselines.gsvd_ep_rate(ch, p)))
        rows.append(formats.ResultRow.at_power(
            "gsvd_op", p, baselines.gsvd_op_rate(ch, p)))
    if args.dump:
        try:
            formats.write_channel_file(args.dump, ch, p)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot write {args.dump}: {exc.strerror}")
    sys.stdout.write(formats.format_rows(rows))
    return EXIT_OK


def _config(args, n_e):
    try:
        return montecarlo.ExperimentConfig(
            n_r=args.nr, n_e=n_e, trials=args.trials,
            power_grid=tuple(args.powers), seed=args.seed,
            methods=args.methods,
            grid=baselines.GridSpec(args.grid, args.grid))
    except core.InvalidInputError as exc:
        raise SystemExit(_fail(EXIT_INVALID, str(exc)))


def _emit(args, rows, series):
    try:
        _write_text(args.out, formats.format_rows(rows))
        if args.svg:
            _write_text(args.svg, formats.render_svg(series))
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write output: {exc.strerror}")
    return EXIT_OK


def cmd_sweep(args):
    res = montecarlo.run_sweep(_config(args, args.ne), workers=args.workers)
    series = [(m, 10 * np.log10(res.powers), res.mean[i])
              for i, m in enumerate(res.methods)]
    return _emit(args, formats.sweep_rows(res), series)


def cmd_compare_ne(args):
    base = _config(args, 0)
    results = montecarlo.compare_antennas(base, args.ne_list,
                                          workers=args.workers)
    rows, series = [], []
    for ne, res in zip(args.ne_list, results):
        rows += formats.sweep_rows(res, label=f"ne={ne}")
        for i, m in enumerate(res.methods):
            series.append((f"{m} ne={ne}", 10 * np.log10(res.powers),
                           res.mean[i]))
    return _emit(args, rows, series)


def verification_cases(n, seed):
    """Deterministic ``(index, trial_seed, channel, P)`` test cases."""
    for i in range(n):
        n_r, n_e = VERIFY_CONFIGS[i % len(VERIFY_CONFIGS)]
        p = VERIFY_POWERS[(i // len(VERIFY_CONFIGS)) % len(VERIFY_POWERS)]
        ts = montecarlo.trial_seed(seed, i)
        yield i, ts, montecarlo.sample_channel(n_r, n_e, ts), p


def run_checks(cases, tolerance, seed, grid_points=2001):
    """
    Cross-module invariant checks on seeded random cases.

    Returns ``{check_name: first_failure_or_None}``; a failure is a
    human-readable description including the trial seed.
    """
    spec = baselines.GridSpec(grid_points, grid_points)
    failures = {"oracle_dominance": None, "symmetry": None,
                "stationarity": None, "ordering": None}

    def record(name, i, ts, ch, p, detail):
        if failures[name] is None:
            failures[name] = (f"case={i} trial_seed={ts} n_r={ch.n_r} "
                              f"n_e={ch.n_e} P={p:g}: {detail}")

    for i, ts, ch, p in verification_cases(cases, seed):
        gh, gg = ch.grams()
        sol = core.solve(ch, p)
        g = baselines.grid_oracle(ch, p, spec)
        if not abs(sol.rate - g.rate) <= tolerance:
            record("oracle_dominance", i, ts, ch, p,
                   f"solve={sol.rate:.12g} grid={g.rate:.12g}")

        rng = np.random.default_rng(ts)
        l1, l2 = rng.uniform(0, p, 2)
        th = rng.uniform(0, math.pi)
        w = core.objective_w(core.lemma1_coefficients(gh, gg, l1, l2), th)
        w_sw = core.objective_w(core.lemma1_coefficients(gh, gg, l2, l1),
                                th + math.pi / 2)
        if not abs(w - w_sw) <= 1e-12 * max(1.0, w):
            record("symmetry", i, ts, ch, p, f"|dW|={abs(w - w_sw):.3g}")

        coeffs = core.lemma1_coefficients(gh, gg, l1, l2)
        t = core.optimal_theta(coeffs)
        resid = coeffs.a * math.sin(2 * t) + coeffs.b * math.cos(2 * t) + coeffs.c
        h = 1e-4
        d2 = (core.objective_w(coeffs, t + h) - 2 * core.objective_w(coeffs, t)
              + core.objective_w(coeffs, t - h)) / h ** 2
        if not (abs(resid) <= 1e-9 and d2 <= 1e-6):
            record("stationarity", i, ts, ch, p,
                   f"residual={resid:.3g} d2W={d2:.3g}")

        op = baselines.gsvd_op_rate(ch, p)
        ep = baselines.gsvd_ep_rate(ch, p)
        if not (sol.rate + 1e-9 >= op >= ep - 1e-9):
            record("ordering", i, ts, ch, p,
                   f"proposed={sol.rate:.12g} op={op:.12g} ep={ep:.12g}")
    return failures


def cmd_verify(args):
    if args.cases == 0:
        print("warning: --cases 0, nothing to check", file=sys.stderr)
    failures = run_checks(args.cases, args.tolerance, args.seed, args.grid)
    for name, fail in failures.items():
        if fail is None:
            print(f"PASS {name} ({args.cases} cases)")
        else:
            print(f"FAIL {name} {fail}")
    return EXIT_FAIL if any(failures.values()) else EXIT_OK


def cmd_dump(args):
    if args.channel:
        try:
            ch, p = formats.read_channel_file(args.channel)
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot read {args.channel}: {exc.strerror}")
        except core.InvalidInputError as exc:
            return _fail(EXIT_MALFORMED, f"malformed channel file: {exc}")
    else:
        if args.nr < 1 or args.ne < 0:
            return _fail(EXIT_INVALID, "need --nr >= 1 and --ne >= 0")
        ts = montecarlo.trial_seed(args.seed, args.trial)
        ch, p = montecarlo.sample_channel(args.nr, args.ne, ts), None
    if args.power is not None:
        p = args.power
    try:
        _write_text(args.out, formats.dumps_channel(ch, p))
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write {args.out}: {exc.strerror}")
    return EXIT_OK


# xxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx
def build_parser():
    parser = _Parser(prog="wiretap", description=(
        "Secrecy capacity of the two-transmit-antenna Gaussian MIMO "
        "wiretap channel."))
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one channel file")
    p.add_argument("channel", help="JSON channel file with H, optional G, P")
    p.add_argument("-P", "--power", type=float, help="overrides P in file")
    p.add_argument("--oracle", action="store_true", help="add grid-oracle row")
    p.add_argument("--baselines", action="store_true",
                   help="add GSVD-EP and GSVD-OP rows")
    p.add_argument("--grid", type=int, default=2001,
                   help="grid points per axis for --oracle")
    p.add_argument("--dump", metavar="PATH",
                   help="also write the parsed channel to PATH")
    p.set_defaults(func=cmd_solve)

    def sweep_flags(q):
        q.add_argument("--nr", type=int, default=2)
        q.add_argument("--trials", type=int, default=1000)
        q.add_argument("--seed", type=int, default=_default_seed())
        q.add_argument("--powers", type=_float_list,
                       default=list(montecarlo.DEFAULT_POWERS),
                       help="comma-separated linear powers")
        q.add_argument("--methods", type=_methods, default=("proposed",),
                       help="comma-separated subset of "
                            + ",".join(montecarlo.METHODS))
        q.add_argument("--grid", type=int, default=2001,
                       help="grid points per axis for grid_oracle")
        q.add_argument("--workers", type=int, default=1)
        q.add_argument("--out", default="-", help="CSV path (default stdout)")
        q.add_argument("--svg", help="also write an SVG chart here")

    p = sub.add_parser("sweep", help="rate versus power, averaged over trials")
    sweep_flags(p)
    p.add_argument("--ne", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare-ne", help="sweeps for several n_e")
    sweep_flags(p)
    p.add_argument("--ne-list", type=_int_list, default=[0, 1, 2, 4, 8, 16])
    p.set_defaults(func=cmd_compare_ne)

    p = sub.add_parser("verify", help="run invariant checks on random cases")
    p.add_argument("--cases", type=int, default=12)
    p.add_argument("--tolerance", type=float, default=1e-3,
                   help="solver vs grid-oracle tolerance in bits")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--grid", type=int, default=2001)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump", help="write a channel file")
    p.add_argument("--channel", help="re-emit this channel file")
    p.add_argument("--nr", type=int, default=2)
    p.add_argument("--ne", type=int, default=1)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("-P", "--power", type=float)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_dump)
    return parser


def _validate(args):
    for name in ("trials", "workers", "grid", "cases"):
        val = getattr(args, name, None)
        if val is not None and val < (0 if name == "cases" else 1):
            return f"--{name} must be positive"
    if getattr(args, "grid", 2) < 2:
        return "--grid must be >= 2"
    for name in ("nr", "ne"):
        val = getattr(args, name, None)
        if val is not None and val < (1 if name == "nr" else 0):
            return f"--{name} out of range"
    if any(n < 0 for n in getattr(args, "ne_list", []) or []):
        return "--ne-list entries must be >= 0"
    tol = getattr(args, "tolerance", None)
    if tol is not None and not tol >= 0:
        return "--tolerance must be >= 0"
    return None


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:   # usage errors and --help
        return exc.code
    problem = _validate(args)
    if problem:
        return _fail(EXIT_INVALID, problem)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
