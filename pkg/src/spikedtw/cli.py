"""Command-line front end.

Subcommands: ``sample``, ``couple``, ``cdf`` and ``verify``. Every flag can
also come from a ``key = value`` file given with ``--config`` (flags on the
command line win). The default seed is read from ``SPIKEDTW_SEED``.

Exit status: 0 success, 1 numerical check failure, 2 usage error.
"""
import argparse
import math
import os
import sys
import time

import numpy as np

from . import routes, verify
from .painleve import PainleveError
from .pde import PdeError, PdeGrid
from .riccati import DiffusionConfig
from .tables import DistributionTable, fmt_real, parse_real

SEED_ENV = "SPIKEDTW_SEED"


class UsageError(Exception):
    pass


def _real(s):
    try:
        return parse_real(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")


def _real_list(s):
    return [_real(t) for t in str(s).replace(",", " ").split()]


def x_grid(spec):
    """``a:b:h`` (inclusive range) or a comma-separated list."""
    if ":" in spec:
        try:
            a, b, h = (float(t) for t in spec.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range {spec!r}; use start:stop:step")
        if h <= 0 or b < a:
            raise argparse.ArgumentTypeError("range needs step > 0 and stop >= start")
        return np.round(np.arange(a, b + 0.5 * h, h), 12)
    return np.array(_real_list(spec))


def default_seed():
    v = os.environ.get(SEED_ENV)
    if v is None:
        return 0
    try:
        return int(v)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={v!r} is not an integer")


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment."""
    out = []
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}")
    for num, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        k, v = (t.strip() for t in line.split("=", 1))
        out.append((k.replace("_", "-"), v))
    return out


def _config_argv(pairs, flags):
    argv = []
    for k, v in pairs:
        if k == "config":
            continue
        if k not in flags:
            raise UsageError(f"unknown config key {k!r}")
        if flags[k] == 0:
            if v.lower() in ("1", "true", "yes", "on"):
                argv.append("--" + k)
            elif v.lower() not in ("0", "false", "no", "off"):
                raise UsageError(f"config key {k!r} takes true/false")
        else:
            argv.append(f"--{k}={v}")
    return argv


def _model_args(p):
    p.add_argument("model", choices=routes.MODELS)
    p.add_argument("--beta", type=_real, default=2.0)
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--p", type=int, default=None, help="defaults to n")
    p.add_argument("--m", type=float, default=10.0, help="airy: scale factor")
    p.add_argument("--len", dest="size", type=int, default=600, help="airy: matrix size")
    p.add_argument("--samples", type=int, default=5000)


def build_parser():
    ap = argparse.ArgumentParser(prog="spikedtw", description=__doc__.split("\n")[0])
    ap.add_argument("--config", help="key = value file mirroring the flags")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="ECDF of scaled top eigenvalues of one model")
    _model_args(s)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--w", type=_real, default=math.inf)
    g.add_argument("--ell", type=_real, help="laguerre: spike instead of w")
    g.add_argument("--mu", type=_real, help="hermite: shift instead of w")
    s.add_argument("--k", type=int, default=1)

    c = sub.add_parser("couple", help="coupled top eigenvalues over several w")
    _model_args(c)
    c.add_argument("--w", type=_real_list, default=[math.inf, 1.0, 0.0, -1.0],
                   help="comma-separated list")

    d = sub.add_parser("cdf", help="tabulate F by the sde, pde or painleve route")
    d.add_argument("method", choices=("sde", "pde", "painleve"))
    d.add_argument("--beta", type=_real, default=2.0)
    d.add_argument("--w", type=_real, default=math.inf)
    d.add_argument("--k", type=int, default=1)
    d.add_argument("--x", type=x_grid, default=x_grid("-4:2:0.5"), help="start:stop:step or list")
    d.add_argument("--paths", type=int, default=20000, help="sde paths per point")
    d.add_argument("--step", type=float, default=1e-3, help="sde step")
    d.add_argument("--dx", type=float, default=PdeGrid.dx)
    d.add_argument("--dw", type=float, default=PdeGrid.dw)

    v = sub.add_parser("verify", help="run the cross-route check battery")
    v.add_argument("--suite", default="all",
                   help="comma-separated subset of: " + ", ".join(verify.SUITES))
    v.add_argument("--quick", action="store_true", help="smaller diffusion runs")

    for p in (s, c, d, v):
        p.add_argument("--seed", type=int, default=None, help=f"default ${SEED_ENV} or 0")
        p.add_argument("--out", help="write output here instead of stdout")
    return ap, {"sample": s, "couple": c, "cdf": d, "verify": v}


def _flags(parser):
    out = {}
    for a in parser._actions:
        for opt in a.option_strings:
            if opt.startswith("--"):
                out[opt[2:]] = a.nargs if a.nargs is not None else 1
    return out


_VALUE_FLAGS = ("--x", "--w", "--ell", "--mu", "--beta")


def _glue_negative(argv):
    """``--x -1,0`` becomes ``--x=-1,0`` so argparse does not read an option."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-" \
                and argv[i + 1][1:2] in set("0123456789.i"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def parse(argv):
    ap, subs = build_parser()
    argv = _glue_negative(argv)
    args = ap.parse_args(argv)
    if args.config:
        pairs = read_config(args.config)
        sp = subs[args.command]
        pos = argv.index(args.command)
        argv = argv[:pos + 1] + _config_argv(pairs, _flags(sp)) + argv[pos + 1:]
        args = ap.parse_args(argv)
    if args.seed is None:
        args.seed = default_seed()
    return args


def _spec(args):
    p = args.p if args.p is not None else args.n
    return routes.ModelSpec(args.model, args.beta, n=args.n, p=p, m=args.m, size=args.size)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sample(args):
    spec = _spec(args)
    w = args.w
    if args.ell is not None:
        if spec.model != "laguerre":
            raise UsageError("--ell applies to the laguerre model")
        if not args.ell > 0:
            raise ValueError(f"spike ell={args.ell} must be positive")
        from .edge import laguerre_w_for_spike
        w = laguerre_w_for_spike(spec.n, spec.p, args.ell)
    if args.mu is not None:
        if spec.model != "hermite":
            raise UsageError("--mu applies to the hermite model")
        from .edge import hermite_w_for_shift
        w = hermite_w_for_shift(spec.n, args.mu)
    vals = routes.scaled_top(spec, [w], args.k, args.samples, args.seed)
    t = DistributionTable()
    for j in range(args.k):
        t.extend(routes.ecdf_table(spec, w, vals[:, 0, j], j + 1))
    return t.to_csv(), 0


def cmd_couple(args):
    spec = _spec(args)
    ws = args.w
    vals = routes.scaled_top(spec, ws, 1, args.samples, args.seed)[:, :, 0]
    bad = routes.monotonicity_violations(vals, ws) if len(ws) > 1 else 0
    lines = ["sample," + ",".join("w=" + fmt_real(w) for w in ws)]
    for i, row in enumerate(vals):
        lines.append(f"{i}," + ",".join(fmt_real(v) for v in row))
    print(f"monotonicity violations: {bad} of {len(vals)} samples", file=sys.stderr)
    return "\n".join(lines) + "\n", 1 if bad else 0


def cmd_cdf(args):
    if args.method == "painleve" and args.beta not in (2.0, 4.0):
        raise UsageError("the painleve route is available for beta = 2 and 4 only")
    grid = PdeGrid(dx=args.dx, dw=args.dw)
    cfg = DiffusionConfig(beta=args.beta, step=args.step)
    t = routes.cdf_table(args.method, args.beta, args.w, args.k, args.x, n_paths=args.paths,
                         seed=args.seed, grid=grid, diffusion=cfg)
    return t.to_csv(), 0


def cmd_verify(args):
    suites = None if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    for s in suites or []:
        if s not in verify.SUITES:
            raise UsageError(f"unknown suite {s!r}")
    settings = verify.Settings.quick(args.seed) if args.quick else verify.Settings(seed=args.seed)
    t0 = time.time()
    log = (lambda line: print(line, file=sys.stderr, flush=True)) if args.out else None
    report = verify.run(suites, settings, log=log)
    text = report.render() + f"elapsed {time.time() - t0:.1f} s\n"
    return text, 0 if report.passed else 1


COMMANDS = {"sample": cmd_sample, "couple": cmd_couple, "cdf": cmd_cdf, "verify": cmd_verify}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse(argv)
        text, code = COMMANDS[args.command](args)
    except SystemExit as e:  # argparse
        return int(e.code or 0)
    except (UsageError, ValueError) as e:
        print(f"spikedtw: error: {e}", file=sys.stderr)
        return 2
    except (PainleveError, PdeError, FloatingPointError) as e:
        print(f"spikedtw: numerical failure: {e}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
