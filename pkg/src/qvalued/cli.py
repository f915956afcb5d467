"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 failed verification, 4 computation
or input error.
"""
from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from .counterexample import verify_counterexample
from .errors import QValuedError
from .extend import ExtendOptions, nearest_point_extension, solve_one_point
from .instances import parse_config, parse_instance, serialize_instance
from .lipmap import lip_constant
from .qspace import g_distance
from .render import render_svg
from .search import lower_bound_search

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_COMPUTE = 0, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}\n")


def fmt(x):
    return f"{x:.12f}"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise QValuedError(f"{path}: {exc.strerror}") from None


def _point(text, m):
    try:
        p = np.array([float(t) for t in text.replace(",", " ").split()])
    except ValueError:
        raise QValuedError(f"--point: cannot parse {text!r}") from None
    if p.size != m or not np.all(np.isfinite(p)):
        raise QValuedError(f"--point: expected {m} finite numbers, got {text!r}")
    return p


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    parser = _Parser(prog="qvalued", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dist", help="G distance between two configuration files")
    p.add_argument("file_a")
    p.add_argument("file_b")

    p = sub.add_parser("lip", help="Lipschitz constant of an instance")
    p.add_argument("file")

    p = sub.add_parser("extend", help="optimal one-point extension")
    p.add_argument("file")
    p.add_argument("--point", help='extension point, e.g. "0 0" (default: the file\'s point)')
    p.add_argument("--heuristic", action="store_true",
                   help="allow profile descent when full enumeration is too large")
    p.add_argument("--nearest", action="store_true", help="copy the nearest anchor's value instead")

    p = sub.add_parser("verify-hexagon", help="certify the hexagon counterexample")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--grid", type=float, default=0.02, help="grid step of the certificate")

    p = sub.add_parser("search", help="random search for large extension ratios")
    for name in ("m", "n", "q", "k"):
        p.add_argument(f"--{name}", type=_positive_int, required=True)
    p.add_argument("--budget", type=_positive_int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--init", help="instance file (with point) to start from")
    p.add_argument("--save", help="write the best instance to this file")

    p = sub.add_parser("render", help="SVG drawing of a planar instance")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--point", help="extension point (default: the file's point)")
    return parser


def _cmd_dist(args, out):
    a = parse_config(_read(args.file_a))
    b = parse_config(_read(args.file_b))
    out.write(fmt(g_distance(a, b)) + "\n")
    return EXIT_OK


def _cmd_lip(args, out):
    fmap, _ = parse_instance(_read(args.file))
    out.write(fmt(lip_constant(fmap)) + "\n")
    return EXIT_OK


def _resolve_point(args, fmap, file_point):
    if args.point is not None:
        return _point(args.point, fmap.m)
    if file_point is None:
        raise QValuedError("no extension point: pass --point or add \"point\" to the file")
    return file_point


def _cmd_extend(args, out):
    fmap, file_point = parse_instance(_read(args.file))
    p = _resolve_point(args, fmap, file_point)
    if args.nearest:
        res = nearest_point_extension(fmap, p)
    else:
        res = solve_one_point(fmap, p, ExtendOptions(allow_heuristic=args.heuristic))
    out.write(f"stretch: {fmt(res.stretch)}\n")
    out.write(f"lower_bound: {fmt(res.lower_bound)}\n")
    out.write(f"lip: {fmt(lip_constant(fmap))}\n")
    out.write(f"status: {res.status}\n")
    out.write("active_anchors: " + " ".join(str(i) for i in res.active_anchors) + "\n")
    out.write("atoms:\n")
    for atom in res.value.atoms:
        out.write("  " + " ".join(fmt(c) for c in atom) + "\n")
    return EXIT_OK


def _cmd_verify(args, out):
    if not args.tol > 0 or args.tol > 1e-3:
        raise _UsageError("--tol must be in (0, 1e-3]\n")
    if not args.grid > 0:
        raise _UsageError("--grid must be positive\n")
    report = verify_counterexample(tol=args.tol, grid_step=args.grid)
    for claim in report.claims:
        mark = "PASS" if claim.passed else "FAIL"
        out.write(f"[{mark}] {claim.name}: {fmt(claim.value)} {claim.relation} {fmt(claim.threshold)}\n")
    out.write(f"lip_f: {fmt(report.lip_f)}\n")
    out.write(f"lower_bound: {fmt(report.min_stretch_lb)}\n")
    out.write(f"min_stretch: {fmt(report.min_stretch_found)}\n")
    out.write(f"constant_ratio: {fmt(report.constant_ratio)}\n")
    out.write(f"verdict: {report.verdict}\n")
    return EXIT_OK if report.verdict == "pass" else EXIT_VERIFY


def _cmd_search(args, out):
    init = None
    if args.init:
        fmap, p = parse_instance(_read(args.init))
        if p is None:
            raise QValuedError("--init file needs a \"point\"")
        init = (fmap, p)
    report = lower_bound_search(args.m, args.n, args.q, args.k, args.budget, args.seed, init=init)
    out.write(f"best_ratio: {fmt(report.best_ratio)}\n")
    out.write(f"evaluations: {report.evaluations}\n")
    out.write(f"rejected: {report.rejected}\n")
    out.write("history:\n")
    for it, ratio in report.history:
        out.write(f"  {it} {fmt(ratio)}\n")
    out.write("point: " + " ".join(fmt(c) for c in report.best_point) + "\n")
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            fh.write(serialize_instance(report.best_map, report.best_point))
    return EXIT_OK


def _cmd_render(args, out):
    fmap, file_point = parse_instance(_read(args.file))
    if fmap.m != 2 or fmap.n != 2:
        out.write(f"not renderable: m = {fmap.m}, n = {fmap.n} (only m = n = 2)\n")
        return EXIT_COMPUTE
    p = _point(args.point, 2) if args.point is not None else file_point
    candidate = None
    if p is not None:
        candidate = solve_one_point(fmap, p, ExtendOptions(allow_heuristic=True)).value
    svg = render_svg(fmap, p, candidate, title=args.file)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    out.write(f"wrote {args.out}\n")
    return EXIT_OK


COMMANDS = {
    "dist": _cmd_dist,
    "lip": _cmd_lip,
    "extend": _cmd_extend,
    "verify-hexagon": _cmd_verify,
    "search": _cmd_search,
    "render": _cmd_render,
}


def run_command(argv, out=None, err=None):
    """Run one command; returns the exit code. Output goes to ``out``/``err``."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (QValuedError, ValueError) as exc:
        err.write(f"qvalued: error: {exc}\n")
        return EXIT_COMPUTE


def capture(argv):
    """Run a command and return ``(code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
