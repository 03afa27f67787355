"""Command-line interface.

Subcommands map one-to-one onto the analysis operations: ratio, prepare,
sweep, optimize, window, wigner, validate.  Angles are radians by default
(--phi-degrees converts); every run is deterministic.  CSV output uses LF
line endings and 17-significant-digit floats so parsed values round-trip
exactly; JSON never contains NaN or infinities.

Exit codes: 0 success, 1 validation failure, 2 domain error, 3 I/O error.
"""

import argparse
import json
import math
import sys

from . import crosscheck, cv_core, optimize_sweep, protocol
from .errors import CatforgeError, DomainError
from .config import CROSSCHECK_TOL


def _fmt(v):
    return format(float(v), ".17g")


def _params(args):
    phi = math.radians(args.phi) if args.phi_degrees else args.phi
    return protocol.ProtocolParams(args.alpha0, phi)


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


def _csv(header, rows):
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload):
    # allow_nan=False turns non-finite numbers into an error instead of
    # emitting invalid JSON
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def cmd_ratio(args):
    p = _params(args)
    sep = protocol.separations(p)
    print(f"ratio_exact = {_fmt(protocol.coefficient_ratio(p))}")
    print(f"ratio_o1    = {_fmt(protocol.coefficient_ratio_small_angle(p))}")
    print(f"ratio_o2    = {_fmt(protocol.coefficient_ratio_second_order(p))}")
    print(f"d0          = {_fmt(sep.d0)}")
    print(f"d           = {_fmt(sep.d)}")
    return 0


def cmd_prepare(args):
    p = _params(args)
    r = protocol.report(p, args.x)
    payload = {
        "alpha0": r.alpha0,
        "phi": r.phi,
        "x": r.x,
        "vacuum_coeff": {"re": r.vacuum_coeff.real, "im": r.vacuum_coeff.imag},
        "cat_coeff": {"re": r.cat_coeff.real, "im": r.cat_coeff.imag},
        "ratio": r.ratio,
        "fidelity": r.fidelity,
        "density_at_x": r.density_at_x,
        "separations": {"d0": r.separations.d0, "d": r.separations.d},
    }
    _write_text(args.out, _json_text(payload))
    return 0


def cmd_sweep(args):
    grid = optimize_sweep.GridSpec(
        alpha0_min=args.alpha0_min, alpha0_max=args.alpha0_max,
        alpha0_steps=args.alpha0_steps,
        phi_min=args.phi_min, phi_max=args.phi_max, phi_steps=args.phi_steps)
    rows = optimize_sweep.sweep_ratio(grid)
    text = _csv("alpha0,phi,ratio_exact,ratio_o1,ratio_o2,d",
                [(r.alpha0, r.phi, r.ratio_exact, r.ratio_o1, r.ratio_o2, r.d)
                 for r in rows])
    _write_text(args.out, text)
    return 0


def cmd_optimize(args):
    phi = math.radians(args.phi) if args.phi_degrees else args.phi
    exact = optimize_sweep.find_min_alpha(
        phi, args.k, validate_numeric=not args.no_validate)
    approx = protocol.vacuum_null_alpha_approx(phi)
    p = protocol.ProtocolParams(exact, phi)
    print(f"alpha_min_exact       = {_fmt(exact)}")
    print(f"alpha_min_first_order = {_fmt(approx)}")
    print(f"relative_gap          = {_fmt(abs(approx - exact) / exact)}")
    print(f"ratio_at_min          = {_fmt(protocol.coefficient_ratio(p))}")
    print(f"output_separation_d   = {_fmt(protocol.separations(p).d)}")
    return 0


def cmd_window(args):
    p = _params(args)
    eps = sorted(float(e) for e in args.epsilons.split(","))
    rows = optimize_sweep.window_tradeoff(p, eps)
    if args.format == "json":
        payload = [{"epsilon": e, "probability": pr, "fidelity": f}
                   for e, pr, f in rows]
        _write_text(args.out, _json_text(payload))
    else:
        _write_text(args.out, _csv("epsilon,probability,fidelity", rows))
    return 0


def cmd_wigner(args):
    p = _params(args)
    if args.state == "cat":
        state = protocol.ideal_cat(p, require_cat=True)
    else:
        state = protocol.conditional_state(p, args.x)
    if args.half_extent is None:
        extent = max(abs(a) for a in state.amplitudes()) + 5.0
    else:
        extent = args.half_extent
    axis = [(-extent + 2.0 * extent * i / (args.points - 1))
            for i in range(args.points)]
    w = cv_core.wigner_grid(state, axis, axis)
    rows = [(x, y, w[i, j])
            for i, x in enumerate(axis) for j, y in enumerate(axis)]
    _write_text(args.out, _csv("x,y,w", rows))
    return 0


def cmd_validate(args):
    alpha0s = [float(v) for v in args.alpha0_values.split(",")]
    phis = [float(v) for v in args.phi_values.split(",")]
    max_dev, worst, devs = crosscheck.crosscheck_grid(
        alpha0s=alpha0s, phis=phis, cap=args.max_fock)
    print(f"checked {len(devs)} analytic-vs-Fock deviations "
          f"over {len(alpha0s) * len(phis)} parameter points")
    print(f"max deviation = {max_dev:.3e} "
          f"({worst.quantity} at alpha0={worst.alpha0:g}, phi={worst.phi:g})")
    print(f"tolerance     = {args.tolerance:.3e}")
    if max_dev <= args.tolerance:
        print("validation PASSED")
        return 0
    print("validation FAILED")
    return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="catforge",
        description=("Conditional preparation of symmetric coherent-state "
                     "superpositions: closed-form analysis with an "
                     "independent Fock-basis cross-check."))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_point_args(sp):
        sp.add_argument("--alpha0", type=float, required=True,
                        help="source amplitude magnitude")
        sp.add_argument("--phi", type=float, required=True,
                        help="phase separation (radians unless --phi-degrees)")
        sp.add_argument("--phi-degrees", action="store_true",
                        help="interpret --phi in degrees")

    sp = sub.add_parser("ratio", help="branch-coefficient ratio and separations")
    add_point_args(sp)
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("prepare", help="JSON report of the conditioned state")
    add_point_args(sp)
    sp.add_argument("--x", type=float, default=0.0,
                    help="conditioning quadrature value (default 0)")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_prepare)

    sp = sub.add_parser("sweep", help="CSV sweep of the ratio formulas")
    sp.add_argument("--alpha0-min", type=float, default=0.0)
    sp.add_argument("--alpha0-max", type=float, default=5.0)
    sp.add_argument("--alpha0-steps", type=int, default=500)
    sp.add_argument("--phi-min", type=float, default=0.0)
    sp.add_argument("--phi-max", type=float, default=0.2)
    sp.add_argument("--phi-steps", type=int, default=500)
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("optimize", help="optimum source amplitude at fixed phi")
    sp.add_argument("--phi", type=float, required=True)
    sp.add_argument("--phi-degrees", action="store_true")
    sp.add_argument("--k", type=int, default=0, help="optimum branch index")
    sp.add_argument("--no-validate", action="store_true",
                    help="skip the bisection cross-check")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("window", help="finite-window probability/fidelity table")
    add_point_args(sp)
    sp.add_argument("--epsilons", default="1e-4,1e-2,1e-1,1",
                    help="comma-separated window half-widths")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_window)

    sp = sub.add_parser("wigner", help="Wigner function on a square grid (CSV)")
    add_point_args(sp)
    sp.add_argument("--x", type=float, default=0.0,
                    help="conditioning quadrature value (default 0)")
    sp.add_argument("--state", choices=("prepared", "cat"), default="prepared",
                    help="conditioned output state or the ideal cat")
    sp.add_argument("--half-extent", type=float, default=None,
                    help="grid half-extent (default: amplitude reach + 5)")
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_wigner)

    sp = sub.add_parser("validate", help="closed forms vs Fock oracle")
    sp.add_argument("--alpha0-values", default="0.5,1,2,3")
    sp.add_argument("--phi-values", default="0.05,0.1,0.5")
    sp.add_argument("--tolerance", type=float, default=CROSSCHECK_TOL)
    sp.add_argument("--max-fock", type=int, default=None,
                    help="override the Fock dimension cap")
    sp.set_defaults(func=cmd_validate)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CatforgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
