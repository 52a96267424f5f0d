"""Command line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 infeasible input or failed
precondition, 3 verification failure. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .complements import naimark_complement, spatial_complement
from .completion import shift_completion, tight_completion
from .errors import (
    DimensionMismatchError,
    FusionFrameError,
    InfeasibleError,
    InvariantViolationError,
    ParseError,
    PreconditionError,
    SingularOperatorError,
)
from .model import BASIS_TOL, validate
from .numerics import ORTHO_TOL, SPECTRAL_TOL
from .reconstruct import Reconstructor, measure
from .tetris import (
    Violation,
    check_feasibility_integer,
    check_feasibility_real,
    ffcie,
    ffcre,
)

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"fusionframes: {msg}", file=sys.stderr)


def _tol(args, default: float) -> float:
    return default if args.tol is None else args.tol


def cmd_construct(args) -> int:
    spec = io.load_spectrum(args.spectrum, check_fac=False)
    if args.mode == "integer":
        violations = check_feasibility_integer(spec)
    else:
        violations = check_feasibility_real(spec)
        if violations and not check_feasibility_integer(spec):
            violations = []
    if args.mode == "frame" and spec.subspace_dim != 1:
        violations.append(Violation("frame_mode", f"frame mode needs subspace_dim = 1, got {spec.subspace_dim}"))
    if violations:
        raise InfeasibleError(violations)
    tm, ff = (ffcie if args.mode == "integer" else ffcre)(spec)
    io.save_frame(ff, args.out)
    if args.matrix:
        io.save_matrix(tm.W, args.matrix)
    else:
        sys.stdout.write(io.matrix_to_text(tm.W))
    return EXIT_OK


def _print_report(rep) -> None:
    lo, hi = rep.optimal_bounds
    print("spectrum: " + " ".join(io.fmt(x) for x in rep.spectrum))
    print(f"optimal bounds: A = {io.fmt(lo)}, B = {io.fmt(hi)}")
    print(f"fusion frame: {rep.is_fusion_frame}  tight: {rep.is_tight}  parseval: {rep.is_parseval}")
    print("dims: " + " ".join(str(d) for d in rep.dims))
    print("weights: " + " ".join(io.fmt(w) for w in rep.weights))
    print(f"chordal distance squared ({rep.chordal_convention}):")
    for row in rep.chordal_sq:
        print("  " + " ".join(f"{x:.6g}" for x in row))
    for k, v in rep.residuals.items():
        print(f"residual {k}: {v:.3e}")


def cmd_verify(args) -> int:
    ff = io.load_frame(args.frame, _tol(args, BASIS_TOL))
    rep = validate(ff, _tol(args, SPECTRAL_TOL))
    if args.json:
        sys.stdout.write(io.report_to_json(rep))
    else:
        _print_report(rep)
    return EXIT_OK if rep.is_fusion_frame else EXIT_VERIFY


def cmd_complement(args) -> int:
    ff = io.load_frame(args.frame, _tol(args, BASIS_TOL))
    tol = _tol(args, SPECTRAL_TOL)
    if args.kind == "spatial":
        out = spatial_complement(ff, tol)
    else:
        out = naimark_complement(ff, tol).frame
    io.save_frame(out, args.out)
    return EXIT_OK


def cmd_complete(args) -> int:
    ff = io.load_frame(args.frame, _tol(args, BASIS_TOL))
    if args.kind == "shifts":
        io.save_frame(shift_completion(ff.subspaces), args.out)
        return EXIT_OK
    tc = tight_completion(ff, A=args.A, search=args.search, tol=_tol(args, SPECTRAL_TOL))
    io.save_frame(tc.added, args.out_added)
    io.save_frame(tc.combined, args.out_combined)
    print(f"A = {tc.A}")
    print(f"N0 = {tc.N0}")
    print(f"added = {tc.num_added}")
    print(f"tightness residual = {tc.tightness_residual:.3e}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    ff = io.load_frame(args.frame, _tol(args, BASIS_TOL))
    f = io.load_vector(args.signal)
    rec = Reconstructor(ff, _tol(args, ORTHO_TOL))
    g = rec(measure(ff, f, "reduced" if args.reduced else "full"))
    sys.stdout.write(io.vector_to_text(g))
    res = float(np.linalg.norm(g - f)) / max(float(np.linalg.norm(f)), np.finfo(float).tiny)
    print(f"residual: {res:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusionframes", description=__doc__.splitlines()[0])
    p.add_argument("--tol", type=float, default=None,
                   help="override the default tolerance of every numeric check")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a fusion frame with a prescribed spectrum")
    c.add_argument("--spectrum", required=True)
    c.add_argument("--mode", choices=["integer", "real", "frame"], default="real")
    c.add_argument("--out", required=True, help="fusion frame document to write")
    c.add_argument("--matrix", help="CSV file for the tetris matrix (stdout if omitted)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="report spectrum, bounds and chordal distances")
    v.add_argument("--frame", required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("complement", help="spatial or Naimark complement")
    k.add_argument("kind", choices=["spatial", "naimark"])
    k.add_argument("--frame", required=True)
    k.add_argument("--out", required=True)
    k.set_defaults(func=cmd_complement)

    t = sub.add_parser("complete", help="tight completion or shift completion")
    tk = t.add_subparsers(dest="kind", required=True)
    tt = tk.add_parser("tight")
    tt.add_argument("--frame", required=True)
    tt.add_argument("--A", type=int, default=None)
    tt.add_argument("--search", action="store_true",
                    help="try larger admissible constants until the complement is realizable")
    tt.add_argument("--out-added", required=True)
    tt.add_argument("--out-combined", required=True)
    ts = tk.add_parser("shifts")
    ts.add_argument("--frame", required=True)
    ts.add_argument("--out", required=True)
    t.set_defaults(func=cmd_complete)

    r = sub.add_parser("reconstruct", help="measure a signal and reconstruct it")
    r.add_argument("--frame", required=True)
    r.add_argument("--signal", required=True)
    r.add_argument("--reduced", action="store_true")
    r.set_defaults(func=cmd_reconstruct)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        _err("infeasible")
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (PreconditionError, SingularOperatorError) as exc:
        _err(f"precondition failed: {exc}")
        return EXIT_PRECONDITION
    except (OSError, ParseError, InvariantViolationError, DimensionMismatchError) as exc:
        _err(str(exc))
        return EXIT_IO
    except FusionFrameError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
