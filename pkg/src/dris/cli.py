"""Command-line entry point.

Exit codes: 0 success, 2 input or decode error, 3 physics-domain error
(evanescent ray, total internal reflection), 4 search-size cap refusal.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys

import numpy as np

from . import codes, materials, optics, panel, steering
from .exceptions import (
    DecodeError,
    DomainError,
    EvanescentError,
    SizeCapError,
    TotalInternalReflectionError,
)
from .io import load_spec, problem_from_dict, read_bits, stack_from_dict, write_csv

EXIT_OK, EXIT_INPUT, EXIT_PHYSICS, EXIT_CAP = 0, 2, 3, 4


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _spec(args):
    if args.paper_example:
        return panel.reference_spec()
    if args.spec is None:
        raise DecodeError("either --spec or --paper-example is required")
    return load_spec(args.spec)


def _bits(args):
    if args.bits is not None and args.bits_file is not None:
        raise DecodeError("give either --bits or --bits-file, not both")
    if args.bits_file is not None:
        return read_bits(args.bits_file)
    if args.bits is None:
        raise DecodeError("either --bits or --bits-file is required")
    return codes.clean_bits(args.bits)


def _sweep(lo, hi, step):
    if step <= 0:
        raise DomainError("sweep step must be positive")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(max(count, 0))]


def cmd_decode(args):
    spec = _spec(args)
    grid = codes.decode_sequence(_bits(args), spec)
    types = codes.distinct_types(grid)
    with _output(args.out) as fh:
        if args.format == "json":
            json.dump(
                {
                    "grid": [list(r) for r in grid.words],
                    "types": [{"index": t.index, "word": t.word, "theta_rad": t.theta, "beta": t.beta} for t in types],
                },
                fh,
            )
            fh.write("\n")
        else:
            fh.write(f"grid {spec.m}x{spec.n}, k={spec.k}\n")
            for row in grid.words:
                fh.write(" ".join(row) + "\n")
            fh.write(f"{len(types)} distinct types\n")
            for t in types:
                fh.write(f"  type {t.index} word {t.word} theta {t.theta / math.pi:.6g}*pi rad beta {t.beta:.6g}\n")
    return EXIT_OK


def _pattern_rows(bs, step_deg, lobe_order):
    degs = _sweep(0.0, 360.0 - step_deg, step_deg)
    gains = panel.pattern_sample(bs, np.deg2rad(degs), lobe_order)
    with np.errstate(divide="ignore"):
        dbs = 10.0 * np.log10(gains)
    return [(d, g, db) for d, g, db in zip(degs, gains.tolist(), dbs.tolist())]


def cmd_pattern(args):
    spec = _spec(args)
    grid = codes.decode_sequence(_bits(args), spec)
    bs = panel.aggregate_beams(grid, spec, p_in=args.p_in_mw, theta_i=math.radians(args.theta_i_deg))
    with _output(args.out) as fh:
        if args.format == "csv":
            write_csv(fh, ["theta_deg", "gain_linear", "gain_db"], _pattern_rows(bs, args.step_deg, args.lobe_order))
        else:
            json.dump(bs.to_dict(), fh)
            fh.write("\n")
    return EXIT_OK


def cmd_materials(args):
    registry = materials.load_materials(args.materials)
    if args.material not in registry:
        raise DecodeError(f"unknown material {args.material!r}; known: {', '.join(sorted(registry))}")
    cell = materials.LcCell(registry[args.material], d=args.d_um * 1e-6, lam=args.lambda_nm * 1e-9)
    volts = _sweep(args.v_min, args.v_max, args.v_step)
    with _output(args.out) as fh:
        write_csv(fh, ["voltage", "psi_rad", "n", "phi_rad", "phi_normalized"], materials.voltage_sweep(cell, volts))
    return EXIT_OK


def _load_stack(args):
    if args.stack is not None:
        with open(args.stack) as fh:
            return stack_from_dict(json.load(fh))
    if not args.layer:
        raise DecodeError("either --stack or at least one --layer n:d_m is required")
    layers = []
    for item in args.layer:
        try:
            n, d = item.split(":")
            layers.append((float(n), float(d)))
        except ValueError:
            raise DecodeError(f"bad --layer {item!r}, expected n:thickness_m") from None
    return optics.LayerStack(tuple(layers), n_amb=args.n_amb, back_mirror_reflectance=args.mirror)


def cmd_reflectance(args):
    stack = _load_stack(args)
    rows = []
    for deg in _sweep(args.theta_min_deg, args.theta_max_deg, args.theta_step_deg):
        th = math.radians(deg)
        rows.append((deg, *(optics.stack_reflectance(stack, th, p) for p in optics.POLARIZATIONS)))
    with _output(args.out) as fh:
        write_csv(fh, ["theta_i_deg", "rho_te", "rho_tm", "rho_unpol"], rows)
    return EXIT_OK


def cmd_blaze(args):
    theta_i = math.radians(args.theta_i_deg)
    rows = []
    for a in _sweep(args.alpha_min_deg, args.alpha_max_deg, args.alpha_step_deg):
        for n in args.n:
            try:
                tr = math.degrees(optics.blazed_reflection_angle(theta_i, n, math.radians(a)))
            except EvanescentError:
                tr = math.nan
            rows.append((a, n, tr))
    if rows and all(math.isnan(r[2]) for r in rows):
        raise EvanescentError("blazed", math.inf)
    with _output(args.out) as fh:
        write_csv(fh, ["alpha_deg", "n", "theta_r_deg"], rows)
    return EXIT_OK


def cmd_stc(args):
    spec = _spec(args)
    frame = codes.stc_schedule(_bits(args), spec, args.slots)
    theta_i = math.radians(args.theta_i_deg)
    with _output(args.out) as fh:
        for i, grid in enumerate(frame):
            rec = {"slot": i, "bits": grid.to_bits()}
            rec.update(panel.aggregate_beams(grid, spec, p_in=args.p_in_mw, theta_i=theta_i).to_dict())
            fh.write(json.dumps(rec) + "\n")
    return EXIT_OK


def cmd_steer(args):
    spec = _spec(args)
    if args.problem is None:
        raise DecodeError("--problem is required")
    with open(args.problem) as fh:
        raw = json.load(fh)
    if args.theta_i_deg is not None:
        raw["theta_i_rad"] = math.radians(args.theta_i_deg)
    if args.lobe_order is not None:
        raw["lobe_order"] = args.lobe_order
    prob = problem_from_dict(raw, spec)
    if args.method == "exhaustive":
        grid = steering.exhaustive_steer(prob, cap=args.cap)
    else:
        grid = steering.greedy_steer(prob)
    with _output(args.out) as fh:
        json.dump({"bits": grid.to_bits(), "objective": steering.objective(grid, prob), "method": args.method}, fh)
        fh.write("\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="dris", description="Digital reconfigurable intelligent surface simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, bits=True, fmt=("text", "json")):
        sp.add_argument("--spec", help="panel spec JSON")
        sp.add_argument("--paper-example", action="store_true", help="use the built-in DRIS(X, 2, 0.9) panel")
        if bits:
            sp.add_argument("--bits", help="control bits as 0/1 characters")
            sp.add_argument("--bits-file", help="file of ASCII 0/1 characters")
        sp.add_argument("--out", help="output path (default stdout)")
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])

    sp = sub.add_parser("decode", help="decode a control sequence into a grid")
    common(sp)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("pattern", help="beam set and sampled pattern for a control sequence")
    common(sp, fmt=("json", "csv"))
    sp.add_argument("--p-in-mw", type=float, default=1.0)
    sp.add_argument("--lobe-order", type=float, default=1.0)
    sp.add_argument("--theta-i-deg", type=float, default=0.0)
    sp.add_argument("--step-deg", type=float, default=1.0)
    sp.set_defaults(func=cmd_pattern)

    sp = sub.add_parser("materials", help="LC tilt, index and retardation versus voltage")
    sp.add_argument("--materials", help="material registry CSV (default: bundled)")
    sp.add_argument("--material", default="E7")
    sp.add_argument("--v-min", type=float, default=0.0)
    sp.add_argument("--v-max", type=float, default=5.0)
    sp.add_argument("--v-step", type=float, default=0.1)
    sp.add_argument("--d-um", type=float, default=13.34)
    sp.add_argument("--lambda-nm", type=float, default=633.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_materials)

    sp = sub.add_parser("reflectance", help="layer-stack reflectance versus incidence angle")
    sp.add_argument("--stack", help="stack JSON {layers:[{n, d}], n_amb, back_mirror_reflectance}")
    sp.add_argument("--layer", action="append", help="layer as n:thickness_m (repeatable)")
    sp.add_argument("--n-amb", type=float, default=1.0)
    sp.add_argument("--mirror", type=float, default=1.0, help="back mirror reflectance")
    sp.add_argument("--theta-min-deg", type=float, default=0.0)
    sp.add_argument("--theta-max-deg", type=float, default=89.0)
    sp.add_argument("--theta-step-deg", type=float, default=1.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reflectance)

    sp = sub.add_parser("blaze", help="blazed reflection angle versus blaze angle and index")
    sp.add_argument("--theta-i-deg", type=float, default=10.0)
    sp.add_argument("--n", type=float, nargs="+", default=[1.0, 1.5, 2.0])
    sp.add_argument("--alpha-min-deg", type=float, default=0.0)
    sp.add_argument("--alpha-max-deg", type=float, default=40.0)
    sp.add_argument("--alpha-step-deg", type=float, default=1.0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_blaze)

    sp = sub.add_parser("stc", help="schedule a space-time bitstream, one beam set per slot")
    common(sp, fmt=None)
    sp.add_argument("--slots", type=int, required=True)
    sp.add_argument("--p-in-mw", type=float, default=1.0)
    sp.add_argument("--theta-i-deg", type=float, default=0.0)
    sp.set_defaults(func=cmd_stc)

    sp = sub.add_parser("steer", help="choose control words toward target directions")
    common(sp, bits=False, fmt=None)
    sp.add_argument("--problem", help="problem JSON {targets:[{theta_rad, weight}], theta_i_rad, lobe_order}")
    sp.add_argument("--method", choices=("greedy", "exhaustive"), default="greedy")
    sp.add_argument("--theta-i-deg", type=float)
    sp.add_argument("--lobe-order", type=float)
    sp.add_argument("--cap", type=int, default=steering.DEFAULT_CAP)
    sp.set_defaults(func=cmd_steer)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, matching EXIT_INPUT
        return exc.code
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"dris: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (EvanescentError, TotalInternalReflectionError) as exc:
        print(f"dris: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (DecodeError, DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"dris: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
