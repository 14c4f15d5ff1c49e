"""Command-line interface.

Exit codes: 0 success, 2 usage/validation problems, 3 resource or feasibility
limits (size cap, memory budget), 4 numerical failure (SVD non-convergence).
"""

from __future__ import annotations

import argparse
import sys

from .analysis import boundary_compare, write_boundary_csv
from .bench import BenchConfig, fft_lfa_ratios, run_bench, write_bench_csv
from .errors import (
    AllocationFailure,
    ConvSpectraError,
    ConvergenceFailure,
    SizeCapExceeded,
)
from .kernels import SpatialDims, random_kernel
from .npyio import (
    read_npy_kernel,
    write_npy_kernel,
    write_run_metadata_json,
    write_spectrum_csv,
)
from .pipeline import compute_spectrum
from .symbol import BLOCK_CONTIGUOUS, FREQUENCY_STRIDED

_LAYOUT_FLAGS = {"block": BLOCK_CONTIGUOUS, "strided": FREQUENCY_STRIDED}


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _method_list(text):
    methods = [part for part in text.split(",") if part]
    for mth in methods:
        if mth not in ("lfa", "fft", "explicit"):
            raise argparse.ArgumentTypeError(f"unknown method {mth!r}")
    return methods


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conv-spectra",
        description="Exact singular value spectra of 2D multi-channel convolutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("singvals", help="compute a spectrum and write it as CSV")
    p.add_argument("--weights", required=True, help="kernel NPY file (c_out, c_in, k_h, k_w)")
    p.add_argument("--height", type=int, required=True, metavar="M")
    p.add_argument("--width", type=int, required=True, metavar="N")
    p.add_argument("--method", choices=("lfa", "fft", "explicit"), default="lfa")
    p.add_argument("--boundary", choices=("periodic", "dirichlet"), default="periodic")
    p.add_argument("--values-only", action="store_true",
                   help="skip singular vector accumulation")
    p.add_argument("--workers", type=int, default=0, help="0 = auto-detect")
    p.add_argument("--out", default="spectrum.csv")
    p.add_argument("--meta", default=None, help="optional metadata JSON path")
    p.add_argument("--size-cap", type=int, default=None)
    p.set_defaults(func=cmd_singvals)

    p = sub.add_parser("compare-boundary",
                       help="periodic vs zero-padded spectra over a size sweep")
    p.add_argument("--weights", required=True)
    p.add_argument("--sizes", type=_int_list, required=True, metavar="4,8,32")
    p.add_argument("--out", required=True)
    p.add_argument("--size-cap", type=int, default=None)
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(func=cmd_compare_boundary)

    p = sub.add_parser("bench", help="phase-split timing over a method/size grid")
    p.add_argument("--methods", type=_method_list, default=["lfa", "fft"])
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--channels", type=_int_list, default=[16])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--warmups", type=int, default=1)
    p.add_argument("--layout", choices=sorted(_LAYOUT_FLAGS), default="block")
    p.add_argument("--workers", type=int, default=0)
    p.add_argument("--kh", type=int, default=3)
    p.add_argument("--kw", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-infeasible", action="store_true")
    p.add_argument("--size-cap", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-kernel", help="write a seeded random kernel as NPY")
    p.add_argument("--cout", type=int, required=True)
    p.add_argument("--cin", type=int, required=True)
    p.add_argument("--kh", type=int, default=3)
    p.add_argument("--kw", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", choices=("normal", "uniform"), default="normal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_kernel)

    return parser


def cmd_singvals(args) -> int:
    if args.boundary == "dirichlet" and args.method != "explicit":
        print("error: --boundary dirichlet requires --method explicit", file=sys.stderr)
        return 2
    kernel = read_npy_kernel(args.weights)
    dims = SpatialDims(n=args.width, m=args.height)
    result = compute_spectrum(
        kernel, dims, method=args.method, boundary=args.boundary,
        values_only=args.values_only, workers=args.workers,
        size_cap=args.size_cap,
    )
    write_spectrum_csv(result, args.out)
    if args.meta:
        write_run_metadata_json(result, args.meta)
    print(f"{len(result)} singular values ({args.method}, {args.boundary}) "
          f"-> {args.out}; sigma_max={result.values[0]:.6g}")
    return 0


def cmd_compare_boundary(args) -> int:
    kernel = read_npy_kernel(args.weights)
    rows = boundary_compare(kernel, args.sizes, size_cap=args.size_cap,
                            workers=args.workers)
    write_boundary_csv(rows, args.out)
    print(f"{len(rows)} rows -> {args.out}")
    return 0


def cmd_bench(args) -> int:
    config = BenchConfig(
        methods=tuple(args.methods),
        sizes=tuple(args.sizes),
        channels=tuple(args.channels),
        repeats=args.repeats,
        warmups=args.warmups,
        workers=args.workers,
        layout=_LAYOUT_FLAGS[args.layout],
        k_h=args.kh,
        k_w=args.kw,
        seed=args.seed,
        skip_infeasible=args.skip_infeasible,
        size_cap=args.size_cap,
    )
    records = run_bench(config)
    write_bench_csv(records, args.out)
    print(f"{len(records)} records -> {args.out}")
    ratios = fft_lfa_ratios(records)
    if ratios:
        print(f"{'n':>6} {'m':>6} {'SVs':>12} {'s_fft':>10} {'s_lfa':>10} {'ratio':>7}")
        for row in ratios:
            print(f"{row['n']:>6} {row['m']:>6} {row['sv_count']:>12} "
                  f"{row['s_fft']:>10.4f} {row['s_lfa']:>10.4f} {row['ratio']:>7.2f}")
    return 0


def cmd_gen_kernel(args) -> int:
    kernel = random_kernel(args.cout, args.cin, args.kh, args.kw,
                           seed=args.seed, dist=args.dist)
    write_npy_kernel(args.out, kernel)
    print(f"kernel ({args.cout}, {args.cin}, {args.kh}, {args.kw}) "
          f"seed={args.seed} dist={args.dist} -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SizeCapExceeded, AllocationFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ConvSpectraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
