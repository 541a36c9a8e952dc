"""Command-line interface: bandwidth selection, density evaluation,
local bandwidths, theory constants, and the simulation study."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import crossval, localband, simulate, theory
from .densities import standard_suite
from .estimation import KernelEstimate
from .kernels import SelectionKernel, gaussian_kernel, model_params


def _read_data(path: str) -> np.ndarray:
    if path == "-":
        return simulate.ingest(sys.stdin)
    return simulate.ingest(path)


def _parse_grid(spec: str) -> np.ndarray:
    lo, hi, step = (float(p) for p in spec.split(":"))
    return np.arange(lo, hi + 0.5 * step, step)


def _model_or_given(args, n: int) -> tuple[float, float]:
    if args.alpha is not None and args.sigma is not None:
        return args.alpha, args.sigma
    return model_params(n)


def _selection_json(sel: crossval.BandwidthSelection) -> dict:
    return {
        "method": sel.method,
        "bandwidth": float(sel.bandwidth),
        "selection_bandwidth": (None if sel.selection_bandwidth is None
                                else float(sel.selection_bandwidth)),
        "criterion_minimum": float(sel.criterion_minimum),
        "boundary_hit": bool(sel.boundary_hit),
        "degenerate_zero": bool(sel.degenerate_zero),
    }


def cmd_select(args) -> int:
    data = _read_data(args.input)
    keep = args.emit_trace is not None
    if args.method == "lscv":
        sel = crossval.minimize_lscv(data, n_grid=args.grid_points, keep_trace=keep)
    elif args.method == "os":
        h = crossval.oversmoothed_bandwidth(data)
        sel = crossval.BandwidthSelection("Oversmoothed", h, float("nan"))
    else:
        alpha, sigma = _model_or_given(args, data.size)
        fn = crossval.icv_capped if args.method == "icv-capped" else crossval.icv_bandwidth
        sel = fn(data, alpha, sigma, n_grid=args.grid_points, keep_trace=keep)
    if keep and sel.trace is not None:
        with open(args.emit_trace, "w") as fh:
            fh.write("h,criterion\n")
            for h, v in zip(*sel.trace):
                fh.write(f"{h:.17g},{v:.17g}\n")
    out = _selection_json(sel)
    out["n"] = int(data.size)
    out["data_min"], out["data_max"] = float(data.min()), float(data.max())
    print(json.dumps(out, indent=2))
    return 0


def cmd_density(args) -> int:
    data = _read_data(args.input)
    if args.bandwidth is not None:
        h = args.bandwidth
    else:
        alpha, sigma = _model_or_given(args, data.size)
        h = crossval.icv_capped(data, alpha, sigma).bandwidth
    est = KernelEstimate(data, h, gaussian_kernel())
    grid = _parse_grid(args.grid)
    print("x,fhat")
    for x, v in zip(grid, est(grid)):
        print(f"{x:.17g},{v:.17g}")
    return 0


def cmd_local(args) -> int:
    data = _read_data(args.input)
    grid = _parse_grid(args.grid)
    alpha, sigma = _model_or_given(args, data.size)
    lbf = localband.local_bandwidths(data, "icv", alpha, sigma,
                                     w=args.window, grid=grid)
    f_true = standard_suite()[args.density] if args.density else None
    header = "x,bandwidth,fhat_local" + (",f_true" if f_true else "")
    print(header)
    for x, h in zip(lbf.grid, lbf.bandwidths):
        row = f"{x:.17g},{h:.17g},{localband.local_estimate(data, lbf, x):.17g}"
        if f_true:
            row += f",{f_true(x):.17g}"
        print(row)
    return 0


def cmd_theory(args) -> int:
    fun = standard_suite()[args.density].derivative_functionals()
    const = theory.theory_constants(args.alpha)
    sig = theory.sigma_opt(args.alpha, args.n, fun)
    terms = theory.relative_error_terms(args.alpha, sig, args.n, fun)
    out = {
        "alpha": args.alpha,
        "n": args.n,
        "density": args.density,
        "a_alpha": const.a_alpha,
        "c_alpha": const.c_alpha,
        "d_alpha": const.d_alpha,
        "rescale_constant": SelectionKernel(args.alpha, sig).rescale_constant(),
        "sigma_opt": sig,
        "mse_opt": theory.mse_opt(args.alpha, args.n, fun),
        "s_n": terms.s_n,
        "b_n_bias": terms.b_n_bias,
        "functionals": {"r_f": fun.r_f, "r_f2": fun.r_f2, "r_f3": fun.r_f3},
    }
    print(json.dumps(out, indent=2))
    return 0


def cmd_simulate(args) -> int:
    params = "model" if args.alpha is None else (args.alpha, args.sigma)
    summaries, records = simulate.run_study(
        args.density, args.n, args.reps, args.seed, params, workers=args.workers
    )
    records_path, summary_path = args.out
    flat = [r for key in sorted(records) for r in records[key]]
    simulate.records_to_csv(flat, records_path)
    simulate.summaries_to_csv(summaries, summary_path)
    for s in summaries:
        print(f"{s.density} n={s.n} reps={s.replications} "
              f"sq_error_ratio={s.sq_error_ratio:.4g} ise_ratio={s.ise_ratio:.4g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icvkde")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="select a global bandwidth")
    p.add_argument("--input", default="-", help="data file ('-' for stdin)")
    p.add_argument("--method", choices=["lscv", "icv", "icv-capped", "os"],
                   default="icv-capped")
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--grid-points", type=int, default=crossval.SEARCH_GRID)
    p.add_argument("--emit-trace", metavar="CSV", help="write (h, criterion) trace")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("density", help="evaluate the density estimate on a grid")
    p.add_argument("--input", default="-")
    p.add_argument("--grid", default="-3:3:0.1", metavar="LO:HI:STEP")
    p.add_argument("--bandwidth", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("local", help="locally selected bandwidths")
    p.add_argument("--input", default="-")
    p.add_argument("--window", type=float, default=0.3)
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--grid", default="-3:3:0.1", metavar="LO:HI:STEP")
    p.add_argument("--density", choices=sorted(standard_suite()),
                   help="also emit the named true density")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("theory", help="asymptotic constants and optima")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", choices=sorted(standard_suite()),
                   default="gaussian")
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("simulate", help="Monte Carlo comparison study")
    p.add_argument("--density", action="append", required=True,
                   choices=sorted(standard_suite()))
    p.add_argument("--n", action="append", type=int, required=True)
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", nargs=2, metavar=("RECORDS", "SUMMARY"),
                   default=["records.csv", "summary.csv"])
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
