"""Command line front end: simulate sweeps, trace convergence, decode files.

simulate writes the FER sweep CSV plus, alongside it, a rendered FER figure
(PNG) and a gnuplot companion script. trace writes per-iteration potential
rows and the matching figure. decode runs one LLR vector from a text file
and emits hex-packed hard decisions plus the J trajectory. plot re-renders
figures from existing sweep CSVs.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from .decoder import multi_group_decode
from .harness import SimConfig, run_fer, trace_convergence
from .report import fer_figure, trace_figure, write_gnuplot_script


def _parse_code(text):
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("--code expects N,K or N,K,shorten")
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return tuple(vals) if len(vals) == 3 else (vals[0], vals[1], 0)


def _parse_sweep(text):
    """lo:step:hi inclusive grid, or a comma list, or a single value."""
    if ":" in text:
        pieces = text.split(":")
        if len(pieces) != 3:
            raise argparse.ArgumentTypeError("--snr expects lo:step:hi")
        lo, step, hi = (float(p) for p in pieces)
        if step <= 0:
            raise argparse.ArgumentTypeError("sweep step must be positive")
        vals = []
        v = lo
        while v <= hi + 1e-9:
            vals.append(round(v, 10))
            v += step
        return tuple(vals)
    return tuple(float(p) for p in text.split(","))


def _parse_poly(text):
    return int(text, 16)


def _add_code_args(p):
    p.add_argument("--code", type=_parse_code, required=True,
                   metavar="N,K[,s]", help="RS code, optionally shortened by s")
    p.add_argument("--field-poly", type=_parse_poly, default=None,
                   metavar="HEX", help="primitive polynomial override, hex")


def _add_decoder_args(p):
    p.add_argument("--alpha", type=float, default=0.12, help="damping factor")
    p.add_argument("--n1", type=int, default=20, help="iterations per round")
    p.add_argument("--n2", type=int, default=1, help="adaptation rounds")
    p.add_argument("--variant", default="adp-hdd",
                   choices=["adp", "adp-hdd", "sym-adp", "hdd", "gmd",
                            "spa-noadapt"])
    p.add_argument("--minsum", action="store_true",
                   help="min-sum extrinsic instead of sum-product")
    p.add_argument("--red", type=int, default=None, metavar="M",
                   help="partial updating: only the n-k+M least reliable bits")
    p.add_argument("--dense-approx", action="store_true",
                   help="shared tanh factor for the reliable part")
    p.add_argument("--no-deg2", action="store_true",
                   help="disable the degree-2 column chaining")
    p.add_argument("--group-size", type=int, default=None,
                   help="boundary swap window for n2 > 1 (default m)")
    p.add_argument("--genie", action="store_true",
                   help="stop a frame once the transmitted word is found")


def _sim_config(args, points):
    n, k, s = args.code
    return SimConfig(n_sym=n, k_sym=k, shorten=s, field_poly=args.field_poly,
                     channel=getattr(args, "channel", "awgn"), points=points,
                     variant=args.variant, alpha=args.alpha, n1=args.n1,
                     n2=args.n2, minsum=args.minsum, red_m=args.red,
                     dense_approx=args.dense_approx, deg2=not args.no_deg2,
                     group_size=args.group_size, genie=args.genie,
                     max_frames=args.max_frames,
                     min_frame_errors=args.min_errors, seed=args.seed,
                     out=getattr(args, "out", None))


def _cmd_simulate(args):
    cfg = _sim_config(args, args.snr)
    points = run_fer(cfg)
    for pt in points:
        print(f"{pt.ebn0_db:g} dB: fer={pt.fer:.3e} ber={pt.ber:.3e} "
              f"frames={pt.frames} errors={pt.frame_errors} "
              f"avg_iter={pt.avg_iterations:.2f}")
    out = Path(args.out)
    write_gnuplot_script([args.out], out.with_suffix(".gp"))
    if not args.no_fig:
        fer_figure([args.out], out.with_suffix(".png"))
        print(f"wrote {args.out}, {out.with_suffix('.png')}, {out.with_suffix('.gp')}")
    else:
        print(f"wrote {args.out}, {out.with_suffix('.gp')}")
    return 0


def _cmd_trace(args):
    cfg = _sim_config(args, (args.snr,))
    rows = trace_convergence(cfg, args.snr, args.frames,
                             hdd_fail_only=args.hdd_fail_only)
    out = Path(args.out)
    with open(out, "w") as fh:
        fh.write("frame,iteration,variant,J\n")
        for frame, it, variant, j_val in rows:
            fh.write(f"{frame},{it},{variant},{j_val:.12g}\n")
    spec = cfg.build_spec()
    if not args.no_fig:
        trace_figure(rows, out.with_suffix(".png"),
                     n_minus_k=spec.n - spec.k)
        print(f"wrote {out} and {out.with_suffix('.png')}")
    else:
        print(f"wrote {out}")
    return 0


def _cmd_decode(args):
    tokens = Path(args.infile).read_text().split()
    llr = np.array([float(t) for t in tokens])
    n, k, s = args.code
    cfg = _sim_config(args, ())
    spec = cfg.build_spec()
    if llr.shape != (spec.n,):
        raise ValueError(f"expected {spec.n} LLR values, got {llr.size}")
    dec_cfg = cfg.decoder_config()
    dec_cfg.trace = True
    dec_cfg.seed = args.seed
    res = multi_group_decode(spec, llr, llr, dec_cfg,
                             rng=np.random.default_rng(args.seed))
    from .rscode import hard_bits
    bits = res.bits if res.ok else hard_bits(llr)
    hexbits = np.packbits(bits.astype(np.uint8)).tobytes().hex()
    print(f"status: {res.status}")
    print(f"iterations: {res.iterations_used}")
    print(f"bits: {hexbits}")
    trace_lines = "\n".join(f"{i},{j:.12g}" for i, j in enumerate(res.trace or []))
    if args.trace_out:
        Path(args.trace_out).write_text("iteration,J\n" + trace_lines + "\n")
    else:
        print("iteration,J")
        print(trace_lines)
    return 0


def _cmd_plot(args):
    labels = args.labels.split(",") if args.labels else None
    if labels and len(labels) != len(args.csvs):
        raise ValueError("--labels count must match the CSV count")
    out = Path(args.out)
    fer_figure(args.csvs, out, labels=labels)
    write_gnuplot_script(args.csvs, out.with_suffix(".gp"), labels=labels)
    print(f"wrote {out} and {out.with_suffix('.gp')}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="rsadapt",
                                 description="Adaptive soft decoding of "
                                             "Reed-Solomon binary images")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo FER sweep")
    _add_code_args(sim)
    sim.add_argument("--channel", default="awgn",
                     choices=["awgn", "rayleigh", "bec"])
    sim.add_argument("--snr", type=_parse_sweep, required=True,
                     metavar="LO:STEP:HI",
                     help="Eb/N0 grid in dB (erasure probabilities for bec)")
    _add_decoder_args(sim)
    sim.add_argument("--max-frames", type=int, default=100_000)
    sim.add_argument("--min-errors", type=int, default=100,
                     help="stop a point after this many frame errors")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", required=True, help="output CSV path")
    sim.add_argument("--no-fig", action="store_true",
                     help="skip rendering the FER figure")
    sim.set_defaults(func=_cmd_simulate)

    tr = sub.add_parser("trace", help="per-iteration potential traces")
    _add_code_args(tr)
    tr.add_argument("--channel", default="awgn",
                    choices=["awgn", "rayleigh", "bec"])
    tr.add_argument("--snr", type=float, required=True,
                    help="single Eb/N0 (dB) or erasure probability")
    tr.add_argument("--frames", type=int, default=20)
    _add_decoder_args(tr)
    tr.add_argument("--hdd-fail-only", action="store_true",
                    help="keep only frames plain algebraic decoding misses")
    tr.add_argument("--max-frames", type=int, default=100_000)
    tr.add_argument("--min-errors", type=int, default=100)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--out", required=True, help="output CSV path")
    tr.add_argument("--no-fig", action="store_true")
    tr.set_defaults(func=_cmd_trace)

    dec = sub.add_parser("decode", help="decode one LLR vector from a file")
    _add_code_args(dec)
    dec.add_argument("--in", dest="infile", required=True,
                     help="text file, one LLR per line (inf allowed)")
    _add_decoder_args(dec)
    dec.add_argument("--max-frames", type=int, default=1)
    dec.add_argument("--min-errors", type=int, default=1)
    dec.add_argument("--seed", type=int, default=0)
    dec.add_argument("--trace-out", default=None,
                     help="write the J trajectory CSV here instead of stdout")
    dec.set_defaults(func=_cmd_decode)

    pl = sub.add_parser("plot", help="render figures from sweep CSVs")
    pl.add_argument("csvs", nargs="+", help="simulate output CSVs")
    pl.add_argument("--out", required=True, help="output PNG path")
    pl.add_argument("--labels", default=None, help="comma-separated labels")
    pl.set_defaults(func=_cmd_plot)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
