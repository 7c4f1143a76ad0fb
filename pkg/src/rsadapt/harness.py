"""Monte Carlo frame-error-rate measurement and convergence tracing.

Every frame draws its own RNG stream from (master seed, point index, frame
index), so results are bit-reproducible no matter how a sweep is resumed or
re-run. A sweep point stops at max_frames or once min_frame_errors frame
errors have accumulated, whichever comes first, and each finished point is
appended to the CSV immediately.

Channels produce (y, llr) pairs at the full code length; bits belonging to
the shortened prefix are never transmitted and come back pinned to +inf.
For the BEC the sweep parameter is the erasure probability and LLRs are
exactly {0, +-inf}.
"""

import csv
import math
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .adapt import symbol_reliability
from .algebraic import gmd_decode, hdd_decode
from .decoder import DecoderConfig, multi_group_decode
from .galois import GaloisField
from .rscode import (RSCodeSpec, hard_bits, hard_symbols, random_codeword,
                     symbols_to_bits)
from .siso import SpaConfig

VARIANTS = ("adp", "adp-hdd", "sym-adp", "hdd", "gmd", "spa-noadapt")


def qfunc(x):
    """Gaussian tail probability Q(x)."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


@dataclass
class SimConfig:
    n_sym: int
    k_sym: int
    shorten: int = 0
    m: int | None = None               # field degree; default: smallest fit
    field_poly: int | None = None
    channel: str = "awgn"              # "awgn" | "rayleigh" | "bec"
    points: tuple = ()                 # Eb/N0 in dB, or erasure prob for bec
    variant: str = "adp-hdd"
    alpha: float = 0.12
    n1: int = 20
    n2: int = 1
    minsum: bool = False
    red_m: int | None = None
    dense_approx: bool = False
    deg2: bool = True
    group_size: int | None = None
    genie: bool = False
    max_frames: int = 100_000
    min_frame_errors: int = 100
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.channel not in ("awgn", "rayleigh", "bec"):
            raise ValueError("channel must be awgn, rayleigh or bec")
        if self.max_frames < 1 or self.min_frame_errors < 1:
            raise ValueError("max_frames and min_frame_errors must be >= 1")

    def build_spec(self):
        m = self.m
        if m is None:
            m = 2
            while (1 << m) - 1 < self.n_sym:
                m += 1
        field = GaloisField(m, self.field_poly)
        return RSCodeSpec(field, self.n_sym, self.k_sym, self.shorten)

    def decoder_config(self):
        spa = SpaConfig(rule="min-sum" if self.minsum else "sum-product",
                        partial_m=self.red_m,
                        dense_tanh_approx=self.dense_approx)
        return DecoderConfig(alpha=self.alpha, n1=self.n1, n2=self.n2,
                             deg2=self.deg2, spa=spa,
                             group_size=self.group_size,
                             hdd_in_loop=self.variant in ("adp-hdd", "sym-adp"),
                             symbol_level_adapt=self.variant == "sym-adp",
                             adapt=self.variant != "spa-noadapt",
                             seed=self.seed)


@dataclass
class FerPoint:
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    avg_iterations: float
    wall_seconds: float


CSV_HEADER = "ebn0_db,frames,frame_errors,bit_errors,fer,ber,avg_iterations,wall_seconds"


def awgn_llr(spec, bits, ebn0_db, rng):
    """BPSK over AWGN: y = (1-2b) + noise, L = 2y/sigma^2."""
    sigma2 = 1.0 / (2.0 * spec.rate * 10.0 ** (ebn0_db / 10.0))
    s = 1.0 - 2.0 * np.asarray(bits, dtype=float)
    active = np.ones(spec.n, dtype=bool)
    active[spec.pinned_bits] = False
    y = s.copy()
    y[active] += rng.normal(0.0, math.sqrt(sigma2), int(active.sum()))
    llr = 2.0 * y / sigma2
    llr[~active] = np.inf
    return y, llr

def rayleigh_llr(spec, bits, ebn0_db, rng):
    """Per-symbol Rayleigh fading with perfect CSI: L = 2*a*y/sigma^2."""
    sigma2 = 1.0 / (2.0 * spec.rate * 10.0 ** (ebn0_db / 10.0))
    s = 1.0 - 2.0 * np.asarray(bits, dtype=float)
    # E[a^2] = 1 requires Rayleigh scale 1/sqrt(2); one fade per symbol
    a = np.repeat(rng.rayleigh(1.0 / math.sqrt(2.0), spec.N), spec.m)
    active = np.ones(spec.n, dtype=bool)
    active[spec.pinned_bits] = False
    y = a * s
    y[active] += rng.normal(0.0, math.sqrt(sigma2), int(active.sum()))
    llr = 2.0 * a * y / sigma2
    y[~active] = 1.0
    llr[~active] = np.inf
    return y, llr

def bec_llr(spec, bits, eps, rng):
    """Binary erasure channel: LLR is 0 on erased bits, +-inf elsewhere."""
    s = 1.0 - 2.0 * np.asarray(bits, dtype=float)
    active = np.ones(spec.n, dtype=bool)
    active[spec.pinned_bits] = False
    erased = active & (rng.random(spec.n) < eps)
    y = np.where(erased, 0.0, s)
    llr = np.where(erased, 0.0, np.where(s > 0, np.inf, -np.inf))
    y[~active] = 1.0
    llr[~active] = np.inf
    return y, llr


_CHANNELS = {"awgn": awgn_llr, "rayleigh": rayleigh_llr, "bec": bec_llr}


def frame_rng(seed, point_idx, frame_idx):
    """Counter-based per-frame stream; identical regardless of batch order."""
    return np.random.default_rng([seed, point_idx, frame_idx])


def simulate_frame(spec, cfg, dec_cfg, point_idx, frame_idx, point_value):
    """Returns (frame_error, bit_errors, iterations) for one frame."""
    rng = frame_rng(cfg.seed, point_idx, frame_idx)
    cw = random_codeword(spec, rng)
    tx_bits = symbols_to_bits(cw, spec.m)
    y, llr = _CHANNELS[cfg.channel](spec, tx_bits, point_value, rng)

    iters = 0
    if cfg.variant == "hdd":
        out = hdd_decode(spec, hard_symbols(llr, spec.m))
        est = symbols_to_bits(out.codeword, spec.m) if out.ok else hard_bits(llr)
    elif cfg.variant == "gmd":
        rel = symbol_reliability(llr, spec.m)
        out = gmd_decode(spec, hard_symbols(llr, spec.m), rel, soft_bits=y)
        est = symbols_to_bits(out.codeword, spec.m) if out.ok else hard_bits(llr)
    else:
        res = multi_group_decode(spec, llr, y, dec_cfg, rng=rng,
                                 genie_bits=tx_bits if cfg.genie else None)
        est = res.bits if res.ok else hard_bits(llr)
        iters = res.iterations_used

    bit_errors = int(np.count_nonzero(est != tx_bits))
    return bit_errors > 0, bit_errors, iters


def run_fer(cfg, progress=None):
    """Sweep cfg.points, returning a FerPoint per value.

    Writes finished points to cfg.out as CSV when set. progress, if given,
    is called as progress(point_value, frames_done, frame_errors) roughly
    once per thousand frames.
    """
    spec = cfg.build_spec()
    dec_cfg = cfg.decoder_config()
    results = []
    writer = None
    fh = None
    if cfg.out:
        fh = open(cfg.out, "w", newline="")
        fh.write(CSV_HEADER + "\n")
        writer = csv.writer(fh)
    try:
        for point_idx, value in enumerate(cfg.points):
            t0 = time.perf_counter()
            frames = errors = bit_errs = 0
            iter_sum = 0
            while frames < cfg.max_frames and errors < cfg.min_frame_errors:
                fe, be, it = simulate_frame(spec, cfg, dec_cfg, point_idx,
                                            frames, value)
                frames += 1
                errors += fe
                bit_errs += be
                iter_sum += it
                if progress and frames % 1000 == 0:
                    progress(value, frames, errors)
            wall = time.perf_counter() - t0
            pt = FerPoint(ebn0_db=value, frames=frames, frame_errors=errors,
                          bit_errors=bit_errs,
                          fer=errors / frames,
                          ber=bit_errs / (frames * spec.n),
                          avg_iterations=iter_sum / frames,
                          wall_seconds=wall)
            results.append(pt)
            if writer:
                writer.writerow([f"{pt.ebn0_db:.12g}", pt.frames,
                                 pt.frame_errors, pt.bit_errors,
                                 f"{pt.fer:.12g}", f"{pt.ber:.12g}",
                                 f"{pt.avg_iterations:.12g}",
                                 f"{pt.wall_seconds:.3f}"])
                fh.flush()
    finally:
        if fh:
            fh.close()
    return results


def trace_convergence(cfg, ebn0_db, frames, hdd_fail_only=False,
                      max_scanned=None):
    """Per-iteration potential J for ADP vs no-adaptation SPA.

    Both variants start from the same channel LLRs of each frame, run the
    full n1 passes without early stopping, and report J evaluated against
    the original H_b. Returns rows (frame, iteration, variant, J). With
    hdd_fail_only, frames that plain algebraic decoding already solves are
    skipped (they are the uninteresting ones).
    """
    spec = cfg.build_spec()
    base = cfg.decoder_config()
    rows = []
    kept = 0
    scanned = 0
    limit = max_scanned if max_scanned is not None else 1000 * frames
    while kept < frames and scanned < limit:
        rng = frame_rng(cfg.seed, 0, scanned)
        scanned += 1
        cw = random_codeword(spec, rng)
        tx_bits = symbols_to_bits(cw, spec.m)
        y, llr = _CHANNELS[cfg.channel](spec, tx_bits, ebn0_db, rng)
        if hdd_fail_only and hdd_decode(spec, hard_symbols(llr, spec.m)).ok:
            continue
        for variant, adapt_on in (("adp", True), ("spa-noadapt", False)):
            dc = DecoderConfig(alpha=base.alpha, n1=base.n1, n2=1,
                               deg2=base.deg2 and adapt_on, spa=base.spa,
                               adapt=adapt_on, hdd_in_loop=False,
                               stop_early=False, trace=True, seed=cfg.seed)
            res = multi_group_decode(spec, llr, y, dc, rng=frame_rng(cfg.seed, 1, scanned - 1))
            for it, j_val in enumerate(res.trace):
                rows.append((kept, it, variant, j_val))
        kept += 1
    return rows


def ebn0_at_fer(points, target):
    """Interpolate the sweep value where FER crosses target (log-linear).

    points: iterable of FerPoint or (value, fer) pairs, any order. A point
    with zero measured FER is treated as half an error over its frames when
    it has frame information, else as target/100.
    """
    xs = []
    for p in points:
        if isinstance(p, FerPoint):
            fer = p.fer if p.fer > 0 else 0.5 / p.frames
            xs.append((p.ebn0_db, fer))
        else:
            v, f = p
            xs.append((v, f if f > 0 else target / 100.0))
    xs.sort()
    for (x0, f0), (x1, f1) in zip(xs, xs[1:]):
        lo, hi = min(f0, f1), max(f0, f1)
        if lo <= target <= hi and f0 != f1:
            return x0 + (x1 - x0) * (math.log(target) - math.log(f0)) \
                / (math.log(f1) - math.log(f0))
    raise ValueError(f"target FER {target} not bracketed by sweep points")


def hdd_fer_analytic(spec, ebn0_db):
    """Closed-form bounded-distance FER on AWGN-BPSK.

    Symbol error rate p_s = 1 - (1 - Q(sqrt(2 R Eb/N0)))^m; decoding fails
    exactly when more than t symbols are hit, and any such failure or
    miscorrection is a frame error.
    """
    pb = qfunc(math.sqrt(2.0 * spec.rate * 10.0 ** (ebn0_db / 10.0)))
    ps = 1.0 - (1.0 - pb) ** spec.m
    n, t = spec.N, spec.t
    if ps <= 0.0:
        return 0.0
    total = 0.0
    for e in range(t + 1, n + 1):
        logpmf = (math.lgamma(n + 1) - math.lgamma(e + 1)
                  - math.lgamma(n - e + 1)
                  + e * math.log(ps) + (n - e) * math.log1p(-ps))
        total += math.exp(logpmf)
    return min(total, 1.0)
