"""Iterative decoding with per-iteration parity-check matrix adaptation.

One pass = adapt the matrix to the current reliability order, compute
extrinsic LLRs, apply the damped update, hard-decide, and test the original
H_b syndrome. Convergence additionally requires every LLR to be nonzero,
since a zero LLR carries no sign decision (this is what makes erasure-channel
decoding agree exactly with maximum likelihood when the erased columns are
independent).

An optional algebraic decoder runs on the symbol hard decision at iteration
0 and after every pass; its successes join a candidate list and never stop
the iteration by themselves. The final answer is the candidate closest to
the channel output in Euclidean distance. Genie mode (simulation only)
halts a frame as soon as the transmitted word enters the list.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .adapt import adapt_matrix, deg2_connect, rank_order, symbol_adapt, symbol_reliability
from .algebraic import hdd_decode
from .rscode import hard_bits, hard_symbols, symbols_to_bits
from .siso import LLR_CAP, SpaConfig, damped_update, extrinsic, potential, tanh_map


@dataclass
class DecoderConfig:
    alpha: float = 0.12                # damping factor for the LLR update
    n1: int = 20                       # iterations per round
    n2: int = 1                       # adaptation rounds (grouping restarts)
    deg2: bool = True                  # chain unit columns to degree 2
    deg2_redraw: str = "iteration"     # redraw the chain permutation: "iteration" | "frame"
    hdd_in_loop: bool = False          # run algebraic decoding alongside the iterations
    symbol_level_adapt: bool = False   # adapt at symbol level via dual-code filling
    adapt: bool = True                 # False: plain SPA on the original matrix
    spa: SpaConfig = dc_field(default_factory=SpaConfig)
    group_size: int | None = None      # boundary swap window for n2 > 1 (default m)
    stop_early: bool = True            # stop on a satisfied syndrome
    trace: bool = False                # record J after every pass
    seed: int = 0                      # fallback RNG seed when none is passed
    llr_cap: float = LLR_CAP

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError("alpha must be in (0, 1]")
        if self.n1 < 1 or self.n2 < 1:
            raise ValueError("n1 and n2 must be >= 1")
        if self.deg2_redraw not in ("iteration", "frame"):
            raise ValueError("deg2_redraw must be 'iteration' or 'frame'")
        if self.group_size is not None and self.group_size < 1:
            raise ValueError("group_size must be >= 1")


@dataclass
class DecodeResult:
    status: str                        # "converged" | "hdd_list_selected" | "failure"
    bits: np.ndarray | None
    iterations_used: int
    candidates: list                   # [(bits, squared Euclidean distance), ...]
    trace: list | None = None

    @property
    def ok(self):
        return self.status != "failure"


def select_candidate(candidates, y):
    """Codeword whose BPSK image (1 - 2c) is closest to y in squared
    Euclidean distance; first hit wins ties. Accepts bare bit arrays or
    (bits, distance) pairs."""
    if not len(candidates):
        raise ValueError("empty candidate list")
    y = np.asarray(y, dtype=float)
    best, best_d = None, np.inf
    for item in candidates:
        bits = item[0] if isinstance(item, tuple) else item
        d = float(np.sum((y - (1.0 - 2.0 * np.asarray(bits, dtype=float))) ** 2))
        # best is None guards the all-infinite case (e.g. y built from
        # erasure LLRs), where d < inf never fires.
        if best is None or d < best_d:
            best, best_d = bits, d
    return best


def _syndrome_ok(hb_int, bits):
    return not np.any((hb_int @ bits) & 1)


def _hb_int(spec):
    if "hb_int" not in spec._cache:
        spec._cache["hb_int"] = spec.h_binary.astype(np.int64)
    return spec._cache["hb_int"]


def adp_decode(spec, llr0, y, cfg, rng=None, genie_bits=None, initial_order=None):
    """One round of adaptive iterative decoding from channel LLRs llr0.

    y is the soft channel output used for final candidate selection (any
    positive scaling of it gives the same winner). initial_order overrides
    the reliability order of the first pass only, which is how grouping
    rounds restart the adaptation from a perturbed boundary.
    """
    hb = spec.h_binary
    hb_int = _hb_int(spec)
    m = spec.m
    L = np.asarray(llr0, dtype=float).copy()
    y = np.asarray(y, dtype=float)
    if rng is None:
        rng = np.random.default_rng(cfg.seed)

    cands = []
    keys = set()
    genie_found = False

    def add_candidate(bits):
        nonlocal genie_found
        key = bits.tobytes()
        if key in keys:
            return False
        keys.add(key)
        d = float(np.sum((y - (1.0 - 2.0 * bits.astype(float))) ** 2))
        cands.append((bits.copy(), d))
        hit = genie_bits is not None and np.array_equal(bits, genie_bits)
        genie_found = genie_found or hit
        return hit

    trace = [potential(hb, tanh_map(L))] if cfg.trace else None
    converged = False
    stop = False
    if cfg.hdd_in_loop:
        out = hdd_decode(spec, hard_symbols(L, m))
        if out.ok:
            stop = add_candidate(symbols_to_bits(out.codeword, m))

    frame_perm = None
    iters = 0
    r = hb.shape[0]
    while iters < cfg.n1 and not stop:
        if cfg.adapt and r:
            if cfg.symbol_level_adapt:
                adapted = symbol_adapt(spec, symbol_reliability(L, m))
            else:
                if iters == 0 and initial_order is not None:
                    order = initial_order
                else:
                    order = rank_order(np.abs(L))
                adapted = adapt_matrix(hb, order)
            if cfg.deg2:
                if cfg.deg2_redraw == "frame":
                    if frame_perm is None:
                        frame_perm = rng.permutation(r)
                    adapted = deg2_connect(adapted, perm=frame_perm)
                else:
                    adapted = deg2_connect(adapted, rng)
            h_iter = adapted.h
        else:
            h_iter = hb

        lext = extrinsic(h_iter, L, cfg.spa)
        L = damped_update(L, lext, cfg.alpha, cfg.llr_cap)
        iters += 1
        hard = hard_bits(L)
        if cfg.trace:
            trace.append(potential(hb, tanh_map(L)))

        if _syndrome_ok(hb_int, hard) and not np.any(L == 0.0):
            converged = True
            found = add_candidate(hard)
            stop = stop or found or cfg.stop_early
        if not stop and cfg.hdd_in_loop:
            out = hdd_decode(spec, hard_symbols(L, m))
            if out.ok and add_candidate(symbols_to_bits(out.codeword, m)):
                stop = True

    if cands:
        # Knowing the transmitted word is a simulation device: finding it in
        # the list counts as success even if a closer candidate exists.
        if genie_found:
            bits = np.asarray(genie_bits, dtype=np.uint8).copy()
        else:
            bits = select_candidate(cands, y)
        status = "converged" if converged else "hdd_list_selected"
    else:
        bits, status = None, "failure"
    return DecodeResult(status, bits, iters, cands, trace)


def _swap_boundary(order, r, group, rng):
    """Swap a random subset of the group-sized windows on both sides of the
    reliability boundary; fresh coins and pairing every call."""
    new = order.copy()
    pair = rng.permutation(group)
    coins = rng.random(group) < 0.5
    for i in range(group):
        if coins[i]:
            a = r - group + i
            b = r + pair[i]
            new[a], new[b] = new[b], new[a]
    return new


def multi_group_decode(spec, llr0, y, cfg, rng=None, genie_bits=None):
    """Run n2 adaptation rounds and pool every candidate found.

    Round 1 uses the natural reliability order of llr0; each later round
    re-sorts llr0, randomly swaps bits across the reliable/unreliable
    boundary, and reruns the iteration from the same channel LLRs. With
    n2 = 1 this is exactly adp_decode.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    r = spec.h_binary.shape[0]
    group = cfg.group_size if cfg.group_size is not None else spec.m
    if cfg.n2 > 1 and not (0 < group <= min(r, spec.n - r)):
        raise ValueError(f"group_size must be in 1..{min(r, spec.n - r)}")

    all_cands = []
    keys = set()
    converged = False
    iters = 0
    trace = None
    found_genie = False
    for rnd in range(cfg.n2):
        if rnd == 0:
            init = None
        else:
            init = _swap_boundary(rank_order(np.abs(np.asarray(llr0, float))), r, group, rng)
        res = adp_decode(spec, llr0, y, cfg, rng=rng, genie_bits=genie_bits,
                         initial_order=init)
        iters += res.iterations_used
        converged = converged or res.status == "converged"
        if rnd == 0:
            trace = res.trace
        for bits, d in res.candidates:
            key = bits.tobytes()
            if key not in keys:
                keys.add(key)
                all_cands.append((bits, d))
                if genie_bits is not None and np.array_equal(bits, genie_bits):
                    found_genie = True
        if found_genie:
            break

    if all_cands:
        if found_genie:
            bits = np.asarray(genie_bits, dtype=np.uint8).copy()
        else:
            bits = select_candidate(all_cands, y)
        status = "converged" if converged else "hdd_list_selected"
    else:
        bits, status = None, "failure"
    return DecodeResult(status, bits, iters, all_cands, trace)
