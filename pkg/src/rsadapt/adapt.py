"""Reliability-directed adaptation of the binary parity-check matrix.

Each decoding iteration sorts the bits by |LLR| ascending and row-reduces
H_b so the least reliable independent columns become unit columns. Columns
that turn out dependent on already-reduced ones are skipped and the walk
keeps going, so the reduced matrix always ends up with exactly n-k unit
columns. Row operations only: the row space, hence the code, is unchanged.

deg2_connect optionally chains the unit columns into weight-2 columns
(except one), which spreads each unreliable bit across two checks without
creating cycles among them.

symbol_adapt does the same at symbol level: it rebuilds the symbol matrix
from dual codewords that are unit vectors on the N-K least reliable symbol
positions, then expands to bits. That variant never skips.
"""

from dataclasses import dataclass

import numpy as np

from .algebraic import dual_fill_row
from .rscode import binary_expansion


@dataclass
class AdaptedMatrix:
    """Reduced binary parity-check plus bookkeeping of the reduction."""

    h: np.ndarray                # (n-k, n) uint8
    b_l: np.ndarray              # positions owning unit columns, row j <-> b_l[j]
    skipped: np.ndarray          # positions passed over as dependent


def rank_order(magnitudes):
    """Stable ascending argsort of |LLR| magnitudes; ties keep index order."""
    magnitudes = np.asarray(magnitudes)
    if np.any(np.isnan(magnitudes)):
        raise ValueError("magnitudes must not contain NaN")
    return np.argsort(magnitudes, kind="stable")


def adapt_matrix(h0, order):
    """Gaussian elimination making unit columns at the earliest independent
    positions of the walk order.

    The pivot for a column is the first not-yet-consumed row holding a 1;
    that row is swapped into slot j so the j-th systematized position owns
    row j. A column whose remaining entries are all zero is dependent on the
    columns already reduced and gets recorded as skipped.
    """
    h = np.ascontiguousarray(h0, dtype=np.uint8).copy()
    r, n = h.shape
    order = np.asarray(order, dtype=np.int64)
    b_l = []
    skipped = []
    row = 0
    if r == 0:
        return AdaptedMatrix(h, np.zeros(0, np.int64), np.zeros(0, np.int64))
    for pos in order:
        nz = np.nonzero(h[:, pos])[0]
        avail = nz[nz >= row]
        if avail.size == 0:
            skipped.append(pos)
            continue
        piv = avail[0]
        if piv != row:
            h[[row, piv]] = h[[piv, row]]
            nz = np.nonzero(h[:, pos])[0]
        clear = nz[nz != row]
        if clear.size:
            h[clear] ^= h[row]
        b_l.append(pos)
        row += 1
        if row == r:
            break
    if row < r:
        raise ValueError("matrix rank below row count; cannot systematize")
    return AdaptedMatrix(h, np.asarray(b_l, dtype=np.int64),
                         np.asarray(skipped, dtype=np.int64))


def deg2_connect(adapted, rng=None, perm=None):
    """Chain the unit columns to degree 2 along a random row permutation.

    With rows p_1..p_r, row p_i gets row p_(i+1) (original values) added to
    it; afterwards the column owned by p_1 keeps weight 1 and every other
    systematized column has weight 2, forming a single loop-free chain.
    Row operations only, so the row space is preserved. Pass perm to reuse
    a previously drawn permutation instead of drawing from rng.
    """
    h = adapted.h.copy()
    r = h.shape[0]
    if r >= 2:
        if perm is None:
            perm = rng.permutation(r)
        h[perm[:-1]] ^= h[perm[1:]]
    return AdaptedMatrix(h, adapted.b_l, adapted.skipped)


def symbol_reliability(llr, m):
    """Per-symbol reliability: the minimum bit |LLR| within the symbol."""
    mags = np.abs(np.asarray(llr, dtype=float)).reshape(-1, m)
    return mags.min(axis=1)


def symbol_adapt(spec, symbol_rel):
    """Symbol-level adaptation via dual-code erasure filling.

    Picks the N-K least reliable symbol positions S_L (stable ties), builds
    one dual codeword per position that is 1 there and 0 on the rest of S_L,
    and expands the stacked rows to bits. The binary matrix then holds an
    exact identity on the bits of S_L, listed in S_L order.
    """
    r = spec.N - spec.K
    symbol_rel = np.asarray(symbol_rel, dtype=float)
    if symbol_rel.shape != (spec.N,):
        raise ValueError(f"expected {spec.N} symbol reliabilities")
    s_l = np.argsort(symbol_rel, kind="stable")[:r]
    hs = np.zeros((r, spec.N), dtype=np.int64)
    for j in range(r):
        hs[j] = dual_fill_row(spec, j, s_l)
    h = binary_expansion(hs, spec.field)
    m = spec.m
    b_l = (s_l[:, None] * m + np.arange(m)[None, :]).reshape(-1)
    return AdaptedMatrix(h, b_l.astype(np.int64), np.zeros(0, np.int64))


def gf2_rank(mat):
    """Rank of a binary matrix over GF(2)."""
    h = np.asarray(mat, dtype=np.uint8).copy()
    rank = 0
    rows, cols = h.shape
    for c in range(cols):
        nz = np.nonzero(h[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            h[[rank, piv]] = h[[piv, rank]]
        clear = np.nonzero(h[:, c])[0]
        clear = clear[clear != rank]
        if clear.size:
            h[clear] ^= h[rank]
        rank += 1
        if rank == rows:
            break
    return rank
