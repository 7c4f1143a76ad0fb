"""Hard-decision algebraic decoding: Berlekamp-Massey, Chien, Forney.

The core routine corrects e errors and f erasures whenever 2e + f < delta.
It is an exact bounded-distance decoder: a codeword comes back if and only
if one lies within the errors-and-erasures radius, and the returned word is
re-checked against the syndromes so a non-codeword is never emitted.

Polynomials are python lists of field elements in ascending degree order.
The syndrome polynomial convention is S(x) = sum_{i=1..delta-1} S_i x^(i-1)
with S_i = r(beta^i), which makes the Forney value at an errata position
with locator X simply Omega(X^-1) / Psi'(X^-1).
"""

from dataclasses import dataclass

import numpy as np

from .rscode import syndrome_symbol


@dataclass
class HardDecodeOutcome:
    status: str                 # "corrected" | "failure"
    codeword: np.ndarray | None
    error_count: int = 0

    @property
    def ok(self):
        return self.status == "corrected"


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(f, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        la = f._log[ai]
        for j, bj in enumerate(b):
            if bj:
                out[i + j] ^= int(f._antilog[la + f._log[bj]])
    return out


def _poly_eval_many(f, p, logx):
    """Evaluate p at the points beta^logx (vectorized over an int array)."""
    acc = np.zeros(logx.shape, dtype=np.int64)
    for d, coef in enumerate(p):
        if coef:
            acc ^= f._antilog[(f._log[coef] + d * logx) % (f.q - 1)]
    return acc


def _berlekamp_massey(f, s):
    """Minimal LFSR (connection polynomial) generating the sequence s."""
    c = [1]
    b = [1]
    L = 0
    shift = 1
    b0 = 1
    for n_idx, s_n in enumerate(s):
        d = s_n
        for i in range(1, min(L, len(c) - 1) + 1):
            if c[i] and s[n_idx - i]:
                d ^= int(f._antilog[f._log[c[i]] + f._log[s[n_idx - i]]])
        if d == 0:
            shift += 1
        elif 2 * L <= n_idx:
            t = c[:]
            coef = f.div(d, b0)
            c = c + [0] * (len(b) + shift - len(c)) if len(b) + shift > len(c) else c
            for i, bi in enumerate(b):
                if bi:
                    c[i + shift] ^= f.mul(coef, bi)
            L = n_idx + 1 - L
            b = t
            b0 = d
            shift = 1
        else:
            coef = f.div(d, b0)
            if len(b) + shift > len(c):
                c = c + [0] * (len(b) + shift - len(c))
            for i, bi in enumerate(b):
                if bi:
                    c[i + shift] ^= f.mul(coef, bi)
            shift += 1
    return _poly_trim(c), L


def errors_erasures_decode(spec, received, erasures=()):
    """Correct received (N symbols) given erased positions; 2e + f < delta.

    Returns HardDecodeOutcome; failure whenever no codeword lies within the
    errors-and-erasures radius of the input.
    """
    f = spec.field
    two_t = spec.N - spec.K
    erasures = sorted(set(int(e) for e in erasures))
    if any(e < 0 or e >= spec.N for e in erasures):
        raise ValueError("erasure position out of range")
    n_eras = len(erasures)
    received = np.asarray(received, dtype=np.int64)

    synd = syndrome_symbol(spec, received)
    if not synd.any():
        return HardDecodeOutcome("corrected", received.copy(), 0)
    if n_eras > two_t:
        return HardDecodeOutcome("failure", None)

    s_poly = [int(v) for v in synd]          # S_i at index i-1

    # erasure locator Gamma(x) = prod (1 - beta^j x)
    gamma = [1]
    for j in erasures:
        gamma = _poly_mul(f, gamma, [1, f.exp(j)])

    # Forney-modified syndromes; BM runs on the tail past the erasure count
    t_poly = _poly_mul(f, s_poly, gamma)[:two_t]
    lam, big_l = _berlekamp_massey(f, t_poly[n_eras:])
    if big_l > (two_t - n_eras) // 2 or big_l != len(lam) - 1:
        return HardDecodeOutcome("failure", None)

    # Chien search: error at j iff Lambda(beta^-j) = 0
    if big_l:
        logs = (-np.arange(spec.N, dtype=np.int64)) % (f.q - 1)
        vals = _poly_eval_many(f, lam, logs)
        err_pos = np.nonzero(vals == 0)[0]
        if err_pos.size != big_l or np.intersect1d(err_pos, erasures).size:
            return HardDecodeOutcome("failure", None)
    else:
        err_pos = np.zeros(0, dtype=np.int64)

    psi = _poly_mul(f, lam, gamma)
    omega = _poly_trim(_poly_mul(f, s_poly, psi)[:two_t])
    # formal derivative in char 2 keeps odd-degree terms only
    dpsi = [psi[d] if d % 2 == 1 else 0 for d in range(1, len(psi))]
    dpsi = _poly_trim(dpsi if dpsi else [0])

    corrected = received.copy()
    errata = list(err_pos) + erasures
    for j in errata:
        logxinv = (-j) % (f.q - 1)
        den = _poly_eval_many(f, dpsi, np.array([logxinv]))[0]
        if den == 0:
            return HardDecodeOutcome("failure", None)
        num = _poly_eval_many(f, omega, np.array([logxinv]))[0]
        mag = f.div(int(num), int(den))
        if mag == 0 and j not in erasures:
            return HardDecodeOutcome("failure", None)
        corrected[j] ^= mag

    if syndrome_symbol(spec, corrected).any():
        return HardDecodeOutcome("failure", None)
    return HardDecodeOutcome("corrected", corrected,
                             int(np.count_nonzero(corrected != received)))


def hdd_decode(spec, received):
    """Plain bounded-distance decoding (no erasures)."""
    return errors_erasures_decode(spec, received, ())


def gmd_decode(spec, received, reliabilities, soft_bits=None):
    """Generalized minimum distance decoding.

    Runs errors_erasures_decode with 0, 2, 4, ... least-reliable symbols
    erased and keeps the candidate whose BPSK image is closest to the soft
    input in Euclidean distance (when soft_bits is given; otherwise the
    first success wins). The zero-erasure trial makes plain HDD a special
    case, so GMD never does worse than HDD on a frame HDD solves.
    """
    from .rscode import symbols_to_bits

    reliabilities = np.asarray(reliabilities, dtype=float)
    order = np.argsort(reliabilities, kind="stable")
    best = None
    best_dist = np.inf
    seen = set()
    for n_erase in range(0, spec.delta, 2):
        out = errors_erasures_decode(spec, received, order[:n_erase])
        if not out.ok:
            continue
        key = out.codeword.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if soft_bits is None:
            return out
        bits = symbols_to_bits(out.codeword, spec.m)
        dist = float(np.sum((np.asarray(soft_bits) - (1.0 - 2.0 * bits)) ** 2))
        if dist < best_dist:
            best_dist = dist
            best = out
    return best if best is not None else HardDecodeOutcome("failure", None)


def dual_fill_row(spec, j, s_l):
    """Dual codeword with a lone 1 at s_l[j] and zeros at the rest of s_l.

    The dual of RS(N, K) here is {(beta^p * A(beta^p))_p : deg A < N-K}, a
    generalized RS code of minimum distance K+1, so fixing the N-K values on
    s_l always determines the word: A is the Lagrange interpolant through
    those constraints, which collapses to a closed form with a single
    nonzero target value.
    """
    f = spec.field
    r = spec.N - spec.K
    s_l = np.asarray(s_l, dtype=np.int64)
    if s_l.shape != (r,) or len(set(s_l.tolist())) != r:
        raise ValueError(f"s_l must hold {r} distinct positions")
    if not 0 <= j < r:
        raise IndexError("row index out of range")
    pj = int(s_l[j])
    others = np.delete(s_l, j)

    pts = f._antilog[np.arange(spec.N, dtype=np.int64)]   # beta^p for all p
    num = np.ones(spec.N, dtype=np.int64)
    den = 1
    xj = f.exp(pj)
    for w in others:
        xw = f.exp(int(w))
        num = f.mul_vec(num, pts ^ xw)
        den = f.mul(den, xj ^ xw)
    scale = f.div(f.inv(xj), den) if den else 0
    row = f.mul_vec(f.mul_vec(num, pts), scale)
    return row
