"""Reed-Solomon code construction and its binary image.

A narrow-sense RS(N, K) code over GF(2^m) is fixed by the symbol-level
parity-check matrix H_s with entry (i, j) = beta^((i+1)*j) (0-based i, j).
Expanding every entry into its m x m companion matrix and every symbol into
m bits (coefficient of 1 first) yields the binary image parity check H_b
with H_b @ bits(c) = 0 exactly when H_s @ c = 0.

Shortening by s fixes the s leading information symbols to zero. Everything
here works on the full length N; the zero prefix is simply never transmitted
and its bit LLRs get pinned to +inf by the channel models.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .galois import GaloisField


@dataclass(eq=False)
class RSCodeSpec:
    """An RS(N, K) code over GF(2^m), optionally shortened by shorten_by."""

    field: GaloisField
    N: int
    K: int
    shorten_by: int = 0
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not (1 <= self.K <= self.N <= self.field.q - 1):
            raise ValueError(f"need 1 <= K <= N <= {self.field.q - 1}")
        if not (0 <= self.shorten_by < self.K):
            raise ValueError("shorten_by must be in [0, K)")

    @property
    def m(self):
        return self.field.m

    @property
    def delta(self):
        """Design distance N - K + 1."""
        return self.N - self.K + 1

    @property
    def t(self):
        """Hard-decision error-correction radius."""
        return (self.N - self.K) // 2

    @property
    def n(self):
        """Binary image length in bits."""
        return self.N * self.m

    @property
    def k(self):
        return self.K * self.m

    @property
    def rate(self):
        """Effective rate after shortening, (K-s)/(N-s)."""
        return (self.K - self.shorten_by) / (self.N - self.shorten_by)

    @property
    def pinned_bits(self):
        """Bit indices of the zero prefix (empty when not shortened)."""
        return np.arange(self.shorten_by * self.m)

    @property
    def h_symbol(self):
        if "hs" not in self._cache:
            self._cache["hs"] = parity_check_symbol(self)
        return self._cache["hs"]

    @property
    def h_binary(self):
        if "hb" not in self._cache:
            self._cache["hb"] = binary_expansion(self.h_symbol, self.field)
        return self._cache["hb"]

    def __repr__(self):
        short = f", shorten_by={self.shorten_by}" if self.shorten_by else ""
        return f"RSCodeSpec(GF(2^{self.m}), N={self.N}, K={self.K}{short})"


def parity_check_symbol(spec):
    """(N-K) x N symbol parity-check matrix, entry (i, j) = beta^((i+1)*j)."""
    f = spec.field
    r = spec.N - spec.K
    if r == 0:
        return np.zeros((0, spec.N), dtype=np.int64)
    i = np.arange(1, r + 1, dtype=np.int64)[:, None]
    j = np.arange(spec.N, dtype=np.int64)[None, :]
    return f._antilog[(i * j) % (f.q - 1)]


def binary_expansion(hs, field):
    """Binary image of a symbol matrix: each entry becomes its companion block.

    The result h satisfies h @ symbols_to_bits(c, m) == 0 (mod 2) iff
    hs @ c == 0 over the field.
    """
    r, ncols = hs.shape
    m = field.m
    if r == 0:
        return np.zeros((0, ncols * m), dtype=np.uint8)
    tab = field.companion_table()
    blocks = tab[hs]                       # (r, ncols, m, m)
    return blocks.transpose(0, 2, 1, 3).reshape(r * m, ncols * m).copy()


def symbols_to_bits(symbols, m):
    """Bit i = coefficient r of symbol j, at i = j*m + r (coeff of 1 first)."""
    symbols = np.asarray(symbols, dtype=np.int64)
    shifts = np.arange(m, dtype=np.int64)
    return ((symbols[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)


def bits_to_symbols(bits, m):
    bits = np.asarray(bits, dtype=np.int64).reshape(-1, m)
    weights = (1 << np.arange(m, dtype=np.int64))
    return bits @ weights


def hard_bits(llr):
    """Sign decision: positive LLR -> 0, negative -> 1 (zero falls to 0)."""
    return (np.asarray(llr) < 0).astype(np.uint8)


def hard_symbols(llr, m):
    return bits_to_symbols(hard_bits(llr), m)


def _systematic_parity_matrix(spec):
    """Q such that parity = Q @ msg fills positions K..N-1 of a codeword.

    Obtained by reducing H_s so its last N-K columns become the identity;
    that submatrix is Vandermonde-like and always invertible.
    """
    f = spec.field
    r = spec.N - spec.K
    if r == 0:
        return np.zeros((0, spec.K), dtype=np.int64)
    h = spec.h_symbol.copy()
    for t in range(r):
        col = spec.K + t
        piv = next(i for i in range(t, r) if h[i, col] != 0)
        if piv != t:
            h[[t, piv]] = h[[piv, t]]
        h[t] = f.mul_vec(h[t], f.inv(int(h[t, col])))
        for i in range(r):
            if i != t and h[i, col] != 0:
                h[i] ^= f.mul_vec(h[t], int(h[i, col]))
    return h[:, : spec.K]


def encode(spec, msg):
    """Systematic codeword of length N from K - shorten_by message symbols.

    Message symbols land verbatim in positions shorten_by..K-1 (the first
    shorten_by positions are the structural zeros), parity in K..N-1.
    """
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape != (spec.K - spec.shorten_by,):
        raise ValueError(f"expected {spec.K - spec.shorten_by} message symbols")
    if np.any((msg < 0) | (msg >= spec.field.q)):
        raise ValueError("message symbols out of field range")
    if "enc" not in spec._cache:
        spec._cache["enc"] = _systematic_parity_matrix(spec)
    q_mat = spec._cache["enc"]
    info = np.zeros(spec.K, dtype=np.int64)
    info[spec.shorten_by:] = msg
    c = np.zeros(spec.N, dtype=np.int64)
    c[: spec.K] = info
    if spec.N > spec.K:
        prods = spec.field.mul_vec(q_mat, info[None, :])
        c[spec.K:] = np.bitwise_xor.reduce(prods, axis=1)
    return c


def syndrome_symbol(spec, word):
    """H_s @ word over the field; all zero exactly for codewords."""
    f = spec.field
    r = spec.N - spec.K
    if r == 0:
        return np.zeros(0, dtype=np.int64)
    word = np.asarray(word, dtype=np.int64)
    nz = np.nonzero(word)[0]
    if nz.size == 0:
        return np.zeros(r, dtype=np.int64)
    i = np.arange(1, r + 1, dtype=np.int64)[:, None]
    logs = (i * nz[None, :] + f._log[word[nz]][None, :]) % (f.q - 1)
    return np.bitwise_xor.reduce(f._antilog[logs], axis=1)


def random_codeword(spec, rng):
    """Uniform random codeword (symbols), honoring the shortened prefix."""
    msg = rng.integers(0, spec.field.q, size=spec.K - spec.shorten_by)
    return encode(spec, msg)
