"""Arithmetic over GF(2^m) via log/antilog tables.

Elements are plain ints in [0, 2^m). Addition is XOR. Multiplication,
inversion and powers go through discrete-log tables built from a primitive
polynomial, so they are O(1) per operation and vectorize over numpy arrays.
"""

import numpy as np

# Primitive polynomials (bit i = coefficient of x^i), one per field size.
PRIMITIVE_POLYS = {
    2: 0b111,        # x^2 + x + 1
    3: 0b1011,       # x^3 + x + 1
    4: 0b10011,      # x^4 + x + 1
    5: 0b100101,     # x^5 + x^2 + 1
    6: 0b1000011,    # x^6 + x + 1
    7: 0b10001001,   # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
}


class GaloisField:
    """GF(2^m) with tables for the primitive element beta = x."""

    def __init__(self, m, primitive_poly=None):
        if primitive_poly is None:
            if m not in PRIMITIVE_POLYS:
                raise ValueError(f"no default primitive polynomial for m={m}")
            primitive_poly = PRIMITIVE_POLYS[m]
        if primitive_poly >> m != 1:
            raise ValueError(f"polynomial 0x{primitive_poly:x} is not monic of degree {m}")
        self.m = m
        self.q = 1 << m
        self.primitive_poly = primitive_poly

        # antilog[i] = beta^i; built by repeated multiplication by x with
        # reduction. A primitive polynomial must cycle through every nonzero
        # element exactly once before returning to 1.
        antilog = np.zeros(2 * self.q, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        a = 1
        for i in range(self.q - 1):
            if i > 0 and a == 1:
                raise ValueError(f"0x{primitive_poly:x} is not primitive for m={m}")
            antilog[i] = a
            log[a] = i
            a <<= 1
            if a & self.q:
                a ^= primitive_poly
        if a != 1:
            raise ValueError(f"0x{primitive_poly:x} is not primitive for m={m}")
        # doubled antilog table lets vectorized code skip the mod (q-1)
        antilog[self.q - 1 : 2 * (self.q - 1)] = antilog[: self.q - 1]
        self._antilog = antilog
        self._log = log

    def __repr__(self):
        return f"GaloisField(m={self.m}, poly=0x{self.primitive_poly:x})"

    def __eq__(self, other):
        return (isinstance(other, GaloisField)
                and self.m == other.m
                and self.primitive_poly == other.primitive_poly)

    def __hash__(self):
        return hash((self.m, self.primitive_poly))

    @property
    def alpha(self):
        """The primitive element beta (the residue of x)."""
        return 2

    def exp(self, i):
        """beta^i for integer i (any sign)."""
        return int(self._antilog[i % (self.q - 1)])

    def log(self, a):
        """Discrete log base beta; a must be nonzero."""
        if a == 0:
            raise ValueError("log of zero")
        return int(self._log[a])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self._antilog[self._log[a] + self._log[b]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self._antilog[self.q - 1 - self._log[a]])

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return int(self._antilog[self._log[a] - self._log[b] + self.q - 1])

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0 if e > 0 else 1
        return int(self._antilog[(self._log[a] * e) % (self.q - 1)])

    def mul_vec(self, a, b):
        """Elementwise product of two int arrays (broadcasting allowed)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        nz = (a != 0) & (b != 0)
        if np.any(nz):
            ab = np.broadcast_to(a, out.shape)[nz]
            bb = np.broadcast_to(b, out.shape)[nz]
            out[nz] = self._antilog[self._log[ab] + self._log[bb]]
        return out

    def companion(self, a):
        """m x m GF(2) matrix M of multiplication by a: M @ vec(b) = vec(a*b).

        vec(b) stacks the polynomial-basis coordinates of b with the
        coefficient of 1 first, so column c of M is vec(a * beta^c).
        """
        m = self.m
        out = np.zeros((m, m), dtype=np.uint8)
        for c in range(m):
            v = self.mul(a, self.exp(c))
            for r in range(m):
                out[r, c] = (v >> r) & 1
        return out

    def companion_table(self):
        """(q, m, m) uint8 array of companion matrices for every element."""
        if not hasattr(self, "_companion_table"):
            elems = np.arange(self.q, dtype=np.int64)
            basis = self._antilog[: self.m]
            prods = self.mul_vec(elems[:, None], basis[None, :])  # (q, m)
            shifts = np.arange(self.m, dtype=np.int64)
            # tab[a, r, c] = bit r of a * beta^c
            tab = ((prods[:, None, :] >> shifts[None, :, None]) & 1).astype(np.uint8)
            self._companion_table = tab
        return self._companion_table


def vec(a, m):
    """m-bit column of the element a, coefficient of 1 first."""
    return np.array([(a >> r) & 1 for r in range(m)], dtype=np.uint8)


def unvec(bits):
    """Inverse of vec: bits (LSB first) back to an int element."""
    a = 0
    for r, b in enumerate(bits):
        a |= int(b) << r
    return a
