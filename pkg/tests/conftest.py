import itertools

import numpy as np
import pytest

from rsadapt.galois import GaloisField
from rsadapt.rscode import RSCodeSpec, encode


def all_codewords(spec):
    """Every codeword of a small code as a (q^free, N) symbol array."""
    q = spec.field.q
    free = spec.K - spec.shorten_by
    words = [
        encode(spec, np.array(msg, dtype=np.int64))
        for msg in itertools.product(range(q), repeat=free)
    ]
    return np.array(words, dtype=np.int64)


@pytest.fixture(scope="session")
def gf8():
    return GaloisField(3)


@pytest.fixture(scope="session")
def rs73(gf8):
    return RSCodeSpec(gf8, 7, 3)


@pytest.fixture(scope="session")
def rs73_codebook(rs73):
    return all_codewords(rs73)
