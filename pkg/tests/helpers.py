"""Small independent reference computations shared by the tests."""

from itertools import product
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
SAMPLES = ROOT / "samples"


def rank_mod2(a) -> int:
    a = np.array(a, dtype=np.uint8) % 2
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def codewords(g) -> np.ndarray:
    """All 2^k codewords of the row space of a 0/1 array."""
    g = np.array(g, dtype=np.int64)
    msgs = np.array(list(product((0, 1), repeat=g.shape[0])), dtype=np.int64)
    return (msgs @ g) % 2


def brute_dmin(g) -> int:
    w = codewords(g).sum(axis=1)
    return int(w[w > 0].min())
