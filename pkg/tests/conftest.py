from __future__ import annotations

import numpy as np
from hypothesis import settings, strategies as st

from smallcover_lab.gf2 import BitMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def bit_matrices(draw, rows=st.integers(1, 6), cols=st.integers(1, 6)):
    r, c = draw(rows), draw(cols)
    bits = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
    return BitMatrix(np.array(bits, dtype=np.uint8).reshape(r, c))


@st.composite
def invertible_matrices(draw, n=st.integers(1, 6)):
    """A permutation matrix followed by random row additions."""
    size = draw(n)
    a = np.eye(size, dtype=np.uint8)[draw(st.permutations(range(size)))]
    pairs = st.tuples(st.integers(0, size - 1), st.integers(0, size - 1))
    for i, j in draw(st.lists(pairs, max_size=3 * size)):
        if i != j:
            a[i] ^= a[j]
    return BitMatrix(a)
