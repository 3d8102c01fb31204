from __future__ import annotations

import numpy as np
import pytest

from smallcover_lab import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _random(rng, rows, cols):
    return rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)


def test_pack_roundtrip():
    rng = np.random.default_rng(0)
    for cols in (1, 63, 64, 65, 130):
        dense = _random(rng, 5, cols)
        assert np.array_equal(_kernels.unpack(_kernels.pack(dense), cols), dense)


@pytest.mark.parametrize("shape", [(3, 3), (10, 70), (40, 20), (65, 130)])
def test_echelon_is_rref(shape):
    rng = np.random.default_rng(1)
    dense = _random(rng, *shape)
    basis, piv = _kernels.echelon_numpy(_kernels.pack(dense), shape[1])
    out = _kernels.unpack(basis, shape[1])
    for i, p in enumerate(piv):
        assert out[i, p] == 1 and out[:, p].sum() == 1
    assert list(piv) == sorted(piv)
    # same row space: reducing the original rows leaves nothing
    assert not _kernels.reduce_numpy(_kernels.pack(dense), basis, piv).any()


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_numba_numpy_parity(seed):
    rng = np.random.default_rng(seed)
    rows, cols = int(rng.integers(1, 50)), int(rng.integers(1, 150))
    packed = _kernels.pack(_random(rng, rows, cols))
    b1, p1 = _kernels.echelon_numpy(packed, cols)
    b2, p2 = _kernels.echelon_numba(packed.copy(), cols)
    assert np.array_equal(b1, b2) and np.array_equal(p1, p2)
    vecs = _kernels.pack(_random(rng, 7, cols))
    assert np.array_equal(_kernels.reduce_numpy(vecs, b1, p1), _kernels.reduce_numba(vecs.copy(), b2, p2))


def test_backend_flag():
    assert _kernels.BACKEND in ("numba", "numpy")
