"""Bit-packed GF(2) elimination kernels.

Rows are packed little-endian into ``uint64`` words: column ``c`` lives in
word ``c >> 6`` at bit ``c & 63``.  Two interchangeable implementations are
provided, one compiled with numba and one in plain numpy.  The numba path is
used when numba imports and ``SMALLCOVER_NUMBA`` is not set to ``0``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_flag = os.environ.get("SMALLCOVER_NUMBA", "1").strip().lower()
USE_NUMBA = HAVE_NUMBA and _flag not in ("0", "false", "no", "off")
BACKEND = "numba" if USE_NUMBA else "numpy"

WORD = 64


def n_words(ncols: int) -> int:
    return max(1, (ncols + WORD - 1) // WORD)


def pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix of shape (r, c) into uint64 words of shape (r, w)."""
    dense = np.asarray(dense, dtype=np.uint8)
    if dense.ndim == 1:
        dense = dense[None, :]
    r, c = dense.shape
    w = n_words(c)
    padded = np.zeros((r, w * WORD), dtype=np.uint8)
    padded[:, :c] = dense & 1
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False).reshape(r, w)


def unpack(packed: np.ndarray, ncols: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    r = packed.shape[0]
    as_bytes = packed.astype("<u8", copy=False).view(np.uint8).reshape(r, -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :ncols].copy()


# --------------------------------------------------------------------------
# numpy implementations


def echelon_numpy(rows: np.ndarray, ncols: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(rows, dtype=np.uint64, copy=True)
    nr = a.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nr:
            break
        w, s = c >> 6, np.uint64(c & 63)
        col = (a[r:, w] >> s) & np.uint64(1)
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        mask = ((a[:, w] >> s) & np.uint64(1)).astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r].copy(), np.array(pivots, dtype=np.int64)


def reduce_numpy(vecs: np.ndarray, basis: np.ndarray, pivots: np.ndarray) -> np.ndarray:
    out = np.array(vecs, dtype=np.uint64, copy=True)
    for b in range(basis.shape[0]):
        c = int(pivots[b])
        w, s = c >> 6, np.uint64(c & 63)
        mask = ((out[:, w] >> s) & np.uint64(1)).astype(bool)
        out[mask] ^= basis[b]
    return out


# --------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def echelon_numba(rows, ncols):
        a = rows.copy()
        nr, nw = a.shape
        pivots = np.empty(min(nr, ncols), dtype=np.int64)
        one = np.uint64(1)
        r = 0
        for c in range(ncols):
            if r == nr:
                break
            w = c >> 6
            bit = one << np.uint64(c & 63)
            p = -1
            for i in range(r, nr):
                if a[i, w] & bit:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(nw):
                    t = a[r, j]
                    a[r, j] = a[p, j]
                    a[p, j] = t
            for i in range(nr):
                if i != r and (a[i, w] & bit):
                    for j in range(nw):
                        a[i, j] ^= a[r, j]
            pivots[r] = c
            r += 1
        return a[:r].copy(), pivots[:r].copy()

    @njit(cache=True)
    def reduce_numba(vecs, basis, pivots):
        out = vecs.copy()
        nw = out.shape[1]
        one = np.uint64(1)
        for i in range(out.shape[0]):
            for b in range(basis.shape[0]):
                c = pivots[b]
                w = c >> 6
                if out[i, w] & (one << np.uint64(c & 63)):
                    for j in range(nw):
                        out[i, j] ^= basis[b, j]
        return out

else:  # pragma: no cover
    echelon_numba = echelon_numpy
    reduce_numba = reduce_numpy


def echelon(rows: np.ndarray, ncols: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form of packed ``rows``.

    Returns the nonzero rows of the RREF and their pivot columns (ascending).
    Every basis row is zero in every other row's pivot column.
    """
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if rows.shape[0] == 0 or ncols == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else n_words(ncols)), np.uint64), np.zeros(0, np.int64)
    if USE_NUMBA:
        return echelon_numba(rows, ncols)
    return echelon_numpy(rows, ncols)


def reduce(vecs: np.ndarray, basis: np.ndarray, pivots: np.ndarray) -> np.ndarray:
    """Normal form of each packed vector modulo the span of an RREF basis."""
    vecs = np.ascontiguousarray(vecs, dtype=np.uint64)
    if basis.shape[0] == 0 or vecs.shape[0] == 0:
        return vecs.copy()
    if USE_NUMBA:
        return reduce_numba(vecs, np.ascontiguousarray(basis), np.ascontiguousarray(pivots))
    return reduce_numpy(vecs, basis, pivots)


def rank(rows: np.ndarray, ncols: int) -> int:
    return int(echelon(rows, ncols)[1].shape[0])
