"""Dense matrices and polynomials over the two-element field."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from itertools import product as _cartesian
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import NonSquareError, RankDeficientError, ShapeMismatchError


class BitMatrix:
    """Immutable dense matrix over GF(2), stored as a read-only uint8 array."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.uint8, copy=True)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise ShapeMismatchError(f"expected a 2-d array, got {a.ndim}-d")
        a &= 1
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "BitMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        height = len(columns[0]) if rows is None else rows
        a = np.zeros((height, len(columns)), dtype=np.uint8)
        for j, col in enumerate(columns):
            a[:, j] = col
        return cls(a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if not rows:
            return cls.zeros(0, cols or 0)
        return cls.from_columns(rows, cols).T

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def __getitem__(self, idx):
        return self._a[idx]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self._a[:, j])

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def select_columns(self, idx: Sequence[int]) -> "BitMatrix":
        return BitMatrix(self._a[:, list(idx)].reshape(self.rows, len(idx)))

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix(self._a.T)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self._a.astype(np.int64) @ other._a.astype(np.int64)
        return BitMatrix(prod & 1)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(self._a ^ other._a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.tolist()})"

    def packed(self) -> np.ndarray:
        return _kernels.pack(self._a) if self.rows else np.zeros((0, _kernels.n_words(self.cols)), np.uint64)

    def rank(self) -> int:
        return rank(self)

    def det(self) -> int:
        return det(self)

    def inverse(self) -> "BitMatrix":
        n, m = self.shape
        if n != m:
            raise NonSquareError(f"matrix of shape {self.shape} is not square")
        if n == 0:
            return self
        aug = np.hstack([self._a, np.eye(n, dtype=np.uint8)])
        basis, piv = _kernels.echelon(_kernels.pack(aug), n)
        if piv.shape[0] < n:
            raise RankDeficientError("matrix is singular over GF(2)")
        return BitMatrix(_kernels.unpack(basis, 2 * n)[:, n:])

    def pivot_columns(self) -> list[int]:
        if self.rows == 0:
            return []
        return [int(c) for c in _kernels.echelon(self.packed(), self.cols)[1]]


def rank(m: BitMatrix) -> int:
    """Row rank over GF(2)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _kernels.rank(m.packed(), m.cols)


def det(m: BitMatrix) -> int:
    """Determinant over GF(2); the empty matrix has determinant 1."""
    if m.rows != m.cols:
        raise NonSquareError(f"matrix of shape {m.shape} is not square")
    return int(rank(m) == m.rows)


def column_masks(m: BitMatrix) -> list[int]:
    """Each column as an int bitmask (bit i = row i)."""
    weights = 1 << np.arange(m.rows, dtype=object)
    return [int(v) for v in (m.array.astype(object).T @ weights)] if m.rows else [0] * m.cols


def masks_independent(masks: Sequence[int]) -> bool:
    """Linear independence of a few vectors given as bitmasks."""
    basis: list[int] = []  # distinct leading bits, kept in decreasing order
    for v in masks:
        for b in basis:
            v = min(v, v ^ b)
        if v == 0:
            return False
        basis.append(v)
        basis.sort(reverse=True)
    return True


def solve_left_multiplier(a: BitMatrix, b: BitMatrix) -> BitMatrix | None:
    """Invertible ``X`` with ``X @ a == b``, or ``None``.

    ``a`` must have full row rank.  The candidate is read off an invertible
    column block of ``a`` and then verified on every column.
    """
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    n = a.rows
    piv = a.pivot_columns()
    if len(piv) < n:
        raise RankDeficientError(f"matrix has rank {len(piv)} < {n} rows")
    if n == 0:
        return BitMatrix.zeros(0, 0)
    x = b.select_columns(piv) @ a.select_columns(piv).inverse()
    if x @ a != b or det(x) != 1:
        return None
    return x


def iter_gl(n: int) -> Iterator[BitMatrix]:
    """All invertible n x n matrices over GF(2), columns chosen greedily."""
    vecs = [np.array(v, dtype=np.uint8) for v in _cartesian((0, 1), repeat=n)][1:]

    def extend(cols: list[np.ndarray]) -> Iterator[list[np.ndarray]]:
        if len(cols) == n:
            yield cols
            return
        for v in vecs:
            trial = cols + [v]
            if rank(BitMatrix(np.array(trial).T)) == len(trial):
                yield from extend(trial)

    for cols in extend([]):
        yield BitMatrix(np.array(cols, dtype=np.uint8).T if cols else np.zeros((0, 0), np.uint8))


def binom_mod2(n: int, i: int) -> int:
    """C(n, i) mod 2 by Lucas' theorem: 1 iff every bit of i is a bit of n."""
    if i < 0 or n < 0 or i > n:
        return 0
    return int(i & ~n == 0)


def all_vectors(n: int) -> list[tuple[int, ...]]:
    return [tuple(v) for v in _cartesian((0, 1), repeat=n)]


# --------------------------------------------------------------------------
# polynomials

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2) in ``nvars`` commuting variables.

    A term is an exponent tuple; every listed term has coefficient 1, so
    addition is symmetric difference.
    """

    nvars: int
    terms: frozenset[Exponent] = frozenset()

    def __post_init__(self):
        for t in self.terms:
            if len(t) != self.nvars:
                raise ShapeMismatchError(f"term {t} does not have {self.nvars} exponents")

    @classmethod
    def zero(cls, nvars: int) -> "Gf2Poly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "Gf2Poly":
        return cls(nvars, frozenset({(0,) * nvars}))

    @classmethod
    def var(cls, nvars: int, i: int) -> "Gf2Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, frozenset({tuple(e)}))

    @classmethod
    def monomial(cls, exps: Iterable[int]) -> "Gf2Poly":
        e = tuple(exps)
        return cls(len(e), frozenset({e}))

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[Exponent]) -> "Gf2Poly":
        acc: set[Exponent] = set()
        for t in terms:
            acc ^= {tuple(t)}
        return cls(nvars, frozenset(acc))

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "Gf2Poly":
        """The degree-1 form sum(c_j x_j)."""
        n = len(coeffs)
        return cls.from_terms(n, (tuple(int(i == j) for i in range(n)) for j, c in enumerate(coeffs) if c & 1))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(t) for t in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(t) for t in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Gf2Poly"]:
        parts: dict[int, set[Exponent]] = {}
        for t in self.terms:
            parts.setdefault(sum(t), set()).add(t)
        return {d: Gf2Poly(self.nvars, frozenset(ts)) for d, ts in sorted(parts.items())}

    def component(self, d: int) -> "Gf2Poly":
        return Gf2Poly(self.nvars, frozenset(t for t in self.terms if sum(t) == d))

    def truncate(self, d: int) -> "Gf2Poly":
        return Gf2Poly(self.nvars, frozenset(t for t in self.terms if sum(t) <= d))

    def _check(self, other: "Gf2Poly") -> None:
        if self.nvars != other.nvars:
            raise ShapeMismatchError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        self._check(other)
        return Gf2Poly(self.nvars, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        self._check(other)
        acc: set[Exponent] = set()
        for s in self.terms:
            for t in other.terms:
                acc ^= {tuple(a + b for a, b in zip(s, t))}
        return Gf2Poly(self.nvars, frozenset(acc))

    def square(self) -> "Gf2Poly":
        # Frobenius: cross terms cancel in characteristic two
        return Gf2Poly(self.nvars, frozenset(tuple(2 * a for a in t) for t in self.terms))

    def __pow__(self, e: int) -> "Gf2Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Gf2Poly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def extend(self, nvars: int) -> "Gf2Poly":
        """Same polynomial viewed in a ring with more (trailing) variables."""
        pad = (0,) * (nvars - self.nvars)
        return Gf2Poly(nvars, frozenset(t + pad for t in self.terms))

    def substitute(self, images: Sequence["Gf2Poly"]) -> "Gf2Poly":
        """Replace variable i by ``images[i]``."""
        if len(images) != self.nvars:
            raise ShapeMismatchError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].nvars
        powers: dict[tuple[int, int], Gf2Poly] = {}

        def power(i: int, e: int) -> Gf2Poly:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        total = Gf2Poly.zero(target)
        for t in self.terms:
            factors = [power(i, e) for i, e in enumerate(t) if e]
            total = total + _fold(lambda p, q: p * q, factors, Gf2Poly.one(target))
        return total

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else default_names(self.nvars)

        def mono(t: Exponent) -> str:
            parts = []
            for name, e in zip(names, t):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            return "*".join(parts) if parts else "1"

        ordered = sorted(self.terms, key=lambda t: (-sum(t), tuple(-a for a in t)))
        return " + ".join(mono(t) for t in ordered)

    def __str__(self) -> str:
        return self.format()


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]
