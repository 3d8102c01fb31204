"""Projective fibre sums of labeled polygons and their decomposition.

A labeled polygon is a :class:`ProjChar` over the standard m-gon, whose
facet i meets facets i-1 and i+1; vertex v is the corner F_v ∩ F_{v+1}.
Labels need not be in standard form here: every operation works with the
raw (a|b) columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DegenerateDeterminantError,
    DimensionMismatchError,
    LabelMismatchError,
    NotDisjointError,
    NotIrreducibleError,
    ShapeMismatchError,
)
from .gf2 import BitMatrix, solve_left_multiplier
from .polytope import make_polygon
from .projbundle import ProjChar

LabeledPolygon = ProjChar


def labeled_polygon(columns: Sequence[Sequence[int]], fiber_dim: int | None = None) -> ProjChar:
    """Labeled m-gon from full (a|b) columns."""
    cols = [tuple(int(v) for v in c) for c in columns]
    f = len(cols[0]) - 2 if fiber_dim is None else fiber_dim
    return ProjChar(make_polygon(len(cols)), f, BitMatrix.from_columns(cols, rows=2 + f))


def _check_polygon(p: ProjChar) -> None:
    if p.n != 2 or not p.base.is_polygon():
        raise DimensionMismatchError("expected a labeled polygon (standard m-gon base)")


def _column(p: ProjChar, i: int) -> tuple[int, ...]:
    return tuple(int(v) for v in p.labels.array[:, i % p.m])


def _adjacent(m: int, i: int, j: int) -> bool:
    return (i - j) % m in (1, m - 1)


def fibre_sum(p1: ProjChar, v1: int, p2: ProjChar, v2: int) -> ProjChar:
    """Glue two labeled polygons at matching corners.

    The result lists the facets of p1 starting at F_{v1+1} and ending at the
    merged F_{v1}, followed by the remaining facets of p2.  The
    orientation-preserving pairing (F_{v1} with F_{v2+1}) is tried first,
    then the reflected one.
    """
    _check_polygon(p1)
    _check_polygon(p2)
    if p1.fiber_dim != p2.fiber_dim:
        raise DimensionMismatchError(f"fibre dimensions differ: {p1.fiber_dim} vs {p2.fiber_dim}")
    m1, m2 = p1.m, p2.m
    if not (0 <= v1 < m1 and 0 <= v2 < m2):
        raise ShapeMismatchError("vertex index out of range")
    a_idx = [(v1 + 1 + t) % m1 for t in range(m1)]  # starts at F_{v1+1}, ends at F_{v1}
    b_fwd = [(v2 + 1 + t) % m2 for t in range(m2)]  # starts at F_{v2+1}, ends at F_{v2}
    c1_first, c1_last = _column(p1, a_idx[0]), _column(p1, a_idx[-1])
    if c1_last == _column(p2, b_fwd[0]) and c1_first == _column(p2, b_fwd[-1]):
        b_idx = b_fwd
    elif c1_last == _column(p2, b_fwd[-1]) and c1_first == _column(p2, b_fwd[0]):
        b_idx = b_fwd[::-1]
    else:
        raise LabelMismatchError(
            f"labels at vertex {v1} of the first polygon do not match vertex {v2} of the second"
        )
    cols = [_column(p1, i) for i in a_idx] + [_column(p2, j) for j in b_idx[1:-1]]
    return labeled_polygon(cols, p1.fiber_dim)


def find_split_pair(p: ProjChar) -> tuple[int, int] | None:
    """Lexicographically first non-adjacent facet pair with different a-labels."""
    _check_polygon(p)
    m = p.m
    for i in range(m):
        for j in range(i + 2, m):
            if _adjacent(m, i, j):
                continue
            if p.a(i) != p.a(j):
                return i, j
    return None


def split(p: ProjChar, i: int, j: int) -> tuple[ProjChar, ProjChar]:
    """Inverse fibre sum along the disjoint facets F_i and F_j.

    The first piece has facets F_i, F_{i+1}, ..., F_j and the second
    F_j, ..., F_i (cyclically); in each, the new corner is the last vertex.
    """
    _check_polygon(p)
    m = p.m
    if i == j or _adjacent(m, i, j):
        raise NotDisjointError(f"facets {i} and {j} intersect")
    if p.a(i) == p.a(j):
        raise DegenerateDeterminantError(f"facets {i} and {j} carry the same a-label {p.a(i)}")
    first = [(i + t) % m for t in range((j - i) % m + 1)]
    second = [(j + t) % m for t in range((i - j) % m + 1)]
    return (
        labeled_polygon([_column(p, f) for f in first], p.fiber_dim),
        labeled_polygon([_column(p, f) for f in second], p.fiber_dim),
    )


@dataclass(frozen=True)
class IrreduciblePiece:
    """Normalized 3-gon over RP^2 or unsplittable 4-gon over T^2.

    ``witness`` is the invertible X with X @ raw labels = ``source`` labels.
    """

    kind: str  # "TriangleOverRP2" | "SquareOverT2"
    b: tuple[tuple[int, ...], ...]
    source: ProjChar
    witness: BitMatrix

    @property
    def base_name(self) -> str:
        return "RP2" if self.kind == "TriangleOverRP2" else "T2"


def normalize_piece(p: ProjChar) -> IrreduciblePiece:
    """Left-multiply by [[A^-1, 0], [C, I]] so facets 0 and 1 become (e_1|0), (e_2|0)."""
    _check_polygon(p)
    m, f = p.m, p.fiber_dim
    if m == 4 and find_split_pair(p) is not None or m not in (3, 4):
        raise NotIrreducibleError(f"a {m}-gon that admits a split is not an irreducible piece")
    a_blk = p.a_part.select_columns([0, 1])
    if a_blk.det() != 1:
        raise NotIrreducibleError("facets 0 and 1 do not span")
    a_inv = a_blk.inverse()
    b_blk = p.b_part.select_columns([0, 1]) if f else BitMatrix.zeros(0, 2)
    x = np.zeros((2 + f, 2 + f), dtype=np.uint8)
    x[:2, :2] = a_inv.array
    if f:
        x[2:, :2] = (b_blk @ a_inv).array
        x[2:, 2:] = np.eye(f, dtype=np.uint8)
    xm = BitMatrix(x)
    labels = xm @ p.labels
    src = ProjChar(p.base, f, labels)
    if m == 3:
        return IrreduciblePiece("TriangleOverRP2", (src.b(2),), src, xm)
    return IrreduciblePiece("SquareOverT2", (src.b(2), src.b(3)), src, xm)


@dataclass
class DecompositionNode:
    """Node of a split tree: a leaf carries a piece, an inner node a split."""

    polygon: ProjChar
    pair: tuple[int, int] | None = None
    children: list["DecompositionNode"] = field(default_factory=list)
    piece: IrreduciblePiece | None = None

    def leaves(self) -> Iterator["DecompositionNode"]:
        if self.piece is not None:
            yield self
        for c in self.children:
            yield from c.leaves()

    def split_count(self) -> int:
        return (1 if self.pair is not None else 0) + sum(c.split_count() for c in self.children)


def decomposition_tree(p: ProjChar) -> DecompositionNode:
    _check_polygon(p)
    if not p.validate().valid:
        raise NotIrreducibleError("labeling fails the spanning condition")
    pair = find_split_pair(p)
    if pair is None:
        if p.m >= 5:
            raise AssertionError(f"no split pair on a valid {p.m}-gon")
        return DecompositionNode(p, piece=normalize_piece(p))
    left, right = split(p, *pair)
    return DecompositionNode(p, pair, [decomposition_tree(left), decomposition_tree(right)])


def decompose(p: ProjChar) -> list[IrreduciblePiece]:
    """Split until only 3-gons and unsplittable 4-gons remain; leftmost first."""
    return [leaf.piece for leaf in decomposition_tree(p).leaves()]  # type: ignore[misc]


def recompose(node: DecompositionNode) -> ProjChar:
    """Fibre-sum a split tree back together along the corners the splits created.

    Gluing at those corners yields the node's polygon rotated to start at
    F_i; the rotation is undone so every level matches its split exactly.
    """
    if not node.children:
        return node.polygon
    left, right = (recompose(c) for c in node.children)
    glued = fibre_sum(left, left.m - 1, right, right.m - 1)
    i, m = node.pair[0], glued.m  # type: ignore[index]
    return labeled_polygon([_column(glued, s - i) for s in range(m)], glued.fiber_dim)


def full_matrix(p: ProjChar) -> BitMatrix:
    """Characteristic matrix of P x simplex(k-1): polygon facets, then simplex facets."""
    n, f = p.n, p.fiber_dim
    extra = np.zeros((n + f, f + 1 if f else 0), dtype=np.uint8)
    if f:
        extra[n:, :f] = np.eye(f, dtype=np.uint8)
        extra[n:, f] = 1
    return BitMatrix(np.hstack([p.labels.array, extra]))


def dihedral_relabelings(m: int) -> Iterator[list[int]]:
    """Facet orders of the m-gon under rotations, then reflections."""
    for r in range(m):
        yield [(r + t) % m for t in range(m)]
    for r in range(m):
        yield [(r - t) % m for t in range(m)]


def weak_equivalent(p1: ProjChar, p2: ProjChar, search_dihedral: bool = False) -> BitMatrix | None:
    """Invertible X with X @ Lambda_1 = Lambda_2 on the full characteristic matrices.

    With ``search_dihedral`` the facets of p1 are also relabeled by the
    symmetries of the polygon.
    """
    if (p1.n, p1.m, p1.fiber_dim) != (p2.n, p2.m, p2.fiber_dim):
        return None
    target = full_matrix(p2)
    orders = dihedral_relabelings(p1.m) if search_dihedral else iter([list(range(p1.m))])
    for order in orders:
        cand = ProjChar(p2.base, p1.fiber_dim, p1.labels.select_columns(order))
        x = solve_left_multiplier(full_matrix(cand), target)
        if x is not None:
            return x
    return None


_NONZERO = ((1, 0), (0, 1), (1, 1))


def _cycle_walks(length: int, same: bool) -> int:
    """Walks of the given length in the triangle graph K_3 between equal/distinct ends."""
    sign = -1 if length % 2 else 1
    return (2**length + 2 * sign) // 3 if same else (2**length - sign) // 3


def random_labeled_polygon(rng: np.random.Generator, m: int, fiber_dim: int) -> ProjChar:
    """Uniformly random valid labeled m-gon with arbitrary b-parts.

    Valid a-labelings are proper 3-colorings of the m-cycle by the nonzero
    vectors of GF(2)^2; they are drawn one facet at a time, weighting each
    choice by the number of ways to close the cycle.
    """
    if m < 3:
        raise ShapeMismatchError(f"a polygon needs at least 3 facets, got {m}")
    first = int(rng.integers(3))
    seq = [first]
    for i in range(1, m):
        options = [c for c in range(3) if c != seq[-1]]
        weights = np.array([_cycle_walks(m - i, c == first) for c in options], dtype=float)
        if weights.sum() == 0:
            raise AssertionError("no way to close the cycle")
        seq.append(options[int(rng.choice(2, p=weights / weights.sum()))])
    b = rng.integers(0, 2, size=(m, fiber_dim))
    cols = [_NONZERO[c] + tuple(int(v) for v in b[i]) for i, c in enumerate(seq)]
    return labeled_polygon(cols, fiber_dim)
