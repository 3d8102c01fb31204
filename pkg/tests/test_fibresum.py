from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import invertible_matrices
from smallcover_lab.errors import (
    DegenerateDeterminantError,
    DimensionMismatchError,
    LabelMismatchError,
    NotDisjointError,
    NotIrreducibleError,
)
from smallcover_lab.fibresum import (
    decompose,
    decomposition_tree,
    dihedral_relabelings,
    fibre_sum,
    find_split_pair,
    labeled_polygon,
    normalize_piece,
    random_labeled_polygon,
    recompose,
    split,
    weak_equivalent,
)
from smallcover_lab.gf2 import BitMatrix

OCTAGON = [(1, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]


def tri(b0=0, b1=0, b2=0):
    return labeled_polygon([(1, 0, b0), (0, 1, b1), (1, 1, b2)])


def test_triangle_sum_gives_square():
    s = fibre_sum(tri(), 0, tri(), 0)
    assert s.m == 4 and s.validate().valid


def test_fibre_sum_without_fibre_is_connected_sum():
    a = labeled_polygon([(1, 0), (0, 1), (1, 1)])
    s = fibre_sum(a, 1, a, 1)
    assert s.fiber_dim == 0 and s.m == 4 and s.validate().valid


def test_octagon_splits_into_square_and_hexagon():
    p = labeled_polygon(OCTAGON)
    left, right = split(p, 0, 3)
    assert (left.m, right.m) == (4, 6)
    glued = fibre_sum(left, left.m - 1, right, right.m - 1)
    assert glued == p
    assert fibre_sum(left, 3, right, 5).m == 8


def test_split_arithmetic():
    pent = labeled_polygon([(1, 0), (0, 1), (1, 0), (0, 1), (1, 1)])
    a, b = split(pent, 1, 4)
    assert (a.m, b.m) == (4, 3)
    hexa = labeled_polygon([(1, 0), (0, 1), (1, 0), (0, 1), (1, 0), (1, 1)])
    a, b = split(hexa, 0, 3)
    assert (a.m, b.m) == (4, 4)


def test_split_errors():
    sq = labeled_polygon([(1, 0), (0, 1), (1, 0), (0, 1)])
    with pytest.raises(NotDisjointError):
        split(sq, 0, 1)
    with pytest.raises(DegenerateDeterminantError):
        split(sq, 0, 2)


def test_fibre_sum_errors():
    with pytest.raises(LabelMismatchError):
        fibre_sum(tri(), 0, tri(0, 0, 1), 2)
    with pytest.raises(DimensionMismatchError):
        fibre_sum(tri(), 0, labeled_polygon([(1, 0), (0, 1), (1, 1)]), 0)


def test_find_split_pair_examples():
    assert find_split_pair(labeled_polygon([(1, 0), (0, 1), (1, 0), (0, 1)])) is None
    assert find_split_pair(labeled_polygon([(1, 0), (0, 1), (1, 1), (0, 1)])) == (0, 2)
    assert find_split_pair(tri()) is None


def _proper_colorings(m):
    nz = [(1, 0), (0, 1), (1, 1)]
    for seq in itertools.product(nz, repeat=m):
        if all(seq[i] != seq[(i + 1) % m] for i in range(m)):
            yield seq


@pytest.mark.parametrize("m", range(5, 9))
def test_split_pair_exists_exhaustive(m):
    for seq in _proper_colorings(m):
        assert find_split_pair(labeled_polygon(seq)) is not None


def test_normalize_piece_examples():
    for bs in itertools.product((0, 1), repeat=3):
        piece = normalize_piece(tri(*bs))
        assert piece.kind == "TriangleOverRP2" and piece.b == ((sum(bs) % 2,),)
    sq = labeled_polygon([(1, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1)])
    piece = normalize_piece(sq)
    assert piece.kind == "SquareOverT2" and piece.b == ((1,), (1,))
    assert normalize_piece(tri()).b == ((0,),)


def test_normalize_piece_canonical_columns():
    sq = labeled_polygon([(0, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1), (1, 1, 0, 0)])
    piece = normalize_piece(sq)
    cols = piece.source.labels.columns()
    assert [c[:2] for c in cols] == [(1, 0), (0, 1), (1, 0), (0, 1)]
    assert cols[0][2:] == cols[1][2:] == (0, 0)
    assert piece.witness @ sq.labels == piece.source.labels


def test_normalize_piece_rejects():
    with pytest.raises(NotIrreducibleError):
        normalize_piece(labeled_polygon([(1, 0), (0, 1), (1, 1), (0, 1)]))
    with pytest.raises(NotIrreducibleError):
        normalize_piece(labeled_polygon([(1, 0), (0, 1), (1, 0), (0, 1), (1, 1)]))


def test_decompose_examples():
    assert [p.kind for p in decompose(tri(0, 0, 1))] == ["TriangleOverRP2"]
    assert [p.kind for p in decompose(labeled_polygon([(1, 0, 0), (0, 1, 0), (1, 0, 0), (0, 1, 0)]))] == ["SquareOverT2"]
    hexa = labeled_polygon([(1, 0, 0), (0, 1, 1), (1, 1, 0), (1, 0, 1), (0, 1, 0), (1, 1, 1)])
    pieces = decompose(hexa)
    assert len(pieces) == 4 and all(p.kind == "TriangleOverRP2" for p in pieces)


def test_decompose_deterministic():
    p = labeled_polygon(OCTAGON)
    assert decompose(p) == decompose(p)


def test_weak_equivalence_examples():
    p = labeled_polygon(OCTAGON)
    assert weak_equivalent(p, p) == BitMatrix.identity(3)
    assert weak_equivalent(tri(), tri(0, 0, 1)) is None


@given(st.integers(3, 9), st.integers(0, 3), st.integers(0, 2**32 - 1), st.data())
def test_weak_equivalence_recovers_multiplier(m, f, seed, data):
    p = random_labeled_polygon(np.random.default_rng(seed), m, f)
    # block multiplier keeping the simplex columns fixed
    a = data.draw(invertible_matrices(st.just(2)))
    c = np.array(data.draw(st.lists(st.integers(0, 1), min_size=2 * f, max_size=2 * f)), dtype=np.uint8).reshape(f, 2)
    x = np.zeros((2 + f, 2 + f), dtype=np.uint8)
    x[:2, :2] = a.array
    x[2:, :2] = c
    x[2:, 2:] = np.eye(f, dtype=np.uint8)
    moved = labeled_polygon((BitMatrix(x) @ p.labels).columns(), f)
    w = weak_equivalent(p, moved)
    assert w is not None and w == BitMatrix(x)


@given(st.integers(3, 10), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_round_trip_and_bounds(m, f, seed):
    p = random_labeled_polygon(np.random.default_rng(seed), m, f)
    tree = decomposition_tree(p)
    assert tree.split_count() <= m - 3
    assert all(leaf.polygon.m in (3, 4) for leaf in tree.leaves())
    assert recompose(tree) == p
    assert weak_equivalent(recompose(tree), p, search_dihedral=True) is not None
    for leaf in tree.leaves():
        assert leaf.piece.witness.det() == 1


@given(st.integers(3, 8), st.integers(0, 2), st.integers(0, 2**32 - 1), st.integers(0, 15))
def test_dihedral_search_finds_relabeling(m, f, seed, r):
    p = random_labeled_polygon(np.random.default_rng(seed), m, f)
    order = list(dihedral_relabelings(m))[r % (2 * m)]
    moved = labeled_polygon(p.labels.select_columns(order).columns(), f)
    assert weak_equivalent(p, moved, search_dihedral=True) is not None


def test_sampler_uniform_on_pentagon():
    rng = np.random.default_rng(0)
    seen = {tuple(random_labeled_polygon(rng, 5, 0).labels.columns()) for _ in range(2000)}
    assert len(seen) == 30
