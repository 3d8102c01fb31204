from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import invertible_matrices
from smallcover_lab.errors import InvalidCharacteristicError, NotNormalizedError, ShapeMismatchError
from smallcover_lab.fibresum import random_labeled_polygon
from smallcover_lab.gf2 import BitMatrix
from smallcover_lab.polytope import make_polygon, make_simplex, product
from smallcover_lab.rings import graded_dims, ring_isomorphic
from smallcover_lab.smallcover import (
    CharFunction,
    SmallCoverModel,
    as_model,
    char_from_columns,
    equivariant_cohomology,
    normalize,
    ordinary_cohomology,
    validate_char,
)

TRI = [(1, 0), (0, 1), (1, 1)]
T2 = [(1, 0), (0, 1), (1, 0), (0, 1)]


def test_validate_examples():
    assert validate_char(char_from_columns(make_polygon(3), TRI)).valid
    assert validate_char(char_from_columns(make_polygon(4), T2)).valid
    bad = validate_char(char_from_columns(make_polygon(4), [(1, 0), (0, 1), (1, 1), (1, 1)]))
    assert not bad.valid and bad.violations == ((2, 3),)


def test_shape_checked():
    with pytest.raises(ShapeMismatchError):
        CharFunction(make_polygon(3), BitMatrix.zeros(2, 4))


def test_normalize_examples():
    tri = char_from_columns(make_polygon(3), TRI)
    assert normalize(tri).char.lam == tri.lam
    m = normalize(char_from_columns(make_polygon(3), [(1, 1), (0, 1), (1, 0)]))
    assert m.char.lam.select_columns([0, 1]) == BitMatrix.identity(2)
    assert m.lambda_prime.columns() == [(1, 1)]
    sq = normalize(char_from_columns(make_polygon(4), [(0, 1), (1, 0), (0, 1), (1, 0)]))
    assert sq.char.lam.columns() == T2


def test_normalize_records_transformation():
    c = char_from_columns(make_polygon(5), [(1, 1), (0, 1), (1, 0), (1, 1), (0, 1)])
    m = normalize(c)
    for i in range(5):
        assert m.char.lam.column(m.perm[i]) == (m.multiplier @ c.lam.select_columns([i])).column(0)


def test_normalize_rejects_invalid():
    with pytest.raises(InvalidCharacteristicError) as exc:
        normalize(char_from_columns(make_polygon(4), [(1, 0), (0, 1), (1, 1), (1, 1)]))
    assert exc.value.vertices == [(2, 3)]


def test_equivariant_examples():
    tri = equivariant_cohomology(char_from_columns(make_polygon(3), TRI))
    assert [r.format(["t1", "t2", "t3"]) for r in tri.relations] == ["t1*t2*t3"]
    sq = equivariant_cohomology(char_from_columns(make_polygon(4), T2))
    assert [r.format(sq.gen_names) for r in sq.relations] == ["t1*t3", "t2*t4"]
    pent = equivariant_cohomology(char_from_columns(make_polygon(5), [(1, 0), (0, 1), (1, 0), (0, 1), (1, 1)]))
    assert len(pent.relations) == 5 and all(r.degree == 2 for r in pent.relations)


def test_ordinary_examples():
    rp2 = ordinary_cohomology(as_model(char_from_columns(make_polygon(3), TRI)))
    assert rp2.num_gens == 1 and graded_dims(rp2) == [1, 1, 1]
    assert rp2.format() == "Z/2[x]/<x^3>"
    t2 = ordinary_cohomology(as_model(char_from_columns(make_polygon(4), T2)))
    assert t2.format() == "Z/2[x, y]/<x^2, y^2>"
    hexa = ordinary_cohomology(as_model(char_from_columns(make_polygon(6), [(1, 0), (0, 1)] * 3)))
    assert sum(graded_dims(hexa)) == 6


def test_not_normalized():
    c = char_from_columns(make_polygon(3), [(1, 1), (0, 1), (1, 0)])
    with pytest.raises(NotNormalizedError):
        ordinary_cohomology(SmallCoverModel(c, False))


def test_segment_and_point():
    seg = ordinary_cohomology(as_model(char_from_columns(make_simplex(1), [(1,), (1,)])))
    assert seg.format() == "Z/2[x]/<x^2>" and graded_dims(seg) == [1, 1]
    cube = char_from_columns(product(make_simplex(1), make_simplex(1)), [(1, 0), (1, 0), (0, 1), (0, 1)])
    assert graded_dims(ordinary_cohomology(as_model(cube))) == [1, 2, 1]


@given(st.integers(3, 10), st.integers(0, 2**32 - 1))
def test_polygon_total_dimension(m, seed):
    p = random_labeled_polygon(np.random.default_rng(seed), m, 0)
    model = as_model(p.base_char())
    dims = graded_dims(ordinary_cohomology(model))
    assert sum(dims) == m and dims[0] == dims[-1] == 1
    assert model.fixed_point_count == m


@given(st.integers(3, 7), st.integers(0, 2**32 - 1), invertible_matrices(st.just(2)))
def test_cohomology_invariant_under_left_multiplication(m, seed, x):
    p = random_labeled_polygon(np.random.default_rng(seed), m, 0)
    c = p.base_char()
    moved = CharFunction(c.base, x @ c.lam)
    r1 = ordinary_cohomology(normalize(c))
    r2 = ordinary_cohomology(normalize(moved))
    if r1.num_gens <= 5:
        assert ring_isomorphic(r1, r2) is not None
