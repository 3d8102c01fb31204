from __future__ import annotations

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import bit_matrices, invertible_matrices
from smallcover_lab.errors import NonSquareError, RankDeficientError, ShapeMismatchError
from smallcover_lab.gf2 import (
    BitMatrix,
    Gf2Poly,
    all_vectors,
    binom_mod2,
    column_masks,
    det,
    iter_gl,
    masks_independent,
    rank,
    solve_left_multiplier,
)


def cols(*cs):
    return BitMatrix.from_columns(cs)


def test_rank_examples():
    assert rank(BitMatrix.identity(2)) == 2
    assert rank(BitMatrix([[1, 1], [1, 1]])) == 1
    assert rank(cols((1, 0), (0, 1), (1, 1))) == 2


def test_det_examples():
    assert det(cols((1, 0), (0, 1))) == 1
    assert det(cols((1, 1), (1, 1))) == 0
    assert det(cols((1, 0), (1, 1))) == 1
    with pytest.raises(NonSquareError):
        det(BitMatrix.zeros(2, 3))


def test_empty_matrix_conventions():
    empty = BitMatrix.zeros(0, 0)
    assert rank(empty) == 0
    assert det(empty) == 1


def test_solve_left_multiplier_examples():
    i2 = BitMatrix.identity(2)
    assert solve_left_multiplier(i2, i2) == i2
    a = BitMatrix([[1, 0, 1], [0, 1, 1]])
    b = BitMatrix([[0, 1, 1], [1, 0, 1]])
    assert solve_left_multiplier(a, b) == BitMatrix([[0, 1], [1, 0]])


def test_solve_left_multiplier_errors_and_absence():
    with pytest.raises(ShapeMismatchError):
        solve_left_multiplier(BitMatrix.identity(2), BitMatrix.identity(3))
    with pytest.raises(RankDeficientError):
        solve_left_multiplier(BitMatrix([[1, 1], [1, 1]]), BitMatrix.identity(2))
    a = BitMatrix([[1, 0, 1], [0, 1, 1]])
    assert solve_left_multiplier(a, BitMatrix([[1, 0, 0], [0, 1, 1]])) is None


def test_det_matches_rank_exhaustive_3x3():
    for bits in itertools.product((0, 1), repeat=9):
        m = BitMatrix(np.array(bits, dtype=np.uint8).reshape(3, 3))
        assert det(m) == int(rank(m) == 3)


@given(bit_matrices(rows=st.integers(1, 6), cols=st.integers(1, 6)))
def test_rank_bounded(m):
    assert 0 <= rank(m) <= min(m.shape)
    assert rank(m) == rank(m.T)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(invertible_matrices(st.just(n)), invertible_matrices(st.just(n)))))
def test_det_multiplicative_and_inverse(pair):
    a, b = pair
    assert det(a @ b) == det(a) * det(b)
    assert a @ a.inverse() == BitMatrix.identity(a.rows)


@given(st.data())
def test_solve_left_multiplier_recovers(data):
    n = data.draw(st.integers(1, 5))
    extra = data.draw(st.integers(0, 4))
    x0 = data.draw(invertible_matrices(st.just(n)))
    rest = data.draw(bit_matrices(rows=st.just(n), cols=st.just(extra))) if extra else BitMatrix.zeros(n, 0)
    perm = data.draw(st.permutations(range(n + extra)))
    a = BitMatrix(np.hstack([np.eye(n, dtype=np.uint8), rest.array])).select_columns(perm)
    x = solve_left_multiplier(a, x0 @ a)
    assert x is not None and x @ a == x0 @ a and det(x) == 1


def test_singular_inverse():
    with pytest.raises(RankDeficientError):
        BitMatrix([[1, 1], [1, 1]]).inverse()


def test_masks_independent_matches_det():
    for bits in itertools.product((0, 1), repeat=9):
        m = BitMatrix(np.array(bits, dtype=np.uint8).reshape(3, 3))
        assert masks_independent(column_masks(m)) == bool(det(m))


def test_iter_gl_counts():
    assert sum(1 for _ in iter_gl(2)) == 6
    assert sum(1 for _ in iter_gl(3)) == 168


def test_binom_mod2_examples():
    assert binom_mod2(4, 2) == 0
    assert all(binom_mod2(n, 0) == 1 for n in range(20))
    for r in range(1, 7):
        assert all(binom_mod2(2**r - 1, i) == 1 for i in range(2**r))
    assert binom_mod2(3, 5) == 0


def test_binom_mod2_pascal():
    row = [1]
    for n in range(65):
        assert [binom_mod2(n, i) for i in range(n + 1)] == row
        assert row == [comb(n, i) % 2 for i in range(n + 1)]
        row = [1] + [(row[i] + row[i + 1]) % 2 for i in range(n)] + [1]


def test_all_vectors():
    assert all_vectors(2)[0] == (0, 0)
    assert len(set(all_vectors(3))) == 8


def test_poly_arithmetic():
    x, y = Gf2Poly.var(2, 0), Gf2Poly.var(2, 1)
    assert (x + y) * (x + y) == x * x + y * y
    assert (x + x).is_zero()
    assert ((x + y) ** 4) == x**4 + y**4
    assert (x * y + x).homogeneous_parts() == {1: x, 2: x * y}
    assert (x * y + x).truncate(1) == x
    assert (x * x * y).format(["x", "y"]) == "x^2*y"


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=6),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=6),
       st.integers(0, 6))
def test_poly_frobenius_and_power(t1, t2, e):
    p, q = Gf2Poly.from_terms(2, t1), Gf2Poly.from_terms(2, t2)
    assert (p + q).square() == p.square() + q.square()
    power = Gf2Poly.one(2)
    for _ in range(e):
        power = power * p
    assert p**e == power


def test_poly_substitute():
    x, y = Gf2Poly.var(2, 0), Gf2Poly.var(2, 1)
    p = x * x + x * y
    assert p.substitute([y, x]) == y * y + x * y
    assert p.substitute([x + y, y]) == x * x + x * y
