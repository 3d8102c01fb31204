"""Projective bundles of split vector bundles over small covers.

A bundle over a small cover with ``l = m - n`` degree-1 cohomology
generators is a Whitney sum of line bundles, each recorded by its first
Stiefel-Whitney class as a vector in GF(2)^l.  Its projectivization is again
a small cover over ``P x simplex(k-1)``, described either by a projective
characteristic function (an (a|b) label per facet of P) or directly by a
:class:`LineBundleSum`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import (
    GeneratorMismatchError,
    InvalidProjCharError,
    RankOneError,
    ShapeMismatchError,
    StageMismatchError,
)
from .gf2 import BitMatrix, Gf2Poly, all_vectors
from .polytope import SimplePolytope, make_simplex, product
from .rings import RingPresentation
from .smallcover import CharFunction, SmallCoverModel, ValidationResult, as_model, validate_char


@dataclass(frozen=True)
class ProjChar:
    """Projective characteristic function on ``base``.

    ``labels`` has shape (n + fiber_dim) x m; the top n rows of column i are
    the a-part of facet i, the bottom ``fiber_dim`` rows its b-part.
    """

    base: SimplePolytope
    fiber_dim: int
    labels: BitMatrix

    def __post_init__(self):
        want = (self.base.dim + self.fiber_dim, self.base.num_facets)
        if self.fiber_dim < 0:
            raise ShapeMismatchError("fiber_dim must be nonnegative")
        if self.labels.shape != want:
            raise ShapeMismatchError(f"labels have shape {self.labels.shape}, expected {want}")

    @classmethod
    def from_parts(cls, base: SimplePolytope, a_cols: Sequence[Sequence[int]], b_cols: Sequence[Sequence[int]] | None = None, fiber_dim: int | None = None) -> "ProjChar":
        if fiber_dim is None:
            fiber_dim = len(b_cols[0]) if b_cols else 0
        if b_cols is None:
            b_cols = [(0,) * fiber_dim for _ in a_cols]
        cols = [tuple(a) + tuple(b) for a, b in zip(a_cols, b_cols)]
        return cls(base, fiber_dim, BitMatrix.from_columns(cols, rows=base.dim + fiber_dim))

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def k(self) -> int:
        """Rank of the underlying vector bundle."""
        return self.fiber_dim + 1

    @property
    def m(self) -> int:
        return self.base.num_facets

    @property
    def a_part(self) -> BitMatrix:
        return BitMatrix(self.labels.array[: self.n, :])

    @property
    def b_part(self) -> BitMatrix:
        return BitMatrix(self.labels.array[self.n:, :].reshape(self.fiber_dim, self.m))

    def a(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.labels.array[: self.n, i])

    def b(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.labels.array[self.n:, i])

    def base_char(self) -> CharFunction:
        """The ordinary characteristic function forgotten from the a-part."""
        return CharFunction(self.base, self.a_part)

    def validate(self) -> ValidationResult:
        return validate_char(self.base_char())

    def is_standard(self) -> bool:
        """First n facets meet at a vertex and carry labels (e_i | 0)."""
        n = self.n
        if not any(frozenset(range(n)) <= v for v in self.base.vertices):
            return False
        want = np.zeros((n + self.fiber_dim, n), dtype=np.uint8)
        want[:n, :n] = np.eye(n, dtype=np.uint8)
        return bool(np.array_equal(self.labels.array[:, :n], want))


def standardize(pc: ProjChar) -> tuple[ProjChar, tuple[int, ...], BitMatrix]:
    """Reorder and left-multiply so that the first n columns are (e_i | 0).

    The multiplier has the block form [[A^-1, 0], [B A^-1, I]], where A and
    B are the a- and b-blocks at the lexicographically first vertex; it
    preserves the split into a- and b-parts.  Returns the new labeling, the
    facet permutation (``perm[old] = new``) and the multiplier.
    """
    check = pc.validate()
    if not check.valid:
        raise InvalidProjCharError(
            f"a-part fails the spanning condition at vertices {[list(v) for v in check.violations]}",
            list(check.violations),
        )
    n, m, f = pc.n, pc.m, pc.fiber_dim
    if pc.is_standard():
        return pc, tuple(range(m)), BitMatrix.identity(n + f)
    first = pc.base.sorted_vertices()[0]
    order = list(first) + [i for i in range(m) if i not in first]
    perm = [0] * m
    for new, old in enumerate(order):
        perm[old] = new
    a_inv = pc.a_part.select_columns(first).inverse()
    b_blk = pc.b_part.select_columns(first) if f else BitMatrix.zeros(0, n)
    x = np.zeros((n + f, n + f), dtype=np.uint8)
    x[:n, :n] = a_inv.array
    if f:
        x[n:, :n] = (b_blk @ a_inv).array
        x[n:, n:] = np.eye(f, dtype=np.uint8)
    xm = BitMatrix(x)
    labels = xm @ pc.labels.select_columns(order)
    return ProjChar(pc.base.relabel(perm), f, labels), tuple(perm), xm


@dataclass(frozen=True)
class LineBundleSum:
    """Whitney sum of k line bundles over a space with ``base_gens`` H^1 generators."""

    base_gens: int
    summands: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        s = tuple(tuple(int(b) & 1 for b in v) for v in self.summands)
        object.__setattr__(self, "summands", s)
        if not s:
            raise ShapeMismatchError("a bundle needs at least one summand")
        for v in s:
            if len(v) != self.base_gens:
                raise ShapeMismatchError(f"summand {v} does not have {self.base_gens} entries")

    @property
    def k(self) -> int:
        return len(self.summands)

    @classmethod
    def trivial(cls, base_gens: int, k: int) -> "LineBundleSum":
        return cls(base_gens, tuple((0,) * base_gens for _ in range(k)))


@dataclass(frozen=True)
class SWClass:
    """Total Stiefel-Whitney class, one reduced homogeneous component per degree."""

    ambient: RingPresentation
    components: tuple[Gf2Poly, ...]

    def w(self, i: int) -> Gf2Poly:
        if 0 <= i < len(self.components):
            return self.components[i]
        return Gf2Poly.zero(self.ambient.num_gens)

    @property
    def total(self) -> Gf2Poly:
        return reduce(lambda p, q: p + q, self.components)

    def format(self) -> str:
        return self.total.format(self.ambient.gen_names)


def _check_gens(ls: LineBundleSum, ambient: RingPresentation) -> None:
    if ls.base_gens != ambient.num_gens:
        raise GeneratorMismatchError(f"bundle has {ls.base_gens} base generators, ring has {ambient.num_gens}")


def _components(p: Gf2Poly, ambient: RingPresentation) -> tuple[Gf2Poly, ...]:
    red = ambient.normal_form(p)
    return tuple(red.component(d) for d in range(ambient.top_degree + 1))


def total_sw(ls: LineBundleSum, ambient: RingPresentation) -> SWClass:
    """prod_i (1 + w_1(summand_i)), reduced in the ambient ring."""
    _check_gens(ls, ambient)
    g = ambient.num_gens
    one = Gf2Poly.one(g)
    w = one
    for v in ls.summands:
        w = (w * (one + Gf2Poly.linear(v))).truncate(ambient.top_degree) if g else w
    return SWClass(ambient, _components(w, ambient))


def _z_name(names: Sequence[str]) -> str:
    for cand in ("z", "w", "u", "v"):
        if cand not in names:
            return cand
    return f"z{len(names)}"


def bundle_cohomology(ls: LineBundleSum, ambient: RingPresentation) -> RingPresentation:
    """H*(P(xi)) = H*(M)[z] / <sum_{i=0..k} w_i(xi) z^(k-i)>, z = w_1 of the tautological bundle."""
    _check_gens(ls, ambient)
    if ls.k == 1:
        return ambient
    sw = total_sw(ls, ambient)
    g, k = ambient.num_gens, ls.k
    rels = [r.extend(g + 1) for r in ambient.relations]
    bh = Gf2Poly.zero(g + 1)
    for i in range(0, min(k, ambient.top_degree) + 1):
        zpow = Gf2Poly.monomial((0,) * g + (k - i,))
        bh = bh + sw.w(i).extend(g + 1) * zpow
    rels.append(bh)
    names = ambient.gen_names
    return RingPresentation(g + 1, tuple(rels), ambient.top_degree + k - 1, tuple(names) + (_z_name(names),))


def product_cohomology(ambient: RingPresentation, k: int) -> RingPresentation:
    """H*(M x RP^{k-1})."""
    return bundle_cohomology(LineBundleSum.trivial(ambient.num_gens, k), ambient)


def triviality_test(ls: LineBundleSum, ambient: RingPresentation) -> tuple[int, ...] | None:
    """A class X in H^1 with w(xi) = (1+X)^k and kX = w_1(xi), if one exists."""
    _check_gens(ls, ambient)
    if ls.k <= 1:
        raise RankOneError("the criterion needs a bundle of rank k > 1")
    target = total_sw(ls, ambient)
    g, k = ambient.num_gens, ls.k
    one = Gf2Poly.one(g)
    for x in all_vectors(g):
        xp = Gf2Poly.linear(x) if g else Gf2Poly.zero(0)
        cand = _components(((one + xp) ** k).truncate(ambient.top_degree), ambient)
        if cand != target.components:
            continue
        kx = xp if k % 2 else Gf2Poly.zero(g)
        if ambient.normal_form(kx + target.w(1)).is_zero():
            return x
    return None


def tensor_normalize(ls: LineBundleSum) -> LineBundleSum:
    """Twist every summand by the last one, making the last summand trivial."""
    last = ls.summands[-1]
    return LineBundleSum(ls.base_gens, tuple(tuple(a ^ b for a, b in zip(v, last)) for v in ls.summands))


def line_bundle_sum(pc: ProjChar) -> LineBundleSum:
    """The bundle gamma_1 + ... + gamma_{k-1} + eps encoded by a standard labeling.

    Row i of the b-block over facets n..m-1 is w_1(gamma_i) in the basis
    x_j = tau_{n+j}.
    """
    std, _, _ = standardize(pc)
    n, m, f = std.n, std.m, std.fiber_dim
    lam_xi = std.b_part.array[:, n:m]
    rows = [tuple(int(v) for v in lam_xi[i]) for i in range(f)]
    return LineBundleSum(m - n, tuple(rows) + ((0,) * (m - n),))


def from_line_bundle_sum(model: SmallCoverModel, ls: LineBundleSum) -> ProjChar:
    """Projective labeling over a normalized model encoding ``ls`` (after twisting)."""
    if not model.normalized:
        raise ShapeMismatchError("model must be normalized")
    if ls.base_gens != model.num_gens:
        raise StageMismatchError(f"bundle has {ls.base_gens} base generators, model has {model.num_gens}")
    ls = tensor_normalize(ls)
    n, m, f = model.dim, model.char.num_facets, ls.k - 1
    b = np.zeros((f, m), dtype=np.uint8)
    for i in range(f):
        b[i, n:] = ls.summands[i]
    labels = BitMatrix(np.vstack([model.char.lam.array, b]))
    return ProjChar(model.char.base, f, labels)


def to_small_cover(pc: ProjChar) -> SmallCoverModel:
    """Small cover over P x simplex(k-1) with the block characteristic matrix

        ( I_n  O        L     0 )
        ( O    I_{k-1}  L_xi  1 )

    Facets are ordered as the columns: the first n facets of P, the first
    k-1 facets of the simplex, the remaining facets of P, the last facet of
    the simplex.  The labeling is standardized first if necessary.
    """
    std, _, _ = standardize(pc)
    n, m, f = std.n, std.m, std.fiber_dim
    simplex = make_simplex(f)
    prod = product(std.base, simplex)
    # product order: P facets 0..m-1, then simplex facets m..m+f
    order = list(range(n)) + [m + j for j in range(f)] + list(range(n, m)) + ([m + f] if f else [])
    perm = [0] * len(order)
    for new, old in enumerate(order):
        perm[old] = new
    cols = []
    for old in order:
        if old < m:
            cols.append(tuple(std.labels.array[:, old]))
        elif old < m + f:
            e = [0] * (n + f)
            e[n + old - m] = 1
            cols.append(tuple(e))
        else:
            cols.append((0,) * n + (1,) * f)
    lam = BitMatrix.from_columns(cols, rows=n + f)
    char = CharFunction(prod.relabel(perm), lam)
    if not validate_char(char).valid:
        raise InvalidProjCharError("block matrix fails the spanning condition")
    return SmallCoverModel(char, True, tuple(perm), BitMatrix.identity(n + f))


def point_model() -> SmallCoverModel:
    return as_model(CharFunction(make_simplex(0), BitMatrix.zeros(0, 0)))


def bott_tower(stages: Sequence[LineBundleSum]) -> SmallCoverModel:
    """Iterated projectivization starting from a point."""
    model = point_model()
    for depth, ls in enumerate(stages):
        if ls.base_gens != model.num_gens:
            raise StageMismatchError(
                f"stage {depth} has {ls.base_gens} base generators, tower has {model.num_gens}"
            )
        model = to_small_cover(from_line_bundle_sum(model, ls))
    return model


def stong_manifold(dims: Sequence[int]) -> SmallCoverModel:
    """P(gamma_1 + ... + gamma_l) over RP^{n_1} x ... x RP^{n_l}."""
    stages = []
    for i, d in enumerate(dims):
        stages.append(LineBundleSum.trivial(i, d + 1))
    l = len(dims)
    stages.append(LineBundleSum(l, tuple(tuple(int(i == j) for j in range(l)) for i in range(l))))
    return bott_tower(stages)
