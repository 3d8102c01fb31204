"""Truncated graded GF(2)-algebras generated in degree one.

A ring is a polynomial ring on ``num_gens`` degree-1 generators modulo
homogeneous relations, considered only up to ``top_degree``.  Everything is
per-degree linear algebra: the degree-d part of the ideal is spanned by the
degree-d relations together with ``x_i * I_{d-1}``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DegreeOverflowError, ShapeMismatchError, TooManyGeneratorsError
from .gf2 import BitMatrix, Gf2Poly, all_vectors, default_names

DEFAULT_MAX_GENS = 5


def max_search_gens() -> int:
    return int(os.environ.get("SMALLCOVER_MAX_GENS", DEFAULT_MAX_GENS))


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree ``d``, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class _Degree:
    """Monomial basis and reduced ideal basis in one degree."""

    __slots__ = ("monos", "index", "basis", "pivots")

    def __init__(self, monos, basis, pivots):
        self.monos = monos
        self.index = {m: i for i, m in enumerate(monos)}
        self.basis = basis
        self.pivots = pivots

    @property
    def size(self) -> int:
        return len(self.monos)


@dataclass(frozen=True)
class RingPresentation:
    """GF(2)[x_1..x_g] / <relations>, truncated above ``top_degree``.

    Relations must be homogeneous.  A relation of degree above
    ``top_degree`` is kept (extensions of the ring may need it) but is
    invisible inside the truncation.
    """

    num_gens: int
    relations: tuple[Gf2Poly, ...]
    top_degree: int
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.top_degree < 0:
            raise ValueError("top_degree must be nonnegative")
        for r in self.relations:
            if r.nvars != self.num_gens:
                raise ShapeMismatchError(f"relation {r} has {r.nvars} variables, ring has {self.num_gens}")
            if r.is_zero():
                raise ValueError("relations must be nonzero")
            if not r.is_homogeneous():
                raise ValueError(f"relation {r} is not homogeneous")
        if self.names is not None and len(self.names) != self.num_gens:
            raise ShapeMismatchError("one name per generator")

    @property
    def gen_names(self) -> list[str]:
        return list(self.names) if self.names else default_names(self.num_gens)

    def gen(self, i: int) -> Gf2Poly:
        return Gf2Poly.var(self.num_gens, i)

    @cached_property
    def _degrees(self) -> list[_Degree]:
        g = self.num_gens
        by_degree: dict[int, list[Gf2Poly]] = {}
        for r in self.relations:
            by_degree.setdefault(r.degree, []).append(r)
        out: list[_Degree] = []
        prev: _Degree | None = None
        for d in range(self.top_degree + 1):
            monos = monomials(g, d)
            index = {m: i for i, m in enumerate(monos)}
            dense_rows = []
            for r in by_degree.get(d, []):
                row = np.zeros(len(monos), dtype=np.uint8)
                for t in r.terms:
                    row[index[t]] ^= 1
                dense_rows.append(row[None, :])
            if prev is not None and prev.basis.shape[0]:
                prev_dense = _kernels.unpack(prev.basis, prev.size)
                for i in range(g):
                    shift = np.array(
                        [index[m[:i] + (m[i] + 1,) + m[i + 1:]] for m in prev.monos], dtype=np.int64
                    )
                    block = np.zeros((prev_dense.shape[0], len(monos)), dtype=np.uint8)
                    block[:, shift] = prev_dense
                    dense_rows.append(block)
            if dense_rows:
                rows = _kernels.pack(np.vstack(dense_rows))
                basis, piv = _kernels.echelon(rows, len(monos))
            else:
                basis = np.zeros((0, _kernels.n_words(len(monos))), np.uint64)
                piv = np.zeros(0, np.int64)
            prev = _Degree(monos, basis, piv)
            out.append(prev)
        return out

    def graded_dims(self) -> list[int]:
        return [deg.size - deg.basis.shape[0] for deg in self._degrees]

    def _vector(self, p: Gf2Poly, d: int) -> np.ndarray:
        deg = self._degrees[d]
        row = np.zeros(deg.size, dtype=np.uint8)
        for t in p.terms:
            row[deg.index[t]] ^= 1
        return _kernels.pack(row)

    def _reduce_homogeneous(self, p: Gf2Poly, d: int) -> np.ndarray:
        deg = self._degrees[d]
        return _kernels.reduce(self._vector(p, d), deg.basis, deg.pivots)

    def normal_form(self, p: Gf2Poly) -> Gf2Poly:
        """Canonical representative of ``p`` modulo the relations.

        Degrees above ``top_degree`` are dropped (they are zero in the
        truncation).
        """
        if p.nvars != self.num_gens:
            raise ShapeMismatchError(f"polynomial has {p.nvars} variables, ring has {self.num_gens}")
        terms: list[tuple[int, ...]] = []
        for d, part in p.homogeneous_parts().items():
            if d > self.top_degree:
                continue
            deg = self._degrees[d]
            bits = _kernels.unpack(self._reduce_homogeneous(part, d), deg.size)[0]
            terms.extend(deg.monos[i] for i in np.flatnonzero(bits))
        return Gf2Poly(self.num_gens, frozenset(terms))

    def is_zero(self, p: Gf2Poly) -> bool:
        """Like :func:`reduces_to_zero` but treats degrees above the top as zero."""
        return self.normal_form(p).is_zero()

    def nilpotency(self, p: Gf2Poly) -> int:
        """Least e >= 1 with p^e = 0 in the truncated ring."""
        power = p
        for e in range(1, self.top_degree + 2):
            if self.is_zero(power):
                return e
            power = power * p
        return self.top_degree + 1

    def format(self) -> str:
        names = self.gen_names
        rels = ", ".join(r.format(names) for r in self.relations)
        return f"Z/2[{', '.join(names)}]/<{rels}>"

    def __str__(self) -> str:
        return self.format()


def graded_dims(r: RingPresentation) -> list[int]:
    """Dimension of each degree 0..top_degree."""
    return r.graded_dims()


def reduces_to_zero(p: Gf2Poly, r: RingPresentation) -> bool:
    """True iff every homogeneous piece of ``p`` lies in the relation ideal."""
    if p.degree > r.top_degree:
        raise DegreeOverflowError(f"degree {p.degree} exceeds top degree {r.top_degree}")
    return r.normal_form(p).is_zero()


def substitution_images(phi: BitMatrix) -> list[Gf2Poly]:
    """Column j of ``phi`` is the linear form that generator j is sent to."""
    return [Gf2Poly.linear(phi.column(j)) for j in range(phi.cols)]


def maps_into(r1: RingPresentation, r2: RingPresentation, phi: BitMatrix) -> bool:
    """Whether substituting generators of r1 by ``phi`` sends every relation into r2's ideal."""
    images = substitution_images(phi)
    return all(r2.is_zero(rel.substitute(images)) for rel in r1.relations)


def ring_isomorphic(r1: RingPresentation, r2: RingPresentation) -> BitMatrix | None:
    """Search GL(g, F2) for a generator substitution identifying the rings.

    Candidates for the image of each generator are restricted to linear forms
    of the same nilpotency order, and relations are checked as soon as all
    their variables have been assigned.
    """
    g = r1.num_gens
    cap = max_search_gens()
    if g > cap or r2.num_gens > cap:
        raise TooManyGeneratorsError(f"isomorphism search is capped at {cap} generators")
    if g != r2.num_gens or r1.top_degree != r2.top_degree:
        return None
    if r1.graded_dims() != r2.graded_dims():
        return None
    if g == 0:
        return BitMatrix.zeros(0, 0)

    forms = [v for v in all_vectors(g) if any(v)]
    form_poly = {v: Gf2Poly.linear(v) for v in forms}
    order2 = {v: r2.nilpotency(form_poly[v]) for v in forms}
    candidates = [[v for v in forms if order2[v] == r1.nilpotency(r1.gen(i))] for i in range(g)]

    # relations grouped by the last generator they involve
    ready: list[list[Gf2Poly]] = [[] for _ in range(g)]
    for rel in r1.relations:
        support = [i for i in range(g) if any(t[i] for t in rel.terms)]
        ready[max(support) if support else 0].append(rel)

    chosen: list[tuple[int, ...]] = []
    span: set[tuple[int, ...]] = {(0,) * g}

    def images_so_far() -> list[Gf2Poly]:
        imgs = [form_poly[v] for v in chosen]
        return imgs + [Gf2Poly.zero(g)] * (g - len(imgs))

    def search(i: int) -> BitMatrix | None:
        if i == g:
            phi = BitMatrix.from_columns(chosen)
            if maps_into(r2, r1, phi.inverse()):
                return phi
            return None
        for v in candidates[i]:
            if v in span:
                continue
            chosen.append(v)
            imgs = images_so_far()
            if all(r2.is_zero(rel.substitute(imgs)) for rel in ready[i]):
                added = {tuple(a ^ b for a, b in zip(s, v)) for s in span}
                span.update(added)
                found = search(i + 1)
                if found is not None:
                    return found
                span.difference_update(added)
            chosen.pop()
        return None

    return search(0)


def truncated_polynomial_ring(num_gens: int, top_degree: int) -> RingPresentation:
    return RingPresentation(num_gens, (), top_degree)


def tensor(r1: RingPresentation, r2: RingPresentation, top_degree: int | None = None) -> RingPresentation:
    """Presentation of r1 (x) r2 on the concatenated generators."""
    g1, g2 = r1.num_gens, r2.num_gens
    rels = [rel.extend(g1 + g2) for rel in r1.relations]
    for rel in r2.relations:
        rels.append(Gf2Poly(g1 + g2, frozenset((0,) * g1 + t for t in rel.terms)))
    names = None
    if r1.names and r2.names:
        names = tuple(r1.names) + tuple(r2.names)
    top = r1.top_degree + r2.top_degree if top_degree is None else top_degree
    return RingPresentation(g1 + g2, tuple(rels), top, names)


def ring_from_strings(gens: Sequence[str], relations: Sequence[str], top_degree: int) -> RingPresentation:
    """Parse relations written like ``"z^3 + z^2*x"`` over the named generators."""
    names = list(gens)
    g = len(names)
    rels = []
    for text in relations:
        terms = []
        for mono in text.replace(" ", "").split("+"):
            e = [0] * g
            if mono != "1":
                for factor in mono.split("*"):
                    base, _, power = factor.partition("^")
                    e[names.index(base)] += int(power) if power else 1
            terms.append(tuple(e))
        rels.append(Gf2Poly.from_terms(g, terms))
    return RingPresentation(g, tuple(rels), top_degree, tuple(names))
