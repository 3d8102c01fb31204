"""Combinatorial simple polytopes given by vertex/facet incidence."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import IndexOutOfRangeError, ShapeMismatchError, TooFewFacetsError


@dataclass(frozen=True, eq=False)
class SimplePolytope:
    """A simple ``dim``-polytope with facets ``0..num_facets-1``.

    Each vertex is recorded as the set of the ``dim`` facets containing it.
    """

    dim: int
    num_facets: int
    vertices: tuple[frozenset[int], ...]

    def __post_init__(self):
        verts = tuple(frozenset(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ShapeMismatchError("a polytope needs at least one vertex")
        seen: set[int] = set()
        for v in verts:
            if len(v) != self.dim:
                raise ShapeMismatchError(f"vertex {sorted(v)} meets {len(v)} facets, expected {self.dim}")
            for f in v:
                if not 0 <= f < self.num_facets:
                    raise IndexOutOfRangeError(f"facet index {f} out of range 0..{self.num_facets - 1}")
            seen |= v
        if len(seen) != self.num_facets:
            missing = sorted(set(range(self.num_facets)) - seen)
            raise ShapeMismatchError(f"facets {missing} contain no vertex")
        if len(set(verts)) != len(verts):
            raise ShapeMismatchError("duplicate vertex")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplePolytope):
            return NotImplemented
        key = (self.dim, self.num_facets, frozenset(self.vertices))
        return key == (other.dim, other.num_facets, frozenset(other.vertices))

    def __hash__(self) -> int:
        return hash((self.dim, self.num_facets, frozenset(self.vertices)))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def sorted_vertices(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(v)) for v in self.vertices)

    def relabel(self, perm: Sequence[int]) -> "SimplePolytope":
        """Facet ``perm[i]`` of the result is facet ``i`` of this polytope."""
        if sorted(perm) != list(range(self.num_facets)):
            raise ShapeMismatchError("not a permutation of the facets")
        return SimplePolytope(self.dim, self.num_facets, tuple(frozenset(perm[f] for f in v) for v in self.vertices))

    def is_polygon(self) -> bool:
        """True for the standard m-gon with vertices {i, i+1 mod m}."""
        if self.dim != 2 or self.num_facets < 3:
            return False
        m = self.num_facets
        return set(self.vertices) == {frozenset({i, (i + 1) % m}) for i in range(m)}


def make_polygon(m: int) -> SimplePolytope:
    if m < 3:
        raise TooFewFacetsError(f"a polygon needs at least 3 edges, got {m}")
    return SimplePolytope(2, m, tuple(frozenset({i, (i + 1) % m}) for i in range(m)))


def make_simplex(n: int) -> SimplePolytope:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return SimplePolytope(n, n + 1 if n else 0, tuple(frozenset(c) for c in combinations(range(n + 1), n)) if n else (frozenset(),))


def product(p: SimplePolytope, q: SimplePolytope) -> SimplePolytope:
    """p x q with the facets of p first, then those of q shifted by p.num_facets."""
    off = p.num_facets
    verts = tuple(u | frozenset(f + off for f in v) for u in p.vertices for v in q.vertices)
    return SimplePolytope(p.dim + q.dim, p.num_facets + q.num_facets, verts)


def intersection_nonempty(p: SimplePolytope, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    for f in s:
        if not 0 <= f < p.num_facets:
            raise IndexOutOfRangeError(f"facet index {f} out of range 0..{p.num_facets - 1}")
    return any(s <= v for v in p.vertices)


def minimal_nonfaces(p: SimplePolytope) -> list[frozenset[int]]:
    """Inclusion-minimal facet sets with empty intersection.

    Enumerated by size; a set is tested only if all its maximal proper
    subsets are faces.  Minimal nonfaces of a simple n-polytope have at most
    n + 1 elements.
    """
    faces: set[frozenset[int]] = {frozenset()}
    found: list[frozenset[int]] = []
    for size in range(1, p.dim + 2):
        level: set[frozenset[int]] = set()
        for combo in combinations(range(p.num_facets), size):
            s = frozenset(combo)
            if any(s - {f} not in faces for f in s):
                continue
            if intersection_nonempty(p, s):
                level.add(s)
            else:
                found.append(s)
        faces |= level
    return sorted(found, key=lambda s: (len(s), sorted(s)))
