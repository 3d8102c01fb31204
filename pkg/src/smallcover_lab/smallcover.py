"""Characteristic functions on simple polytopes and small-cover cohomology."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCharacteristicError, NotNormalizedError, ShapeMismatchError
from .gf2 import BitMatrix, Gf2Poly, column_masks, masks_independent
from .polytope import SimplePolytope, minimal_nonfaces
from .rings import RingPresentation


@dataclass(frozen=True)
class CharFunction:
    """Facet labeling of ``base``; column i of ``lam`` is the label of facet i."""

    base: SimplePolytope
    lam: BitMatrix

    def __post_init__(self):
        if self.lam.shape != (self.base.dim, self.base.num_facets):
            raise ShapeMismatchError(
                f"labels have shape {self.lam.shape}, polytope needs {(self.base.dim, self.base.num_facets)}"
            )

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def num_facets(self) -> int:
        return self.base.num_facets


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    violations: tuple[tuple[int, ...], ...]

    def __bool__(self) -> bool:
        return self.valid


def validate_char(c: CharFunction) -> ValidationResult:
    """Check the spanning condition at every vertex; report the failing ones."""
    masks = column_masks(c.lam)
    bad = [v for v in c.base.sorted_vertices() if not masks_independent([masks[f] for f in v])]
    return ValidationResult(not bad, tuple(bad))


@dataclass(frozen=True)
class SmallCoverModel:
    """A characteristic function, optionally in the form (I_n | L').

    ``perm[i]`` is the new index of original facet ``i`` and ``multiplier``
    is the invertible matrix that was applied on the left, so
    ``char.lam[:, perm[i]] == multiplier @ original[:, i]``.
    """

    char: CharFunction
    normalized: bool
    perm: tuple[int, ...] = ()
    multiplier: BitMatrix | None = None

    @property
    def dim(self) -> int:
        return self.char.dim

    @property
    def num_gens(self) -> int:
        """Rank of H^1, i.e. m - n."""
        return self.char.num_facets - self.char.dim

    @property
    def fixed_point_count(self) -> int:
        return self.char.base.num_vertices

    @property
    def lambda_prime(self) -> BitMatrix:
        n = self.dim
        return self.char.lam.select_columns(range(n, self.char.num_facets))


def _is_identity_block(c: CharFunction) -> bool:
    n = c.dim
    if not any(frozenset(range(n)) <= v for v in c.base.vertices):
        return False
    return c.lam.select_columns(range(n)) == BitMatrix.identity(n)


def normalize(c: CharFunction) -> SmallCoverModel:
    """Bring the labeling to the form (I_n | L').

    The facets of the lexicographically first vertex are moved to the front
    (other facets keep their relative order), then the labels are multiplied
    by the inverse of that vertex's block.
    """
    check = validate_char(c)
    if not check.valid:
        raise InvalidCharacteristicError(
            f"spanning condition fails at vertices {[list(v) for v in check.violations]}", list(check.violations)
        )
    m = c.num_facets
    first = c.base.sorted_vertices()[0]
    order = list(first) + [f for f in range(m) if f not in first]
    perm = [0] * m
    for new, old in enumerate(order):
        perm[old] = new
    base = c.base.relabel(perm)
    block = c.lam.select_columns(first)
    x = block.inverse()
    lam = x @ c.lam.select_columns(order)
    return SmallCoverModel(CharFunction(base, lam), True, tuple(perm), x)


def as_model(c: CharFunction) -> SmallCoverModel:
    """Wrap without reordering when already in (I_n | L') form, else normalize."""
    if _is_identity_block(c) and validate_char(c).valid:
        m = c.num_facets
        return SmallCoverModel(c, True, tuple(range(m)), BitMatrix.identity(c.dim))
    return normalize(c)


def equivariant_cohomology(c: CharFunction) -> RingPresentation:
    """Face ring: one squarefree monomial per minimal nonface.

    The ring is infinite; it is truncated at max(n, largest relation degree).
    """
    check = validate_char(c)
    if not check.valid:
        raise InvalidCharacteristicError(
            f"spanning condition fails at vertices {[list(v) for v in check.violations]}", list(check.violations)
        )
    m = c.num_facets
    rels = []
    for s in minimal_nonfaces(c.base):
        rels.append(Gf2Poly.monomial(int(i in s) for i in range(m)))
    top = max([c.dim] + [r.degree for r in rels])
    return RingPresentation(m, tuple(rels), top, tuple(f"t{i + 1}" for i in range(m)))


def ordinary_cohomology(s: SmallCoverModel) -> RingPresentation:
    """H*(M) on the m - n generators x_j = tau_{n+j}.

    The linear relations are eliminated by tau_i -> sum_j L'_{ij} x_j for
    i <= n.
    """
    if not s.normalized or not _is_identity_block(s.char):
        raise NotNormalizedError("model is not in (I_n | L') form")
    n, m = s.dim, s.char.num_facets
    l = m - n
    lp = s.lambda_prime
    images = [Gf2Poly.linear(lp.array[i]) if l else Gf2Poly.zero(0) for i in range(n)]
    images += [Gf2Poly.var(l, j) for j in range(l)]
    rels = []
    for nf in minimal_nonfaces(s.char.base):
        mono = Gf2Poly.monomial(int(i in nf) for i in range(m))
        img = mono.substitute(images) if m else mono
        if not img.is_zero():
            rels.append(img)
    names = None if l <= 3 else tuple(f"x{j + 1}" for j in range(l))
    return RingPresentation(l, tuple(_dedupe(rels)), n, names)


def _dedupe(polys):
    seen = []
    for p in polys:
        if p not in seen:
            seen.append(p)
    return seen


def char_from_columns(base: SimplePolytope, columns) -> CharFunction:
    return CharFunction(base, BitMatrix.from_columns([tuple(c) for c in columns], rows=base.dim))
