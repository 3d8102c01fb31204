"""Projective bundles over RP^2 and T^2, and the RP^n x RP^n triviality question."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyListError, ExponentTooSmallError, NotOfRequiredFormError, OutOfRangeError
from .gf2 import Gf2Poly, binom_mod2
from .rings import RingPresentation, ring_isomorphic

# --- RP^2 -----------------------------------------------------------------

RP2_LABELS = ("Product", "OneGamma", "TwoGamma", "ThreeGamma")

# k mod 4 -> q mod 4 -> label
RP2_TABLE: dict[int, dict[int, str]] = {
    0: {0: "Product", 1: "OneGamma", 2: "TwoGamma", 3: "OneGamma"},
    1: {0: "Product", 1: "Product", 2: "TwoGamma", 3: "TwoGamma"},
    2: {0: "Product", 1: "OneGamma", 2: "Product", 3: "ThreeGamma"},
    3: {0: "Product", 1: "OneGamma", 2: "OneGamma", 3: "Product"},
}

RP2_REPRESENTATIVES = {
    "Product": "RP(2)×RP(k−1)",
    "OneGamma": "S²×_{Z₂}P(γ⊕(k−1)ε)",
    "TwoGamma": "S²×_{Z₂}P(2γ⊕(k−2)ε)",
    "ThreeGamma": "S²×_{Z₂}P(3γ⊕(k−3)ε)",
}


@dataclass(frozen=True)
class RP2BundleClass:
    """Class of P(qγ + (k-q)ε) over RP^2."""

    k: int
    q_canonical: int
    label: str

    @property
    def representative(self) -> str:
        return RP2_REPRESENTATIVES[self.label]

    def format(self) -> str:
        return f"{self.label}: {self.representative}"


def _check_kq(k: int, q: int) -> None:
    if k < 1:
        raise OutOfRangeError(f"rank k must be at least 1, got {k}")
    if not 0 <= q <= k:
        raise OutOfRangeError(f"q must lie in 0..{k}, got {q}")


def same_rp2_class(k: int, q: int, q2: int) -> bool:
    """q ≡ q2 or q ≡ k - q2 (mod 4)."""
    return (q - q2) % 4 == 0 or (q - (k - q2)) % 4 == 0


def q_canonical(k: int, q: int) -> int:
    return min(q % 4, (k - q) % 4)


def classify_rp2(k: int, q: int) -> RP2BundleClass:
    _check_kq(k, q)
    return RP2BundleClass(k, q_canonical(k, q), RP2_TABLE[k % 4][q % 4])


def rp2_table_consistent(max_k: int = 100) -> bool:
    """The table and the mod-4 criterion induce the same partition of 0..k."""
    for k in range(1, max_k + 1):
        for q in range(k + 1):
            for q2 in range(k + 1):
                same_label = RP2_TABLE[k % 4][q % 4] == RP2_TABLE[k % 4][q2 % 4]
                if same_label != same_rp2_class(k, q, q2):
                    return False
    return True


# --- T^2 ------------------------------------------------------------------

T2_TYPES = ("Trivial", "TypeOne", "TypeTwo", "TypeThree")


@dataclass(frozen=True)
class T2BundleClass:
    """Class of a sum of k line bundles over T^2 up to twisting and stable moves.

    ``folded`` records that the two single-γ rows (γ_1 and γ_2, swapped by
    x <-> y) are reported as one class.
    """

    k: int
    type: str
    folded: bool = True

    def format(self) -> str:
        return f"{self.type} (k={self.k})"


def _reduced_support(summands: Sequence[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Classes of odd multiplicity, translated to minimize the nonzero ones.

    Equal pairs cancel (γ⊕γ ≅ 2ε over a surface), and a global twist
    translates every class; the translate with fewest nonzero classes is
    returned (ties broken by the sorted tuple).
    """
    counts = Counter(summands)
    odd = [c for c, n in counts.items() if n % 2]
    best = None
    for t in ((0, 0), (1, 0), (0, 1), (1, 1)):
        moved = frozenset((c[0] ^ t[0], c[1] ^ t[1]) for c in odd) - {(0, 0)}
        key = (len(moved), sorted(moved))
        if best is None or key < best[0]:
            best = (key, moved)
    return best[1]  # type: ignore[index]


def classify_t2(summands: Sequence[Sequence[int]]) -> T2BundleClass:
    """Classify P(ζ) for ζ a sum of line bundles given by their w_1 in GF(2)^2."""
    if not summands:
        raise EmptyListError("at least one summand is required")
    vs = [(int(v[0]) & 1, int(v[1]) & 1) for v in summands]
    k = len(vs)
    support = _reduced_support(vs)
    if not support:
        return T2BundleClass(k, "Trivial")
    if len(support) == 2:
        return T2BundleClass(k, "TypeTwo")
    if len(support) == 3:
        return T2BundleClass(k, "TypeThree")
    (c,) = support
    if c == (1, 1) and k != 2:
        # γ_1γ_2 ⊕ (k-1)ε is twist-equivalent to γ_1 ⊕ γ_2 ⊕ (k-2)ε
        return T2BundleClass(k, "TypeTwo")
    return T2BundleClass(k, "TypeOne")


def t2_ring(t: T2BundleClass) -> RingPresentation:
    """<x^2, y^2, R> with R the Borel-Hirzebruch relation of the class's model bundle."""
    k = t.k
    if k < 1:
        raise OutOfRangeError("k must be at least 1")
    terms = {
        "Trivial": [(0, 0, k)],
        "TypeOne": [(0, 0, k), (1, 0, k - 1)],
        "TypeTwo": [(0, 0, k), (1, 0, k - 1), (0, 1, k - 1), (1, 1, k - 2)],
        "TypeThree": [(0, 0, k), (1, 1, k - 2)],
    }[t.type]
    rel = Gf2Poly.from_terms(3, [e for e in terms if e[2] >= 0])
    x2, y2 = Gf2Poly.monomial((2, 0, 0)), Gf2Poly.monomial((0, 2, 0))
    return RingPresentation(3, (x2, y2, rel), k + 1, ("x", "y", "z"))


# --- RP^n x RP^n -----------------------------------------------------------


def mod2_cohomology_P_gamma_tau(n: int) -> RingPresentation:
    """Z/2[x, y]/<x^(n+1), Y> with Y = sum_{i<=n} C(n+2, i) y^(n+1-i) x^i."""
    if n < 0:
        raise OutOfRangeError("n must be nonnegative")
    x_top = Gf2Poly.monomial((n + 1, 0))
    y_rel = Gf2Poly.from_terms(2, [(i, n + 1 - i) for i in range(n + 1) if binom_mod2(n + 2, i)])
    return RingPresentation(2, (x_top, y_rel), 2 * n, ("x", "y"))


def product_rpn_squared(n: int) -> RingPresentation:
    return RingPresentation(2, (Gf2Poly.monomial((n + 1, 0)), Gf2Poly.monomial((0, n + 1))), 2 * n, ("x", "y"))


def _is_power_of_two(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0


def triviality_checks(n: int) -> tuple[bool, bool, bool]:
    """(n+2 is a power of 2, Y = y^(n+1), ring isomorphic to H*(RP^n x RP^n))."""
    ring = mod2_cohomology_P_gamma_tau(n)
    y_pure = ring.relations[1] == Gf2Poly.monomial((0, n + 1))
    iso = ring_isomorphic(ring, product_rpn_squared(n)) is not None
    return _is_power_of_two(n + 2), y_pure, iso


def is_cohomologically_trivial(n: int, cross_check: bool = False) -> bool:
    if n < 0:
        raise OutOfRangeError("n must be nonnegative")
    if cross_check:
        a, b, c = triviality_checks(n)
        if not a == b == c:
            raise AssertionError(f"triviality checks disagree at n={n}: {(a, b, c)}")
    return _is_power_of_two(n + 2)


def k_of(r: int) -> int:
    """#{0 < s <= 2^r - 2 : s ≡ 0, 1, 2, 4 (mod 8)}, by enumeration."""
    if r < 2:
        raise ExponentTooSmallError(f"r must be at least 2, got {r}")
    return sum(1 for s in range(1, 2**r - 1) if s % 8 in (0, 1, 2, 4))


def k_of_closed_form(r: int) -> int:
    if r < 2:
        raise ExponentTooSmallError(f"r must be at least 2, got {r}")
    return r if r <= 3 else 2 ** (r - 1) - 1


def _exponent_r(n: int) -> int | None:
    return (n + 2).bit_length() - 1 if _is_power_of_two(n + 2) else None


def ko_order(n: int) -> tuple[int, int]:
    """Order of γ - ε in reduced KO of RP^n, as (2, exponent), for n = 2^r - 2."""
    r = _exponent_r(n)
    if r is None or r < 2:
        raise NotOfRequiredFormError(f"n={n} is not of the form 2^r - 2 with r >= 2")
    return 2, k_of_closed_form(r)


@dataclass(frozen=True)
class TrivialityReport:
    n: int
    cohomologically_trivial: bool
    bundle_trivial: bool
    verdict: bool
    ko_exponent: int | None = None

    def format(self) -> str:
        lines = [
            f"n: {self.n}",
            f"cohomologically_trivial: {str(self.cohomologically_trivial).lower()}",
            f"bundle_trivial: {str(self.bundle_trivial).lower()}",
            f"verdict: {str(self.verdict).lower()}",
        ]
        if self.ko_exponent is not None:
            lines.insert(3, f"ko_order: 2^{self.ko_exponent}")
        return "\n".join(lines)


def montgomery_verdict(n: int) -> TrivialityReport:
    """Whether P(γ ⊕ τ) over RP^n is diffeomorphic to RP^n x RP^n.

    γ ⊕ τ ≅ (n+2)γ, so the bundle is trivial exactly when the order of
    γ - ε divides n + 2 = 2^r.
    """
    coh = is_cohomologically_trivial(n)
    exponent = None
    if n == 0:
        bundle = True
    elif coh and n >= 2:
        _, exponent = ko_order(n)
        bundle = exponent <= _exponent_r(n)  # type: ignore[operator]
    else:
        bundle = False
    return TrivialityReport(n, coh, bundle, coh and bundle, exponent)
