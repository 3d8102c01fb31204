"""The ten acceptance checks, shared by the test suite and ``verify-all``.

Each check returns a :class:`CriterionResult`; ``passed`` requires both the
mathematical statement and the time budget.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .classify import (
    T2BundleClass,
    t2_ring,
    k_of,
    k_of_closed_form,
    montgomery_verdict,
    same_rp2_class,
    triviality_checks,
)
from .fibresum import (
    decomposition_tree,
    find_split_pair,
    labeled_polygon,
    random_labeled_polygon,
    recompose,
    weak_equivalent,
)
from .gf2 import all_vectors
from .polytope import make_polygon
from .projbundle import LineBundleSum, bundle_cohomology, product_cohomology, triviality_test
from .rings import RingPresentation, ring_isomorphic
from .smallcover import as_model, char_from_columns, ordinary_cohomology, validate_char


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.title} ({self.seconds:.2f}s / {self.budget:g}s) {self.detail}"


def rp2_ring() -> RingPresentation:
    return ordinary_cohomology(as_model(char_from_columns(make_polygon(3), [(1, 0), (0, 1), (1, 1)])))


def t2_base_ring() -> RingPresentation:
    return ordinary_cohomology(as_model(char_from_columns(make_polygon(4), [(1, 0), (0, 1), (1, 0), (0, 1)])))


def _span(vectors: list[tuple[int, ...]]) -> set[int]:
    """All subset sums, as bitmasks."""
    ints = [sum(bit << i for i, bit in enumerate(v)) for v in vectors]
    out = {0}
    for v in ints:
        out |= {s ^ v for s in out}
    return out


def _brute_valid(base_vertices, columns) -> bool:
    """Every vertex's labels span the whole space, by listing subset sums."""
    dim = len(columns[0])
    return all(len(_span([columns[f] for f in sorted(v)])) == 2**dim for v in base_vertices)


def criterion_1(seed: int = 0) -> tuple[bool, str]:
    checked = mismatches = 0
    for m in (3, 4):
        poly = make_polygon(m)
        # fiber_dim 1: 8 labels per facet; compare against the product with an interval
        for labels in itertools.product(all_vectors(3), repeat=m):
            pc = labeled_polygon(labels, 1)
            fast = bool(pc.validate().valid)
            full = list(labels) + [(0, 0, 1), (0, 0, 1)]  # simplex facets (0|e_1), (0|1)
            verts = [v | {m + j} for v in poly.vertices for j in (0, 1)]
            mismatches += fast != _brute_valid(verts, full)
            checked += 1
        for labels in itertools.product(all_vectors(2), repeat=m):
            fast = bool(validate_char(char_from_columns(poly, labels)).valid)
            mismatches += fast != _brute_valid(poly.vertices, list(labels))
            checked += 1
    return mismatches == 0, f"{checked} labelings, {mismatches} mismatches"


def _convolve_ones(dims: list[int], k: int) -> list[int]:
    return [int(v) for v in np.convolve(dims, np.ones(k, dtype=int))]


def _all_sums(gens: int, k: int):
    """Every sum with last summand trivial: 2^(gens*(k-1)) of them."""
    zero = (0,) * gens
    for head in itertools.product(all_vectors(gens), repeat=k - 1):
        yield LineBundleSum(gens, tuple(head) + (zero,))


def criterion_2(seed: int = 0) -> tuple[bool, str]:
    count = bad = 0
    for base in (rp2_ring(), t2_base_ring()):
        dims = base.graded_dims()
        for k in range(1, 6):
            want = _convolve_ones(dims, k)
            for ls in _all_sums(base.num_gens, k):
                count += 1
                bad += bundle_cohomology(ls, base).graded_dims() != want
    return bad == 0, f"{count} sums, {bad} mismatches"


def criterion_3(seed: int = 0) -> tuple[bool, str]:
    count = bad = trivial = 0
    for base in (rp2_ring(), t2_base_ring()):
        for k in range(2, 5):
            prod = product_cohomology(base, k)
            for ls in _all_sums(base.num_gens, k):
                count += 1
                wit = triviality_test(ls, base) is not None
                iso = ring_isomorphic(bundle_cohomology(ls, base), prod) is not None
                trivial += wit
                bad += wit != iso
    return bad == 0, f"{count} sums ({trivial} trivial), {bad} disagreements"


def _partition(items: list[int], same: Callable[[int, int], bool]) -> list[list[int]]:
    blocks: list[list[int]] = []
    for x in items:
        for b in blocks:
            if same(b[0], x):
                b.append(x)
                break
        else:
            blocks.append([x])
    return blocks


def rp2_ring_partition(k: int) -> list[list[int]]:
    base = rp2_ring()
    rings = [bundle_cohomology(LineBundleSum(1, ((1,),) * q + ((0,),) * (k - q)), base) for q in range(k + 1)]
    return _partition(list(range(k + 1)), lambda a, b: ring_isomorphic(rings[a], rings[b]) is not None)


def criterion_4(seed: int = 0) -> tuple[bool, str]:
    bad = []
    for k in range(1, 9):
        by_ring = rp2_ring_partition(k)
        by_rule = _partition(list(range(k + 1)), lambda a, b, k=k: same_rp2_class(k, a, b))
        if by_ring != by_rule:
            bad.append(k)
    return not bad, "k = 1..8 agree" if not bad else f"disagree at k = {bad}"


T2_STATED = ("Trivial", "TypeOne", "TypeTwo")


def t2_isomorphic_pairs(k: int) -> list[tuple[str, str]]:
    rings = {t: t2_ring(T2BundleClass(k, t)) for t in T2_STATED}
    return [(a, b) for a, b in itertools.combinations(T2_STATED, 2) if ring_isomorphic(rings[a], rings[b]) is not None]


def criterion_5(seed: int = 0) -> tuple[bool, str]:
    notes = []
    ok = True
    for k in (3, 4, 5):
        pairs = t2_isomorphic_pairs(k)
        if pairs:
            ok = False
            notes.append(f"k={k}: " + ", ".join(f"{a}≅{b}" for a, b in pairs))
    if ("TypeOne", "TypeTwo") not in t2_isomorphic_pairs(2):
        ok = False
        notes.append("k=2: TypeTwo not isomorphic to TypeOne")
    return ok, "; ".join(notes) if notes else "k=3,4,5 pairwise distinct; k=2 collapses"


def _piece_ok(node) -> bool:
    piece = node.piece
    raw = node.polygon
    if (piece.witness @ raw.labels) != piece.source.labels:
        return False
    if raw.m == 3:
        return piece.kind == "TriangleOverRP2"
    return raw.m == 4 and piece.kind == "SquareOverT2" and find_split_pair(raw) is None


def criterion_6(seed: int = 0, samples: int = 10_000) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    failures = {"no_split": 0, "bad_piece": 0, "not_equivalent": 0}
    for _ in range(samples):
        m = int(rng.integers(5, 11))
        f = int(rng.integers(0, 4))
        p = random_labeled_polygon(rng, m, f)
        if find_split_pair(p) is None:
            failures["no_split"] += 1
            continue
        tree = decomposition_tree(p)
        if not all(_piece_ok(leaf) for leaf in tree.leaves()) or tree.split_count() > m - 3:
            failures["bad_piece"] += 1
        if weak_equivalent(recompose(tree), p, search_dihedral=True) is None:
            failures["not_equivalent"] += 1
    ok = not any(failures.values())
    return ok, f"seed={seed}, {samples} polygons, failures {failures}"


def _proper_colorings(m: int):
    nz = [(1, 0), (0, 1), (1, 1)]
    for seq in itertools.product(nz, repeat=m):
        if all(seq[i] != seq[(i + 1) % m] for i in range(m)):
            yield seq


def criterion_7(seed: int = 0) -> tuple[bool, str]:
    rp2, t2 = rp2_ring(), t2_base_ring()
    count = bad = 0
    for m in range(3, 8):
        for seq in _proper_colorings(m):
            count += 1
            for leaf in decomposition_tree(labeled_polygon(seq, 0)).leaves():
                piece = leaf.piece
                src = piece.source
                ring = ordinary_cohomology(as_model(src.base_char()))
                if piece.kind == "TriangleOverRP2":
                    good = src.a_part.columns() == [(1, 0), (0, 1), (1, 1)] and ring_isomorphic(ring, rp2)
                else:
                    good = src.a_part.columns() == [(1, 0), (0, 1), (1, 0), (0, 1)] and ring_isomorphic(ring, t2)
                bad += not good
    return bad == 0, f"{count} colorings, {bad} unexpected pieces"


def criterion_8(seed: int = 0) -> tuple[bool, str]:
    bad = [n for n in range(31) if len(set(triviality_checks(n))) != 1]
    iso = [n for n in range(31) if triviality_checks(n)[2]]
    return not bad, f"isomorphic for n = {iso}" + (f"; disagreement at {bad}" if bad else "")


def criterion_9(seed: int = 0) -> tuple[bool, str]:
    closed = all(k_of(r) == k_of_closed_form(r) for r in range(2, 13))
    named = {3: k_of(2), 7: k_of(3), 15: k_of(4), 31: k_of(5)}
    ok = closed and named == {3: 2, 7: 3, 15: 7, 31: 15}
    return ok, f"k(3), k(7), k(15), k(31) = {list(named.values())}"


def criterion_10(seed: int = 0) -> tuple[bool, str]:
    reports = [montgomery_verdict(n) for n in range(63)]
    yes = [r.n for r in reports if r.verdict]
    flagged = [r.n for r in reports if r.cohomologically_trivial and not r.bundle_trivial]
    ok = yes == [0, 2, 6] and flagged == [14, 30, 62] and all(r.cohomologically_trivial for r in reports if r.verdict)
    return ok, f"verdict true for {yes}; cohomology-only for {flagged}"


CRITERIA: list[tuple[int, str, Callable[..., tuple[bool, str]], float]] = [
    (1, "spanning validator vs brute force", criterion_1, 1.0),
    (2, "free-module graded dimensions", criterion_2, 10.0),
    (3, "triviality witness vs ring isomorphism", criterion_3, 60.0),
    (4, "RP^2 bundle partition", criterion_4, 60.0),
    (5, "T^2 rings pairwise distinct", criterion_5, 10.0),
    (6, "random polygon decomposition", criterion_6, 300.0),
    (7, "fibre-free decomposition pieces", criterion_7, 60.0),
    (8, "P(γ+τ) cohomology vs power of two", criterion_8, 60.0),
    (9, "k(2^r-1) enumeration", criterion_9, 1.0),
    (10, "RP^n x RP^n verdict", criterion_10, 1.0),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    num, title, fn, budget = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = fn(seed)
    elapsed = time.perf_counter() - start
    return CriterionResult(num, title, ok and elapsed <= budget, detail, elapsed, budget)


def run_all(seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(n, seed) for n in range(1, len(CRITERIA) + 1)]
