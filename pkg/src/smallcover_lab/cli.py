"""Command-line front end.

Reports are keyed text blocks (``key: value`` lines).  Exit status is 0 on
success, 1 when an input fails validation and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import _kernels
from .acceptance import CRITERIA, run_criterion
from .classify import classify_rp2, classify_t2, montgomery_verdict, t2_ring
from .document import emit_document, read_document
from .errors import DocumentSyntaxError, SmallCoverError
from .fibresum import DecompositionNode, decomposition_tree, fibre_sum
from .projbundle import (
    LineBundleSum,
    ProjChar,
    bott_tower,
    bundle_cohomology,
    line_bundle_sum,
    standardize,
    total_sw,
    triviality_test,
)
from .rings import RingPresentation, max_search_gens
from .smallcover import as_model, equivariant_cohomology, ordinary_cohomology


class UsageError(Exception):
    pass


def _bits(v: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in v)


def _ring_block(ring: RingPresentation, prefix: str = "") -> list[str]:
    return [
        f"{prefix}ring: {ring.format()}",
        f"{prefix}top_degree: {ring.top_degree}",
        f"{prefix}graded_dims: {ring.graded_dims()}",
    ]


def _base_ring(std: ProjChar) -> RingPresentation:
    return ordinary_cohomology(as_model(std.base_char()))


def cmd_validate(args) -> list[str]:
    pc = read_document(args.file)
    return [
        "valid: true",
        f"dim: {pc.n}",
        f"fiber_dim: {pc.fiber_dim}",
        f"num_facets: {pc.m}",
        f"num_vertices: {pc.base.num_vertices}",
        f"standard: {str(pc.is_standard()).lower()}",
    ]


def cmd_cohomology(args) -> list[str]:
    pc = read_document(args.file)
    char = pc.base_char()
    if args.equivariant:
        return ["kind: equivariant"] + _ring_block(equivariant_cohomology(char))
    model = as_model(char)
    return ["kind: ordinary", f"normalized_perm: {list(model.perm)}"] + _ring_block(ordinary_cohomology(model))


def cmd_bundle_cohomology(args) -> list[str]:
    pc = read_document(args.file)
    std, _, _ = standardize(pc)
    base = _base_ring(std)
    ls = line_bundle_sum(std)
    lines = [
        f"k: {ls.k}",
        f"summands: {' '.join(_bits(v) for v in ls.summands)}",
        f"total_sw: {total_sw(ls, base).format()}",
    ]
    lines += _ring_block(base, "base_")
    lines += _ring_block(bundle_cohomology(ls, base))
    return lines


def cmd_trivial_test(args) -> list[str]:
    pc = read_document(args.file)
    std, _, _ = standardize(pc)
    base = _base_ring(std)
    ls = line_bundle_sum(std)
    wit = triviality_test(ls, base)
    lines = [f"k: {ls.k}", f"summands: {' '.join(_bits(v) for v in ls.summands)}"]
    if wit is None:
        return lines + ["trivial_cohomology: false", "witness: none"]
    return lines + ["trivial_cohomology: true", f"witness: {_bits(wit)}"]


def _dot(root: DecompositionNode) -> list[str]:
    out = ["digraph decomposition {"]
    counter = iter(range(10**9))

    def walk(node: DecompositionNode) -> str:
        name = f"n{next(counter)}"
        if node.piece is not None:
            label = f"{node.piece.kind}\\nb={[_bits(b) for b in node.piece.b]}"
        else:
            label = f"{node.polygon.m}-gon\\nsplit {node.pair}"
        out.append(f'  {name} [label="{label}"];')
        for child in node.children:
            out.append(f"  {name} -> {walk(child)};")
        return name

    walk(root)
    out.append("}")
    return out


def cmd_decompose(args) -> list[str]:
    pc = read_document(args.file)
    tree = decomposition_tree(pc)
    if args.dot:
        args._raw = True
        return _dot(tree)
    leaves = list(tree.leaves())
    lines = [f"num_facets: {pc.m}", f"fiber_dim: {pc.fiber_dim}", f"splits: {tree.split_count()}", f"pieces: {len(leaves)}"]
    for i, leaf in enumerate(leaves):
        p = leaf.piece
        lines.append(f"piece {i}: {p.kind}")
        lines.append(f"piece {i} b: {' '.join(_bits(b) for b in p.b) or '-'}")
        lines.append(f"piece {i} labels: {' '.join(_bits(c) for c in p.source.labels.columns())}")
        lines.append(f"piece {i} witness: {' '.join(_bits(r) for r in p.witness.tolist())}")
    return lines


def cmd_recompose(args) -> list[str]:
    p1, p2 = read_document(args.file1), read_document(args.file2)
    args._raw = True
    return emit_document(fibre_sum(p1, args.v1, p2, args.v2)).rstrip("\n").split("\n")


def cmd_classify_rp2(args) -> list[str]:
    c = classify_rp2(args.k, args.q)
    return [c.format(), f"k: {c.k}", f"q_canonical: {c.q_canonical}"]


def _parse_summands(tokens: Sequence[str], gens: int) -> list[tuple[int, ...]]:
    out = []
    for tok in tokens:
        tok = tok.strip()
        if tok == "e":
            out.append((0,) * gens)
            continue
        if len(tok) != gens or set(tok) - {"0", "1"}:
            raise UsageError(f"summand {tok!r} must be 'e' or a {gens}-bit string")
        out.append(tuple(int(c) for c in tok))
    if not out:
        raise UsageError("at least one summand is required")
    return out


def cmd_classify_t2(args) -> list[str]:
    vs = _parse_summands(args.summands.split(","), 2)
    c = classify_t2(vs)
    return [f"type: {c.type}", f"k: {c.k}"] + _ring_block(t2_ring(c))


def cmd_bott(args) -> list[str]:
    stages = []
    gens = 0
    for stage in args.stage:
        ls = LineBundleSum(gens, tuple(_parse_summands(stage.split(","), gens)))
        stages.append(ls)
        gens += ls.k - 1
    model = bott_tower(stages)
    lines = [f"stages: {len(stages)}", f"dim: {model.dim}"]
    lines += [f"lambda row {i}: {_bits(r)}" for i, r in enumerate(model.char.lam.tolist())]
    return lines + _ring_block(ordinary_cohomology(model))


def cmd_montgomery(args) -> list[str]:
    return montgomery_verdict(args.n).format().split("\n")


def cmd_verify_all(args) -> list[str]:
    lines = [f"seed: {args.seed}", f"backend: {_kernels.BACKEND}", f"max_gens: {max_search_gens()}"]
    failed = 0
    for num in range(1, len(CRITERIA) + 1):
        res = run_criterion(num, args.seed)
        failed += not res.passed
        lines.append(res.line())
    lines.append(f"failed: {failed}")
    args._failed = failed
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smallcover-lab", description="Small covers and their projective bundles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="document path, or - for standard input")
        p.set_defaults(func=func)
        return p

    with_file("validate", cmd_validate, "check a labeled-polytope document")
    p = with_file("cohomology", cmd_cohomology, "mod 2 cohomology of the base small cover")
    p.add_argument("--equivariant", action="store_true", help="face ring instead of ordinary cohomology")
    with_file("bundle-cohomology", cmd_bundle_cohomology, "cohomology of the projective bundle")
    with_file("trivial-test", cmd_trivial_test, "look for a class making the cohomology a product")
    p = with_file("decompose", cmd_decompose, "split a labeled polygon into irreducible pieces")
    p.add_argument("--dot", action="store_true", help="emit the split tree in dot syntax")

    p = sub.add_parser("recompose", help="fibre-sum two labeled polygons at given vertices")
    p.add_argument("file1")
    p.add_argument("v1", type=int)
    p.add_argument("file2")
    p.add_argument("v2", type=int)
    p.set_defaults(func=cmd_recompose)

    p = sub.add_parser("classify-rp2", help="class of P(qγ + (k-q)ε) over RP^2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_classify_rp2)

    p = sub.add_parser("classify-t2", help="class of a sum of line bundles over T^2")
    p.add_argument("--summands", required=True, help="comma-separated 2-bit strings or e, e.g. 10,01,e")
    p.set_defaults(func=cmd_classify_t2)

    p = sub.add_parser("bott", help="cohomology of a generalized real Bott manifold")
    p.add_argument("--stage", action="append", required=True, help="summands of one stage, e.g. e,e then 1,e")
    p.set_defaults(func=cmd_bott)

    p = sub.add_parser("montgomery", help="is P(γ + τ) over RP^n a product")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_montgomery)

    p = sub.add_parser("verify-all", help="run every acceptance check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DocumentSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 1
    except SmallCoverError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    if not getattr(args, "_raw", False):
        print(f"command: {args.command}")
    print("\n".join(lines))
    return 1 if getattr(args, "_failed", 0) else 0


if __name__ == "__main__":
    raise SystemExit(main())
