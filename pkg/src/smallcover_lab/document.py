"""JSON documents describing labeled polytopes.

Example::

    {
      "version": "small-cover-lab/1",
      "dim": 2,
      "fiber_dim": 1,
      "num_facets": 3,
      "vertices": [[0, 1], [0, 2], [1, 2]],
      "labels": [
        {"a": [1, 0], "b": [0]},
        {"a": [0, 1], "b": [0]},
        {"a": [1, 1], "b": [1]}
      ]
    }

A label may be a bare a-list when ``fiber_dim`` is 0.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

from .errors import DocumentSyntaxError, DocumentValidationError, SmallCoverError
from .gf2 import BitMatrix
from .polytope import SimplePolytope
from .projbundle import ProjChar

VERSION = "small-cover-lab/1"
_KEYS = ("version", "dim", "fiber_dim", "num_facets", "vertices", "labels")


def _bits(value: Any, length: int, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != length:
        raise DocumentValidationError(f"{where}: expected a list of {length} bits")
    for v in value:
        if isinstance(v, bool) or v not in (0, 1):
            raise DocumentValidationError(f"{where}: entries must be 0 or 1, got {v!r}")
    return tuple(value)


def _nonneg_int(doc: dict, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise DocumentValidationError(f"{key}: expected a nonnegative integer, got {v!r}")
    return v


def from_data(doc: Any) -> ProjChar:
    """Validate an already-decoded document."""
    if not isinstance(doc, dict):
        raise DocumentValidationError("document must be a JSON object")
    missing = [k for k in _KEYS if k not in doc]
    if missing:
        raise DocumentValidationError(f"missing keys: {', '.join(missing)}")
    extra = sorted(set(doc) - set(_KEYS))
    if extra:
        raise DocumentValidationError(f"unknown keys: {', '.join(extra)}")
    if doc["version"] != VERSION:
        raise DocumentValidationError(f"version: expected {VERSION!r}, got {doc['version']!r}")
    n, f, m = (_nonneg_int(doc, k) for k in ("dim", "fiber_dim", "num_facets"))

    if not isinstance(doc["vertices"], list) or not doc["vertices"]:
        raise DocumentValidationError("vertices: expected a nonempty list")
    vertices = []
    for vi, v in enumerate(doc["vertices"]):
        if not isinstance(v, list) or len(v) != n or len(set(map(str, v))) != n:
            raise DocumentValidationError(f"vertex {vi}: expected {n} distinct facet indices, got {v!r}")
        for fi in v:
            if isinstance(fi, bool) or not isinstance(fi, int) or not 0 <= fi < m:
                raise DocumentValidationError(f"vertex {vi}: facet index {fi!r} out of range 0..{m - 1}")
        vertices.append(frozenset(v))

    labels = doc["labels"]
    if not isinstance(labels, list) or len(labels) != m:
        raise DocumentValidationError(f"labels: expected {m} entries")
    cols = []
    for i, lab in enumerate(labels):
        if isinstance(lab, list) and f == 0:
            a, b = lab, []
        elif isinstance(lab, dict):
            unknown = sorted(set(lab) - {"a", "b"})
            if unknown:
                raise DocumentValidationError(f"facet {i}: unknown label keys {unknown}")
            if "a" not in lab:
                raise DocumentValidationError(f"facet {i}: label has no 'a' part")
            a = lab["a"]
            if "b" not in lab and f:
                raise DocumentValidationError(f"facet {i}: label has no 'b' part but fiber_dim is {f}")
            b = lab.get("b", [])
        else:
            raise DocumentValidationError(f"facet {i}: label must be an object with 'a' and 'b'")
        cols.append(_bits(a, n, f"facet {i} a") + _bits(b, f, f"facet {i} b"))

    try:
        base = SimplePolytope(n, m, tuple(vertices))
        pc = ProjChar(base, f, BitMatrix.from_columns(cols, rows=n + f))
    except SmallCoverError as exc:
        raise DocumentValidationError(str(exc)) from exc
    check = pc.validate()
    if not check.valid:
        v = check.violations[0]
        raise DocumentValidationError(
            f"vertex {{{', '.join(map(str, v))}}}: a-labels of facets {list(v)} do not span GF(2)^{n}"
        )
    return pc


def parse_document(text: str) -> ProjChar:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    return from_data(doc)


def read_document(path: str) -> ProjChar:
    """Parse a file, or standard input when ``path`` is ``-``."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_document(text)


def _row(values) -> str:
    return "[" + ", ".join(str(int(v)) for v in values) + "]"


def emit_document(pc: ProjChar) -> str:
    """Canonical text: sorted vertices, one label per line, trailing newline."""
    n, f = pc.n, pc.fiber_dim
    verts = ", ".join(_row(v) for v in pc.base.sorted_vertices())
    labels = []
    for i in range(pc.m):
        col = pc.labels.column(i)
        labels.append(f'    {{"a": {_row(col[:n])}, "b": {_row(col[n:])}}}')
    lines = [
        "{",
        f'  "version": "{VERSION}",',
        f'  "dim": {n},',
        f'  "fiber_dim": {f},',
        f'  "num_facets": {pc.m},',
        f'  "vertices": [{verts}],',
        '  "labels": [',
        ",\n".join(labels),
        "  ]",
        "}",
    ]
    return "\n".join(lines) + "\n"
