from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

import numpy as np

from smallcover_lab.cli import main
from smallcover_lab.document import emit_document, parse_document
from smallcover_lab.errors import DocumentSyntaxError, DocumentValidationError
from smallcover_lab.fibresum import labeled_polygon, random_labeled_polygon
from smallcover_lab.polytope import make_polygon, make_simplex, product
from smallcover_lab.projbundle import ProjChar


def doc(labels, fiber_dim, m=None, vertices=None):
    m = m or len(labels)
    return json.dumps({
        "version": "small-cover-lab/1",
        "dim": 2,
        "fiber_dim": fiber_dim,
        "num_facets": m,
        "vertices": vertices or [[i, (i + 1) % m] for i in range(m)],
        "labels": labels,
    })


def test_parse_triangle():
    pc = parse_document(doc([[1, 0], [0, 1], [1, 1]], 0))
    assert pc.fiber_dim == 0 and pc.validate().valid


def test_parse_with_fibre():
    pc = parse_document(doc([{"a": [1, 0], "b": [0]}, {"a": [0, 1], "b": [0]}, {"a": [1, 1], "b": [1]}], 1))
    assert pc.k == 2 and pc.b(2) == (1,)


def test_validation_error_names_vertex():
    with pytest.raises(DocumentValidationError, match=r"vertex \{2, 3\}"):
        parse_document(doc([[1, 0], [0, 1], [1, 1], [1, 1]], 0))


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as exc:
        parse_document('{\n  "dim": 2,\n  oops\n}')
    assert exc.value.line == 3 and exc.value.column == 3


@pytest.mark.parametrize("mutate,needle", [
    (lambda d: d.pop("labels"), "missing keys"),
    (lambda d: d.update(version="x"), "version"),
    (lambda d: d["labels"].__setitem__(1, {"a": [0, 2], "b": []}), "facet 1"),
    (lambda d: d["vertices"].__setitem__(0, [0, 9]), "vertex 0"),
    (lambda d: d["labels"].__setitem__(2, {"a": [1, 1]}), None),
])
def test_validation_messages(mutate, needle):
    d = json.loads(doc([[1, 0], [0, 1], [1, 1]], 0))
    d["labels"] = [{"a": a, "b": []} for a in d["labels"]]
    mutate(d)
    if needle is None:
        parse_document(json.dumps(d))  # b may be omitted when fiber_dim is 0
        return
    with pytest.raises(DocumentValidationError, match=needle):
        parse_document(json.dumps(d))


@given(st.integers(3, 9), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_emit_parse_roundtrip(m, f, seed):
    pc = random_labeled_polygon(np.random.default_rng(seed), m, f)
    text = emit_document(pc)
    back = parse_document(text)
    assert back == pc and emit_document(back) == text


def test_roundtrip_prism():
    base = product(make_polygon(3), make_simplex(1))
    pc = ProjChar.from_parts(base, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (0, 0, 1)], [(0,), (0,), (1,), (1,), (0,)])
    assert parse_document(emit_document(pc)) == pc


@pytest.fixture
def files(tmp_path):
    tri = tmp_path / "tri.json"
    tri.write_text(emit_document(labeled_polygon([(1, 0, 0), (0, 1, 0), (1, 1, 1)])))
    octa = tmp_path / "oct.json"
    octa.write_text(emit_document(labeled_polygon(
        [(1, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)])))
    bad = tmp_path / "bad.json"
    bad.write_text(doc([[1, 0], [0, 1], [1, 1], [1, 1]], 0))
    return {"tri": str(tri), "oct": str(octa), "bad": str(bad)}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_classify_rp2(capsys):
    code, out, _ = run(capsys, "classify-rp2", "--k", "4", "--q", "2")
    assert code == 0 and "TwoGamma: S²×_{Z₂}P(2γ⊕(k−2)ε)" in out


def test_cli_montgomery(capsys):
    code, out, _ = run(capsys, "montgomery", "--n", "6")
    assert code == 0 and "verdict: true" in out


def test_cli_decompose(capsys, files):
    code, out, _ = run(capsys, "decompose", files["oct"])
    assert code == 0 and "pieces: 5" in out and "piece 0: SquareOverT2" in out
    code, out, _ = run(capsys, "decompose", "--dot", files["oct"])
    assert out.startswith("digraph decomposition {") and 'split (0, 3)' in out


def test_cli_validate(capsys, files):
    assert run(capsys, "validate", files["tri"])[0] == 0
    code, _, err = run(capsys, "validate", files["bad"])
    assert code == 1 and "vertex {2, 3}" in err


def test_cli_usage_errors(capsys, files, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bott", "--stage", "1,e")[0] == 2


def test_cli_cohomology_commands(capsys, files):
    code, out, _ = run(capsys, "cohomology", files["tri"])
    assert code == 0 and "ring: Z/2[x]/<x^3>" in out
    code, out, _ = run(capsys, "cohomology", "--equivariant", files["tri"])
    assert "t1*t2*t3" in out
    code, out, _ = run(capsys, "bundle-cohomology", files["tri"])
    assert "graded_dims: [1, 2, 2, 1]" in out
    code, out, _ = run(capsys, "trivial-test", files["tri"])
    assert "witness: none" in out


def test_cli_recompose(capsys, files):
    code, out, _ = run(capsys, "recompose", files["tri"], "0", files["tri"], "0")
    assert code == 0 and parse_document(out).m == 4


def test_cli_bott_and_t2(capsys):
    code, out, _ = run(capsys, "bott", "--stage", "e,e", "--stage", "1,e")
    assert "ring: Z/2[x, y]/<x^2, x*y + y^2>" in out
    code, out, _ = run(capsys, "classify-t2", "--summands", "10,01,e")
    assert "type: TypeTwo" in out


def test_cli_deterministic(capsys, files):
    first = run(capsys, "decompose", files["oct"])
    assert run(capsys, "decompose", files["oct"]) == first


def test_cli_stdin(capsys, files, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(open(files["tri"]).read()))
    assert run(capsys, "validate", "-")[0] == 0
