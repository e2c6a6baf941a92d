import json
import math

import numpy as np
import pytest

from fcat import (ConsistencyError, MissingData, SchemaError, UnknownLabel,
                  global_dimension, hom_dim, load_builtin, load_category,
                  validate_hexagon, validate_pentagon)
from fcat.category import DATA_DIR
from fcat.errors import NotBraided

PHI = (1 + math.sqrt(5)) / 2


def _doc(name):
    return json.loads((DATA_DIR / f"{name}.json").read_text())


def _load_doc(tmp_path, doc, **kw):
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(doc))
    return load_category(p, **kw)


def test_labels_and_duals(specs):
    fib = specs["fibonacci"]
    assert [l.id for l in fib.labels] == ["1", "tau"]
    assert fib.unit == 0
    assert fib.dual(1) == 1
    z3 = specs["vec_z3"]
    assert z3.dual(z3.index("w")) == z3.index("w2")
    assert z3.dual_word((1, 2)) == (1, 2)  # (w w2)* = (w w2)


def test_quantum_dimensions_from_fusion_ring(fib):
    # d(tau) must be the positive root of d^2 = d + 1, derived from N alone
    root = np.roots([1, -1, -1]).max()
    assert abs(fib.dim(1) - root) < 1e-12
    assert abs(global_dimension(fib) - (1 + root ** 2)) < 1e-12


@pytest.mark.parametrize("name,want", [
    ("fibonacci", 2 + PHI), ("vec_z2", 2.0), ("ising", 4.0), ("vec_z3", 3.0)])
def test_global_dimension(specs, name, want):
    assert abs(global_dimension(specs[name]) - want) < 1e-12


def test_trivial_category(tmp_path):
    doc = {"name": "trivial", "labels": ["1"], "unit": "1", "dual": {"1": "1"},
           "N": [["1", "1", "1", 1]],
           "F": [["1"] * 6 + [0, 0, 0, 0, 1.0, 0.0]],
           "dims": {"1": [1.0, 0.0]}}
    spec = _load_doc(tmp_path, doc)
    assert global_dimension(spec) == 1
    assert hom_dim(spec, [], []) == 1


@pytest.mark.parametrize("name", ["fibonacci", "ising", "vec_z2", "vec_z3"])
def test_pentagon_residuals(specs, name):
    assert validate_pentagon(specs[name])["max_residual"] < 1e-12


@pytest.mark.parametrize("name", ["fibonacci", "ising", "vec_z2"])
def test_hexagon_residuals(specs, name):
    assert validate_hexagon(specs[name])["max_residual"] < 1e-12


def test_hexagon_requires_braiding(z3):
    with pytest.raises(NotBraided):
        validate_hexagon(z3)


def test_pentagon_tamper_detected(tmp_path):
    doc = _doc("fibonacci")
    flipped = False
    for row in doc["F"]:
        if row[:6] == ["tau"] * 6:
            row[10] = -row[10]
            flipped = True
    assert flipped
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "pentagon"
    assert err.value.residual > 1e-9


def test_hexagon_tamper_detected(tmp_path):
    # conjugating only one R entry breaks the hexagon by an O(1) amount
    doc = _doc("fibonacci")
    for row in doc["R"]:
        if row[:3] == ["tau", "tau", "tau"]:
            row[6] = -row[6]
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "hexagon"
    assert err.value.residual > 0.1


def test_unit_law_tamper(tmp_path):
    doc = _doc("vec_z2")
    doc["N"] = [row for row in doc["N"] if row[:3] != ["1", "e", "e"]]
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "unit-law"


def test_duality_tamper(tmp_path):
    doc = _doc("vec_z3")
    doc["dual"] = {"1": "1", "w": "w", "w2": "w2"}
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "duality"


def test_unit_gauge_enforced(tmp_path):
    doc = _doc("fibonacci")
    for row in doc["F"]:
        if row[:6] == ["1", "tau", "1", "tau", "tau", "tau"]:
            row[10] = 2.0
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "triangle"


def test_wrong_dims_rejected(tmp_path):
    doc = _doc("fibonacci")
    doc["dims"]["tau"] = [1.5, 0.0]
    with pytest.raises(ConsistencyError) as err:
        _load_doc(tmp_path, doc)
    assert err.value.kind == "sphericality"


def test_schema_errors(tmp_path):
    with pytest.raises(SchemaError):
        _load_doc(tmp_path, {"name": "x"})
    doc = _doc("fibonacci")
    del doc["dims"]
    with pytest.raises(MissingData):
        _load_doc(tmp_path, doc)
    doc = _doc("fibonacci")
    doc["F"].append(["1", "1", "1", "tau", "1", "1", 0, 0, 0, 0, 1.0, 0.0])
    with pytest.raises(SchemaError):
        _load_doc(tmp_path, doc)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load_category(bad)


def test_hom_dim_examples(fib, ising):
    assert hom_dim(fib, ["tau", "tau"], ["tau"]) == 1
    assert hom_dim(fib, [], []) == 1
    assert hom_dim(ising, ["sigma", "sigma"], ["sigma", "sigma"]) == 2
    with pytest.raises(UnknownLabel):
        hom_dim(fib, ["bogus"], [])


def test_hom_dim_symmetry_and_fusion(specs):
    for spec in specs.values():
        n = spec.n_labels
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    assert hom_dim(spec, (a, b), (c,)) == spec.rules.N[a, b, c]
        words = [(), (0,), (n - 1,), (0, n - 1)]
        for A in words:
            for B in words:
                assert hom_dim(spec, A, B) == hom_dim(spec, B, A)


def test_dimension_identity(specs):
    for spec in specs.values():
        N, d = spec.rules.N, spec.pivotal.d
        res = np.abs(np.einsum("abc,c->ab", N, d) - np.outer(d, d)).max()
        assert res < spec.tol


def test_tol_override(tmp_path):
    doc = _doc("vec_z2")
    spec = _load_doc(tmp_path, doc, tol=1e-6)
    assert spec.tol == 1e-6
    with pytest.raises(SchemaError):
        _load_doc(tmp_path, doc, tol=-1.0)


def test_spec_frozen(fib):
    with pytest.raises(Exception):
        fib.name = "other"


def test_load_builtin_unknown():
    with pytest.raises(SchemaError):
        load_builtin("nope")
