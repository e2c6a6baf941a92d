"""Pointed category on a nonabelian group: non-commutative fusion.

Vec_S3 has N[a,b,c] != N[b,a,c], no braiding, and a quantum double whose
simples mostly have underlying objects that are sums of distinct group
elements -- not realizable as tensor words.  These tests pin down both
what works (everything order-sensitive up to the tube algebra) and the
loud failure mode of the word-carrier normal form.
"""

import itertools
import json

import numpy as np
import pytest

from fcat import (DecompositionFailed, decompose_tube_algebra, hom_dim,
                  identity, load_category, tube_algebra, tube_compose,
                  tube_hom_dim, validate_pentagon)
from fcat.tube import TubeMorphism


@pytest.fixture(scope="module")
def s3(tmp_path_factory):
    perms = list(itertools.permutations(range(3)))
    name = {p: f"g{idx}" for idx, p in enumerate(perms)}

    def mul(p, q):
        return tuple(p[q[x]] for x in range(3))

    def inv(p):
        out = [0] * 3
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    ids = [name[p] for p in perms]
    doc = {"name": "vec_s3", "labels": ids, "unit": name[(0, 1, 2)],
           "dual": {name[p]: name[inv(p)] for p in perms},
           "N": [[name[p], name[q], name[mul(p, q)], 1]
                 for p in perms for q in perms],
           "F": [[name[p], name[q], name[r], name[mul(mul(p, q), r)],
                  name[mul(p, q)], name[mul(q, r)], 0, 0, 0, 0, 1.0, 0.0]
                 for p in perms for q in perms for r in perms],
           "dims": {i: [1.0, 0.0] for i in ids}}
    path = tmp_path_factory.mktemp("s3") / "vec_s3.json"
    path.write_text(json.dumps(doc))
    return load_category(path)


def test_loads_with_noncommutative_fusion(s3):
    N = s3.rules.N
    assert not np.array_equal(N, N.transpose(1, 0, 2))
    assert validate_pentagon(s3)["max_residual"] == 0.0
    # hom dimensions stay symmetric even though the ring is not commutative
    for a in range(6):
        for b in range(6):
            assert hom_dim(s3, (a,), (b,)) == hom_dim(s3, (b,), (a,))


def test_tube_algebra_is_group_theoretic(s3):
    A = tube_algebra(s3)
    assert A.dim == 36
    # dim Hom_TC(g, h) counts conjugators of g into h
    total = sum(tube_hom_dim(s3, (g,), (h,)) for g in range(6) for h in range(6))
    assert total == 36

    def grade_unit(R):
        return TubeMorphism(s3, (), (), {R: identity(s3, (R,))})

    # End_TC(unit) is the group ring: composition respects the group order
    for a in range(6):
        for b in range(6):
            prod = tube_compose(grade_unit(a), grade_unit(b))
            for T in range(6):
                comp = prod.components.get(T)
                got = comp.block(T)[0, 0] if comp is not None else 0.0
                assert abs(got - s3.rules.N[a, b, T]) < 1e-12


def test_word_carrier_boundary_fails_loudly(s3):
    """Doubles of nonabelian groups have centre simples whose underlying
    objects are class sums; no tensor word realizes them, and the block
    normal form must say so instead of returning something wrong."""
    A = tube_algebra(s3)
    with pytest.raises(DecompositionFailed, match="no word"):
        decompose_tube_algebra(A)
