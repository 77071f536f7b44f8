import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfent.complexes import (
    LIBRARY_NAMES,
    BipartitionError,
    Chain,
    Cochain,
    ComplexValidationError,
    DeltaComplex,
    boundary,
    build_complex,
    coboundary,
    complex_to_json,
    library_complex,
    library_cut,
    load_complex,
    load_cut,
    make_bipartition,
    pairing,
)
from hfent.groups import FiniteAbelianGroup, StructureError

Z2 = FiniteAbelianGroup((2,))
GROUPS = [FiniteAbelianGroup(f) for f in [(2,), (3,), (4,), (2, 2)]]


def test_edge_and_triangle_signs():
    X = build_complex({"simplices": {"0": [[0], [1], [2]], "1": [[0, 1], [0, 2], [1, 2]], "2": [[0, 1, 2]]}})
    assert sorted(X.boundary[1][0]) == [(0, -1), (1, 1)]
    # d[v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1]
    assert sorted(X.boundary[2][0]) == [(0, 1), (1, -1), (2, 1)]


def test_validation_errors():
    with pytest.raises(ComplexValidationError):
        DeltaComplex((2, 1, 1), ((), (((1, 1), (0, -1)),), (((0, 1),),)))
    with pytest.raises(StructureError):
        DeltaComplex((2, 1), ((), (((5, 1), (0, -1)),)))


def test_library_counts():
    assert library_complex("sphere_tetra").counts == (4, 6, 4)
    assert library_complex("circle_3").counts == (3, 3)
    assert library_complex("torus_delta").counts == (1, 3, 2)
    assert library_complex("tetrahedron").counts == (4, 6, 4, 1)
    with pytest.raises(KeyError):
        library_complex("moebius")


def test_boundary_examples():
    X = library_complex("circle_3")
    e = Chain.from_dict(X, 1, Z2, {0: 1})
    assert boundary(e).support() == [0, 1]
    assert boundary(Chain.from_vector(X, 1, Z2, [1, 1, 1])).is_zero()
    assert boundary(Chain.from_vector(X, 0, Z2, [1, 0, 1])).dim == -1 or boundary(Chain.from_vector(X, 0, Z2, [1, 0, 1])).is_zero()


def test_coboundary_examples():
    X = library_complex("circle_3")
    assert coboundary(Cochain.from_vector(X, 0, Z2, [1, 1, 1])).is_zero()
    f = coboundary(Cochain.from_dict(X, 0, Z2, {0: 1}))
    incident = [i for i in range(3) if 0 in X.labels[1][i]]
    assert f.support() == incident


@pytest.mark.parametrize("name", LIBRARY_NAMES)
@pytest.mark.parametrize("G", GROUPS, ids=str)
def test_dd_and_stokes_random(name, G):
    X = library_complex(name)
    D = G.dual_group()
    rng = np.random.default_rng(0)
    for n in range(1, X.dim + 1):
        for _ in range(10):
            k = Chain.from_vector(X, n, D, rng.integers(0, G.exponent, X.count(n) * G.rank))
            phi = Cochain.from_vector(X, n - 1, G, rng.integers(0, G.exponent, X.count(n - 1) * G.rank))
            if n >= 2:
                assert boundary(boundary(k)).is_zero()
            if n < X.dim:
                assert coboundary(coboundary(phi)).is_zero()
            assert pairing(boundary(k), phi) == pairing(k, coboundary(phi))


@given(st.sampled_from(LIBRARY_NAMES), st.sampled_from(GROUPS), st.data())
def test_pairing_bilinear(name, G, data):
    X = library_complex(name)
    n = data.draw(st.integers(0, X.dim))
    size = X.count(n) * G.rank
    vec = lambda: np.array(data.draw(st.lists(st.integers(0, 11), min_size=size, max_size=size)), dtype=np.int64)  # noqa: E731
    k1, k2 = Chain.from_vector(X, n, G.dual_group(), vec()), Chain.from_vector(X, n, G.dual_group(), vec())
    f1, f2 = Cochain.from_vector(X, n, G, vec()), Cochain.from_vector(X, n, G, vec())
    assert pairing(k1 + k2, f1) == pairing(k1, f1) + pairing(k2, f1)
    assert pairing(k1, f1 + f2) == pairing(k1, f1) + pairing(k1, f2)


def test_pairing_single_site_and_disjoint():
    X = library_complex("circle_3")
    G = FiniteAbelianGroup((4,))
    k = Chain.from_dict(X, 1, G.dual_group(), {1: 3})
    f = Cochain.from_dict(X, 1, G, {1: 2})
    assert pairing(k, f).turns == pytest.approx(0.5)
    assert pairing(k, Cochain.from_dict(X, 1, G, {0: 1})).is_zero()
    with pytest.raises(StructureError):
        pairing(k, Cochain.from_dict(X, 0, G, {0: 1}))


def test_bipartition_circle_arc():
    X = library_complex("circle_6")
    bp = library_cut("arc", X)
    assert sorted(bp.boundary_psimplices) == [0, 3]
    assert sorted(bp.Ac_psimplices) == [4, 5]
    assert bp.A_psimplices | bp.B_psimplices == frozenset(range(6))


def test_bipartition_sphere_two_faces():
    X = library_complex("sphere_tetra")
    bp = library_cut("two_faces", X)
    assert len(bp.A_psimplices) == 5
    assert len(bp.boundary_psimplices) == 4
    assert bp.AB.count(2) == 0


def test_bipartition_everything():
    X = library_complex("sphere_tetra")
    bp = library_cut("everything", X)
    assert not bp.B_faces and not bp.Ac_psimplices and not bp.boundary_psimplices


def test_bipartition_errors():
    X = library_complex("circle_6")
    with pytest.raises(BipartitionError):
        make_bipartition(X, 0, [0], [0])  # edge 0 needs vertex 1
    with pytest.raises(BipartitionError):
        make_bipartition(X, 3, [], [])


def test_json_roundtrip(tmp_path):
    for name in LIBRARY_NAMES:
        X = library_complex(name)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(complex_to_json(X)))
        Y = load_complex(path)
        assert Y.counts == X.counts and Y.boundary == X.boundary and Y.name == X.name
    cut = tmp_path / "cut.json"
    cut.write_text(json.dumps({"p": 0, "A_faces": [0, 1, 2], "A_psimplices": [0, 1, 2, 3]}))
    bp = load_cut(library_complex("circle_6"), cut)
    assert sorted(bp.boundary_psimplices) == [0, 3]
    assert load_complex("torus_delta").counts == (1, 3, 2)
