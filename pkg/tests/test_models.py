import numpy as np
import pytest
import scipy.sparse as sp

from hfent.complexes import DeltaComplex, library_complex
from hfent.coupling import conjugate, conjugate_full
from hfent.entropy import symmetric_eigenstates
from hfent.groups import StructureError
from hfent.hilbert import projector_inv
from hfent.models import (
    FermionZ2Params,
    ToricStackParams,
    fermion_z2_build,
    gauged_toric_check,
    toric_stack_build,
)
from hfent.models._ops import LOWER, Z, jw_annihilator, site_string
from hfent.models.fermion_z2 import hopping_term, parity_operator, vertex_term


def _pinv(bundle):
    return sp.diags(projector_inv(bundle.model).support.astype(float))


def test_jw_anticommutation():
    n = 4
    c = [jw_annihilator(n, j).toarray() for j in range(n)]
    for i in range(n):
        for j in range(n):
            acomm = c[i] @ c[j].T + c[j].T @ c[i]
            assert np.allclose(acomm, np.eye(2**n) * (i == j))
            assert np.allclose(c[i] @ c[j] + c[j] @ c[i], 0)
    # empty state is label 0
    assert np.array_equal(LOWER.toarray(), [[0, 1], [0, 0]])


def test_parity_commutes_with_matter_hamiltonian():
    X = library_complex("circle_6")
    b = fermion_z2_build(X)
    P = parity_operator(X)
    assert abs(P @ b.H_p - b.H_p @ P).max() < 1e-14


@pytest.mark.parametrize("name", ["circle_3", "circle_4", "complete_graph_4", "interval_4"])
def test_fermion_hermitian_and_coupling(name):
    b = fermion_z2_build(library_complex(name), FermionZ2Params(V=0.3))
    for H in (b.H_p, b.H_p1, b.H):
        assert abs(H - H.conj().T).max() < 1e-14
    assert b.coupling_deviation() < 1e-10


def test_fermion_decoupled_limit():
    b = fermion_z2_build(library_complex("circle_4"), FermionZ2Params(w=0.0, mu=0.0, g=0.0))
    assert abs(b.H - b.H0).max() < 1e-14


def test_fermion_vertex_and_hopping_dressing():
    X = library_complex("circle_4")
    b = fermion_z2_build(X)
    m = b.model
    P = _pinv(b)
    for v in range(X.count(0)):
        A = conjugate_full(m, m.embed_p1(vertex_term(X, v)))
        B = sp.kron(site_string(4, {v: Z}), vertex_term(X, v))
        assert abs((A - B) @ P).max() < 1e-12
    for e in range(X.count(1)):
        A = conjugate(m, hopping_term(X, e))
        B = sp.kron(hopping_term(X, e), site_string(4, {e: Z}))
        assert abs((A - B) @ P).max() < 1e-12


def test_fermion_spectrum_matches_on_inv():
    b = fermion_z2_build(library_complex("circle_6"))
    mask = projector_inv(b.model).support
    w1, _ = symmetric_eigenstates(b.H, mask)
    w0, _ = symmetric_eigenstates(b.H0, mask)
    assert np.allclose(w1, w0, atol=1e-10)


@pytest.mark.parametrize("name", ["sphere_tetra", "triangle_disk", "two_triangles_sphere", "torus_delta", "tetrahedron"])
def test_toric_coupling(name):
    b = toric_stack_build(library_complex(name))
    for H in (b.H_p, b.H_p1, b.H):
        assert abs(H - H.conj().T).max() < 1e-14
    assert b.coupling_deviation() < 1e-10


def test_toric_zero_couplings():
    b = toric_stack_build(library_complex("sphere_tetra"), ToricStackParams(0, 0, 0, 0, 0, 0))
    assert b.H.nnz == 0 or abs(b.H).max() == 0


@pytest.mark.parametrize("name", ["sphere_tetra", "triangle_disk", "tetrahedron"])
def test_gauged_toric_code(name):
    r = gauged_toric_check(library_complex(name), report=True)
    assert r.ok
    assert max(r.closed_form_error, r.vertex_term_error, r.gauge_invariance_error, r.isometry_error) < 1e-12
    assert gauged_toric_check(library_complex(name)) is True


def test_structural_errors():
    point = DeltaComplex((1,), ((),), name="point")
    with pytest.raises(StructureError):
        fermion_z2_build(point)
    with pytest.raises(StructureError):
        toric_stack_build(library_complex("circle_4"))
    with pytest.raises(ValueError):
        FermionZ2Params(w=float("nan"))
    with pytest.raises(ValueError):
        ToricStackParams(dF=float("inf"))


def test_notes():
    b = fermion_z2_build(library_complex("circle_4"), FermionZ2Params(V=1.0))
    assert any("no 2-simplices" in n for n in b.notes)
    t = toric_stack_build(library_complex("sphere_tetra"))
    assert any("3-simplices" in n for n in t.notes)


def _ground_weight_in_inv(bundle):
    w, V = np.linalg.eigh(bundle.H.toarray())
    assert w[1] - w[0] > 1e-6  # nondegenerate
    inv = projector_inv(bundle.model).support
    return float(np.sum(np.abs(V[inv, 0]) ** 2))


@pytest.mark.parametrize("name", ["triangle_disk", "tetrahedron"])
def test_toric_stabilizers_enforce_inv(name):
    b = toric_stack_build(library_complex(name), ToricStackParams(dV=20.0, dV_=20.0))
    assert _ground_weight_in_inv(b) >= 1 - 1e-10


def test_fermion_plaquette_enforces_inv_in_even_sector():
    X = library_complex("triangle_disk")
    # the chemical potential selects the parity sector; the default one is odd
    assert _ground_weight_in_inv(fermion_z2_build(X, FermionZ2Params(V=20.0, mu=-3.0))) >= 1 - 1e-10
    assert _ground_weight_in_inv(fermion_z2_build(X, FermionZ2Params(V=20.0))) < 1e-6


def _unitary_cases():
    out = []
    for name in ["interval_4", "circle_3", "circle_4", "circle_6", "complete_graph_4", "triangle_disk"]:
        out.append(("fermion", name))
    for name in ["triangle_disk", "sphere_tetra", "two_triangles_sphere", "torus_delta", "klein_delta", "tetrahedron"]:
        out.append(("toric", name))
    return out


@pytest.mark.parametrize("kind,name", _unitary_cases())
def test_spectrum_equality_on_inv(kind, name):
    X = library_complex(name)
    b = fermion_z2_build(X) if kind == "fermion" else toric_stack_build(X)
    mask = projector_inv(b.model).support
    w1, _ = symmetric_eigenstates(b.H, mask)
    w0, _ = symmetric_eigenstates(b.H0, mask)
    assert np.allclose(w1, w0, atol=1e-10, rtol=0)


def test_robust_to_diagonal_perturbations():
    """Random polynomials in link sigma^x and face sigma^z leave the sum rule intact."""
    from hfent.complexes import library_cut
    from hfent.models import run_sum_rule
    from hfent.models.base import ModelBundle
    from hfent.models._ops import product_of
    from hfent.models.toric import LINK_X

    X = library_complex("sphere_tetra")
    b = toric_stack_build(X)
    m = b.model
    rng = np.random.default_rng(11)
    P = sum(rng.normal() * product_of(m.n_p, rng.choice(m.n_p, rng.integers(1, 4), replace=False), LINK_X) for _ in range(5))
    Q = sum(rng.normal() * product_of(m.n_p1, rng.choice(m.n_p1, rng.integers(1, 3), replace=False), Z) for _ in range(4))
    pert = ModelBundle(b.kind, m, b.params, b.H_p + P, b.H_p1 + Q, b.H + m.embed_p(P) + m.embed_p1(Q), b.notes)
    assert pert.coupling_deviation() < 1e-10
    r = run_sum_rule(pert, library_cut("two_faces", X))
    assert r.status == "passed" and r.max_abs_residual < 1e-8
