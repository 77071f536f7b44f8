import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfent.complexes import Chain, Cochain, coboundary, library_complex, pairing
from hfent.groups import FiniteAbelianGroup, StructureError
from hfent.hilbert import (
    CapabilityError,
    DomainError,
    HilbertModel,
    PhaseDiagonal,
    boundary_mask,
    charge_sector,
    coboundary_mask,
    gauge_transformation,
    matter_phase,
    projector_B,
    projector_inv,
    projector_P,
    projector_Ptilde,
    sym_op,
    sym_op_dual,
    symmetric_cocycles,
    thooft_op,
    wilson_op,
)
from hfent.homology import boundaries, cycles

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
Z4 = FiniteAbelianGroup((4,))


def _models():
    return [
        HilbertModel(library_complex("circle_3"), 0, Z3),
        HilbertModel(library_complex("circle_4"), 0, Z2),
        HilbertModel(library_complex("sphere_tetra"), 1, Z2),
        HilbertModel(library_complex("torus_delta"), 1, Z4),
    ]


def test_dimensions_and_cap():
    m = HilbertModel(library_complex("circle_3"), 0, Z3)
    assert m.dim_p == 27 and m.dim_p1 == 27 and m.dim == 729
    with pytest.raises(CapabilityError):
        HilbertModel(library_complex("circle_6"), 0, Z3, dim_cap=1000)
    with pytest.raises(StructureError):
        HilbertModel(library_complex("circle_3"), 1, Z2)


def test_basis_labels_are_kron_order():
    m = HilbertModel(library_complex("circle_3"), 0, Z2)
    # first site most significant
    assert m.kconf[1].tolist() == [0, 0, 1]
    assert m.kconf[4].tolist() == [1, 0, 0]


def test_sym_op_homomorphism_and_domain():
    for m in _models():
        cocs = symmetric_cocycles(m)
        G = m.group
        rng = np.random.default_rng(1)
        for _ in range(5):
            a = cocs[rng.integers(len(cocs))]
            b = cocs[rng.integers(len(cocs))]
            pa = Cochain.from_vector(m.complex, m.p, G, a)
            pb = Cochain.from_vector(m.complex, m.p, G, b)
            lhs = sym_op(m, pa + pb, space="p")
            rhs = sym_op(m, pa, space="p") @ sym_op(m, pb, space="p")
            assert lhs.equals(rhs)
    m = HilbertModel(library_complex("circle_3"), 0, Z2)
    with pytest.raises(DomainError):
        sym_op(m, Cochain.from_dict(m.complex, 0, Z2, {0: 1}))


def test_sym_op_dual_needs_cycle():
    m = HilbertModel(library_complex("circle_3"), 0, Z2)
    D = m.dual
    sym_op_dual(m, Chain.from_vector(m.complex, 1, D, [1, 1, 1]))
    with pytest.raises(DomainError):
        sym_op_dual(m, Chain.from_dict(m.complex, 1, D, {0: 1}))


@pytest.mark.parametrize("G", [Z2, Z3, Z4], ids=str)
def test_wilson_thooft_exchange(G):
    X = library_complex("circle_3")
    m = HilbertModel(X, 0, G)
    rng = np.random.default_rng(2)
    for _ in range(5):
        kp = Chain.from_vector(X, 1, G.dual_group(), rng.integers(0, G.exponent, 3))
        ph = Cochain.from_vector(X, 1, G, rng.integers(0, G.exponent, 3))
        W = wilson_op(m, kp).to_sparse()
        T = thooft_op(m, ph)
        phase = np.exp(2j * np.pi * float(pairing(kp, ph).turns))
        assert abs(W @ T - phase * (T @ W)).max() < 1e-12


def test_z2_single_site_anticommute():
    X = library_complex("circle_3")
    m = HilbertModel(X, 0, Z2)
    kp = Chain.from_dict(X, 1, Z2, {0: 1})
    ph = Cochain.from_dict(X, 1, Z2, {0: 1})
    W = wilson_op(m, kp, space="p1").to_sparse()
    T = thooft_op(m, ph, space="p1")
    assert abs(W @ T + T @ W).max() < 1e-15


def test_projectors_resolve_identity():
    m = HilbertModel(library_complex("circle_3"), 0, Z3)
    total = np.zeros(m.dim)
    for a in range(m.dim_p):
        k = m.k_chain(a)
        P = projector_P(m, k).values().real
        total += P
        # eigen-relation: U(phi) P(k) = exp(i <k, phi>) P(k)
        phi = Cochain.from_vector(m.complex, 0, Z3, [1, 1, 1])
        lhs = sym_op(m, phi).values() * P
        assert np.allclose(lhs, np.exp(2j * np.pi * float(pairing(k, phi).turns)) * P)
    assert np.array_equal(total, np.ones(m.dim))
    tot2 = sum(projector_Ptilde(m, m.g_cochain(b)).values().real for b in range(m.dim_p1))
    assert np.array_equal(tot2, np.ones(m.dim))


@pytest.mark.parametrize("idx", range(4))
def test_inv_projector(idx):
    m = _models()[idx]
    P = projector_inv(m)
    assert (P @ P).equals(P)
    assert P.support.sum() >= 1
    B = boundaries(m.complex, m.p, m.dual).order
    assert boundary_mask(m).sum() == B
    assert P.support.sum() == B * coboundary_mask(m).sum()
    assert (projector_B(m) @ P).equals(P)


def test_charge_sector():
    X = library_complex("circle_3")
    D = Z3.dual_group()
    assert charge_sector(Chain.from_vector(X, 0, D, [1, 2, 0])).is_trivial()
    cs = charge_sector(Chain.from_vector(X, 0, D, [1, 0, 0]))
    assert not cs.is_trivial() and cs.homology_class is not None
    cs1 = charge_sector(Chain.from_dict(X, 1, D, {0: 1}))
    assert cs1.homology_class is None
    z = cycles(X, 1, D).generators[0]
    assert charge_sector(Chain.from_vector(X, 1, D, z)).homology_class is not None


@settings(max_examples=20)
@given(st.data())
def test_gauge_transformation_group_law(data):
    X = library_complex("circle_3")
    m = HilbertModel(X, 0, Z3)
    a = data.draw(st.lists(st.integers(0, 2), min_size=3, max_size=3))
    b = data.draw(st.lists(st.integers(0, 2), min_size=3, max_size=3))
    pa, pb = Cochain.from_vector(X, 0, Z3, a), Cochain.from_vector(X, 0, Z3, b)
    lhs = gauge_transformation(m, pa + pb)
    rhs = gauge_transformation(m, pa) @ gauge_transformation(m, pb)
    assert abs(lhs - rhs).max() < 1e-12
    g = gauge_transformation(m, pa)
    assert abs(g @ g.conj().T - np.eye(m.dim)).max() < 1e-12


def test_gauge_transformation_preserves_inv():
    X = library_complex("sphere_tetra")
    m = HilbertModel(X, 1, Z2)
    inv = projector_inv(m).support
    for s in range(X.count(1)):
        g = gauge_transformation(m, Cochain.from_dict(X, 1, Z2, {s: 1})).tocsc()
        leak = g[~inv][:, inv]
        assert leak.nnz == 0 or abs(leak).max() == 0


def test_non_regular_refused():
    X = library_complex("circle_3")
    m = HilbertModel(X, 0, Z3, p1_sites=[[(0,), (1,)]] * 3)
    assert not m.is_regular()
    with pytest.raises(CapabilityError):
        gauge_transformation(m, Cochain.from_dict(X, 0, Z3, {0: 1}))


def test_phase_diagonal_algebra():
    a = PhaseDiagonal(np.array([1, 2, 3]), 4)
    b = PhaseDiagonal(np.array([1, 1]), 2)
    c = PhaseDiagonal(np.array([3, 2, 1]), 4, np.array([True, True, False]))
    assert (a @ a.adjoint()).equals(PhaseDiagonal.identity(3))
    assert np.allclose((a @ c).values(), a.values() * c.values())
    with pytest.raises(ValueError):
        a @ b
