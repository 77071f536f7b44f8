"""Spinless fermions on a graph with fermion parity gauged by Z2 link fields.

Matter lives on vertices (one fermion mode each, Jordan-Wigner ordered by
vertex index), gauge qubits on edges in the ``sigma^z`` eigenbasis.  The
character label of a vertex is its occupation number, so the p=0 symmetry
is fermion parity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from hfent.complexes import DeltaComplex
from hfent.groups import FiniteAbelianGroup, StructureError
from hfent.hilbert import DEFAULT_DIM_CAP, HilbertModel
from hfent.models._ops import X, Z, jw_annihilator, odd_cofaces, odd_incidence, product_of, site_string
from hfent.models.base import ModelBundle, check_finite

Z2 = FiniteAbelianGroup((2,))


@dataclass(frozen=True)
class FermionZ2Params:
    """Couplings: hopping ``w``, chemical potential ``mu``, link field ``J``,
    vertex (Gauss) term ``g*J`` and plaquette term ``V``."""

    w: float = 1.0
    mu: float = 0.5
    J: float = 0.7
    g: float = 0.9
    V: float = 0.0

    def __post_init__(self):
        check_finite(self)

    @property
    def enforces_symmetry(self) -> bool:
        """Large positive ``V`` is what pins low-energy states to the symmetric sector."""
        return self.V > 0


def _edge_ends(X_: DeltaComplex, e: int) -> tuple[int, int]:
    """``(l+, l-)``: the vertices entering the edge boundary with sign +1 and -1."""
    plus = [j for j, s in X_.boundary[1][e] if s == 1]
    minus = [j for j, s in X_.boundary[1][e] if s == -1]
    if len(plus) != 1 or len(minus) != 1:
        raise StructureError(f"edge {e} must have one head and one tail vertex")
    return plus[0], minus[0]


def fermion_matter_hamiltonian(X_: DeltaComplex, params: FermionZ2Params) -> sp.csr_matrix:
    n = X_.count(0)
    c = [jw_annihilator(n, v) for v in range(n)]
    H = sp.csr_matrix((2**n, 2**n))
    for e in range(X_.count(1)):
        a, b = _edge_ends(X_, e)
        hop = c[a].T @ c[b]
        H = H - params.w * (hop + hop.T)
    for v in range(n):
        H = H - params.mu * (c[v].T @ c[v])
    return H.tocsr()


def fermion_gauge_hamiltonian(X_: DeltaComplex, params: FermionZ2Params) -> sp.csr_matrix:
    n_l = X_.count(1)
    d1 = X_.boundary_matrix(1)
    H = sp.csr_matrix((2**n_l, 2**n_l))
    for l in range(n_l):
        H = H - params.J * site_string(n_l, {l: Z})
    for v in range(X_.count(0)):
        H = H - params.g * params.J * product_of(n_l, odd_cofaces(d1, v), X)
    if X_.dim >= 2 and params.V:
        d2 = X_.boundary_matrix(2)
        for f in range(X_.count(2)):
            H = H - params.V * product_of(n_l, odd_incidence(d2, f), Z)
    return H.tocsr()


def fermion_coupled_hamiltonian(X_: DeltaComplex, params: FermionZ2Params) -> sp.csr_matrix:
    """Closed form: hopping dressed by ``sigma^z_l``, vertex term by ``(-1)^{n_v}``."""
    n, n_l = X_.count(0), X_.count(1)
    N = n + n_l
    d1 = X_.boundary_matrix(1)
    H = sp.csr_matrix((2**N, 2**N))
    # fermion operators extended by identity on the links (links come after vertices)
    c = [jw_annihilator(N, v) for v in range(n)]
    for e in range(n_l):
        a, b = _edge_ends(X_, e)
        hop = c[a].T @ site_string(N, {n + e: Z}) @ c[b]
        H = H - params.w * (hop + hop.T)
    for v in range(n):
        H = H - params.mu * (c[v].T @ c[v])
    for l in range(n_l):
        H = H - params.J * site_string(N, {n + l: Z})
    for v in range(n):
        ops = {n + l: X for l in odd_cofaces(d1, v)}
        ops[v] = Z  # (-1)^{n_v}
        H = H - params.g * params.J * site_string(N, ops)
    if X_.dim >= 2 and params.V:
        d2 = X_.boundary_matrix(2)
        for f in range(X_.count(2)):
            H = H - params.V * product_of(N, [n + l for l in odd_incidence(d2, f)], Z)
    return H.tocsr()


def fermion_z2_build(X_: DeltaComplex, params: FermionZ2Params | None = None, dim_cap: int = DEFAULT_DIM_CAP) -> ModelBundle:
    """Decoupled and coupled Hamiltonians of the fermion / Z2 gauge model on a graph.

    Raises:
        StructureError: ``X_`` has no edges, or an edge is not a 1-simplex with
            distinct head and tail incidence.
    """
    params = FermionZ2Params() if params is None else params
    if X_.dim < 1 or X_.count(1) == 0:
        raise StructureError("the fermion model needs vertices and edges")
    notes = []
    if X_.dim >= 2 and X_.count(2) and not params.V:
        notes.append("V = 0: plaquette term absent")
    if X_.dim < 2 and params.V:
        notes.append("V term dropped: the complex has no 2-simplices")
    model = HilbertModel(X_, 0, Z2, dim_cap=dim_cap)
    return ModelBundle(
        "fermion-z2",
        model,
        params,
        fermion_matter_hamiltonian(X_, params),
        fermion_gauge_hamiltonian(X_, params),
        fermion_coupled_hamiltonian(X_, params),
        tuple(notes),
    )


def parity_operator(X_: DeltaComplex) -> sp.csr_matrix:
    """``prod_v (-1)^{n_v}`` on the matter space."""
    return product_of(X_.count(0), range(X_.count(0)), Z)


def hopping_term(X_: DeltaComplex, e: int) -> sp.csr_matrix:
    """``c^dagger_{l+} c_{l-} + h.c.`` for edge ``e`` on the matter space."""
    n = X_.count(0)
    a, b = _edge_ends(X_, e)
    hop = jw_annihilator(n, a).T @ jw_annihilator(n, b)
    return (hop + hop.T).tocsr()


def vertex_term(X_: DeltaComplex, v: int) -> sp.csr_matrix:
    """``prod_{l contains v} sigma^x_l`` on the gauge space."""
    return product_of(X_.count(1), odd_cofaces(X_.boundary_matrix(1), v), X)
