"""The minimal coupling operator, its dual form, and the two gauging maps.

``U = sum_{k = d k'} P(k) U~(k')`` is diagonal in the model basis: a basis
state with matter configuration ``k`` and gauge configuration ``g`` picks up
``exp(i <k', g>)`` when ``k`` is a boundary and is annihilated otherwise.
The preimage ``k'`` is the canonical one from
:func:`hfent.homology.boundary_preimage` unless a chooser is supplied.
"""

from __future__ import annotations

import itertools
from typing import Callable

import numpy as np
import scipy.sparse as sp

from hfent.complexes import Chain, Cochain, pairing_numerators
from hfent.groups import EnumerationCapError
from hfent.hilbert import (
    HilbertModel,
    PhaseDiagonal,
    boundary_mask,
    coboundary_mask,
    gauge_transformation,
)
from hfent.homology import boundary_preimage, coboundary_preimage, cocycles, cycles

PreimageChooser = Callable[[Chain], Chain]


def _unique_rows(A: np.ndarray):
    if A.shape[1] == 0:
        return np.zeros((1, 0), dtype=A.dtype), np.zeros(A.shape[0], dtype=np.int64)
    u, inv = np.unique(A, axis=0, return_inverse=True)
    return u, inv.reshape(-1)


def preimage_table(model: HilbertModel, chooser: PreimageChooser | None = None):
    """For every distinct matter configuration: its chosen preimage (or ``None``).

    Returns ``(inverse, preimages)`` where ``inverse[a]`` indexes
    ``preimages`` for matter basis state ``a``.
    """
    X, p, D = model.complex, model.p, model.dual
    uniq, inv = _unique_rows(model.kconf)
    member = boundary_mask(model)
    pre = []
    for j, row in enumerate(uniq):
        a = int(np.flatnonzero(inv == j)[0])
        if not member[a]:
            pre.append(None)
            continue
        k = Chain.from_vector(X, p, D, row)
        kp = boundary_preimage(k) if chooser is None else chooser(k)
        pre.append(kp)
    return inv, pre


def minimal_coupling(model: HilbertModel, chooser: PreimageChooser | None = None) -> PhaseDiagonal:
    """``U`` in diagonal-phase form (never materialized as a matrix)."""
    inv, pre = preimage_table(model, chooser)
    L = model.group.exponent
    ncols = model.n_p1 * model.group.rank
    KP = np.array([kp.vector if kp is not None else np.zeros(ncols, dtype=np.int64) for kp in pre], dtype=np.int64)
    KP = KP.reshape(len(pre), ncols)
    ok = np.array([kp is not None for kp in pre], dtype=bool)
    phases = pairing_numerators(KP, model.gconf, model.group) if ncols else np.zeros((len(pre), model.dim_p1), dtype=np.int64)
    num = phases[inv]
    sup = np.repeat(ok[inv][:, None], model.dim_p1, axis=1)
    return PhaseDiagonal(num.ravel(), L, sup.ravel())


def random_cycle_chooser(model: HilbertModel, rng: np.random.Generator) -> PreimageChooser:
    """Canonical preimage plus a random (p+1)-cycle: an independent valid choice."""
    Z = cycles(model.complex, model.p + 1, model.dual)
    gens = Z.generators
    mods = np.array(Z.moduli, dtype=np.int64)

    def choose(k: Chain) -> Chain:
        kp = boundary_preimage(k)
        if gens.shape[0] == 0:
            return kp
        coeffs = rng.integers(0, model.group.exponent, size=gens.shape[0])
        z = np.mod(coeffs @ gens, mods)
        return Chain.from_vector(k.complex, k.dim + 1, k.group, kp.vector + z)

    return choose


def dual_coupling(model: HilbertModel) -> PhaseDiagonal:
    """``sum_{phi' = delta phi} P~(phi') U(phi)`` with canonical cochain preimages."""
    X, p, G = model.complex, model.p, model.group
    uniq, inv = _unique_rows(model.gconf)
    member = coboundary_mask(model)
    ncols = model.n_p * G.rank
    phis = np.zeros((uniq.shape[0], ncols), dtype=np.int64)
    ok = np.zeros(uniq.shape[0], dtype=bool)
    for j, row in enumerate(uniq):
        b = int(np.flatnonzero(inv == j)[0])
        if not member[b]:
            continue
        phi = coboundary_preimage(Cochain.from_vector(X, p + 1, G, row))
        phis[j] = phi.vector
        ok[j] = True
    num = pairing_numerators(model.kconf, phis, G)[:, inv]
    sup = np.repeat(ok[inv][None, :], model.dim_p, axis=0)
    return PhaseDiagonal(num.ravel(), G.exponent, sup.ravel())


# --------------------------------------------------------------------------
# conjugation of matter operators


def _charge_shift_table(model: HilbertModel, rows, cols):
    """``q = k(row) - k(col)`` for each nonzero, reduced mod the dual factors."""
    mods = np.tile(np.array(model.group.factors, dtype=np.int64), model.n_p)
    return np.mod(model.kconf[rows] - model.kconf[cols], mods) if mods.size else np.zeros((len(rows), 0), dtype=np.int64)


def decompose_components(model: HilbertModel, O) -> dict[tuple[int, ...], sp.csr_matrix]:
    """``O_q = sum_k P(k) O P(k - q)`` for every charge shift ``q`` present in ``O``."""
    O = sp.coo_matrix(O)
    q = _charge_shift_table(model, O.row, O.col)
    uniq, inv = _unique_rows(q) if q.shape[0] else (np.zeros((0, q.shape[1]), dtype=np.int64), np.zeros(0, dtype=np.int64))
    out = {}
    for j, row in enumerate(uniq):
        sel = inv == j
        out[tuple(int(x) for x in row)] = sp.csr_matrix(
            (O.data[sel], (O.row[sel], O.col[sel])), shape=O.shape
        )
    return out


def conjugate(model: HilbertModel, O, method: str = "components", coupling: PhaseDiagonal | None = None) -> sp.csr_matrix:
    """``U (O (x) 1) U^dagger`` for an operator ``O`` on ``H_p``.

    ``method='components'`` uses ``sum_{q = d q'} O_q U~(q') sum_{k in B_p} P(k)``
    with canonical ``q'``; ``method='direct'`` forms the triple product with
    the diagonal ``U`` (``coupling`` if given).  The two agree on ``H_inv``;
    off it they differ by the preimage choice, which is not linear.
    """
    if method == "direct":
        Ud = minimal_coupling(model) if coupling is None else coupling
        d = sp.diags(Ud.values())
        return (d @ model.embed_p(O) @ d.conj().T).tocsr()
    if method != "components":
        raise ValueError(f"unknown method {method!r}")
    X, p, D = model.complex, model.p, model.dual
    L = model.group.exponent
    PB = boundary_mask(model)
    total = sp.csr_matrix((model.dim, model.dim), dtype=complex)
    for q, Oq in decompose_components(model, O).items():
        qc = Chain.from_vector(X, p, D, np.array(q, dtype=np.int64))
        qp = boundary_preimage(qc)
        if qp is None:
            continue
        w = pairing_numerators(qp.vector[None, :], model.gconf, model.group)[0] if model.gconf.shape[1] else np.zeros(model.dim_p1, dtype=np.int64)
        wil = np.exp(2j * np.pi * w / L)
        Oq = sp.coo_matrix(Oq)
        keep = PB[Oq.col]
        rows, cols, data = Oq.row[keep], Oq.col[keep], Oq.data[keep]
        nb = model.dim_p1
        bb = np.arange(nb)
        R = (rows[:, None] * nb + bb[None, :]).ravel()
        C = (cols[:, None] * nb + bb[None, :]).ravel()
        V = (data[:, None] * wil[None, :]).ravel()
        total = total + sp.csr_matrix((V, (R, C)), shape=(model.dim, model.dim))
    return total.tocsr()


def conjugate_full(model: HilbertModel, O, coupling: PhaseDiagonal | None = None) -> sp.csr_matrix:
    """``U O U^dagger`` for an operator ``O`` already on the full space."""
    Ud = minimal_coupling(model) if coupling is None else coupling
    d = sp.diags(Ud.values())
    return (d @ sp.csr_matrix(O) @ d.conj().T).tocsr()


# --------------------------------------------------------------------------
# gauging by summing over gauge transformations


def _all_cochains(model: HilbertModel, cap: int):
    G = model.group
    n = model.n_p
    count = G.order**n
    if count > cap:
        raise EnumerationCapError(f"{count} gauge transformations exceed the enumeration cap {cap}")
    elems = [e.residues for e in G.elements()]
    for combo in itertools.product(elems, repeat=n):
        yield Cochain.from_vector(model.complex, model.p, G, np.array(combo, dtype=np.int64).reshape(-1))


def identity_gauge_index(model: HilbertModel) -> int:
    return model.gauge_index(np.zeros(model.n_p1 * model.group.rank, dtype=np.int64))


def gauge_state(model: HilbertModel, psi_p: np.ndarray, cap: int = 1 << 16) -> np.ndarray:
    """``|G|^{-#p} sum_phi U(phi) T~(delta phi) (psi_p (x) |id ... id>)``."""
    model._require_regular()
    e = np.zeros(model.dim_p1, dtype=complex)
    e[identity_gauge_index(model)] = 1.0
    seed = np.kron(np.asarray(psi_p, dtype=complex), e)
    out = np.zeros(model.dim, dtype=complex)
    n = 0
    for phi in _all_cochains(model, cap):
        out += gauge_transformation(model, phi) @ seed
        n += 1
    return out / n


def gauge_operator_prime(model: HilbertModel, O, cap: int = 1 << 16) -> sp.csr_matrix:
    """``|Z^p|^{-1} sum_{phi in C^p} g(phi) (O (x) |id><id|) g(phi)^dagger``."""
    model._require_regular()
    idx = identity_gauge_index(model)
    proj = sp.csr_matrix(([1.0], ([idx], [idx])), shape=(model.dim_p1, model.dim_p1))
    seed = sp.kron(sp.csr_matrix(O), proj, format="csr")
    nz = cocycles(model.complex, model.p, model.group).order
    total = sp.csr_matrix((model.dim, model.dim), dtype=complex)
    for phi in _all_cochains(model, cap):
        g = gauge_transformation(model, phi)
        total = total + g @ seed @ g.conj().T
    return (total / nz).tocsr()
