"""Sparse qubit-string builders shared by the model Hamiltonians."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

X = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
Z = sp.csr_matrix(np.diag([1.0, -1.0]))
I2 = sp.identity(2, format="csr")
# |0><1|: lowers the occupation digit 1 -> 0
LOWER = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))


def site_string(n_sites: int, ops: dict[int, sp.spmatrix]) -> sp.csr_matrix:
    """Kron product with ``ops[s]`` on site ``s`` (site 0 most significant)."""
    out = sp.identity(1, format="csr")
    for s in range(n_sites):
        out = sp.kron(out, ops.get(s, I2), format="csr")
    return out


def product_of(n_sites: int, sites, op: sp.spmatrix) -> sp.csr_matrix:
    """``op`` on every site of ``sites`` (multiplicities taken mod 2 by the caller)."""
    return site_string(n_sites, {int(s): op for s in sites})


def jw_annihilator(n_sites: int, j: int) -> sp.csr_matrix:
    """Jordan-Wigner ``c_j = (prod_{i<j} Z_i) |0><1|_j``."""
    ops = {i: Z for i in range(j)}
    ops[j] = LOWER
    return site_string(n_sites, ops)


def odd_incidence(boundary_matrix: np.ndarray, i: int) -> list[int]:
    """Faces of simplex ``i`` with odd incidence (``l in f`` over Z2)."""
    return [int(j) for j in np.flatnonzero(np.mod(boundary_matrix[:, i], 2))]


def odd_cofaces(boundary_matrix: np.ndarray, j: int) -> list[int]:
    """Simplices having face ``j`` with odd incidence (``f contains l`` over Z2)."""
    return [int(i) for i in np.flatnonzero(np.mod(boundary_matrix[j, :], 2))]
