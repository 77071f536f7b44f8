"""Entanglement entropy of state vectors and symmetric eigenbases."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

EIGEN_CUTOFF = 1e-12


@dataclass(frozen=True)
class EntropyResult:
    entropy: float
    normalized: bool
    spectrum: np.ndarray


def schmidt_spectrum(psi: np.ndarray, site_dims: Sequence[int], region: Sequence[int]) -> np.ndarray:
    """Eigenvalues of the reduced density matrix on the sites in ``region``."""
    site_dims = tuple(int(d) for d in site_dims)
    region = sorted(set(int(s) for s in region))
    rest = [s for s in range(len(site_dims)) if s not in region]
    T = np.asarray(psi).reshape(site_dims) if site_dims else np.asarray(psi).reshape(())
    dA = math.prod(site_dims[s] for s in region)
    M = np.transpose(T, region + rest).reshape(dA, -1)
    s = np.linalg.svd(M, compute_uv=False)
    return s**2


def entanglement_entropy(
    psi: np.ndarray,
    site_dims: Sequence[int],
    region: Sequence[int],
    cutoff: float = EIGEN_CUTOFF,
    with_details: bool = False,
):
    """Von Neumann entropy (natural log) of ``psi`` restricted to ``region``.

    Args:
        psi: amplitudes in kron order over ``site_dims``.
        site_dims: local dimensions, first site most significant.
        region: indices of the sites kept.
        cutoff: reduced-density eigenvalues below this are dropped.
        with_details: return an :class:`EntropyResult` instead of a float.

    A non-normalized ``psi`` is normalized first; ``EntropyResult.normalized``
    records whether that was needed.
    """
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    was_normalized = bool(abs(nrm - 1.0) <= 1e-10)
    if not was_normalized:
        if nrm == 0:
            raise ValueError("entropy of the zero vector")
        psi = psi / nrm
    lam = schmidt_spectrum(psi, site_dims, region)
    lam = lam[lam >= cutoff]
    S = float(-np.sum(lam * np.log(lam)))
    S = max(S, 0.0)
    if with_details:
        return EntropyResult(S, was_normalized, lam)
    return S


class CommutationError(ValueError):
    """The Hamiltonian does not preserve the symmetric subspace."""

    def __init__(self, norm: float):
        super().__init__(f"Hamiltonian leaks out of the symmetric subspace: ||(1-P) H P|| = {norm:.3e}")
        self.norm = norm


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Make the first component of largest magnitude real and positive."""
    mag = np.abs(v)
    j = int(np.argmax(mag > mag.max() * (1 - 1e-9)))
    return v * (abs(v[j]) / v[j]) if v[j] != 0 else v


def symmetric_eigenstates(H, mask: np.ndarray, tol: float = 1e-10):
    """Orthonormal eigenbasis of ``H`` on the range of a diagonal projector.

    Args:
        H: Hermitian operator (dense or sparse) on the space that ``mask`` indexes.
        mask: boolean diagonal of the symmetric projector.
        tol: bound on ``||(1 - P) H P||`` before refusing.

    Returns:
        ``(energies, vectors)``: ascending energies and the eigenvectors as
        columns lifted back to the full space.
    """
    mask = np.asarray(mask, dtype=bool)
    H = sp.csr_matrix(H)
    idx = np.flatnonzero(mask)
    out = np.flatnonzero(~mask)
    leak = H[out][:, idx]
    norm = float(np.abs(leak.toarray()).max()) if leak.nnz else 0.0
    if norm > tol:
        raise CommutationError(norm)
    block = H[idx][:, idx].toarray()
    herm = float(np.abs(block - block.conj().T).max()) if block.size else 0.0
    if herm > tol:
        raise ValueError(f"Hamiltonian is not Hermitian on the symmetric subspace (deviation {herm:.3e})")
    block = (block + block.conj().T) / 2
    w, V = np.linalg.eigh(block)
    V = np.stack([_fix_phase(V[:, j]) for j in range(V.shape[1])], axis=1) if V.size else V
    full = np.zeros((mask.size, len(w)), dtype=complex)
    full[idx] = V
    return w, full
