"""Hilbert spaces on ``Delta^p`` and ``Delta^{p+1}`` and the diagonal symmetry algebra.

Every p-site basis vector carries a character label and every
(p+1)-site basis vector a group label, so symmetry operators, Wilson
operators and all the projectors are diagonal.  Basis index of the full
space is ``a * dim_p1 + b`` with ``a`` (matter) and ``b`` (gauge) mixed
radix over their sites, first site most significant, i.e. the order of
``np.kron`` over sites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from hfent.complexes import Chain, Cochain, DeltaComplex, boundary, coboundary, pairing_numerators
from hfent.groups import FiniteAbelianGroup, StructureError
from hfent.homology import boundaries, coboundaries, cocycles, cycles, homology

DEFAULT_DIM_CAP = 1 << 22


class CapabilityError(RuntimeError):
    """An operation needs a site structure the model does not have."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (e.g. not closed)."""


@dataclass(frozen=True)
class SiteSpecP:
    """A p-site: ordered character labels (repeats allowed)."""

    simplex: int
    labels: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class SiteSpecP1:
    """A (p+1)-site: ordered group-element labels (repeats allowed)."""

    simplex: int
    labels: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def is_regular(self, group: FiniteAbelianGroup) -> bool:
        """Every group element appears exactly once."""
        return len(self.labels) == group.order and len(set(self.labels)) == group.order


def _all_residues(group: FiniteAbelianGroup) -> tuple[tuple[int, ...], ...]:
    return tuple(e.residues for e in group.elements())


def _mixed_radix_digits(dims: Sequence[int]) -> np.ndarray:
    """All digit tuples in kron order, shape ``(prod dims, len(dims))``."""
    if not dims:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices(tuple(dims)).reshape(len(dims), -1).T
    return grids.astype(np.int64)


class HilbertModel:
    """``H = H_p (x) H_{p+1}`` for a complex, a degree ``p`` and a group.

    Args:
        complex: the Delta-complex.
        p: degree of the matter simplices, ``0 <= p <= dim - 1``.
        group: coefficient group ``G``.
        p_sites: per p-simplex list of character residue tuples
            (default: every character once, lexicographic).
        p1_sites: per (p+1)-simplex list of group residue tuples
            (default: every element once).
        dim_cap: refuse to build larger spaces.
    """

    def __init__(
        self,
        complex: DeltaComplex,
        p: int,
        group: FiniteAbelianGroup,
        p_sites=None,
        p1_sites=None,
        dim_cap: int = DEFAULT_DIM_CAP,
    ):
        if not 0 <= p <= complex.dim - 1:
            raise StructureError(f"p={p} needs 0 <= p <= {complex.dim - 1}")
        self.complex = complex
        self.p = p
        self.group = group
        full = _all_residues(group)
        r = group.rank

        def _sites(spec, n, cls):
            if spec is None:
                spec = [full] * complex.count(n)
            if len(spec) != complex.count(n):
                raise StructureError(f"{len(spec)} site specs for {complex.count(n)} simplices of dimension {n}")
            out = []
            for s, labs in enumerate(spec):
                labs = tuple(tuple(int(x) % m for x, m in zip(np.atleast_1d(l), group.factors)) for l in labs)
                if not labs or any(len(l) != r for l in labs):
                    raise StructureError(f"site {s} in dimension {n} needs a nonempty list of rank-{r} labels")
                out.append(cls(s, labs))
            return tuple(out)

        self.p_sites = _sites(p_sites, p, SiteSpecP)
        self.p1_sites = _sites(p1_sites, p + 1, SiteSpecP1)
        self.dims_p = tuple(s.dim for s in self.p_sites)
        self.dims_p1 = tuple(s.dim for s in self.p1_sites)
        self.dim_p = math.prod(self.dims_p)
        self.dim_p1 = math.prod(self.dims_p1)
        self.dim = self.dim_p * self.dim_p1
        if self.dim > dim_cap:
            raise CapabilityError(f"Hilbert space dimension {self.dim} exceeds the cap {dim_cap}")

    # -- basis bookkeeping --------------------------------------------------

    @property
    def n_p(self) -> int:
        return len(self.p_sites)

    @property
    def n_p1(self) -> int:
        return len(self.p1_sites)

    @property
    def site_dims(self) -> tuple[int, ...]:
        """Local dimensions, p-sites first then (p+1)-sites."""
        return self.dims_p + self.dims_p1

    @cached_property
    def digits_p(self) -> np.ndarray:
        return _mixed_radix_digits(self.dims_p)

    @cached_property
    def digits_p1(self) -> np.ndarray:
        return _mixed_radix_digits(self.dims_p1)

    @staticmethod
    def _configs(sites, digits, r) -> np.ndarray:
        out = np.zeros((digits.shape[0], len(sites) * r), dtype=np.int64)
        for s, site in enumerate(sites):
            labs = np.array(site.labels, dtype=np.int64).reshape(-1, r)
            out[:, s * r : (s + 1) * r] = labs[digits[:, s]]
        return out

    @cached_property
    def kconf(self) -> np.ndarray:
        """Character configuration (a p-chain over the dual) of each matter basis state."""
        return self._configs(self.p_sites, self.digits_p, self.group.rank)

    @cached_property
    def gconf(self) -> np.ndarray:
        """Group configuration (a (p+1)-cochain) of each gauge basis state."""
        return self._configs(self.p1_sites, self.digits_p1, self.group.rank)

    @property
    def dual(self) -> FiniteAbelianGroup:
        return self.group.dual_group()

    def k_chain(self, a: int) -> Chain:
        return Chain.from_vector(self.complex, self.p, self.dual, self.kconf[a])

    def g_cochain(self, b: int) -> Cochain:
        return Cochain.from_vector(self.complex, self.p + 1, self.group, self.gconf[b])

    def is_regular(self) -> bool:
        return all(s.is_regular(self.group) for s in self.p1_sites)

    def _require_regular(self) -> None:
        if not self.is_regular():
            raise CapabilityError("label-shift operators need every (p+1)-site to carry each group element once")

    @cached_property
    def _label_index(self) -> list[dict]:
        return [{lab: i for i, lab in enumerate(s.labels)} for s in self.p1_sites]

    def gauge_index(self, g: np.ndarray) -> int:
        """Basis index ``b`` of the gauge configuration ``g`` (regular sites only)."""
        self._require_regular()
        r = self.group.rank
        b = 0
        for s, site in enumerate(self.p1_sites):
            lab = tuple(int(x) for x in g[s * r : (s + 1) * r])
            b = b * site.dim + self._label_index[s][lab]
        return b

    def gauge_shift_permutation(self, phi_vec: np.ndarray) -> np.ndarray:
        """``perm[b]`` = index of the configuration ``g(b) + phi`` (regular sites)."""
        self._require_regular()
        r = self.group.rank
        mods = np.tile(np.array(self.group.factors, dtype=np.int64), self.n_p1)
        shifted = np.mod(self.gconf + np.asarray(phi_vec, dtype=np.int64)[None, :], mods)
        digits = np.zeros((self.dim_p1, self.n_p1), dtype=np.int64)
        for s, site in enumerate(self.p1_sites):
            idx = self._label_index[s]
            digits[:, s] = [idx[tuple(row)] for row in shifted[:, s * r : (s + 1) * r]]
        return _digits_to_index(digits, self.dims_p1)

    # -- embedding ----------------------------------------------------------

    def embed_p(self, O) -> sp.csr_matrix:
        """``O (x) 1`` for an operator on ``H_p``."""
        return sp.kron(sp.csr_matrix(O), sp.identity(self.dim_p1, format="csr"), format="csr")

    def embed_p1(self, O) -> sp.csr_matrix:
        """``1 (x) O`` for an operator on ``H_{p+1}``."""
        return sp.kron(sp.identity(self.dim_p, format="csr"), sp.csr_matrix(O), format="csr")

    def product_state(self, psi_p: np.ndarray, psi_p1: np.ndarray) -> np.ndarray:
        return np.kron(np.asarray(psi_p), np.asarray(psi_p1))

    def __repr__(self) -> str:
        return f"HilbertModel({self.complex.name}, p={self.p}, G={self.group}, dim={self.dim})"


def _digits_to_index(digits: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    idx = np.zeros(digits.shape[0], dtype=np.int64)
    for s, d in enumerate(dims):
        idx = idx * d + digits[:, s]
    return idx


# --------------------------------------------------------------------------
# diagonal phase operators


@dataclass(frozen=True, eq=False)
class PhaseDiagonal:
    """``diag(exp(2 pi i n_j / L))`` on the support, zero elsewhere.

    Exact: ``numerators`` are integers modulo ``denominator``.
    """

    numerators: np.ndarray
    denominator: int
    support: np.ndarray = field(default=None)

    def __post_init__(self):
        n = np.mod(np.asarray(self.numerators, dtype=np.int64), self.denominator)
        s = np.ones(n.shape, dtype=bool) if self.support is None else np.asarray(self.support, dtype=bool)
        n = np.where(s, n, 0)
        n.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "numerators", n)
        object.__setattr__(self, "support", s)

    @classmethod
    def projector(cls, mask) -> "PhaseDiagonal":
        mask = np.asarray(mask, dtype=bool)
        return cls(np.zeros(mask.shape, dtype=np.int64), 1, mask)

    @classmethod
    def identity(cls, dim: int) -> "PhaseDiagonal":
        return cls(np.zeros(dim, dtype=np.int64), 1)

    @property
    def dim(self) -> int:
        return self.numerators.shape[0]

    def values(self) -> np.ndarray:
        ph = np.exp(2j * np.pi * self.numerators / self.denominator)
        return np.where(self.support, ph, 0.0)

    def to_sparse(self) -> sp.csr_matrix:
        return sp.diags(self.values(), format="csr")

    def adjoint(self) -> "PhaseDiagonal":
        return PhaseDiagonal(-self.numerators, self.denominator, self.support)

    def _rescale(self, L: int) -> np.ndarray:
        return self.numerators * (L // self.denominator)

    def __matmul__(self, other):
        if isinstance(other, PhaseDiagonal):
            L = math.lcm(self.denominator, other.denominator)
            return PhaseDiagonal(self._rescale(L) + other._rescale(L), L, self.support & other.support)
        if sp.issparse(other):
            return sp.diags(self.values()) @ other
        other = np.asarray(other)
        v = self.values()
        return v * other if other.ndim == 1 else v[:, None] * other

    def __rmatmul__(self, other):
        if sp.issparse(other):
            return other @ sp.diags(self.values())
        return np.asarray(other) * self.values()[None, :]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return self.values() * psi

    def equals(self, other: "PhaseDiagonal", mask=None) -> bool:
        """Exact equality, optionally only on the basis states in ``mask``."""
        L = math.lcm(self.denominator, other.denominator)
        m = np.ones(self.dim, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
        same_support = np.array_equal(self.support[m], other.support[m])
        both = m & self.support & other.support
        return same_support and np.array_equal(np.mod(self._rescale(L)[both], L), np.mod(other._rescale(L)[both], L))

    def distance(self, other: "PhaseDiagonal", mask=None) -> float:
        """Operator-norm distance ``max |d_i - d'_i|`` over ``mask``."""
        d = np.abs(self.values() - other.values())
        if mask is not None:
            d = d[np.asarray(mask, dtype=bool)]
        return float(d.max()) if d.size else 0.0


def _lift(model: HilbertModel, arr: np.ndarray, space: str, side: str) -> np.ndarray:
    """Broadcast a matter (``side='p'``) or gauge array onto the requested space."""
    if space == side:
        return arr
    if space != "full":
        raise ValueError(f"cannot express a {side}-sector operator on the {space} sector")
    if side == "p":
        return np.repeat(arr, model.dim_p1)
    return np.tile(arr, model.dim_p)


def _check_dims(model, x: Chain, n: int, what: str):
    if x.complex is not model.complex or x.dim != n or x.group.factors != model.group.factors:
        raise StructureError(f"{what} must be a {n}-dimensional object on {model.complex.name} over {model.group}")


def sym_op(model: HilbertModel, phi: Cochain, space: str = "full") -> PhaseDiagonal:
    """``U(phi) = prod_sigma U_sigma(phi(sigma))`` for a closed p-cochain."""
    _check_dims(model, phi, model.p, "phi")
    if model.p + 1 <= model.complex.dim and not coboundary(phi).is_zero():
        raise DomainError("sym_op needs a closed cochain; use gauge_transformation otherwise")
    num = pairing_numerators(model.kconf, phi.vector[None, :], model.group)[:, 0]
    return PhaseDiagonal(_lift(model, num, space, "p"), model.group.exponent)


def matter_phase(model: HilbertModel, phi: Cochain, space: str = "full") -> PhaseDiagonal:
    """``U(phi)`` for an arbitrary p-cochain (not necessarily closed)."""
    _check_dims(model, phi, model.p, "phi")
    num = pairing_numerators(model.kconf, phi.vector[None, :], model.group)[:, 0]
    return PhaseDiagonal(_lift(model, num, space, "p"), model.group.exponent)


def wilson_op(model: HilbertModel, kprime: Chain, space: str = "full") -> PhaseDiagonal:
    """``U~(k') = prod_sigma U~_sigma(k'_sigma)`` for any (p+1)-chain."""
    _check_dims(model, kprime, model.p + 1, "k'")
    num = pairing_numerators(kprime.vector[None, :], model.gconf, model.group)[0]
    return PhaseDiagonal(_lift(model, num, space, "p1"), model.group.exponent)


def sym_op_dual(model: HilbertModel, k: Chain, space: str = "full") -> PhaseDiagonal:
    """Wilson operator of a closed (p+1)-chain: the dual symmetry."""
    _check_dims(model, k, model.p + 1, "k")
    if not boundary(k).is_zero():
        raise DomainError("sym_op_dual needs a cycle; use wilson_op otherwise")
    return wilson_op(model, k, space)


def thooft_op(model: HilbertModel, phiprime: Cochain, space: str = "full") -> sp.csr_matrix:
    """``T~(phi')``: shift every gauge label by ``phi'`` (a permutation)."""
    _check_dims(model, phiprime, model.p + 1, "phi'")
    perm = model.gauge_shift_permutation(phiprime.vector)
    n = model.dim_p1
    T = sp.csr_matrix((np.ones(n), (perm, np.arange(n))), shape=(n, n))
    if space == "p1":
        return T
    return model.embed_p1(T)


def gauge_transformation(model: HilbertModel, phi: Cochain) -> sp.csr_matrix:
    """``U(phi) T~(delta phi)`` for any p-cochain."""
    dphi = coboundary(phi)
    return matter_phase(model, phi).to_sparse() @ thooft_op(model, dphi)


def projector_P(model: HilbertModel, k: Chain, space: str = "full") -> PhaseDiagonal:
    """Projector onto matter states whose character configuration is ``k``."""
    _check_dims(model, k, model.p, "k")
    mask = (model.kconf == k.vector[None, :]).all(axis=1)
    return PhaseDiagonal.projector(_lift(model, mask, space, "p"))


def projector_Ptilde(model: HilbertModel, phiprime: Cochain, space: str = "full") -> PhaseDiagonal:
    """Projector onto gauge states whose group configuration is ``phi'``."""
    _check_dims(model, phiprime, model.p + 1, "phi'")
    mask = (model.gconf == phiprime.vector[None, :]).all(axis=1)
    return PhaseDiagonal.projector(_lift(model, mask, space, "p1"))


def boundary_mask(model: HilbertModel) -> np.ndarray:
    """Matter states with ``k in B_p``."""
    Bp = boundaries(model.complex, model.p, model.dual)
    return Bp.contains_rows(model.kconf)


def coboundary_mask(model: HilbertModel) -> np.ndarray:
    """Gauge states with ``g in B^{p+1}``."""
    Bq = coboundaries(model.complex, model.p + 1, model.group)
    return Bq.contains_rows(model.gconf)


def projector_B(model: HilbertModel, space: str = "full") -> PhaseDiagonal:
    """``sum_{k in B_p} P(k)``: the p-form symmetric matter states."""
    return PhaseDiagonal.projector(_lift(model, boundary_mask(model), space, "p"))


def projector_Btilde(model: HilbertModel, space: str = "full") -> PhaseDiagonal:
    """``sum_{phi' in B^{p+1}} P~(phi')``: the dual-symmetric gauge states."""
    return PhaseDiagonal.projector(_lift(model, coboundary_mask(model), space, "p1"))


def projector_inv(model: HilbertModel) -> PhaseDiagonal:
    """Projector onto ``H_inv``."""
    return PhaseDiagonal.projector(np.outer(boundary_mask(model), coboundary_mask(model)).ravel())


@dataclass(frozen=True)
class ChargeSector:
    """Class of a p-chain in ``C_p / B_p``.

    ``representative`` is the canonical coset representative (zero exactly
    for boundaries); ``homology_class`` holds ``H_p`` coordinates when the
    chain is a cycle and is ``None`` otherwise.
    """

    representative: tuple[int, ...]
    homology_class: tuple[int, ...] | None

    def is_trivial(self) -> bool:
        return not any(self.representative)


def charge_sector(k: Chain) -> ChargeSector:
    X, n, H = k.complex, k.dim, k.group
    rep = tuple(int(x) for x in boundaries(X, n, H).reduce(k.vector))
    hc = None
    if cycles(X, n, H).contains(k.vector):
        hc = tuple(int(x) for x in homology(X, n, H).reduce(k))
    return ChargeSector(rep, hc)


def symmetric_cocycles(model: HilbertModel):
    """All of ``Z^p(X; G)`` as coordinate vectors (enumeration)."""
    return list(cocycles(model.complex, model.p, model.group).elements())
