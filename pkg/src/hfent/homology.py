"""Cycles, boundaries, (co)homology, annihilators and induced maps over finite groups.

A chain group ``C_n(X; H)`` with ``H = Z_{n1} x ... x Z_{nr}`` is coordinatized
as ``count(n) * r`` cyclic coordinates, simplex-major (coordinate ``s*r + i``
is factor ``i`` on simplex ``s``).  All subgroups are :class:`SubgroupModM`
in those coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from hfent.complexes import Bipartition, Chain, Cochain, DeltaComplex, Subcomplex
from hfent.groups import FiniteAbelianGroup, StructureError
from hfent.howell import MixedLinearMap, SubgroupModM, smith_normal_form


def chain_moduli(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> tuple[int, ...]:
    return tuple(group.factors) * X.count(n)


def _kron_int(B: np.ndarray, r: int) -> np.ndarray:
    return np.kron(B, np.eye(r, dtype=np.int64)).astype(np.int64)


@lru_cache(maxsize=512)
def boundary_map(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> MixedLinearMap:
    """``d_n : C_n -> C_{n-1}`` as a map of coordinate vectors."""
    B = X.boundary_matrix(n) if n >= 0 else np.zeros((0, 0), dtype=np.int64)
    return MixedLinearMap(_kron_int(B, group.rank), chain_moduli(X, n - 1, group), chain_moduli(X, n, group))


@lru_cache(maxsize=512)
def coboundary_map(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> MixedLinearMap:
    """``delta_n : C^n -> C^{n+1}``."""
    B = X.boundary_matrix(n + 1) if n + 1 >= 0 else np.zeros((0, 0), dtype=np.int64)
    return MixedLinearMap(_kron_int(B.T, group.rank), chain_moduli(X, n + 1, group), chain_moduli(X, n, group))


def cycles(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> SubgroupModM:
    """``Z_n = ker d_n``; ``Z_0`` is the whole chain group."""
    return boundary_map(X, n, group).kernel()


def boundaries(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> SubgroupModM:
    """``B_n = im d_{n+1}``."""
    return boundary_map(X, n + 1, group).image()


def cocycles(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> SubgroupModM:
    return coboundary_map(X, n, group).kernel()


def coboundaries(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> SubgroupModM:
    return coboundary_map(X, n - 1, group).image()


def boundary_preimage(k: Chain, n: int | None = None) -> Chain | None:
    """The canonical ``k'`` with ``d k' = k``, or ``None`` when ``k`` is not a boundary.

    Every consumer of preimages (the coupling operator, its dual, the
    factorization) goes through this function, so choices agree everywhere.
    """
    n = k.dim if n is None else n
    if k.dim != n:
        raise StructureError(f"chain has dimension {k.dim}, expected {n}")
    x = boundary_map(k.complex, n + 1, k.group).solve(k.vector)
    if x is None:
        return None
    return Chain.from_vector(k.complex, n + 1, k.group, x)


def coboundary_preimage(f: Cochain) -> Cochain | None:
    """The canonical ``phi`` with ``delta phi = f``, or ``None``."""
    n = f.dim - 1
    if n < 0:
        return None
    x = coboundary_map(f.complex, n, f.group).solve(f.vector)
    if x is None:
        return None
    return Cochain.from_vector(f.complex, n, f.group, x)


def annihilator(S: SubgroupModM) -> SubgroupModM:
    """All ``y`` with ``<s, y> = 0`` for every ``s`` in ``S``.

    The pairing of coordinate vectors is ``sum_c s_c y_c (L / m_c)`` modulo
    ``L``; it is the same on the chain and the cochain side because ``G``
    and its dual share invariant factors, so one routine serves both.
    """
    mods = S.moduli
    if not mods:
        return S
    L = S.lift_modulus
    w = np.array([L // m for m in mods], dtype=np.int64)
    gens = S.generators
    if gens.shape[0] == 0:
        return SubgroupModM.full(mods)
    W = gens * w
    return MixedLinearMap(W, (L,) * gens.shape[0], mods).kernel()


# --------------------------------------------------------------------------
# quotients


def _quotient_structure(moduli: Sequence[int], Z: SubgroupModM, B: SubgroupModM):
    """Invariant factors of ``Z / B`` with a coordinate system.

    Returns ``(factors, reps, Zgens, V, keep, solver)``: ``reps`` are
    coordinate vectors of representatives, and a cycle ``c`` has quotient
    coordinates ``(y @ V)[keep] mod factors`` where ``y`` solves
    ``sum_j y_j Zgens_j = c (mod B)``.
    """
    Zg = Z.generators
    a = Zg.shape[0]
    Bg = B.generators
    mods = tuple(moduli)
    L = math.lcm(1, *mods)
    if a == 0:
        return (), np.zeros((0, len(mods)), dtype=np.int64), Zg, np.zeros((0, 0), dtype=object), [], None
    M = np.vstack([Zg, Bg]).T
    solver = MixedLinearMap(M, mods, (L,) * M.shape[1])
    ker = solver.kernel()
    rel = ker.generators[:, :a] if ker.generators.size else np.zeros((0, a), dtype=np.int64)
    R = np.vstack([rel, L * np.eye(a, dtype=np.int64)])
    diag, _, V, Vinv = smith_normal_form(R)
    keep = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(int(diag[i]) for i in keep)
    Zg_obj = Zg.astype(object)
    reps = []
    for i in keep:
        row = np.array(Vinv[i], dtype=object) @ Zg_obj
        reps.append(np.array([int(x) % m for x, m in zip(row, mods)], dtype=np.int64))
    reps_arr = np.array(reps, dtype=np.int64).reshape(len(reps), len(mods))
    return factors, reps_arr, Zg, np.array(V, dtype=object), keep, solver


@dataclass(frozen=True, eq=False)
class HomologyStructure:
    """``H_n(X; H)`` (or ``H^n``): invariant factors, representatives, reduction map.

    ``representatives[i]`` reduces to the ``i``-th unit vector and
    :meth:`reduce` vanishes exactly on boundaries (coboundaries).
    """

    complex: DeltaComplex
    dim: int
    group: FiniteAbelianGroup
    kind: str
    factors: tuple[int, ...]
    representatives: tuple[Chain, ...]
    cycles: SubgroupModM = field(repr=False)
    boundaries: SubgroupModM = field(repr=False)
    _V: np.ndarray = field(repr=False, default=None)
    _keep: tuple[int, ...] = field(repr=False, default=())
    _solver: MixedLinearMap | None = field(repr=False, default=None)
    _ncyc: int = field(repr=False, default=0)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def reduce(self, c: Chain | np.ndarray) -> np.ndarray:
        """Quotient coordinates of a cycle (cocycle); raises if it is not one."""
        v = c.vector if isinstance(c, Chain) else np.asarray(c, dtype=np.int64).reshape(-1)
        if not self.factors:
            if not self.cycles.contains(v):
                raise StructureError(f"not a {self.kind} cycle in dimension {self.dim}")
            return np.zeros(0, dtype=np.int64)
        x = self._solver.solve(v)
        if x is None:
            raise StructureError(f"not a {self.kind} cycle in dimension {self.dim}")
        y = np.array([int(t) for t in x[: self._ncyc]], dtype=object)
        yv = y @ self._V
        return np.array([int(yv[i]) % d for i, d in zip(self._keep, self.factors)], dtype=np.int64)

    def element(self, coords) -> Chain:
        """A cycle in the class with the given quotient coordinates."""
        cls = Chain if self.kind == "homology" else Cochain
        v = np.zeros(len(self.cycles.moduli), dtype=np.int64)
        for c, r in zip(coords, self.representatives):
            v = v + int(c) * r.vector
        return cls.from_vector(self.complex, self.dim, self.group, v)

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.factors) or "0"


def _structure(X, n, group, kind) -> HomologyStructure:
    mods = chain_moduli(X, n, group)
    if kind == "homology":
        Z, B, cls = cycles(X, n, group), boundaries(X, n, group), Chain
    else:
        Z, B, cls = cocycles(X, n, group), coboundaries(X, n, group), Cochain
    factors, reps, Zg, V, keep, solver = _quotient_structure(mods, Z, B)
    reps_c = tuple(cls.from_vector(X, n, group, r) for r in reps)
    return HomologyStructure(X, n, group, kind, factors, reps_c, Z, B, V, tuple(keep), solver, Zg.shape[0])


@lru_cache(maxsize=256)
def homology(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> HomologyStructure:
    """``H_n(X; group)``."""
    return _structure(X, n, group, "homology")


@lru_cache(maxsize=256)
def cohomology(X: DeltaComplex, n: int, group: FiniteAbelianGroup) -> HomologyStructure:
    """``H^n(X; group)``."""
    return _structure(X, n, group, "cohomology")


# --------------------------------------------------------------------------
# induced maps and the Mayer-Vietoris criterion


@dataclass(frozen=True, eq=False)
class InducedMap:
    """A homomorphism between homology groups, as a matrix on generators.

    Column ``j`` holds the target coordinates of source representative ``j``.
    """

    source: HomologyStructure
    target: HomologyStructure
    matrix: np.ndarray

    def apply(self, coords) -> np.ndarray:
        x = np.asarray(coords, dtype=np.int64)
        y = self.matrix @ x
        return np.mod(y, np.array(self.target.factors, dtype=np.int64)) if self.target.factors else y

    def image(self) -> SubgroupModM:
        return SubgroupModM.from_generators(self.target.factors, self.matrix.T)


def _as_subcomplex(Y) -> tuple[DeltaComplex, DeltaComplex, tuple | None]:
    if isinstance(Y, Subcomplex):
        return Y.parent, Y.complex, Y.index_maps
    return Y, Y, None


def transport(c: Chain, src: Subcomplex | DeltaComplex, dst: Subcomplex | DeltaComplex) -> Chain:
    """Move a chain on ``src`` to ``dst`` (both in the same parent); it must be supported in ``dst``."""
    src_parent, _, _ = _as_subcomplex(src)
    dst_parent, dst_cx, dst_maps = _as_subcomplex(dst)
    if src_parent is not dst_parent:
        raise StructureError("subcomplexes of different complexes")
    full = src.push_forward(c) if isinstance(src, Subcomplex) else c
    if dst_maps is None:
        return full
    n = c.dim
    inside = set(dst_maps[n]) if n < len(dst_maps) else set()
    if any(i not in inside for i in full.support()):
        raise StructureError(f"chain is not supported in {dst_cx.name}")
    return dst.restrict(full)


def induced_inclusion_map(sub, sup, n: int, group: FiniteAbelianGroup, kind: str = "homology") -> InducedMap:
    """``H_n(sub) -> H_n(sup)`` induced by inclusion."""
    p_sub, cx_sub, maps_sub = _as_subcomplex(sub)
    p_sup, cx_sup, maps_sup = _as_subcomplex(sup)
    if p_sub is not p_sup:
        raise StructureError("subcomplexes of different complexes")
    if maps_sup is not None:
        for m, idx in enumerate(maps_sub or [range(p_sub.count(k)) for k in range(p_sub.dim + 1)]):
            have = set(maps_sup[m]) if m < len(maps_sup) else set()
            if not set(idx) <= have:
                raise StructureError(f"{cx_sub.name} is not contained in {cx_sup.name} (dimension {m})")
    fn = homology if kind == "homology" else cohomology
    hs, ht = fn(cx_sub, n, group), fn(cx_sup, n, group)
    cols = [ht.reduce(transport(r, sub, sup)) for r in hs.representatives]
    M = np.array(cols, dtype=np.int64).T.reshape(ht.rank, hs.rank)
    return InducedMap(hs, ht, M)


@dataclass(frozen=True, eq=False)
class MVResult:
    """Outcome of the graph-of-isomorphism test for a cut.

    ``combined`` is the image ``S`` of ``x -> (i_A x, -i_B x)`` inside
    ``H_p(A) + H_p(B)`` (coordinates: A's factors then B's).
    """

    holds: bool
    H_AB: HomologyStructure
    H_A: HomologyStructure
    H_B: HomologyStructure
    i_A: InducedMap
    i_B: InducedMap
    combined: SubgroupModM
    image_A: SubgroupModM
    image_B: SubgroupModM
    meet_A: SubgroupModM
    meet_B: SubgroupModM

    @property
    def diagnostic(self) -> str:
        if self.holds:
            return "combined image is the graph of an isomorphism between the images"
        parts = []
        if self.meet_A.order > 1:
            parts.append(f"S meets H_p(A)+0 in {self.meet_A.order} elements")
        if self.meet_B.order > 1:
            parts.append(f"S meets 0+H_p(B) in {self.meet_B.order} elements")
        return "; ".join(parts) or "projections of S differ from the images"

    def summary(self) -> dict:
        return {
            "holds": self.holds,
            "H_AB": str(self.H_AB),
            "H_A": str(self.H_A),
            "H_B": str(self.H_B),
            "order_S": self.combined.order,
            "order_image_A": self.image_A.order,
            "order_image_B": self.image_B.order,
            "order_S_meet_A": self.meet_A.order,
            "order_S_meet_B": self.meet_B.order,
            "diagnostic": self.diagnostic,
        }


def _project(S: SubgroupModM, cols: slice) -> SubgroupModM:
    mods = S.moduli[cols]
    g = S.generators[:, cols] if S.generators.size else np.zeros((0, len(mods)), dtype=np.int64)
    return SubgroupModM.from_generators(mods, g)


def mv_criterion(bp: Bipartition, group: FiniteAbelianGroup) -> MVResult:
    """Check whether ``H_p(A∩B) -> H_p(A) + H_p(B)`` has the graph of an isomorphism as image."""
    p = bp.p
    iA = induced_inclusion_map(bp.AB, bp.A, p, group)
    iB = induced_inclusion_map(bp.AB, bp.B, p, group)
    fa, fb = iA.target.factors, iB.target.factors
    mods = tuple(fa) + tuple(fb)
    M = np.vstack([iA.matrix, -iB.matrix]) if mods else np.zeros((0, iA.source.rank), dtype=np.int64)
    S = SubgroupModM.from_generators(mods, M.T)
    na = len(fa)
    ea = np.eye(len(mods), dtype=np.int64)
    meet_A = S.intersection(SubgroupModM.from_generators(mods, ea[:na]))
    meet_B = S.intersection(SubgroupModM.from_generators(mods, ea[na:]))
    imA = iA.image()
    imB = SubgroupModM.from_generators(fb, -iB.matrix.T)
    holds = (
        meet_A.order == 1
        and meet_B.order == 1
        and _project(S, slice(0, na)) == imA
        and _project(S, slice(na, None)) == imB
    )
    return MVResult(holds, iA.source, iA.target, iB.target, iA, iB, S, imA, imB, meet_A, meet_B)
