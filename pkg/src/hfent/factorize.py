"""Regional factorization of the minimal coupling operator across a cut.

Given a cut ``X = A ∪ B`` whose Mayer-Vietoris image is the graph of an
isomorphism, every boundary ``k = k_A + k_Ac`` gets a preimage
``f1(k_A) + f2(k_Ac)`` with ``f1`` supported in ``A`` and ``f2`` in ``B``,
each depending only on its own half.  Then ``U`` agrees on ``H_inv`` with
the product of two regional diagonal operators.

Choice functions (all deterministic):

``h``
    canonical preimage of a (p-1)-boundary of ``A∩B``, made odd on each pair
    ``{x, -x}``.  For ``x = -x`` an odd choice needs a preimage of order two;
    it is found by solving for one, and when none exists ``h_is_odd`` is
    False.  The B side always uses ``h_B(y) = -h(-y)``, which equals ``h``
    when ``h`` is odd and keeps the two corrections cancelling otherwise.
``t_A``, ``t_B``
    a cycle of ``A∩B`` whose class is the canonical coset representative
    (modulo the common kernel of ``i_A*`` and ``i_B*``) of the preimage of
    the given class, so both sides produce the identical cycle.
``l_A``, ``l_B``
    canonical boundary preimages inside ``A`` and ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from hfent.complexes import Bipartition, Chain, boundary
from hfent.groups import FiniteAbelianGroup
from hfent.complexes import pairing_numerators
from hfent.hilbert import HilbertModel, PhaseDiagonal, _digits_to_index, _mixed_radix_digits, projector_inv
from hfent.homology import MVResult, boundary_map, boundary_preimage, mv_criterion, transport
from hfent.howell import MixedLinearMap, SubgroupModM


class FactorizationError(RuntimeError):
    """The cut fails the Mayer-Vietoris criterion; carries the diagnostic."""

    def __init__(self, mv: MVResult):
        super().__init__(f"criterion fails: {mv.diagnostic}")
        self.mv = mv


def _key(v: np.ndarray) -> tuple:
    return tuple(int(x) for x in v)


@dataclass(eq=False)
class FactorizationData:
    """Choice functions and regional operators for one cut and coefficient group.

    Chains passed in and returned live on the whole complex ``X`` over the
    dual group.
    """

    bp: Bipartition
    group: FiniteAbelianGroup
    mv: MVResult
    h_is_odd: bool = True
    _h_cache: dict = field(default_factory=dict, repr=False)

    @property
    def complex(self):
        return self.bp.complex

    @property
    def p(self) -> int:
        return self.bp.p

    @property
    def dual(self) -> FiniteAbelianGroup:
        return self.group.dual_group()

    # -- h ------------------------------------------------------------------

    def _ab_chain(self, c: Chain) -> Chain | None:
        """``c`` on ``A∩B`` or ``None`` if it is not supported there."""
        AB = self.bp.AB
        n = c.dim
        inside = set(AB.index_maps[n]) if n < len(AB.index_maps) else set()
        if any(i not in inside for i in c.support()):
            return None
        return AB.restrict(c)

    def _two_torsion_preimage(self, x: Chain) -> Chain | None:
        """A ``y`` on ``A∩B`` with ``d y = x`` and ``2 y = 0``, if any."""
        dm = boundary_map(x.complex, x.dim + 1, x.group)
        n = len(dm.source)
        M = np.vstack([dm.matrix, 2 * np.eye(n, dtype=np.int64)])
        sol = MixedLinearMap(M, dm.target + dm.source, dm.source).solve(np.concatenate([x.vector, np.zeros(n, dtype=np.int64)]))
        return None if sol is None else Chain.from_vector(x.complex, x.dim + 1, x.group, sol)

    def h(self, x: Chain) -> Chain | None:
        """Preimage in ``C_p(A∩B)`` of a (p-1)-boundary ``x`` of ``A∩B``, odd in ``x``."""
        key = _key(x.vector)
        if key in self._h_cache:
            return self._h_cache[key]
        neg = -x
        if key == _key(neg.vector):
            y = boundary_preimage(x)
            if y is not None and not (2 * y).is_zero():
                z = self._two_torsion_preimage(x)
                if z is None:
                    self.h_is_odd = False
                else:
                    y = z
        elif key < _key(neg.vector):
            y = boundary_preimage(x)
        else:
            y = self.h(neg)
            y = None if y is None else -y
        self._h_cache[key] = y
        return y

    def h_B(self, x: Chain) -> Chain | None:
        y = self.h(-x)
        return None if y is None else -y

    def _correction(self, k_half: Chain, side: str) -> Chain | None:
        """``h(d k_half)`` pushed to ``X`` (zero for p = 0); ``None`` if undefined."""
        if self.p == 0:
            return Chain.zero(self.complex, 0, k_half.group)
        d = boundary(k_half)
        if d.is_zero():
            return Chain.zero(self.complex, self.p, k_half.group)
        x = self._ab_chain(d)
        if x is None:
            return None
        y = self.h(x) if side == "A" else self.h_B(x)
        if y is None:
            return None
        return self.bp.AB.push_forward(y)

    # -- t ------------------------------------------------------------------

    @cached_property
    def _kernel(self) -> SubgroupModM:
        iA, iB = self.mv.i_A, self.mv.i_B
        mods = tuple(iA.target.factors) + tuple(iB.target.factors)
        M = np.vstack([iA.matrix, -iB.matrix]).reshape(len(mods), iA.source.rank)
        return MixedLinearMap(M, mods, iA.source.factors).kernel()

    def _t_from(self, matrix: np.ndarray, target: tuple, x: np.ndarray) -> Chain | None:
        H_AB = self.mv.H_AB
        if not H_AB.factors:
            return Chain.zero(self.complex, self.p, self.dual) if not np.any(x) else None
        u = MixedLinearMap(matrix.reshape(len(target), H_AB.rank), target, H_AB.factors).solve(x)
        if u is None:
            return None
        u = self._kernel.reduce(u)
        return self.bp.AB.push_forward(H_AB.element(u))

    def t_A(self, x) -> Chain | None:
        """Cycle of ``A∩B`` representing the preimage of ``x`` in ``Im i_A*``."""
        return self._t_from(self.mv.i_A.matrix, self.mv.H_A.factors, np.asarray(x, dtype=np.int64))

    def t_B(self, y) -> Chain | None:
        """Cycle of ``A∩B`` representing the preimage of ``y`` in ``Im(-i_B*)``."""
        return self._t_from(-self.mv.i_B.matrix, self.mv.H_B.factors, np.asarray(y, dtype=np.int64))

    # -- l, f ---------------------------------------------------------------

    def _l(self, b: Chain, region) -> Chain | None:
        try:
            local = transport(b, self.complex, region)
        except Exception:
            return None
        y = boundary_preimage(local)
        return None if y is None else region.push_forward(y)

    def l_A(self, b: Chain) -> Chain | None:
        return self._l(b, self.bp.A)

    def l_B(self, b: Chain) -> Chain | None:
        return self._l(b, self.bp.B)

    def f1(self, k_A: Chain) -> Chain | None:
        """Preimage part supported in ``A``; ``None`` when ``k_A`` is outside ``C'_p(A)``."""
        corr = self._correction(k_A, "A")
        if corr is None:
            return None
        c = k_A - corr
        x = self.mv.H_A.reduce(transport(c, self.complex, self.bp.A))
        t = self.t_A(x)
        if t is None:
            return None
        return self.l_A(c - t)

    def f2(self, k_Ac: Chain) -> Chain | None:
        """Preimage part supported in ``B``; ``None`` outside ``C'_p(A^c)``."""
        corr = self._correction(k_Ac, "B")
        if corr is None:
            return None
        c = k_Ac - corr
        try:
            local = transport(c, self.complex, self.bp.B)
        except Exception:
            return None
        y = self.mv.H_B.reduce(local)
        t = self.t_B(y)
        if t is None:
            return None
        return self.l_B(c + t)

    def split(self, k: Chain) -> tuple[Chain, Chain]:
        """``k = k_A + k_Ac`` by p-simplex membership."""
        vals = k.values.copy()
        mask = np.zeros(self.complex.count(self.p), dtype=bool)
        mask[sorted(self.bp.A_psimplices)] = True
        kA = Chain(self.complex, self.p, k.group, np.where(mask[:, None], vals, 0))
        return kA, k - kA

    def preimage(self, k: Chain) -> Chain | None:
        kA, kAc = self.split(k)
        a, b = self.f1(kA), self.f2(kAc)
        return None if a is None or b is None else a + b


# --------------------------------------------------------------------------
# regional operators


@dataclass(frozen=True, eq=False)
class RegionalCoupling:
    """A diagonal operator on one region's sites.

    ``p_simplices`` and ``p1_simplices`` give the region's sites in the
    order of its own mixed-radix basis.
    """

    p_simplices: tuple[int, ...]
    p1_simplices: tuple[int, ...]
    operator: PhaseDiagonal


def _regional(model: HilbertModel, fd: FactorizationData, p_simp, p1_simp, fn) -> RegionalCoupling:
    p_simp, p1_simp = tuple(sorted(p_simp)), tuple(sorted(p1_simp))
    r = model.group.rank
    dims_p = [model.p_sites[s].dim for s in p_simp]
    dims_q = [model.p1_sites[s].dim for s in p1_simp]
    dig_p = _mixed_radix_digits(dims_p)
    dig_q = _mixed_radix_digits(dims_q)
    nq = dig_q.shape[0]
    # group configuration of each regional gauge state, as a full-length cochain
    gfull = np.zeros((nq, model.n_p1 * r), dtype=np.int64)
    for j, s in enumerate(p1_simp):
        labs = np.array(model.p1_sites[s].labels, dtype=np.int64).reshape(-1, r)
        gfull[:, s * r : (s + 1) * r] = labs[dig_q[:, j]]
    L = model.group.exponent
    num = np.zeros((dig_p.shape[0], nq), dtype=np.int64)
    sup = np.zeros((dig_p.shape[0], nq), dtype=bool)
    for i, digits in enumerate(dig_p):
        kv = np.zeros(model.n_p * r, dtype=np.int64)
        for j, s in enumerate(p_simp):
            kv[s * r : (s + 1) * r] = model.p_sites[s].labels[digits[j]]
        k = Chain.from_vector(model.complex, model.p, model.dual, kv)
        f = fn(k)
        if f is None:
            continue
        num[i] = pairing_numerators(f.vector[None, :], gfull, model.group)[0] if gfull.shape[1] else 0
        sup[i] = True
    return RegionalCoupling(p_simp, p1_simp, PhaseDiagonal(num.ravel(), L, sup.ravel()))


def _regional_index(model: HilbertModel, reg: RegionalCoupling) -> tuple[np.ndarray, np.ndarray]:
    """Map full matter / gauge basis indices to the region's matter / gauge indices."""
    dims_p = [model.p_sites[s].dim for s in reg.p_simplices]
    dims_q = [model.p1_sites[s].dim for s in reg.p1_simplices]
    ia = _digits_to_index(model.digits_p[:, list(reg.p_simplices)], dims_p)
    ib = _digits_to_index(model.digits_p1[:, list(reg.p1_simplices)], dims_q)
    return ia, ib


@dataclass(frozen=True, eq=False)
class Factorization:
    data: FactorizationData
    U_A: RegionalCoupling
    U_Ac: RegionalCoupling

    def assembled(self, model: HilbertModel) -> PhaseDiagonal:
        """``U_A (x) U_Ac`` written in the model's basis."""
        out_num = np.zeros((model.dim_p, model.dim_p1), dtype=np.int64)
        out_sup = np.ones((model.dim_p, model.dim_p1), dtype=bool)
        L = model.group.exponent
        for reg in (self.U_A, self.U_Ac):
            ia, ib = _regional_index(model, reg)
            nq = math.prod(model.p1_sites[s].dim for s in reg.p1_simplices)
            num = reg.operator.numerators.reshape(-1, nq)
            sup = reg.operator.support.reshape(-1, nq)
            out_num += num[ia][:, ib]
            out_sup &= sup[ia][:, ib]
        return PhaseDiagonal(out_num.ravel(), L, out_sup.ravel())

    def residual(self, model: HilbertModel, coupling: PhaseDiagonal | None = None) -> float:
        """``||(U - U_A (x) U_Ac) P_inv||`` (operator norm of a diagonal)."""
        from hfent.coupling import minimal_coupling

        U = minimal_coupling(model) if coupling is None else coupling
        return U.distance(self.assembled(model), projector_inv(model).support)


def factorize(model: HilbertModel, bp: Bipartition) -> Factorization:
    """Build the choice functions and regional couplings; refuses when the criterion fails."""
    if bp.complex is not model.complex or bp.p != model.p:
        raise ValueError("cut and model disagree on the complex or on p")
    mv = mv_criterion(bp, model.dual)
    if not mv.holds:
        raise FactorizationError(mv)
    fd = FactorizationData(bp, model.group, mv)
    UA = _regional(model, fd, bp.A_psimplices, bp.A_faces, fd.f1)
    UAc = _regional(model, fd, bp.Ac_psimplices, bp.B_faces, fd.f2)
    return Factorization(fd, UA, UAc)
