"""The invariant suite run by ``hfent verify``.

Every randomized check draws from one seeded generator and records how many
draws it consumed, so a failure can be replayed from the seed alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from hfent.complexes import (
    BipartitionError,
    Chain,
    Cochain,
    LIBRARY_NAMES,
    boundary,
    coboundary,
    library_complex,
    library_cut,
    pairing,
)
from hfent.config import DEFAULT_SEED, EIGEN_TOL, ENTROPY_TOL, OPERATOR_TOL
from hfent.coupling import (
    conjugate,
    dual_coupling,
    gauge_operator_prime,
    gauge_state,
    minimal_coupling,
    random_cycle_chooser,
)
from hfent.factorize import factorize
from hfent.groups import FiniteAbelianGroup
from hfent.hilbert import (
    HilbertModel,
    boundary_mask,
    gauge_transformation,
    projector_inv,
    sym_op,
    symmetric_cocycles,
)
from hfent.homology import annihilator, boundaries, coboundaries, cocycles, cycles, mv_criterion
from hfent.models import fermion_z2_build, gauged_toric_check, run_sum_rule, toric_stack_build

VERIFY_COMPLEXES = LIBRARY_NAMES
VERIFY_GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2")
CUT_NAMES = ("arc", "two_arcs", "two_faces", "one_face", "everything")


@dataclass
class Check:
    name: str
    passed: bool
    value: float | int | None
    tol: float | None
    draws: int = 0
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": self.value,
            "tol": self.tol,
            "draws": int(self.draws),
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    seed: int
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"seed": self.seed, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}
        if timing:
            d["timings"] = dict(self.timings)
        return d


class _Counter:
    """Wraps the central generator and counts the values drawn."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.count = 0

    def integers(self, low, high=None, size=None):
        self.count += int(np.prod(size)) if size is not None else 1
        return self.rng.integers(low, high, size=size)

    def normal(self, size):
        self.count += int(np.prod(size))
        return self.rng.normal(size=size)

    def complex(self, *shape):
        return self.normal(shape) + 1j * self.normal(shape)


def _random_vector(gen: _Counter, X, n: int, group: FiniteAbelianGroup) -> np.ndarray:
    mods = np.tile(np.array(group.factors, dtype=np.int64), X.count(n))
    return np.mod(gen.integers(0, group.exponent, mods.size), mods) if mods.size else np.zeros(0, dtype=np.int64)


def _frob(M) -> float:
    M = sp.csr_matrix(M)
    return float(spla.norm(M)) if M.nnz else 0.0


# --------------------------------------------------------------------------
# individual checks


def check_chain_algebra(gen: _Counter, pairs: int = 100) -> Check:
    bad, draws0 = [], gen.count
    for name in VERIFY_COMPLEXES:
        X = library_complex(name)
        for gname in VERIFY_GROUPS:
            G = FiniteAbelianGroup.parse(gname)
            D = G.dual_group()
            for n in range(1, X.dim + 1):
                for _ in range(pairs):
                    k = Chain.from_vector(X, n, D, _random_vector(gen, X, n, D))
                    phi = Cochain.from_vector(X, n - 1, G, _random_vector(gen, X, n - 1, G))
                    if n >= 2 and not boundary(boundary(k)).is_zero():
                        bad.append(f"dd {name} {gname} n={n}")
                    if n + 1 <= X.dim and not coboundary(coboundary(phi)).is_zero():
                        bad.append(f"deltadelta {name} {gname} n={n - 1}")
                    if pairing(boundary(k), phi) != pairing(k, coboundary(phi)):
                        bad.append(f"stokes {name} {gname} n={n}")
    return Check("chain_algebra", not bad, len(bad), 0, gen.count - draws0, "; ".join(bad[:3]))


def check_annihilators() -> Check:
    bad = []
    for name in VERIFY_COMPLEXES:
        X = library_complex(name)
        for gname in VERIFY_GROUPS:
            G = FiniteAbelianGroup.parse(gname)
            D = G.dual_group()
            for n in range(X.dim + 1):
                pairs = (
                    ("ann B_n = Z^n", boundaries(X, n, D), cocycles(X, n, G)),
                    ("ann Z_n = B^n", cycles(X, n, D), coboundaries(X, n, G)),
                    ("ann Z^n = B_n", cocycles(X, n, G), boundaries(X, n, D)),
                    ("ann B^n = Z_n", coboundaries(X, n, G), cycles(X, n, D)),
                )
                for label, S, expected in pairs:
                    if annihilator(S) != expected:
                        bad.append(f"{label} on {name} {gname} n={n}")
    return Check("annihilators", not bad, len(bad), 0, 0, "; ".join(bad[:3]))


def check_cardinality() -> Check:
    bad = []
    for name in VERIFY_COMPLEXES:
        X = library_complex(name)
        for gname in VERIFY_GROUPS:
            G = FiniteAbelianGroup.parse(gname)
            for p in range(X.dim):
                lhs = cycles(X, p + 1, G.dual_group()).order * G.order ** X.count(p)
                rhs = cocycles(X, p, G).order * G.order ** X.count(p + 1)
                if lhs != rhs:
                    bad.append(f"{name} {gname} p={p}")
    return Check("cardinality_identity", not bad, len(bad), 0, 0, "; ".join(bad[:3]))


def _small_models():
    Z2 = FiniteAbelianGroup((2,))
    return [
        HilbertModel(library_complex("circle_3"), 0, Z2),
        HilbertModel(library_complex("sphere_tetra"), 1, Z2),
    ]


def check_symmetric_projector() -> Check:
    """``sum_{k in B_p} P(k)`` equals the joint +1 space of all symmetry operators."""
    worst = 0.0
    for m in _small_models():
        fixed = np.ones(m.dim_p, dtype=bool)
        for v in symmetric_cocycles(m):
            phi = Cochain.from_vector(m.complex, m.p, m.group, v)
            fixed &= sym_op(m, phi, space="p").numerators == 0
        diff = fixed.astype(float) - boundary_mask(m).astype(float)
        worst = max(worst, float(np.abs(diff).max()))
    return Check("symmetric_projector", worst <= OPERATOR_TOL, worst, OPERATOR_TOL)


def check_coupling(gen: _Counter) -> Check:
    worst, draws0 = 0.0, gen.count
    for m in _small_models():
        inv = projector_inv(m).support
        U1 = minimal_coupling(m)
        U2 = minimal_coupling(m, random_cycle_chooser(m, gen))
        worst = max(worst, U1.distance(U2, inv))
        uu = np.abs(U1.values()[inv]) ** 2
        worst = max(worst, float(np.abs(uu - 1).max()))
    return Check("coupling_choice_and_unitarity", worst <= OPERATOR_TOL, worst, OPERATOR_TOL, gen.count - draws0)


def _symmetrize(m: HilbertModel, O: np.ndarray) -> np.ndarray:
    out = np.zeros_like(O)
    cocs = symmetric_cocycles(m)
    for v in cocs:
        d = sym_op(m, Cochain.from_vector(m.complex, m.p, m.group, v), space="p").values()
        out += d[:, None] * O * d.conj()[None, :]
    return out / len(cocs)


def check_gauge_structure(gen: _Counter, samples: int = 20) -> list[Check]:
    comm, compat, prime = 0.0, 0.0, 0.0
    draws0 = gen.count
    for m in _small_models():
        inv = projector_inv(m).support
        Pinv = sp.diags(inv.astype(float))
        for _ in range(samples):
            O = gen.complex(m.dim_p, m.dim_p)
            C = conjugate(m, O)
            phi = Cochain.from_vector(m.complex, m.p, m.group, _random_vector(gen, m.complex, m.p, m.group))
            g = gauge_transformation(m, phi)
            comm = max(comm, _frob(g @ C - C @ g))
        sym = boundary_mask(m)
        for _ in range(2):
            # symmetric matter state, arbitrary operator
            O = gen.complex(m.dim_p, m.dim_p)
            psi = gen.complex(m.dim_p) * sym
            lhs = gauge_state(m, O @ psi)
            rhs = conjugate(m, O) @ gauge_state(m, psi)
            compat = max(compat, float(np.abs(lhs - rhs).max()))
        Os = _symmetrize(m, gen.complex(m.dim_p, m.dim_p))
        Gp = gauge_operator_prime(m, Os)
        prime = max(prime, _frob((Gp - conjugate(m, Os)) @ Pinv))
    draws = gen.count - draws0
    return [
        Check("gauge_commutators", comm <= OPERATOR_TOL, comm, OPERATOR_TOL, draws),
        Check("gauging_compatibility", compat <= OPERATOR_TOL, compat, OPERATOR_TOL),
        Check("operator_gauging_on_invariant", prime <= OPERATOR_TOL, prime, OPERATOR_TOL),
    ]


def check_dual_coupling() -> Check:
    worst = 0.0
    for m in _small_models():
        worst = max(worst, dual_coupling(m).distance(minimal_coupling(m), projector_inv(m).support))
    return Check("dual_coupling", worst <= OPERATOR_TOL, worst, OPERATOR_TOL)


def library_cuts(X) -> list:
    """Every named cut that applies to ``X``."""
    out = []
    for name in CUT_NAMES:
        if name == "two_arcs" and X.count(0) < 8:
            continue
        try:
            out.append(library_cut(name, X))
        except (BipartitionError, ValueError, KeyError, IndexError):
            continue
    return out


def check_factorization(dim_cap: int = 1 << 16) -> Check:
    worst, count, skipped = 0.0, 0, []
    Z2 = FiniteAbelianGroup((2,))
    for name in VERIFY_COMPLEXES + ("circle_8",):
        X = library_complex(name)
        for bp in library_cuts(X):
            if not mv_criterion(bp, Z2).holds:
                continue
            dims = 2 ** (X.count(bp.p) + X.count(bp.p + 1))
            if dims > dim_cap:
                skipped.append(f"{name}/{bp.name}")
                continue
            m = HilbertModel(X, bp.p, Z2)
            worst = max(worst, factorize(m, bp).residual(m))
            count += 1
    detail = f"{count} cuts" + (f"; skipped {', '.join(skipped)}" if skipped else "")
    return Check("factorization", worst <= OPERATOR_TOL, worst, OPERATOR_TOL, 0, detail)


def check_negative_control() -> Check:
    X = library_complex("circle_8")
    mv = mv_criterion(library_cut("two_arcs", X), FiniteAbelianGroup((2,)))
    return Check("mv_negative_control", not mv.holds, int(mv.holds), None, 0, mv.diagnostic)


def check_models() -> list[Check]:
    dev = max(
        fermion_z2_build(library_complex("circle_6")).coupling_deviation(),
        toric_stack_build(library_complex("sphere_tetra")).coupling_deviation(),
        toric_stack_build(library_complex("tetrahedron")).coupling_deviation(),
    )
    gt = [gauged_toric_check(library_complex(n), report=True) for n in ("sphere_tetra", "triangle_disk", "tetrahedron")]
    gworst = max(max(r.closed_form_error, r.vertex_term_error, r.gauge_invariance_error, r.isometry_error) for r in gt)
    return [
        Check("coupled_hamiltonians", dev <= EIGEN_TOL, dev, EIGEN_TOL),
        Check("gauged_toric_code", gworst <= OPERATOR_TOL, gworst, OPERATOR_TOL),
    ]


def check_sum_rules() -> list[Check]:
    X = library_complex("circle_6")
    rf = run_sum_rule(fermion_z2_build(X), library_cut("arc", X), tol=ENTROPY_TOL)
    Y = library_complex("sphere_tetra")
    rt = run_sum_rule(toric_stack_build(Y), library_cut("two_faces", Y), tol=ENTROPY_TOL)
    return [
        Check("sum_rule_fermion_circle_6_arc", rf.status == "passed", rf.max_abs_residual, ENTROPY_TOL, 0, f"{len(rf.rows)} pairs"),
        Check("sum_rule_toric_sphere_tetra_two_faces", rt.status == "passed", rt.max_abs_residual, ENTROPY_TOL, 0, f"{len(rt.rows)} pairs"),
    ]


def run_verify(seed: int = DEFAULT_SEED, pairs: int = 100, samples: int = 20, progress: Callable[[str], None] | None = None) -> VerifyReport:
    """Run every invariant check with one seeded generator."""
    gen = _Counter(np.random.default_rng(seed))
    report = VerifyReport(seed)
    steps = [
        ("chain_algebra", lambda: [check_chain_algebra(gen, pairs)]),
        ("annihilators", lambda: [check_annihilators()]),
        ("cardinality_identity", lambda: [check_cardinality()]),
        ("symmetric_projector", lambda: [check_symmetric_projector()]),
        ("coupling", lambda: [check_coupling(gen)]),
        ("gauge_structure", lambda: check_gauge_structure(gen, samples)),
        ("dual_coupling", lambda: [check_dual_coupling()]),
        ("factorization", lambda: [check_factorization()]),
        ("mv_negative_control", lambda: [check_negative_control()]),
        ("models", check_models),
        ("sum_rules", check_sum_rules),
    ]
    for label, fn in steps:
        t0 = time.perf_counter()
        out = fn()
        report.timings[label] = time.perf_counter() - t0
        report.checks.extend(out)
        if progress is not None:
            for c in out:
                progress(f"{'PASS' if c.passed else 'FAIL'} {c.name}")
    return report
