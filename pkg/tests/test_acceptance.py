"""The twelve acceptance criteria, each at its stated tolerance.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python3
tests/test_acceptance.py``); one PASS/FAIL line is printed per criterion.
"""

import subprocess
import sys
import time

import numpy as np
import scipy.sparse as sp

from oracles import (
    apply_boundary,
    apply_coboundary,
    as_set,
    brute_annihilator,
    brute_boundaries,
    brute_coboundaries,
    brute_cocycles,
    brute_cycles,
    moduli,
    pair,
)
from hfent.complexes import LIBRARY_NAMES, Chain, Cochain, boundary, coboundary, library_complex, library_cut, pairing
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
from hfent.models import FermionZ2Params, fermion_z2_build, run_sum_rule, toric_stack_build
from hfent.verify import library_cuts

GROUPS = [FiniteAbelianGroup(f) for f in [(2,), (3,), (4,), (2, 2)]]
Z2 = GROUPS[0]
ENUM_CAP = 1 << 16
FACTOR_CAP = 1 << 24


def _small_models():
    return [
        HilbertModel(library_complex("circle_3"), 0, Z2),
        HilbertModel(library_complex("sphere_tetra"), 1, Z2),
    ]


def _rand_vec(rng, X, n, G):
    return rng.integers(0, np.tile(G.factors, X.count(n)))


def _rand_op(rng, d):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def _symmetrize(m, O):
    out = np.zeros_like(O)
    cocs = symmetric_cocycles(m)
    for v in cocs:
        d = sym_op(m, Cochain.from_vector(m.complex, m.p, m.group, v), space="p").values()
        out += d[:, None] * O * d.conj()[None, :]
    return out / len(cocs)


def test_criterion_01_chain_algebra(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    bad, total = 0, 0
    for name in LIBRARY_NAMES:
        X = library_complex(name)
        for G in GROUPS:
            D = G.dual_group()
            for _ in range(100):
                n = int(rng.integers(1, X.dim + 1))
                kv = _rand_vec(rng, X, n, D)
                fv = _rand_vec(rng, X, n - 1, G)
                k = Chain.from_vector(X, n, D, kv)
                phi = Cochain.from_vector(X, n - 1, G, fv)
                dk, dphi = boundary(k), coboundary(phi)
                ok = pairing(dk, phi) == pairing(k, dphi)
                # exact rational check straight from the incidence lists
                ok &= pair(dk.vector, fv, moduli(X, n - 1, G)) == pair(kv, dphi.vector, moduli(X, n, G))
                ok &= np.array_equal(dk.vector, apply_boundary(X, n, D, kv[None, :])[0])
                ok &= np.array_equal(dphi.vector, apply_coboundary(X, n - 1, G, fv[None, :])[0])
                if n >= 2:
                    ok &= boundary(dk).is_zero()
                if n < X.dim:
                    ok &= coboundary(dphi).is_zero()
                bad += not ok
                total += 1
    dt = time.perf_counter() - t0
    criterion(1, bad == 0 and dt < 10, f"{total} pairs, {bad} violations, exact, {dt:.1f}s (limit 10s)")


def test_criterion_02_annihilators(criterion):
    t0 = time.perf_counter()
    bad, cases = 0, 0
    for name in LIBRARY_NAMES:
        X = library_complex(name)
        for G in GROUPS:
            D = G.dual_group()
            for n in range(X.dim + 1):
                if G.order ** X.count(n) > ENUM_CAP:
                    continue
                mods = moduli(X, n, G)
                for S, S_brute, target in (
                    (boundaries(X, n, D), brute_boundaries(X, n, D), cocycles(X, n, G)),
                    (cycles(X, n, D), brute_cycles(X, n, D), coboundaries(X, n, G)),
                    (cocycles(X, n, G), brute_cocycles(X, n, G), boundaries(X, n, D)),
                    (coboundaries(X, n, G), brute_coboundaries(X, n, G), cycles(X, n, D)),
                ):
                    ann = annihilator(S)
                    elems = as_set(np.array(list(ann.elements())).reshape(-1, len(mods)))
                    bad += not (ann == target and elems == brute_annihilator(S_brute, mods))
                    cases += 1
    dt = time.perf_counter() - t0
    criterion(2, bad == 0 and dt < 60, f"{cases} identities vs enumeration, {bad} mismatches, {dt:.1f}s (limit 60s)")


def test_criterion_03_cardinality(criterion):
    t0 = time.perf_counter()
    bad, cases = 0, 0
    for name in LIBRARY_NAMES:
        X = library_complex(name)
        for G in GROUPS:
            for p in range(X.dim):
                z_up = cycles(X, p + 1, G.dual_group()).order
                z_down = cocycles(X, p, G).order
                if G.order ** X.count(p + 1) <= ENUM_CAP and G.order ** X.count(p) <= ENUM_CAP:
                    z_up_b = len(brute_cycles(X, p + 1, G.dual_group()))
                    z_down_b = len(brute_cocycles(X, p, G))
                    bad += (z_up, z_down) != (z_up_b, z_down_b)
                bad += z_up * G.order ** X.count(p) != z_down * G.order ** X.count(p + 1)
                cases += 1
    S = library_complex("sphere_tetra")
    example = (cycles(S, 1, Z2).order, cocycles(S, 0, Z2).order)
    bad += example != (8, 2)
    dt = time.perf_counter() - t0
    criterion(3, bad == 0 and dt < 30, f"{cases} (complex, group, p) cases exact, sphere_tetra p=0 Z2: {example[0]}/{example[1]} = 2^(6-4), {dt:.1f}s (limit 30s)")


def test_criterion_04_symmetric_projector(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for m in _small_models():
        P_fixed = np.ones(m.dim_p)
        for v in symmetric_cocycles(m):
            u = sym_op(m, Cochain.from_vector(m.complex, m.p, m.group, v), space="p").values()
            P_fixed = P_fixed * (np.abs(u - 1) < 1e-12)
        # the joint fixed space projector, built as the group average of the symmetry operators
        avg = sum(sym_op(m, Cochain.from_vector(m.complex, m.p, m.group, v), space="p").values() for v in symmetric_cocycles(m))
        avg = avg / len(symmetric_cocycles(m))
        PB = boundary_mask(m).astype(float)
        worst = max(worst, float(np.abs(avg - PB).max()), float(np.abs(P_fixed - PB).max()))
    dt = time.perf_counter() - t0
    criterion(4, worst <= 1e-12 and dt < 30, f"max |P_B - P_fixed| = {worst:.1e} (tol 1e-12), {dt:.1f}s (limit 30s)")


def test_criterion_05_coupling(criterion):
    worst_choice, worst_unit = 0.0, 0.0
    for m in _small_models():
        inv = projector_inv(m).support
        U1 = minimal_coupling(m)
        for seed in range(3):
            U2 = minimal_coupling(m, random_cycle_chooser(m, np.random.default_rng(seed)))
            worst_choice = max(worst_choice, U1.distance(U2, inv))
        d = U1.values()
        Pi = inv.astype(float)
        worst_unit = max(worst_unit, float(np.abs(Pi * np.abs(d) ** 2 * Pi - Pi).max()))
    ok = worst_choice <= 1e-12 and worst_unit <= 1e-12
    criterion(5, ok, f"||(U1-U2)P_inv|| = {worst_choice:.1e}, ||P_inv U^dag U P_inv - P_inv|| = {worst_unit:.1e} (tol 1e-12)")


def test_criterion_06_gauge_structure(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    comm = compat = prime = 0.0
    for m in _small_models():
        Pinv = sp.diags(projector_inv(m).support.astype(float))
        sym = boundary_mask(m)
        for _ in range(20):
            O = _rand_op(rng, m.dim_p)
            C = conjugate(m, O)
            phi = Cochain.from_vector(m.complex, m.p, m.group, _rand_vec(rng, m.complex, m.p, m.group))
            g = gauge_transformation(m, phi)
            comm = max(comm, float(sp.linalg.norm(g @ C - C @ g)))
            psi = (rng.normal(size=m.dim_p) + 1j * rng.normal(size=m.dim_p)) * sym
            compat = max(compat, float(np.abs(gauge_state(m, O @ psi) - C @ gauge_state(m, psi)).max()))
        for _ in range(3):
            Os = _symmetrize(m, _rand_op(rng, m.dim_p))
            D = (gauge_operator_prime(m, Os) - conjugate(m, Os)) @ Pinv
            prime = max(prime, float(sp.linalg.norm(D)) if D.nnz else 0.0)
    dt = time.perf_counter() - t0
    ok = max(comm, compat, prime) <= 1e-12 and dt < 120
    criterion(6, ok, f"commutators {comm:.1e}, compatibility {compat:.1e}, G'[O] on P_inv {prime:.1e} (tol 1e-12), {dt:.1f}s (limit 120s)")


def test_criterion_07_dual_coupling(criterion):
    worst = max(dual_coupling(m).distance(minimal_coupling(m), projector_inv(m).support) for m in _small_models())
    criterion(7, worst <= 1e-12, f"||(Ubar - U)P_inv|| = {worst:.1e} (tol 1e-12)")


def test_criterion_08_factorization(criterion):
    worst, count, skipped = 0.0, 0, 0
    for name in LIBRARY_NAMES + ("circle_8",):
        X = library_complex(name)
        for bp in library_cuts(X):
            for G in GROUPS:
                if not mv_criterion(bp, G.dual_group()).holds:
                    continue
                if G.order ** (X.count(bp.p) + X.count(bp.p + 1)) > FACTOR_CAP:
                    skipped += 1
                    continue
                m = HilbertModel(X, bp.p, G, dim_cap=FACTOR_CAP)
                worst = max(worst, factorize(m, bp).residual(m))
                count += 1
    criterion(8, worst <= 1e-12 and count > 0, f"{count} (cut, group) cases with the criterion holding, max residual {worst:.1e} (tol 1e-12); {skipped} over dimension 2^24 skipped")


def test_criterion_09_fermion_sum_rule(criterion):
    t0 = time.perf_counter()
    X = library_complex("circle_6")
    b = fermion_z2_build(X, FermionZ2Params(w=1.0, mu=0.5, J=0.7, g=0.9))
    r = run_sum_rule(b, library_cut("arc", X), tol=1e-8)
    dt = time.perf_counter() - t0
    ok = r.mv_holds and r.status == "passed" and r.max_abs_residual <= 1e-8 and dt < 300 and b.model.dim == 4096
    criterion(9, ok, f"circle_6 arc, {len(r.rows)} symmetric eigenpairs, max |residual| = {r.max_abs_residual:.1e} (tol 1e-8), {dt:.1f}s (limit 300s)")


def test_criterion_10_toric_sum_rule(criterion):
    t0 = time.perf_counter()
    X = library_complex("sphere_tetra")
    b = toric_stack_build(X)
    r = run_sum_rule(b, library_cut("two_faces", X), tol=1e-8)
    dt = time.perf_counter() - t0
    ok = r.mv_holds and r.status == "passed" and r.max_abs_residual <= 1e-8 and dt < 120 and b.model.dim == 1024
    criterion(10, ok, f"sphere_tetra two faces, {len(r.rows)} symmetric eigenpairs, max |residual| = {r.max_abs_residual:.1e} (tol 1e-8), {dt:.1f}s (limit 120s)")


def test_criterion_11_negative_control(criterion):
    X = library_complex("circle_8")
    bp = library_cut("two_arcs", X)
    mv = mv_criterion(bp, Z2)
    r = run_sum_rule(fermion_z2_build(X), bp, max_pairs=64)
    ok = not mv.holds and r.status == "criterion-failed (informational)"
    criterion(11, ok, f"circle_8 two arcs: criterion fails ({mv.diagnostic}); {len(r.rows)} residuals reported, max {r.max_abs_residual:.2e}, unasserted")


def test_criterion_12_determinism(criterion, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"verify_{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "hfent.cli", "verify", "--seed", "7", "--quiet", "--out", str(out)],
            cwd=tmp_path,
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        outs.append(out.read_bytes())
    criterion(12, outs[0] == outs[1], f"two runs of verify --seed 7: {len(outs[0])} bytes each, identical = {outs[0] == outs[1]}")


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
