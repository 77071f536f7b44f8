import json

import numpy as np
import pytest

from oracles import partial_trace_entropy
from hfent.complexes import library_complex, library_cut, make_bipartition
from hfent.models import FermionZ2Params, fermion_z2_build, run_sum_rule, toric_stack_build
from hfent.models.sumrule import STATUS_INFORMATIONAL, STATUS_PASSED


def test_everything_cut_all_zero():
    X = library_complex("circle_4")
    bp = make_bipartition(X, 0, range(4), range(4), "everything")
    r = run_sum_rule(fermion_z2_build(X), bp)
    assert r.status == STATUS_PASSED
    for row in r.rows:
        assert max(abs(row.S_coupled), abs(row.S_matter), abs(row.S_gauge)) < 1e-12


def test_circle_4_arc():
    X = library_complex("circle_4")
    r = run_sum_rule(fermion_z2_build(X), library_cut("arc", X))
    assert r.mv_holds and r.status == STATUS_PASSED
    assert r.pairs_total == len(r.rows) == 8 * 8
    assert r.max_abs_residual < 1e-8
    assert all(row.eigen_residual < 1e-10 for row in r.rows)
    energies = [row.energy for row in r.rows]
    assert energies == sorted(energies)


def test_entropies_against_partial_trace():
    X = library_complex("circle_4")
    b = fermion_z2_build(X, FermionZ2Params(V=0.0, mu=0.2))
    bp = library_cut("arc", X)
    r = run_sum_rule(b, bp, max_pairs=6)
    from hfent.entropy import symmetric_eigenstates
    from hfent.hilbert import boundary_mask, coboundary_mask

    m = b.model
    em, Vm = symmetric_eigenstates(b.H_p, boundary_mask(m))
    eg, Vg = symmetric_eigenstates(b.H_p1, coboundary_mask(m))
    region = sorted(bp.A_psimplices) + [m.n_p + f for f in sorted(bp.A_faces)]
    U = b.coupling.values()
    for row in r.rows:
        chi = U * np.kron(Vm[:, row.matter_index], Vg[:, row.gauge_index])
        assert abs(partial_trace_entropy(chi, m.site_dims, region) - row.S_coupled) < 1e-10


def test_toric_sphere_two_faces():
    X = library_complex("sphere_tetra")
    r = run_sum_rule(toric_stack_build(X), library_cut("two_faces", X))
    assert r.status == STATUS_PASSED and r.max_abs_residual < 1e-8


def test_informational_when_criterion_fails():
    X = library_complex("circle_8")
    r = run_sum_rule(fermion_z2_build(X), library_cut("two_arcs", X), max_pairs=16)
    assert not r.mv_holds
    assert r.status == STATUS_INFORMATIONAL and r.passed
    assert len(r.rows) == 16 and r.pairs_total > 16
    assert any("lowest" in n for n in r.notes)


def test_to_dict_and_timing():
    X = library_complex("circle_3")
    bp = make_bipartition(X, 0, [0], [0, 1])
    r = run_sum_rule(fermion_z2_build(X), bp)
    d = r.to_dict()
    assert "runtime" not in d and d["status"] == r.status
    assert "runtime" in r.to_dict(timing=True)
    json.dumps(d)


def test_cut_mismatch():
    X = library_complex("circle_4")
    with pytest.raises(ValueError):
        run_sum_rule(fermion_z2_build(X), library_cut("arc", library_complex("circle_4")))
