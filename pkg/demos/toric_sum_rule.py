"""
Stacked toric codes on a tetrahedral sphere
===========================================

Link qubits carry the matter toric code, face qubits the gauge layer.  The
coupled Hamiltonian is the dressed closed form; gauging the stack again
returns a toric code with electric and magnetic variables exchanged.
"""

from hfent.complexes import library_complex, library_cut
from hfent.models import ToricStackParams, gauged_toric_check, run_sum_rule, toric_stack_build

X = library_complex("sphere_tetra")
bundle = toric_stack_build(X, ToricStackParams())
for note in bundle.notes:
    print(f"note: {note}")

report = run_sum_rule(bundle, library_cut("two_faces", X))
print(f"two-face region: {len(report.rows)} eigenpairs, max residual {report.max_abs_residual:.1e}, status {report.status}")
for r in report.rows[:4]:
    print(f"E = {r.energy:+.4f}  S = {r.S_coupled:.4f} = {r.S_matter:.4f} + {r.S_gauge:.4f}")

# gauging by projection agrees with the closed form
for name in ("sphere_tetra", "triangle_disk", "tetrahedron"):
    r = gauged_toric_check(library_complex(name), report=True)
    print(f"{name}: closed form error {r.closed_form_error:.1e}, gauge invariance {r.gauge_invariance_error:.1e}, ok = {r.ok}")
