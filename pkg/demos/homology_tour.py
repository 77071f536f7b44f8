"""
Homology of the library complexes
=================================

Boundary operators, (co)homology over several coefficient groups, and the
torsion that appears on the Klein bottle.
"""

from hfent.complexes import LIBRARY_NAMES, library_complex
from hfent.groups import FiniteAbelianGroup
from hfent.homology import cohomology, cycles, homology

groups = [FiniteAbelianGroup.parse(g) for g in ("Z2", "Z3", "Z4")]

# Betti-like data over each group, one line per complex
for name in LIBRARY_NAMES:
    X = library_complex(name)
    cells = " ".join(str(c) for c in X.counts)
    parts = []
    for G in groups:
        hs = ", ".join(str(homology(X, n, G)) for n in range(X.dim + 1))
        parts.append(f"{G}: [{hs}]")
    print(f"{name:22s} cells ({cells})  " + "  ".join(parts))

# the Klein bottle sees Z4 differently from Z2: H_1 picks up the 2-torsion
K = library_complex("klein_delta")
for G in groups:
    print(f"H_1(klein; {G}) = {homology(K, 1, G)},  H^1(klein; {G}) = {cohomology(K, 1, G)}")

# generators are explicit cycles
T = library_complex("torus_delta")
H1 = homology(T, 1, groups[0])
for i, rep in enumerate(H1.representatives):
    print(f"torus H_1 generator {i}: edge coefficients {rep.vector.tolist()}")
print(f"|Z_1(torus; Z2)| = {cycles(T, 1, groups[0]).order}")
