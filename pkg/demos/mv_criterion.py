"""
When does the minimal coupling split across a cut?
==================================================

The combined map H_p(A∩B) -> H_p(A) + H_p(B) must be the graph of an
isomorphism.  A connected arc passes, two disjoint arcs do not, and on the
Klein bottle the answer depends on the coefficient group.
"""

from hfent.complexes import library_complex, library_cut
from hfent.factorize import FactorizationError, factorize
from hfent.groups import FiniteAbelianGroup
from hfent.hilbert import HilbertModel
from hfent.homology import mv_criterion

cases = [
    ("circle_6", "arc", "Z2"),
    ("circle_8", "two_arcs", "Z2"),
    ("sphere_tetra", "two_faces", "Z2"),
    ("klein_delta", "one_face", "Z2"),
    ("klein_delta", "one_face", "Z3"),
    ("torus_delta", "one_face", "Z4"),
]

for name, cut, gname in cases:
    G = FiniteAbelianGroup.parse(gname)
    X = library_complex(name)
    bp = library_cut(cut, X)
    mv = mv_criterion(bp, G.dual_group())
    s = mv.summary()
    print(f"{name}/{cut} over {gname}: {'holds' if mv.holds else 'fails'}")
    print(f"    H(A∩B) = {s['H_AB']}, H(A) = {s['H_A']}, H(B) = {s['H_B']}, |S| = {s['order_S']}")
    if not mv.holds:
        print(f"    {mv.diagnostic}")

    # where it holds, U agrees with U_A (x) U_Ac on the invariant subspace
    try:
        m = HilbertModel(X, bp.p, G)
        f = factorize(m, bp)
        print(f"    ||(U - U_A x U_Ac) P_inv|| = {f.residual(m):.1e}")
    except FactorizationError:
        print("    factorization refused")
