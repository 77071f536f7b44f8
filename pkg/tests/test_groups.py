from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfent.groups import (
    Angle,
    EnumerationCapError,
    FiniteAbelianGroup,
    StructureError,
    char_eval,
    enumerate_elements,
    invariant_factors,
)

SMALL_GROUPS = [(2,), (3,), (4,), (2, 2), (2, 4), (6,), (2, 2, 2)]


def test_parse_and_invariant_factors():
    assert FiniteAbelianGroup.parse("Z2").factors == (2,)
    assert FiniteAbelianGroup.parse("Z2xZ2").factors == (2, 2)
    assert FiniteAbelianGroup.parse("Z2xZ3").factors == (6,)
    assert invariant_factors([4, 6]) == (2, 12)
    for bad in ("Z1", "Z0", "Y2", "Z2xZ", ""):
        with pytest.raises(ValueError):
            FiniteAbelianGroup.parse(bad)


def test_dual_has_same_factors():
    G = FiniteAbelianGroup((2, 4))
    assert G.dual_group().factors == G.factors
    assert G.dual_group().dual_group() == G
    assert G.order == 8 and G.exponent == 4


def test_char_eval_examples():
    Z2, Z4 = FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,))
    assert char_eval(Z2.dual_group().element(1), Z2.element(1)) == Angle(Fraction(1, 2))
    assert char_eval(Z4.dual_group().element(1), Z4.element(2)) == Angle(Fraction(1, 2))
    assert char_eval(Z4.dual_group().element(0), Z4.element(3)).is_zero()
    assert char_eval(Z4.dual_group().element(3), Z4.identity()).is_zero()


def test_char_eval_mismatch():
    with pytest.raises(StructureError):
        char_eval(FiniteAbelianGroup((2,)).dual_group().element(1), FiniteAbelianGroup((4,)).element(1))


def test_enumeration_order():
    assert [e.residues for e in enumerate_elements(FiniteAbelianGroup((2,)))] == [(0,), (1,)]
    assert [e.residues for e in enumerate_elements(FiniteAbelianGroup((2, 2)))] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    Z3 = enumerate_elements(FiniteAbelianGroup((3,)))
    assert len(Z3) == 3 and Z3[0].is_identity()
    assert {(a + b).residues for a in Z3 for b in Z3} == {e.residues for e in Z3}


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        FiniteAbelianGroup((4, 4)).elements(cap=10)


def test_angle_is_exact():
    a = Angle(Fraction(3, 4))
    assert (a + a) == Angle(Fraction(1, 2))
    assert (-a) == Angle(Fraction(1, 4))
    assert Angle(Fraction(5, 4)) == Angle(Fraction(1, 4))
    assert abs(Angle(Fraction(1, 4)).to_complex() - 1j) < 1e-15


@pytest.mark.parametrize("factors", SMALL_GROUPS)
def test_schur_orthogonality(factors):
    G = FiniteAbelianGroup(factors)
    els, chars = G.elements(), G.dual_group().elements()
    M = np.array([[char_eval(r, g).to_complex() for g in els] for r in chars])
    # both orthogonality relations at once
    assert np.allclose(M @ M.conj().T / G.order, np.eye(G.order), atol=1e-12)
    assert np.allclose(M.conj().T @ M / G.order, np.eye(G.order), atol=1e-12)


group_st = st.sampled_from(SMALL_GROUPS).map(FiniteAbelianGroup)


@given(group_st, st.data())
def test_character_bilinearity(G, data):
    res = lambda: tuple(data.draw(st.integers(0, n - 1)) for n in G.factors)  # noqa: E731
    D = G.dual_group()
    r1, r2, g1, g2 = D.element(*res()), D.element(*res()), G.element(*res()), G.element(*res())
    assert char_eval(r1 + r2, g1) == char_eval(r1, g1) + char_eval(r2, g1)
    assert char_eval(r1, g1 + g2) == char_eval(r1, g1) + char_eval(r1, g2)
    assert char_eval(-r1, g1) == -char_eval(r1, g1)
