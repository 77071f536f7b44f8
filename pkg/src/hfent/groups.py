"""Finite abelian groups, their Pontryagin duals, and exact angles.

Groups are always held in invariant-factor form ``Z_{n1} x ... x Z_{nr}`` with
``n1 | n2 | ... | nr``.  A group and its dual share the same factors; the
``dual`` flag only records which side of the pairing a value lives on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 1 << 20


class StructureError(ValueError):
    """Raised when two objects that must share a structure do not."""


class EnumerationCapError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


def _prime_powers(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors(factors: Sequence[int]) -> tuple[int, ...]:
    """Normalize an arbitrary product of cyclic groups into invariant factors.

    >>> invariant_factors([2, 3])
    (6,)
    >>> invariant_factors([4, 6])
    (2, 12)
    """
    by_prime: dict[int, list[int]] = {}
    for n in factors:
        n = int(n)
        if n < 2:
            raise ValueError(f"cyclic factor must be >= 2, got {n}")
        for q in _prime_powers(n):
            prime = next(d for d in range(2, q + 1) if q % d == 0)
            by_prime.setdefault(prime, []).append(q)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    cols = [1] * width
    for powers in by_prime.values():
        powers = sorted(powers)
        # right-align so the largest powers land in the last factor
        for i, q in enumerate(powers):
            cols[width - len(powers) + i] *= q
    return tuple(c for c in cols if c > 1)


@dataclass(frozen=True)
class Angle:
    """An element of R/2piZ stored exactly as a fraction of a full turn."""

    turns: Fraction = Fraction(0)

    def __post_init__(self):
        t = Fraction(self.turns)
        object.__setattr__(self, "turns", t - math.floor(t))

    @classmethod
    def from_ratio(cls, numerator: int, denominator: int) -> "Angle":
        return cls(Fraction(int(numerator), int(denominator)))

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.turns + other.turns)

    def __sub__(self, other: "Angle") -> "Angle":
        return Angle(self.turns - other.turns)

    def __neg__(self) -> "Angle":
        return Angle(-self.turns)

    def is_zero(self) -> bool:
        return self.turns == 0

    @property
    def radians(self) -> float:
        return 2 * math.pi * float(self.turns)

    def to_complex(self) -> complex:
        # the only lossy step
        return complex(np.exp(2j * np.pi * float(self.turns)))

    def __repr__(self) -> str:
        return f"Angle(2pi*{self.turns})"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z_{n1} x ... x Z_{nr}`` in invariant-factor form.

    ``dual=True`` marks the Pontryagin dual; its elements are characters.
    """

    factors: tuple[int, ...]
    dual: bool = False

    def __post_init__(self):
        facs = invariant_factors(self.factors) if self.factors else ()
        object.__setattr__(self, "factors", facs)

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        """Parse ``"Z2"``, ``"Z4"``, ``"Z2xZ3"`` (factors separated by ``x``)."""
        parts = [s.strip() for s in text.strip().split("x")]
        factors = []
        for part in parts:
            if not part.upper().startswith("Z") or not part[1:].isdigit():
                raise ValueError(f"cannot parse group factor {part!r} in {text!r}")
            n = int(part[1:])
            if n < 2:
                raise ValueError(f"group factor must be >= 2, got {part!r}")
            factors.append(n)
        return cls(tuple(factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        """Least common multiple of the factors (the largest one)."""
        return self.factors[-1] if self.factors else 1

    def dual_group(self) -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.factors, not self.dual)

    def weights(self) -> np.ndarray:
        """Per-factor scale ``L / n_i`` taking ``Z_{n_i}`` into ``Z_L``."""
        L = self.exponent
        return np.array([L // n for n in self.factors], dtype=np.int64)

    def element(self, *residues: int) -> "GroupElement":
        if len(residues) == 1 and isinstance(residues[0], (tuple, list, np.ndarray)):
            residues = tuple(residues[0])
        cls = Character if self.dual else GroupElement
        return cls(self, tuple(int(x) for x in residues))

    def identity(self) -> "GroupElement":
        return self.element(*([0] * self.rank))

    def elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> list["GroupElement"]:
        """All elements, identity first, lexicographic on residues."""
        return list(self.iter_elements(cap))

    def iter_elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator["GroupElement"]:
        if self.order > cap:
            raise EnumerationCapError(
                f"group of order {self.order} exceeds enumeration cap {cap}"
            )
        for res in itertools.product(*(range(n) for n in self.factors)):
            yield self.element(*res)

    def __str__(self) -> str:
        body = "x".join(f"Z{n}" for n in self.factors) or "0"
        return f"dual({body})" if self.dual else body


def enumerate_elements(group: FiniteAbelianGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> list["GroupElement"]:
    return group.elements(cap)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != self.group.rank:
            raise StructureError(
                f"{len(self.residues)} residues for a group of rank {self.group.rank}"
            )
        res = tuple(int(x) % n for x, n in zip(self.residues, self.group.factors))
        object.__setattr__(self, "residues", res)

    def _check(self, other: "GroupElement") -> None:
        if other.group != self.group:
            raise StructureError(f"elements of {self.group} and {other.group} do not mix")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(*(a + b for a, b in zip(self.residues, other.residues)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(*(a - b for a, b in zip(self.residues, other.residues)))

    def __neg__(self) -> "GroupElement":
        return self.group.element(*(-a for a in self.residues))

    def __mul__(self, n: int) -> "GroupElement":
        return self.group.element(*(int(n) * a for a in self.residues))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.residues)


class Character(GroupElement):
    """An element of the dual group; evaluate it on ``G`` with :func:`char_eval`."""

    def __call__(self, g: GroupElement) -> Angle:
        return char_eval(self, g)


def char_eval(rho: GroupElement, g: GroupElement) -> Angle:
    """``rho(g) = sum_i 2pi rho_i g_i / n_i`` modulo 2pi, exactly."""
    if rho.group.factors != g.group.factors:
        raise StructureError(
            f"character of {rho.group} cannot be evaluated on {g.group}"
        )
    L = g.group.exponent
    w = g.group.weights()
    num = sum(int(r) * int(x) * int(wi) for r, x, wi in zip(rho.residues, g.residues, w))
    return Angle.from_ratio(num, L)
