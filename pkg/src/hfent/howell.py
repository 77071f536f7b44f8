"""Linear algebra over ``Z_m`` and over products ``Z_{m1} x ... x Z_{mN}``.

Everything funnels through the Howell normal form, which (unlike row echelon
form over a field) is canonical for submodules of ``Z_m^n`` with ``m``
composite.  Mixed moduli are handled by lifting into ``Z_L^n`` with
``L = lcm(m_i)`` and adjoining the relation rows ``m_i e_i``: a subgroup
``S`` of ``prod Z_{m_i}`` corresponds to its full preimage in ``Z_L^n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from hfent.groups import EnumerationCapError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _unit_normalizer(a: int, N: int) -> int:
    """A unit ``u`` of ``Z_N`` with ``u * a = gcd(a, N) (mod N)``."""
    g = math.gcd(a, N)
    Np = N // g
    if Np == 1:
        return 1
    u0 = pow((a // g) % Np, -1, Np)
    for k in range(g):
        u = u0 + k * Np
        if math.gcd(u, N) == 1:
            return u % N
    raise ArithmeticError("no unit normalizer")  # pragma: no cover


def howell_form(A, N: int) -> np.ndarray:
    """Howell normal form of the row span of ``A`` over ``Z_N``.

    The result has no zero rows, pivots that divide ``N``, entries above each
    pivot reduced into ``[0, pivot)``, and the Howell property: the rows with
    leading zeros in the first ``j`` columns span every element of the row
    span with that many leading zeros.  Two matrices with the same row span
    have identical Howell forms.
    """
    A = np.mod(np.atleast_2d(np.asarray(A, dtype=np.int64)), N)
    ncols = A.shape[1]
    H = [row.copy() for row in A if row.any()]
    r = 0
    for col in range(ncols):
        found = False
        i = r
        while i < len(H):
            b = int(H[i][col])
            if b:
                if not found:
                    H[r], H[i] = H[i], H[r]
                    found = True
                else:
                    a = int(H[r][col])
                    g, s, t = xgcd(a, b)
                    ra, rb = H[r], H[i]
                    H[r] = np.mod(s * ra + t * rb, N)
                    H[i] = np.mod((b // g) * ra - (a // g) * rb, N)
            i += 1
        if not found:
            continue
        u = _unit_normalizer(int(H[r][col]), N)
        H[r] = np.mod(u * H[r], N)
        g = int(H[r][col])
        for k in range(r):
            q = int(H[k][col]) // g
            if q:
                H[k] = np.mod(H[k] - q * H[r], N)
        extra = np.mod((N // g) * H[r], N)
        if extra.any():
            H.append(extra)
        r += 1
    return _rows(H[:r], ncols)


def _rows(rows, ncols: int) -> np.ndarray:
    """Stack row vectors into an ``(k, ncols)`` array, also when ``k`` or ``ncols`` is 0."""
    if not len(rows):
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), ncols)


def _pivots(H: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in H]


def howell_reduce(H: np.ndarray, v, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``v`` against Howell rows ``H``; return ``(remainder, multipliers)``.

    The remainder is the canonical representative of ``v + rowspan(H)``; it
    is zero exactly when ``v`` lies in the span.  ``multipliers`` satisfy
    ``v = remainder + multipliers @ H (mod N)``.
    """
    v = np.mod(np.asarray(v, dtype=np.int64), N)
    q = np.zeros(H.shape[0], dtype=np.int64)
    for i, (row, col) in enumerate(zip(H, _pivots(H))):
        c = int(v[col]) // int(row[col])
        if c:
            v = np.mod(v - c * row, N)
            q[i] = c
    return v, q


def solve_mod(M, b, N: int) -> np.ndarray | None:
    """Solve ``M x = b`` over ``Z_N``; ``None`` when no solution exists.

    >>> solve_mod([[2]], [1], 4) is None
    True
    >>> solve_mod([[2]], [2], 4)
    array([1])
    """
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    return MixedLinearMap(M, (N,) * M.shape[0], (N,) * M.shape[1]).solve(b)


howell_solve = solve_mod


@dataclass(frozen=True, eq=False)
class SubgroupModM:
    """A subgroup of ``Z_{m_1} x ... x Z_{m_n}`` in canonical form.

    Attributes:
        moduli: per-coordinate moduli.
        howell: Howell form over ``Z_L`` of the preimage of the subgroup in
            ``Z_L^n`` (relation rows ``m_i e_i`` included).
    """

    moduli: tuple[int, ...]
    howell: np.ndarray = field(repr=False)

    @classmethod
    def from_generators(cls, moduli: Sequence[int], generators) -> "SubgroupModM":
        moduli = tuple(int(m) for m in moduli)
        n = len(moduli)
        L = math.lcm(*moduli) if moduli else 1
        if n == 0:
            H = np.zeros((0, 0), dtype=np.int64)
            H.setflags(write=False)
            return cls(moduli, H)
        gens = np.asarray(generators, dtype=np.int64).reshape(-1, n)
        rel = np.diag(np.array(moduli, dtype=np.int64))
        H = howell_form(np.vstack([gens, rel]), L)
        H.setflags(write=False)
        return cls(moduli, H)

    @classmethod
    def full(cls, moduli: Sequence[int]) -> "SubgroupModM":
        return cls.from_generators(moduli, np.eye(len(moduli), dtype=np.int64))

    @classmethod
    def trivial(cls, moduli: Sequence[int]) -> "SubgroupModM":
        return cls.from_generators(moduli, np.zeros((0, len(moduli)), dtype=np.int64))

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def lift_modulus(self) -> int:
        return math.lcm(*self.moduli) if self.moduli else 1

    @cached_property
    def order(self) -> int:
        L = self.lift_modulus
        lifted = math.prod(L // int(row[c]) for row, c in zip(self.howell, _pivots(self.howell)))
        kernel = math.prod(L // m for m in self.moduli)
        return lifted // kernel

    @cached_property
    def generators(self) -> np.ndarray:
        """Nonzero generators reduced into the ambient group (Howell order)."""
        if not self.rank:
            return np.zeros((0, 0), dtype=np.int64)
        g = np.mod(self.howell, np.array(self.moduli, dtype=np.int64))
        return _rows([row for row in g if row.any()], self.rank)

    def reduce(self, v) -> np.ndarray:
        """Canonical representative of the coset ``v + S``."""
        r, _ = howell_reduce(self.howell, np.asarray(v, dtype=np.int64).reshape(-1), self.lift_modulus)
        return np.mod(r, np.array(self.moduli, dtype=np.int64))

    def reduce_rows(self, V) -> np.ndarray:
        """:meth:`reduce` applied to every row of ``V`` at once."""
        L = self.lift_modulus
        V = np.mod(np.asarray(V, dtype=np.int64).reshape(-1, self.rank), L)
        for row, col in zip(self.howell, _pivots(self.howell)):
            c = V[:, col] // int(row[col])
            V = np.mod(V - c[:, None] * row[None, :], L)
        return np.mod(V, np.array(self.moduli, dtype=np.int64)) if self.rank else V

    def contains_rows(self, V) -> np.ndarray:
        return ~self.reduce_rows(V).any(axis=1)

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    __contains__ = contains

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupModM):
            return NotImplemented
        return self.moduli == other.moduli and np.array_equal(self.howell, other.howell)

    def __hash__(self) -> int:
        return hash((self.moduli, self.howell.tobytes()))

    def issubgroup(self, other: "SubgroupModM") -> bool:
        return all(other.contains(g) for g in self.generators)

    def elements(self, cap: int = 1 << 20) -> Iterator[np.ndarray]:
        """Enumerate all elements exactly once (via the lifted Howell rows)."""
        if self.order > cap:
            raise EnumerationCapError(f"subgroup of order {self.order} exceeds cap {cap}")
        L = self.lift_modulus
        mods = np.array(self.moduli, dtype=np.int64)
        rows = self.howell
        ranges = [range(L // int(row[c])) for row, c in zip(rows, _pivots(rows))]
        seen = set()
        # the lifted group enumerates |S'| elements; keep the distinct images
        for coeffs in itertools.product(*ranges):
            v = np.mod(np.asarray(coeffs, dtype=np.int64) @ rows, L) if rows.size else np.zeros(self.rank, dtype=np.int64)
            v = np.mod(v, mods)
            key = v.tobytes()
            if key not in seen:
                seen.add(key)
                yield v

    def intersection(self, other: "SubgroupModM") -> "SubgroupModM":
        """``S ∩ T`` as the kernel of ``S x T -> ambient, (s, t) -> s - t``."""
        if self.moduli != other.moduli:
            raise ValueError("subgroups of different ambient groups")
        a, b = self.generators, other.generators
        M = np.vstack([a, -b]).T if (a.size or b.size) else np.zeros((self.rank, 0), dtype=np.int64)
        src = tuple(_orders_of_rows(a, self.moduli)) + tuple(_orders_of_rows(b, self.moduli))
        if not src:
            return SubgroupModM.trivial(self.moduli)
        ker = MixedLinearMap(M, self.moduli, src).kernel()
        return SubgroupModM.from_generators(self.moduli, ker.generators[:, : a.shape[0]] @ a if ker.generators.size else np.zeros((0, self.rank)))


def _orders_of_rows(rows: np.ndarray, moduli: Sequence[int]) -> list[int]:
    """Additive order of each row as an element of ``prod Z_{m_i}``."""
    return [math.lcm(1, *(m // math.gcd(int(x), m) for x, m in zip(row, moduli))) for row in rows]


@dataclass(frozen=True, eq=False)
class MixedLinearMap:
    """A homomorphism ``prod Z_{s_j} -> prod Z_{t_i}`` given by an integer matrix.

    ``matrix`` has shape ``(len(target), len(source))`` and acts on column
    vectors.  It must be well defined: ``s_j * matrix[:, j] = 0`` modulo the
    target moduli.
    """

    matrix: np.ndarray
    target: tuple[int, ...]
    source: tuple[int, ...]

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=np.int64).reshape(len(self.target), len(self.source))
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "target", tuple(int(t) for t in self.target))
        object.__setattr__(self, "source", tuple(int(s) for s in self.source))
        tmod = np.array(self.target, dtype=np.int64)
        for j, s in enumerate(self.source):
            if tmod.size and np.mod(s * M[:, j], tmod).any():
                raise ValueError(f"map is not well defined on source coordinate {j} (modulus {s})")

    @cached_property
    def modulus(self) -> int:
        return math.lcm(*(self.target + self.source)) if (self.target or self.source) else 1

    @cached_property
    def _augmented(self) -> np.ndarray:
        """Howell form of ``[M^T | I]`` plus ``[t_i e_i | 0]`` over ``Z_L``."""
        nt, ns = len(self.target), len(self.source)
        top = np.hstack([self.matrix.T, np.eye(ns, dtype=np.int64)])
        rel = np.hstack([np.diag(np.array(self.target, dtype=np.int64)), np.zeros((nt, ns), dtype=np.int64)])
        return howell_form(np.vstack([top, rel]), self.modulus)

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = self.matrix @ x
        return np.mod(y, np.array(self.target, dtype=np.int64).reshape((-1,) + (1,) * (y.ndim - 1)))

    def image(self) -> SubgroupModM:
        return SubgroupModM.from_generators(self.target, self.matrix.T)

    def kernel(self) -> SubgroupModM:
        nt = len(self.target)
        H = self._augmented
        rows = [row[nt:] for row in H if not row[:nt].any()]
        gens = _rows(rows, len(self.source))
        return SubgroupModM.from_generators(self.source, gens)

    def solve(self, b) -> np.ndarray | None:
        """Some ``x`` with ``M x = b``, or ``None``; deterministic.

        The choice is the one produced by back-substitution through the Howell
        rows of the augmented system, reduced into the source moduli.
        """
        nt = len(self.target)
        H = self._augmented
        L = self.modulus
        img = _rows([row for row in H if row[:nt].any()], H.shape[1])
        v = np.zeros(H.shape[1], dtype=np.int64)
        v[:nt] = np.asarray(b, dtype=np.int64).reshape(-1)
        v = np.mod(v, L)
        for row, col in zip(img, _pivots(img)):
            c = int(v[col]) // int(row[col])
            if c:
                v = np.mod(v - c * row, L)
        if np.mod(v[:nt], np.array(self.target, dtype=np.int64)).any():
            return None
        x = np.mod(-v[nt:], L)
        return np.mod(x, np.array(self.source, dtype=np.int64))


# --------------------------------------------------------------------------
# integer Smith normal form (used to read off invariant factors of quotients)


def smith_normal_form(A) -> tuple[list[int], list[list[int]], list[list[int]], list[list[int]]]:
    """Smith form of an integer matrix with transforms.

    Returns ``(diag, U, V, Vinv)`` with ``U @ A @ V = D`` where ``D`` has
    ``diag`` on its main diagonal (each entry dividing the next, nonnegative)
    and zeros elsewhere.  ``Vinv`` is the inverse of ``V``.  Plain Python
    integers throughout; inputs are small.
    """
    A = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(A, dtype=object))]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj), det = +-1
        for M in (A, U):
            ri, rj = M[i], M[j]
            M[i] = [a * x + b * y for x, y in zip(ri, rj)]
            M[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_op(i, j, a, b, c, d):
        # cols (i, j) <- (a*ci + b*cj, c*ci + d*cj); Vinv rows transform inversely
        for M in (A, V):
            for row in M:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y
        det = a * d - b * c
        ia, ib, ic, id_ = d * det, -c * det, -b * det, a * det
        # new basis columns relate to old via the inverse 2x2 on rows of Vinv
        ri, rj = Vi[i], Vi[j]
        Vi[i] = [ia * x + ib * y for x, y in zip(ri, rj)]
        Vi[j] = [ic * x + id_ * y for x, y in zip(ri, rj)]

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            row_op(t, i, 0, 1, 1, 0)
        if j != t:
            col_op(t, j, 0, 1, 1, 0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    if b % a == 0:
                        row_op(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, u = xgcd(a, b)
                        row_op(t, i, s, u, -(b // g), a // g)
                    done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    if b % a == 0:
                        col_op(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, u = xgcd(a, b)
                        col_op(t, j, s, u, -(b // g), a // g)
                    done = False
            if done:
                # divisibility: fold any offending entry into row t
                p = A[t][t]
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is not None:
                    row_op(t, bad[0], 1, 1, 0, 1)
                    done = False
        if A[t][t] < 0:
            U[t] = [-x for x in U[t]]
            A[t] = [-x for x in A[t]]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V, Vi
