"""Finite Delta-complexes, chains and cochains over finite abelian groups.

A complex is stored as raw integer incidence: ``boundary[n][i]`` lists the
``(face_index, coefficient)`` pairs of the ``i``-th ``n``-simplex.  Complexes
with identified faces (the one-vertex torus, the two-triangle sphere) are
therefore first-class.

Chains are coordinatized as ``(num_simplices, rank)`` integer arrays, one row
per simplex and one column per invariant factor of the coefficient group.
The flattened coordinate vector interleaves factors: index ``sigma * r + i``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from hfent.groups import Angle, FiniteAbelianGroup, GroupElement, StructureError


class ComplexValidationError(ValueError):
    """The boundary data does not define a chain complex."""


class BipartitionError(ValueError):
    """A requested cut violates closure or covering."""


@dataclass(frozen=True, eq=False)
class DeltaComplex:
    """A finite Delta-complex given by integer incidence lists.

    Attributes:
        counts: number of simplices in each dimension ``0..D``.
        boundary: ``boundary[n]`` (for ``n >= 1``) is a list with one entry per
            ``n``-simplex, each a list of ``(face_index, coefficient)`` pairs.
            ``boundary[0]`` is an empty placeholder.
        labels: optional vertex tuples per dimension.
        name: free-form identifier used in reports.
    """

    counts: tuple[int, ...]
    boundary: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    labels: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    name: str = "complex"

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(self.boundary) != len(counts):
            raise StructureError("boundary data must have one entry per dimension")
        for n in range(1, len(counts)):
            if len(self.boundary[n]) != counts[n]:
                raise StructureError(
                    f"dimension {n}: {len(self.boundary[n])} incidence lists for {counts[n]} simplices"
                )
            for i, faces in enumerate(self.boundary[n]):
                for j, _ in faces:
                    if not 0 <= j < counts[n - 1]:
                        raise StructureError(
                            f"simplex {i} of dimension {n} names face {j}, "
                            f"but dimension {n - 1} has {counts[n - 1]} simplices"
                        )
        for n in range(2, len(counts)):
            dd = self.boundary_matrix(n - 1) @ self.boundary_matrix(n)
            bad = np.nonzero(dd.any(axis=0))[0]
            if bad.size:
                raise ComplexValidationError(
                    f"boundary of boundary is nonzero on {n}-simplex {int(bad[0])}"
                )

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def count(self, n: int) -> int:
        return self.counts[n] if 0 <= n <= self.dim else 0

    def boundary_matrix(self, n: int) -> np.ndarray:
        """Integer matrix of ``d_n`` acting on column vectors, shape ``(c_{n-1}, c_n)``."""
        if 0 <= n <= self.dim + 1:
            return self._bmats[n]
        return np.zeros((self.count(n - 1), self.count(n)), dtype=np.int64)

    @cached_property
    def _bmats(self) -> list[np.ndarray]:
        mats = [np.zeros((0, self.count(0)), dtype=np.int64)]
        for n in range(1, self.dim + 1):
            m = np.zeros((self.counts[n - 1], self.counts[n]), dtype=np.int64)
            for i, faces in enumerate(self.boundary[n]):
                for j, s in faces:
                    m[j, i] += s
            m.setflags(write=False)
            mats.append(m)
        mats.append(np.zeros((self.count(self.dim), 0), dtype=np.int64))
        return mats

    def faces_of(self, n: int, i: int) -> list[int]:
        """Faces of ``n``-simplex ``i`` with nonzero total incidence."""
        col = self.boundary_matrix(n)[:, i]
        return [int(j) for j in np.nonzero(col)[0]]

    def all_faces_of(self, n: int, i: int) -> list[int]:
        """Faces named in the incidence list, including cancelling ones."""
        return sorted({j for j, _ in self.boundary[n][i]})

    def closure(self, n: int, indices: Iterable[int]) -> list[set[int]]:
        """Downward closure of a set of ``n``-simplices, as index sets per dimension."""
        out = [set() for _ in range(self.dim + 1)]
        out[n] = set(int(i) for i in indices)
        for m in range(n, 0, -1):
            for i in out[m]:
                out[m - 1].update(self.all_faces_of(m, i))
        return out

    def subcomplex(self, simplices: Sequence[Iterable[int]], name: str | None = None) -> "Subcomplex":
        return Subcomplex.from_indices(self, simplices, name=name)

    def __repr__(self) -> str:
        return f"DeltaComplex({self.name!r}, counts={self.counts})"


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A closed subcomplex together with its inclusion into the parent."""

    parent: DeltaComplex
    complex: DeltaComplex
    index_maps: tuple[tuple[int, ...], ...]

    @classmethod
    def from_indices(cls, parent: DeltaComplex, simplices: Sequence[Iterable[int]], name: str | None = None) -> "Subcomplex":
        maps = []
        for n in range(parent.dim + 1):
            idx = sorted(set(int(i) for i in simplices[n])) if n < len(simplices) else []
            maps.append(tuple(idx))
        while len(maps) > 1 and not maps[-1]:
            maps.pop()
        local = [{g: k for k, g in enumerate(m)} for m in maps]
        bnd: list[tuple] = [()]
        for n in range(1, len(maps)):
            rows = []
            for g in maps[n]:
                faces = []
                for j, s in parent.boundary[n][g]:
                    if j not in local[n - 1]:
                        raise BipartitionError(
                            f"subcomplex is not closed: {n}-simplex {g} has face {j} outside it"
                        )
                    faces.append((local[n - 1][j], s))
                rows.append(tuple(faces))
            bnd.append(tuple(rows))
        labels = None
        if parent.labels is not None:
            labels = tuple(tuple(parent.labels[n][g] for g in maps[n]) for n in range(len(maps)))
        sub = DeltaComplex(tuple(len(m) for m in maps), tuple(bnd), labels, name or f"sub({parent.name})")
        return cls(parent, sub, tuple(maps))

    def count(self, n: int) -> int:
        return self.complex.count(n)

    def push_forward(self, chain: "Chain") -> "Chain":
        """Include a chain on the subcomplex into the parent complex."""
        n = chain.dim
        out = np.zeros((self.parent.count(n), chain.group.rank), dtype=np.int64)
        if self.count(n):
            out[list(self.index_maps[n])] = chain.values
        return type(chain)(self.parent, n, chain.group, out)

    def restrict(self, chain: "Chain") -> "Chain":
        """Restrict a parent chain to the simplices of this subcomplex."""
        n = chain.dim
        vals = chain.values[list(self.index_maps[n])] if self.count(n) else np.zeros((0, chain.group.rank), dtype=np.int64)
        return type(chain)(self.complex, n, chain.group, vals)


def _reduce(values: np.ndarray, group: FiniteAbelianGroup) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64).reshape(-1, group.rank)
    return np.mod(v, np.array(group.factors, dtype=np.int64)) if group.rank else v


@dataclass(frozen=True, eq=False)
class Chain:
    """A ``dim``-chain with coefficients in ``group``: one element per simplex."""

    complex: DeltaComplex
    dim: int
    group: FiniteAbelianGroup
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = _reduce(self.values, self.group)
        if v.shape[0] != self.complex.count(self.dim):
            raise StructureError(
                f"{v.shape[0]} coefficients for {self.complex.count(self.dim)} simplices in dimension {self.dim}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, complex: DeltaComplex, dim: int, group: FiniteAbelianGroup):
        return cls(complex, dim, group, np.zeros((complex.count(dim), group.rank), dtype=np.int64))

    @classmethod
    def from_vector(cls, complex: DeltaComplex, dim: int, group: FiniteAbelianGroup, vector):
        return cls(complex, dim, group, np.asarray(vector, dtype=np.int64).reshape(-1, group.rank))

    @classmethod
    def from_dict(cls, complex: DeltaComplex, dim: int, group: FiniteAbelianGroup, coeffs: dict):
        v = np.zeros((complex.count(dim), group.rank), dtype=np.int64)
        for i, g in coeffs.items():
            v[i] = g.residues if isinstance(g, GroupElement) else np.atleast_1d(g)
        return cls(complex, dim, group, v)

    @property
    def vector(self) -> np.ndarray:
        return self.values.reshape(-1)

    def __getitem__(self, i: int) -> GroupElement:
        return self.group.element(*self.values[i])

    def _check(self, other) -> None:
        if type(other) is not type(self) or other.complex is not self.complex or other.dim != self.dim or other.group != self.group:
            raise StructureError("operands live in different (co)chain groups")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.complex, self.dim, self.group, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.complex, self.dim, self.group, self.values - other.values)

    def __neg__(self):
        return type(self)(self.complex, self.dim, self.group, -self.values)

    def __mul__(self, n: int):
        return type(self)(self.complex, self.dim, self.group, int(n) * self.values)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (
            other.complex is self.complex
            and other.dim == self.dim
            and other.group == self.group
            and np.array_equal(other.values, self.values)
        )

    def __hash__(self) -> int:
        return hash((id(self.complex), self.dim, self.group, self.values.tobytes()))

    def is_zero(self) -> bool:
        return not self.values.any()

    def support(self) -> list[int]:
        return [int(i) for i in np.nonzero(self.values.any(axis=1))[0]]


class Cochain(Chain):
    """A ``dim``-cochain: the value on each simplex determines the homomorphism."""


def boundary(c: Chain) -> Chain:
    """``(d c)_j = sum_i s_ij c_i``; a 0-chain maps to the empty (-1)-chain."""
    if type(c) is not Chain:
        raise StructureError("boundary acts on chains; use coboundary for cochains")
    n = c.dim
    if not 0 <= n <= c.complex.dim:
        raise StructureError(f"no {n}-chains on a {c.complex.dim}-dimensional complex")
    B = c.complex.boundary_matrix(n)
    return Chain(c.complex, n - 1, c.group, B @ c.values)


def coboundary(f: Cochain) -> Cochain:
    """``(delta f)(sigma) = f(d sigma)``."""
    if not isinstance(f, Cochain):
        raise StructureError("coboundary acts on cochains")
    n = f.dim
    if not 0 <= n <= f.complex.dim - 1:
        raise StructureError(f"coboundary of {n}-cochains needs dimension {n + 1} on a {f.complex.dim}-complex")
    B = f.complex.boundary_matrix(n + 1)
    return Cochain(f.complex, n + 1, f.group, B.T @ f.values)


def pairing(k: Chain, phi: Cochain) -> Angle:
    """``<k, phi> = sum_sigma k_sigma(phi(sigma))`` for ``k`` over the dual of ``phi``'s group."""
    if type(k) is not Chain or not isinstance(phi, Cochain):
        raise StructureError("pairing takes a chain and a cochain")
    if k.complex is not phi.complex or k.dim != phi.dim:
        raise StructureError(f"cannot pair a {k.dim}-chain with a {phi.dim}-cochain")
    if k.group.factors != phi.group.factors:
        raise StructureError(f"coefficient groups {k.group} and {phi.group} are not dual")
    L = phi.group.exponent
    num = int(np.sum(k.values * phi.values * phi.group.weights()))
    return Angle.from_ratio(num, L)


def pairing_numerators(chains: np.ndarray, cochains: np.ndarray, group: FiniteAbelianGroup) -> np.ndarray:
    """Batched pairing: numerators over ``group.exponent`` for all rows of both arrays.

    ``chains`` has shape ``(a, N*r)`` and ``cochains`` shape ``(b, N*r)``
    (flattened coordinates); the result has shape ``(a, b)``.
    """
    N = chains.shape[1] // max(group.rank, 1)
    w = np.tile(group.weights(), N)
    return np.mod(chains @ (cochains * w).T, group.exponent)


# --------------------------------------------------------------------------
# construction


def build_complex(spec: dict, name: str | None = None) -> DeltaComplex:
    """Build a complex from an incidence description or from vertex tuples.

    Incidence form::

        {"dimension": D, "counts": [c0, ..., cD],
         "boundary": {"1": [[[face, coeff], ...], ...], "2": ...}}

    Vertex-tuple form (faces and signs generated by the alternating rule)::

        {"simplices": {"0": [[0], [1]], "1": [[0, 1]], ...}}
    """
    name = name or spec.get("name", "complex")
    if "simplices" in spec:
        simplices = {int(n): [tuple(int(v) for v in s) for s in ss] for n, ss in spec["simplices"].items()}
        return from_vertex_tuples(simplices, name=name)
    counts = [int(c) for c in spec["counts"]]
    D = int(spec.get("dimension", len(counts) - 1))
    if len(counts) != D + 1:
        raise StructureError(f"dimension {D} needs {D + 1} counts, got {len(counts)}")
    raw = spec.get("boundary", {})
    bnd: list[tuple] = [()]
    for n in range(1, D + 1):
        rows = raw.get(str(n), raw.get(n))
        if rows is None:
            raise StructureError(f"missing boundary data for dimension {n}")
        bnd.append(tuple(tuple((int(j), int(s)) for j, s in faces) for faces in rows))
    labels = None
    if spec.get("labels") is not None:
        lab = spec["labels"]
        per_dim = [lab.get(str(n), []) for n in range(D + 1)] if isinstance(lab, dict) else lab
        labels = tuple(tuple(tuple(int(x) for x in v) for v in ls) for ls in per_dim)
    return DeltaComplex(tuple(counts), tuple(bnd), labels, name)


def from_vertex_tuples(simplices: dict[int, Sequence[tuple[int, ...]]], name: str = "complex") -> DeltaComplex:
    """Generate incidence from ordered vertex tuples.

    ``d[v0..vn] = sum_i (-1)^i [v0..^vi..vn]``.  Every face must itself be
    listed among the ``(n-1)``-simplices.  Vertices are identified with their
    position in ``simplices[0]``.
    """
    D = max(simplices)
    tuples = [list(simplices.get(n, [])) for n in range(D + 1)]
    index = [{t: i for i, t in enumerate(ts)} for ts in tuples]
    bnd: list[tuple] = [()]
    for n in range(1, D + 1):
        rows = []
        for s in tuples[n]:
            if len(s) != n + 1:
                raise StructureError(f"{n}-simplex {s} must list {n + 1} vertices")
            faces = []
            for i in range(n + 1):
                face = s[:i] + s[i + 1:]
                if face not in index[n - 1]:
                    raise StructureError(f"face {face} of {s} is not a listed {n - 1}-simplex")
                faces.append((index[n - 1][face], (-1) ** i))
            rows.append(tuple(faces))
        bnd.append(tuple(rows))
    labels = tuple(tuple(ts) for ts in tuples)
    return DeltaComplex(tuple(len(ts) for ts in tuples), tuple(bnd), labels, name)


def _full_simplicial(vertices: int, facets: Iterable[tuple[int, ...]], name: str) -> DeltaComplex:
    simplices: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for n in range(len(f)):
            for sub in itertools.combinations(f, n + 1):
                simplices.setdefault(n, set()).add(sub)
    simplices.setdefault(0, set()).update((v,) for v in range(vertices))
    ordered = {n: sorted(s) for n, s in simplices.items()}
    return from_vertex_tuples(ordered, name=name)


def library_complex(name: str) -> DeltaComplex:
    """Named complexes with documented simplex ordering.

    ``interval_n``
        vertices ``0..n-1``, edges ``[i, i+1]``.
    ``circle_n``
        vertices ``0..n-1``, edges ``[i, i+1]`` for ``i < n-1`` then ``[0, n-1]``.
    ``triangle_disk``
        one triangle ``[0,1,2]`` with edges ``[0,1],[0,2],[1,2]``.
    ``sphere_tetra``
        boundary of the 3-simplex; all simplices in lexicographic vertex order,
        counts ``(4, 6, 4)``.
    ``tetrahedron``
        the solid 3-simplex, counts ``(4, 6, 4, 1)``.
    ``two_triangles_sphere``
        two triangles glued along their whole boundary, counts ``(3, 3, 2)``.
    ``torus_delta``
        one vertex, edges ``a, b, c``, faces ``U, L`` with ``dU = dL = a + b - c``.
    ``klein_delta``
        one vertex, edges ``a, b, c``, faces with ``dU = a + b - c`` and
        ``dL = a - b + c``; integral ``H_1 = Z + Z2``.
    ``complete_graph_n``
        vertices ``0..n-1``, all edges in lexicographic order.
    """
    if name == "triangle_disk":
        return _full_simplicial(3, [(0, 1, 2)], name)
    if name == "sphere_tetra":
        return _full_simplicial(4, itertools.combinations(range(4), 3), name)
    if name == "tetrahedron":
        return _full_simplicial(4, [(0, 1, 2, 3)], name)
    if name == "two_triangles_sphere":
        edge = ((2, 1), (1, -1), (0, 1))  # [v1,v2] - [v0,v2] + [v0,v1]
        bnd = ((), (((1, 1), (0, -1)), ((2, 1), (0, -1)), ((2, 1), (1, -1))), (edge, edge))
        labels = (((0,), (1,), (2,)), ((0, 1), (0, 2), (1, 2)), ((0, 1, 2), (0, 1, 2)))
        return DeltaComplex((3, 3, 2), bnd, labels, name)
    if name == "torus_delta":
        loop = ((0, 1), (0, -1))
        face = ((0, 1), (1, 1), (2, -1))
        return DeltaComplex((1, 3, 2), ((), (loop, loop, loop), (face, face)), None, name)
    if name == "klein_delta":
        loop = ((0, 1), (0, -1))
        upper = ((0, 1), (1, 1), (2, -1))
        lower = ((0, 1), (1, -1), (2, 1))
        return DeltaComplex((1, 3, 2), ((), (loop, loop, loop), (upper, lower)), None, name)
    prefix, _, tail = name.rpartition("_")
    if tail.isdigit():
        n = int(tail)
        if prefix == "interval" and n >= 2:
            return from_vertex_tuples({0: [(i,) for i in range(n)], 1: [(i, i + 1) for i in range(n - 1)]}, name)
        if prefix == "circle" and n >= 3:
            edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
            return from_vertex_tuples({0: [(i,) for i in range(n)], 1: edges}, name)
        if prefix == "complete_graph" and n >= 2:
            return from_vertex_tuples(
                {0: [(i,) for i in range(n)], 1: list(itertools.combinations(range(n), 2))}, name
            )
    raise KeyError(f"unknown library complex {name!r}")


LIBRARY_NAMES = (
    "interval_4",
    "circle_3",
    "circle_4",
    "circle_6",
    "triangle_disk",
    "sphere_tetra",
    "tetrahedron",
    "two_triangles_sphere",
    "torus_delta",
    "klein_delta",
    "complete_graph_4",
)


def complex_to_json(X: DeltaComplex) -> dict:
    out = {
        "name": X.name,
        "dimension": X.dim,
        "counts": list(X.counts),
        "boundary": {str(n): [[list(fs) for fs in faces] for faces in X.boundary[n]] for n in range(1, X.dim + 1)},
    }
    if X.labels is not None:
        out["labels"] = {str(n): [list(t) for t in X.labels[n]] for n in range(X.dim + 1)}
    return out


def load_complex(ref: str | Path | dict) -> DeltaComplex:
    """Load from a JSON path, a library name, or an already-parsed dict."""
    if isinstance(ref, dict):
        return build_complex(ref)
    p = Path(ref)
    if p.suffix == ".json" or p.exists():
        with open(p) as fh:
            spec = json.load(fh)
        return build_complex(spec, name=spec.get("name", p.stem))
    return library_complex(str(ref))


# --------------------------------------------------------------------------
# bipartitions


@dataclass(frozen=True, eq=False)
class Bipartition:
    """A cut of ``X`` into a closed ``(p+1)``-dimensional region ``A`` and its complement ``B``.

    ``A`` is given by its ``(p+1)``-simplices and ``p``-simplices; ``B`` is
    derived: its ``(p+1)``-simplices are the rest, its ``p``-simplices are
    ``Delta^p(A^c)`` plus all ``p``-faces of its ``(p+1)``-simplices.
    """

    complex: DeltaComplex
    p: int
    A_faces: frozenset[int]
    A_psimplices: frozenset[int]
    A: Subcomplex
    B: Subcomplex
    AB: Subcomplex
    name: str = "cut"

    @property
    def B_faces(self) -> frozenset[int]:
        return frozenset(range(self.complex.count(self.p + 1))) - self.A_faces

    @property
    def B_psimplices(self) -> frozenset[int]:
        return frozenset(self.B.index_maps[self.p]) if self.B.count(self.p) else frozenset()

    @property
    def boundary_psimplices(self) -> frozenset[int]:
        return self.A_psimplices & self.B_psimplices

    @property
    def Ac_psimplices(self) -> frozenset[int]:
        return frozenset(range(self.complex.count(self.p))) - self.A_psimplices


def make_bipartition(X: DeltaComplex, p: int, A_faces: Iterable[int], A_psimplices: Iterable[int], name: str = "cut") -> Bipartition:
    if not 0 <= p <= X.dim - 1:
        raise BipartitionError(f"p={p} needs 0 <= p <= {X.dim - 1}")
    A_faces = frozenset(int(i) for i in A_faces)
    A_ps = frozenset(int(i) for i in A_psimplices)
    nf, nps = X.count(p + 1), X.count(p)
    if any(not 0 <= i < nf for i in A_faces) or any(not 0 <= i < nps for i in A_ps):
        raise BipartitionError("simplex index out of range in cut")
    for f in sorted(A_faces):
        missing = set(X.all_faces_of(p + 1, f)) - A_ps
        if missing:
            raise BipartitionError(
                f"A is not closed: {p + 1}-simplex {f} has {p}-faces {sorted(missing)} outside A_psimplices"
            )
    A_sets = X.closure(p, A_ps)
    A_sets[p + 1] = set(A_faces)
    B_faces = set(range(nf)) - A_faces
    B_sets = X.closure(p + 1, B_faces)
    B_sets[p].update(set(range(nps)) - A_ps)
    B_sets = _merge_closure(X, p, B_sets)
    covered = A_ps | B_sets[p]
    if len(covered) != nps:
        raise BipartitionError(f"{p}-simplices {sorted(set(range(nps)) - covered)} lie in neither region")
    AB_sets = [A_sets[n] & B_sets[n] if n <= p else set() for n in range(X.dim + 1)]
    A = Subcomplex.from_indices(X, A_sets, name=f"A({name})")
    B = Subcomplex.from_indices(X, B_sets, name=f"B({name})")
    AB = Subcomplex.from_indices(X, AB_sets, name=f"AcapB({name})")
    return Bipartition(X, p, A_faces, A_ps, A, B, AB, name)


def _merge_closure(X: DeltaComplex, top: int, sets: list[set[int]]) -> list[set[int]]:
    for m in range(top, 0, -1):
        for i in list(sets[m]):
            sets[m - 1].update(X.all_faces_of(m, i))
    return sets


def load_cut(X: DeltaComplex, ref: str | Path | dict) -> Bipartition:
    if isinstance(ref, dict):
        spec = ref
        name = spec.get("name", "cut")
    else:
        p = Path(ref)
        if p.suffix == ".json" or p.exists():
            with open(p) as fh:
                spec = json.load(fh)
            name = spec.get("name", p.stem)
        else:
            return library_cut(str(ref), X)
    return make_bipartition(X, int(spec["p"]), spec["A_faces"], spec["A_psimplices"], name=name)


def library_cut(name: str, X: DeltaComplex | None = None) -> Bipartition:
    """Named cuts used by the demos, the acceptance suite and ``hfent verify``.

    ``arc`` (circle_n, p=0)
        three consecutive edges ``0,1,2`` and vertices ``0..3``.
    ``two_arcs`` (circle_n, n >= 8, p=0)
        edges ``{0,1}`` and ``{4,5}`` with their vertices.
    ``two_faces`` (sphere_tetra, p=1)
        faces ``[0,1,2]`` and ``[0,1,3]`` with their five edges.
    ``one_face`` (2-complexes, p=1)
        face 0 with its edges.
    ``everything`` (any, p = D-1)
        ``A = X``.
    """
    if X is None:
        raise ValueError("library cuts need the complex they cut")
    if name == "arc":
        return make_bipartition(X, 0, [0, 1, 2], [0, 1, 2, 3], name)
    if name == "two_arcs":
        n = X.count(0)
        return make_bipartition(X, 0, [0, 1, n // 2, n // 2 + 1], [0, 1, 2, n // 2, n // 2 + 1, n // 2 + 2], name)
    if name == "two_faces":
        faces = [0, 1]
        edges = sorted(set(X.all_faces_of(2, 0)) | set(X.all_faces_of(2, 1)))
        return make_bipartition(X, 1, faces, edges, name)
    if name == "one_face":
        return make_bipartition(X, 1, [0], X.all_faces_of(2, 0), name)
    if name == "everything":
        p = X.dim - 1
        return make_bipartition(X, p, range(X.count(p + 1)), range(X.count(p)), name)
    raise KeyError(f"unknown library cut {name!r}")
