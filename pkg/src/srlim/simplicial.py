"""Finite simplicial complexes on an ordered vertex set.

A face is a strictly increasing tuple of vertex indices; ``()`` is the empty
face.  Faces are ordered lexicographically as tuples, and every enumeration
below follows that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Face = tuple  # strictly increasing tuple of vertex indices

MAX_VERTICES = 16


def subsets(face: Face) -> list[Face]:
    """All subsets of ``face`` (including ``()`` and ``face``), sorted."""
    out = []
    for k in range(len(face) + 1):
        out.extend(combinations(face, k))
    return sorted(out)


def is_subface(small: Face, big: Face) -> bool:
    return set(small).issubset(big)


@dataclass(frozen=True)
class MultiSet:
    """Exponent vector on the vertex set; stands for the monomial v_M."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("multiset exponents must be nonnegative")

    @classmethod
    def from_vertices(cls, m: int, vertices: Iterable[int]) -> MultiSet:
        e = [0] * m
        for v in vertices:
            e[v] += 1
        return cls(tuple(e))

    @property
    def cardinality(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> Face:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def constituents(self) -> tuple[int, ...]:
        """The nondecreasing tuple of vertices (v_j1, ..., v_jn)."""
        return tuple(i for i, e in enumerate(self.exponents) for _ in range(e))

    def __add__(self, other: MultiSet) -> MultiSet:
        return MultiSet(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __lt__(self, other: MultiSet):
        return self.constituents() < other.constituents()

    def monomial(self, labels: Sequence[str] | None = None) -> str:
        if not self.cardinality:
            return "1"
        parts = []
        for i, e in enumerate(self.exponents):
            if e:
                name = labels[i] if labels else f"v{i + 1}"
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def multisets_on(face: Face, j: int, m: int) -> list[MultiSet]:
    """Multisets of cardinality ``j`` supported inside ``face`` (lexicographic)."""
    from itertools import combinations_with_replacement
    return [MultiSet.from_vertices(m, c) for c in combinations_with_replacement(face, j)]


class SimplicialComplex:
    """A down-closed family of faces on labelled, ordered vertices.

    The completely empty complex (not even the empty face) is allowed; it is
    the boundary of the empty face.
    """

    __slots__ = ("labels", "faces", "facets", "_face_set", "_index")

    def __init__(self, labels: Sequence[str], faces: Iterable[Face]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be distinct")
        if len(labels) > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices are supported")
        m = len(labels)
        fs = set()
        for f in faces:
            f = tuple(f)
            if list(f) != sorted(set(f)):
                raise ValueError(f"face {f} is not strictly increasing")
            if f and not (0 <= f[0] and f[-1] < m):
                raise ValueError(f"face {f} uses unknown vertices")
            fs.add(f)
        for f in fs:
            for k in range(len(f)):
                if f[:k] + f[k + 1:] not in fs:
                    raise ValueError(f"faces are not down-closed at {f}")
        self.labels = labels
        self.faces = tuple(sorted(fs))
        self._face_set = frozenset(fs)
        self._index = {f: i for i, f in enumerate(self.faces)}
        self.facets = tuple(f for f in self.faces if not any(
            tuple(sorted(f + (v,))) in fs for v in range(m) if v not in f))

    # -- basics -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.labels)

    def __contains__(self, face) -> bool:
        return tuple(face) in self._face_set

    def __len__(self):
        return len(self.faces)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.labels == other.labels and self._face_set == other._face_set

    def __hash__(self):
        return hash((self.labels, self._face_set))

    def __repr__(self):
        return f"SimplicialComplex({list(self.labels)}, facets={self.facet_labels()})"

    def index(self, face: Face) -> int:
        return self._index[face]

    def face_labels(self, face: Face) -> list[str]:
        return [self.labels[i] for i in face]

    def facet_labels(self) -> list[list[str]]:
        return [self.face_labels(f) for f in self.facets]

    def face_from_labels(self, labels: Iterable[str]) -> Face:
        pos = {x: i for i, x in enumerate(self.labels)}
        try:
            return tuple(sorted(pos[str(x)] for x in labels))
        except KeyError as e:
            raise ValueError(f"unknown vertex label {e.args[0]!r}") from None

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    def is_empty(self) -> bool:
        return not self.faces

    def f_vector(self) -> list[int]:
        """Number of faces of each cardinality 0, 1, ..., dim+1."""
        out = [0] * (self.dim + 2)
        for f in self.faces:
            out[len(f)] += 1
        return out

    def strict_supersets(self, face: Face) -> list[Face]:
        s = set(face)
        return [g for g in self.faces if len(g) > len(face) and s.issubset(g)]

    def proper_subfaces(self, face: Face) -> list[Face]:
        return [g for g in subsets(face) if g != face]

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return self.labels == other.labels and self._face_set <= other._face_set


def from_facets(labels: Sequence[str], facets: Iterable[Iterable[str]]) -> SimplicialComplex:
    """Down-closure of the given facets (label lists); always contains the empty face."""
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise ValueError("vertex labels must be distinct")
    pos = {x: i for i, x in enumerate(labels)}
    faces = {()}
    for facet in facets:
        facet = [str(x) for x in facet]
        idx = []
        for x in facet:
            if x not in pos:
                raise ValueError(f"unknown vertex label {x!r}")
            idx.append(pos[x])
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate vertex in facet {facet}")
        faces.update(subsets(tuple(sorted(idx))))
    return SimplicialComplex(labels, faces)


def simplex(labels: Sequence[str]) -> SimplicialComplex:
    return from_facets(labels, [list(labels)])


def link(k: SimplicialComplex, s: Face) -> SimplicialComplex:
    """Complex of all tau minus s for faces tau containing s."""
    s = tuple(s)
    if s not in k:
        raise ValueError(f"{s} is not a face")
    ss = set(s)
    faces = {tuple(v for v in t if v not in ss) for t in k.faces if ss.issubset(t)}
    return SimplicialComplex(k.labels, faces)


def boundary_of_face(s: Face, labels: Sequence[str] | None = None) -> SimplicialComplex:
    """All proper subsets of ``s``; empty when ``s`` is the empty face."""
    s = tuple(s)
    if labels is None:
        labels = [str(i + 1) for i in range(max(s, default=-1) + 1)]
    return SimplicialComplex(labels, [f for f in subsets(s) if f != s])


def delete_maximal(k: SimplicialComplex, mu: Face) -> SimplicialComplex:
    mu = tuple(mu)
    if mu not in k:
        raise ValueError(f"{mu} is not a face")
    if mu not in k.facets:
        raise ValueError(f"{mu} is not a maximal face")
    return SimplicialComplex(k.labels, [f for f in k.faces if f != mu])


def minimal_nonfaces(k: SimplicialComplex) -> list[Face]:
    """Inclusion-minimal vertex subsets that are not faces, lexicographic."""
    if k.is_empty():
        return [()]
    out = []
    for size in range(1, k.m + 1):
        for c in combinations(range(k.m), size):
            if c in k:
                continue
            if all(c[:i] + c[i + 1:] in k for i in range(size)):
                out.append(c)
    return sorted(out)


def flags(k: SimplicialComplex, n: int, last_in: Iterable[Face] | None = None) -> list[tuple]:
    """Chains sigma_0 > sigma_1 > ... > sigma_n of distinct faces.

    ``last_in`` restricts the final (smallest) face.  Sorted lexicographically.
    """
    if n < 0:
        raise ValueError("flag length must be nonnegative")
    base = k.faces if last_in is None else sorted(last_in)
    level = [(f,) for f in base]
    up = _strict_up(k)
    for _ in range(n):
        level = [(g,) + fl for fl in level for g in up[fl[0]]]
    return sorted(level)


def weak_flags(k: SimplicialComplex, n: int, last_in: Iterable[Face] | None = None) -> list[tuple]:
    """Chains sigma_0 >= ... >= sigma_n, repetitions allowed (unnormalized)."""
    base = k.faces if last_in is None else sorted(last_in)
    level = [(f,) for f in base]
    up = _strict_up(k)
    for _ in range(n):
        level = [(g,) + fl for fl in level for g in [fl[0]] + up[fl[0]]]
    return sorted(level)


_UP_CACHE: dict = {}


def _strict_up(k: SimplicialComplex) -> dict:
    key = (k.labels, k._face_set)
    up = _UP_CACHE.get(key)
    if up is None:
        up = {f: k.strict_supersets(f) for f in k.faces}
        if len(_UP_CACHE) > 4096:
            _UP_CACHE.clear()
        _UP_CACHE[key] = up
    return up


def all_complexes(m: int, labels: Sequence[str] | None = None) -> list[SimplicialComplex]:
    """Every down-closed family on ``m`` labelled vertices that contains the empty face."""
    if labels is None:
        labels = [str(i + 1) for i in range(m)]
    nonempty = [c for size in range(1, m + 1) for c in combinations(range(m), size)]
    out = []

    def grow(chosen: set, idx: int):
        if idx == len(nonempty):
            out.append(SimplicialComplex(labels, chosen | {()}))
            return
        f = nonempty[idx]
        grow(chosen, idx + 1)
        if all(f[:i] + f[i + 1:] in chosen or len(f) == 1 for i in range(len(f))):
            chosen.add(f)
            grow(chosen, idx + 1)
            chosen.discard(f)

    grow(set(), 0)
    return sorted(out, key=lambda c: (len(c.faces), c.faces))
