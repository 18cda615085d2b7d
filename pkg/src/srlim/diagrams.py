"""Contravariant diagrams of based free modules over the face poset.

A :class:`FaceDiagram` assigns a based free module to every face and a
matrix to every strict inclusion ``tau > sigma`` (the restriction from
``tau`` down to ``sigma``).  Matrices are stored for all comparable pairs
whose ends are both nonzero, so functoriality and the twin identities are
direct matrix identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .checks import CheckResult
from .linalg import (
    ZZ,
    CoefficientDomain,
    ExactMatrix,
    ModuleSummary,
    is_surjective_onto,
    kernel_basis,
    solve,
)
from .simplicial import (
    Face,
    SimplicialComplex,
    delete_maximal,
    multisets_on,
    subsets,
)

Pair = tuple  # (tau, sigma) with sigma a proper subface of tau


class FaceDiagram:
    """A functor cat^op(K) -> free R-modules with chosen bases."""

    __slots__ = ("complex", "domain", "bases", "_maps")

    def __init__(self, complex: SimplicialComplex, domain: CoefficientDomain,
                 bases: Mapping[Face, Sequence[Hashable]],
                 maps: Mapping[Pair, ExactMatrix]):
        self.complex = complex
        self.domain = domain
        self.bases = {f: tuple(bases.get(f, ())) for f in complex.faces}
        extra = set(bases) - set(complex.faces)
        if extra:
            raise ValueError(f"bases given on non-faces {sorted(extra)}")
        kept = {}
        for (tau, sigma), mat in maps.items():
            if tau not in complex or sigma not in complex or not (set(sigma) < set(tau)):
                raise ValueError(f"({tau}, {sigma}) is not a strict inclusion of faces")
            if mat.domain != domain:
                mat = mat.over(domain)
            if mat.shape != (self.dim(sigma), self.dim(tau)):
                raise ValueError(f"map {tau}->{sigma} has shape {mat.shape}, "
                                 f"expected {(self.dim(sigma), self.dim(tau))}")
            if mat.nrows and mat.ncols:
                kept[(tau, sigma)] = mat
        self._maps = kept

    def dim(self, face: Face) -> int:
        return len(self.bases[face])

    def structure_map(self, tau: Face, sigma: Face) -> ExactMatrix:
        """The matrix of D(tau > sigma) from basis(tau) to basis(sigma)."""
        if tau == sigma:
            return ExactMatrix.identity(self.dim(tau), self.domain)
        m = self._maps.get((tau, sigma))
        if m is not None:
            return m
        if not set(sigma) < set(tau):
            raise ValueError(f"{sigma} is not a proper subface of {tau}")
        return ExactMatrix.zeros(self.dim(sigma), self.dim(tau), self.domain)

    def stored_maps(self) -> dict:
        return dict(self._maps)

    def support(self) -> list[Face]:
        return [f for f in self.complex.faces if self.bases[f]]

    def restrict(self, sub: SimplicialComplex) -> FaceDiagram:
        """Restriction to a subcomplex on the same vertex set."""
        if not sub.is_subcomplex_of(self.complex):
            raise ValueError("not a subcomplex")
        return FaceDiagram(sub, self.domain, {f: self.bases[f] for f in sub.faces},
                           {p: m for p, m in self._maps.items() if p[0] in sub and p[1] in sub})

    def restrict_to_boundary(self, face: Face) -> FaceDiagram:
        return self.restrict(SimplicialComplex(self.complex.labels,
                                               [f for f in subsets(face) if f != face]))

    def replace_map(self, tau: Face, sigma: Face, mat: ExactMatrix) -> FaceDiagram:
        maps = dict(self._maps)
        maps[(tau, sigma)] = mat
        return FaceDiagram(self.complex, self.domain, self.bases, maps)

    def over(self, domain: CoefficientDomain) -> FaceDiagram:
        return FaceDiagram(self.complex, domain, self.bases,
                           {p: m.over(domain) for p, m in self._maps.items()})

    # -- ambient product ------------------------------------------------

    def ambient(self) -> list[tuple[Face, Hashable]]:
        """Coordinates of the product of all values, faces in lexicographic order."""
        return [(f, b) for f in self.complex.faces for b in self.bases[f]]

    def offsets(self) -> dict[Face, int]:
        out, off = {}, 0
        for f in self.complex.faces:
            out[f] = off
            off += self.dim(f)
        return out

    # -- decomposition into summands ---------------------------------------

    def components(self) -> list[tuple[FaceDiagram, dict[Face, list[int]]]]:
        """Split into direct summands along connected basis elements.

        Two basis elements are connected when some structure map has a
        nonzero entry between them; structure maps never mix components, so
        the diagram is the direct sum of the returned subdiagrams.  Each
        summand comes with the original basis indices it keeps per face.
        """
        nodes = [(f, i) for f in self.complex.faces for i in range(self.dim(f))]
        parent = {n: n for n in nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (tau, sigma), mat in self._maps.items():
            for r in range(mat.nrows):
                for c in mat.row_dict(r):
                    a, b = find((sigma, r)), find((tau, c))
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        groups: dict = {}
        for n in nodes:
            groups.setdefault(find(n), []).append(n)
        out = []
        for root in sorted(groups):
            keep: dict[Face, list[int]] = {}
            for f, i in groups[root]:
                keep.setdefault(f, []).append(i)
            bases = {f: [self.bases[f][i] for i in idx] for f, idx in keep.items()}
            maps = {}
            for (tau, sigma), mat in self._maps.items():
                if tau in keep and sigma in keep:
                    sub = mat.select_rows(keep[sigma]).select_columns(keep[tau])
                    if not sub.is_zero():
                        maps[(tau, sigma)] = sub
            out.append((FaceDiagram(self.complex, self.domain, bases, maps), keep))
        return out

    def content_key(self) -> tuple:
        """Hashable description of the diagram up to basis labels."""
        return (self.domain, self.complex.labels, self.complex.faces,
                tuple((f, self.dim(f)) for f in self.complex.faces if self.dim(f)),
                tuple(sorted((p, m.key()) for p, m in self._maps.items())))


def constant_diagram(k: SimplicialComplex, domain: CoefficientDomain, rank: int = 1) -> FaceDiagram:
    bases = {f: tuple(range(rank)) for f in k.faces}
    ident = ExactMatrix.identity(rank, domain)
    maps = {(t, s): ident for t in k.faces for s in subsets(t) if s != t}
    return FaceDiagram(k, domain, bases, maps)


def concentrated_diagram(k: SimplicialComplex, face: Face, rank: int,
                         domain: CoefficientDomain) -> FaceDiagram:
    """R^rank at one face and 0 elsewhere (atomic when the face is maximal)."""
    if face not in k:
        raise ValueError(f"{face} is not a face")
    return FaceDiagram(k, domain, {face: tuple(range(rank))}, {})


def zero_diagram(k: SimplicialComplex, domain: CoefficientDomain) -> FaceDiagram:
    return FaceDiagram(k, domain, {}, {})


# ---------------------------------------------------------------------------
# Twin pairs


class TwinPair:
    """A contravariant diagram together with its covariant partner.

    ``co[(sigma, tau)]`` is the matrix of the inclusion sigma < tau, from
    basis(sigma) to basis(tau).
    """

    __slots__ = ("contra", "_co")

    def __init__(self, contra: FaceDiagram, co: Mapping[Pair, ExactMatrix]):
        self.contra = contra
        kept = {}
        for (sigma, tau), mat in co.items():
            if mat.domain != contra.domain:
                mat = mat.over(contra.domain)
            if mat.shape != (contra.dim(tau), contra.dim(sigma)):
                raise ValueError(f"inclusion {sigma}->{tau} has shape {mat.shape}")
            if mat.nrows and mat.ncols:
                kept[(sigma, tau)] = mat
        self._co = kept

    @property
    def complex(self) -> SimplicialComplex:
        return self.contra.complex

    @property
    def domain(self) -> CoefficientDomain:
        return self.contra.domain

    def co_map(self, sigma: Face, tau: Face) -> ExactMatrix:
        d = self.contra
        if sigma == tau:
            return ExactMatrix.identity(d.dim(tau), d.domain)
        m = self._co.get((sigma, tau))
        if m is not None:
            return m
        if not set(sigma) < set(tau):
            raise ValueError(f"{sigma} is not a proper subface of {tau}")
        return ExactMatrix.zeros(d.dim(tau), d.dim(sigma), d.domain)

    def replace_co_map(self, sigma: Face, tau: Face, mat: ExactMatrix) -> TwinPair:
        co = dict(self._co)
        co[(sigma, tau)] = mat
        return TwinPair(self.contra, co)


def exp_cohomology_diagram(k: SimplicialComplex, j: int, domain: CoefficientDomain) -> TwinPair:
    """The degree-2j cohomology diagram of the exponential twins B^K.

    At a face sigma the basis is the monomials of degree j supported in
    sigma; restriction keeps monomials supported in the smaller face and
    kills the rest, and the partner map is the inclusion of bases.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    m = k.m
    bases = {f: tuple(multisets_on(f, j, m)) for f in k.faces}
    pos = {f: {b: i for i, b in enumerate(bs)} for f, bs in bases.items()}
    maps, co = {}, {}
    for tau in k.faces:
        for sigma in subsets(tau):
            if sigma == tau or not bases[sigma]:
                continue
            rows = [dict() for _ in bases[sigma]]
            for c, mono in enumerate(bases[tau]):
                r = pos[sigma].get(mono)
                if r is not None:
                    rows[r][c] = 1
            proj = ExactMatrix(len(bases[sigma]), len(bases[tau]), domain, rows)
            maps[(tau, sigma)] = proj
            co[(sigma, tau)] = proj.transpose()
    return TwinPair(FaceDiagram(k, domain, bases, maps), co)


# ---------------------------------------------------------------------------
# Validation


def validate_functoriality(d: FaceDiagram) -> CheckResult:
    """Check D(rho > sigma) D(tau > rho) == D(tau > sigma) along every chain."""
    k = d.complex
    for tau in k.faces:
        subs = [s for s in subsets(tau) if s != tau]
        for rho in subs:
            for sigma in subsets(rho):
                if sigma == rho:
                    continue
                if not (d.dim(sigma) and d.dim(tau)):
                    continue
                lhs = d.structure_map(rho, sigma) @ d.structure_map(tau, rho)
                if lhs != d.structure_map(tau, sigma):
                    return CheckResult.failed((tau, rho, sigma), "composite mismatch")
    return CheckResult.passed()


def validate_twin(t: TwinPair) -> CheckResult:
    """Retraction identities and every pullback-square identity.

    For faces sigma, sigma' of tau:
    D(tau > sigma') D_*(sigma < tau) == D_*(sigma^sigma' < sigma') D(sigma > sigma^sigma').
    """
    d = t.contra
    k = d.complex
    for tau in k.faces:
        subs = subsets(tau)
        for sigma in subs:
            if sigma != tau:
                lhs = d.structure_map(tau, sigma) @ t.co_map(sigma, tau)
                if lhs != ExactMatrix.identity(d.dim(sigma), d.domain):
                    return CheckResult.failed((tau, sigma), "retraction identity fails")
        for sigma in subs:
            if not d.dim(sigma):
                continue
            inc = t.co_map(sigma, tau)
            for sigma2 in subs:
                meet = tuple(v for v in sigma if v in sigma2)
                lhs = d.structure_map(tau, sigma2) @ inc
                rhs = t.co_map(meet, sigma2) @ d.structure_map(sigma, meet)
                if lhs != rhs:
                    return CheckResult.failed((tau, sigma, sigma2), "pullback square fails")
    return CheckResult.passed()


# ---------------------------------------------------------------------------
# Limits


@dataclass(frozen=True)
class LimitModule:
    """The limit as a submodule of the product of all values.

    Over Z the columns of ``basis`` form a basis of the limit lattice.
    """

    ambient: tuple
    offsets: dict
    basis: ExactMatrix

    @property
    def rank(self) -> int:
        return self.basis.ncols

    def summary(self) -> ModuleSummary:
        return ModuleSummary(self.rank)

    def block(self, face: Face, dim: int) -> ExactMatrix:
        """Rows of the basis belonging to ``face``: the limit projection."""
        off = self.offsets[face]
        return self.basis.select_rows(range(off, off + dim))

    def family(self, column: Sequence, faces: Sequence[Face], dims: Mapping[Face, int]) -> dict:
        """Split an ambient vector into per-face components."""
        return {f: tuple(column[self.offsets[f]:self.offsets[f] + dims[f]]) for f in faces}


def limit_equations(d: FaceDiagram) -> ExactMatrix:
    """The map delta(u)(tau > sigma) = u(sigma) - D(tau > sigma) u(tau).

    Rows run over pairs tau > sigma with D(sigma) nonzero (lexicographic in
    (tau, sigma)), columns over the ambient product.
    """
    k = d.complex
    off = d.offsets()
    rows = []
    for tau in k.faces:
        for sigma in subsets(tau):
            if sigma == tau or not d.dim(sigma):
                continue
            mat = d.structure_map(tau, sigma)
            for r in range(d.dim(sigma)):
                row = {off[sigma] + r: 1}
                for c, v in mat.row_dict(r).items():
                    row[off[tau] + c] = -v
                rows.append(row)
    ncols = sum(d.dim(f) for f in k.faces)
    return ExactMatrix(len(rows), ncols, d.domain, rows)


def _limit_direct(d: FaceDiagram) -> ExactMatrix:
    return kernel_basis(limit_equations(d))


def limit(d: FaceDiagram, split: bool = True) -> LimitModule:
    """Compatible families, with an explicit (lattice) basis.

    With ``split`` the computation runs summand by summand (see
    :meth:`FaceDiagram.components`), which gives the same module with a
    basis adapted to the decomposition.
    """
    off = d.offsets()
    ambient = tuple(d.ambient())
    n = len(ambient)
    if not split:
        return LimitModule(ambient, off, _limit_direct(d))
    cols: list[dict] = []
    for comp, keep in d.components():
        kb = _limit_direct(comp)
        if not kb.ncols:
            continue
        coff = comp.offsets()
        remap = {}
        for f, idx in keep.items():
            for local, orig in enumerate(idx):
                remap[coff[f] + local] = off[f] + orig
        for col in kb.columns():
            cols.append({remap[i]: v for i, v in enumerate(col) if v})
    rows = [dict() for _ in range(n)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return LimitModule(ambient, off, ExactMatrix(n, len(cols), d.domain, rows))


def cone_to_limit(d: FaceDiagram, face: Face, lim: LimitModule, sub: FaceDiagram) -> ExactMatrix | None:
    """Coordinates, in the limit basis over the boundary, of D(face) -> lim D|boundary."""
    blocks = [d.structure_map(face, s) for s in sub.complex.faces]
    rows: list[dict] = []
    for b in blocks:
        rows.extend(b.row_dicts())
    total = ExactMatrix(len(rows), d.dim(face), d.domain, rows)
    return solve(lim.basis, total)


def is_fat(d: FaceDiagram) -> CheckResult:
    """Check that D(sigma) -> lim D|boundary(sigma) is onto for every face."""
    for sigma in d.complex.faces:
        if not sigma:
            continue  # the limit over the empty diagram is 0
        sub = d.restrict_to_boundary(sigma)
        lim = limit(sub)
        if not lim.rank:
            continue
        coords = cone_to_limit(d, sigma, lim, sub)
        if coords is None:
            return CheckResult.failed(sigma, "structure maps do not land in the limit")
        if not is_surjective_onto(coords):
            return CheckResult.failed(sigma, "value does not surject onto boundary limit")
    return CheckResult.passed()


def is_compatible(d: FaceDiagram, u: Mapping[Face, Sequence], faces: Sequence[Face]) -> bool:
    fs = set(faces)
    for tau in faces:
        for sigma in subsets(tau):
            if sigma == tau or sigma not in fs:
                continue
            if d.structure_map(tau, sigma).apply(tuple(u[tau])) != tuple(
                    d.domain.normalize(x) for x in u[sigma]):
                return False
    return True


def fat_splitting(t: TwinPair, rho: Face, u: Mapping[Face, Sequence]) -> tuple:
    """Lift a compatible family on the boundary of ``rho`` to D(rho).

    Uses the alternating sum of the partner inclusions,
    u(rho) = sum over sigma < rho of (-1)^(|rho - sigma| + 1) D_*(sigma < rho) u(sigma).
    """
    rho = tuple(rho)
    d = t.contra
    if not rho:
        raise ValueError("the empty face has no boundary to split over")
    if rho not in d.complex:
        raise ValueError(f"{rho} is not a face")
    below = [s for s in subsets(rho) if s != rho]
    missing = [s for s in below if s not in u]
    if missing:
        raise ValueError(f"family is missing faces {missing}")
    for s in below:
        if len(u[s]) != d.dim(s):
            raise ValueError(f"component at {s} has the wrong length")
    if not is_compatible(d, u, below):
        raise ValueError("family is not compatible")
    dom = d.domain
    acc = [0] * d.dim(rho)
    for s in below:
        sign = 1 if (len(rho) - len(s)) % 2 == 1 else -1
        img = t.co_map(s, rho).apply(tuple(dom.normalize(x) for x in u[s]))
        for i, v in enumerate(img):
            acc[i] += sign * v
    return tuple(dom.normalize(x) for x in acc)


def right_kan_extension(dJ: FaceDiagram, k: SimplicialComplex, mu: Face) -> FaceDiagram:
    """Extend a diagram on K minus the maximal face mu back to K.

    The value at mu is the limit over the boundary of mu, with the limit
    projections as structure maps; everything else is unchanged.
    """
    mu = tuple(mu)
    if dJ.complex != delete_maximal(k, mu):
        raise ValueError("diagram does not live on K with mu deleted")
    sub = dJ.restrict_to_boundary(mu)
    lim = limit(sub)
    bases = dict(dJ.bases)
    bases[mu] = tuple(("lim", i) for i in range(lim.rank))
    maps = dJ.stored_maps()
    for sigma in sub.complex.faces:
        if dJ.dim(sigma):
            maps[(mu, sigma)] = lim.block(sigma, dJ.dim(sigma))
    return FaceDiagram(k, dJ.domain, bases, maps)


# ---------------------------------------------------------------------------
# Random diagrams


def random_functorial_diagram(k: SimplicialComplex, domain: CoefficientDomain,
                              rng: random.Random, max_rank: int = 2,
                              fat: bool = False, entry_bound: int = 2) -> FaceDiagram:
    """A random functorial diagram, built face by face as cones over boundary limits.

    Any map from D(sigma) into lim D|boundary(sigma) extends the diagram
    functorially; with ``fat`` the map is chosen onto.  Construction runs over
    Z so the result is functorial (and fat) over every domain.
    """
    def rnd():
        return rng.randint(-entry_bound, entry_bound)

    bases: dict = {}
    maps: dict = {}
    for sigma in sorted(k.faces, key=lambda f: (len(f), f)):
        sub_faces = [f for f in subsets(sigma) if f != sigma]
        sub = FaceDiagram(SimplicialComplex(k.labels, sub_faces), ZZ,
                          {f: bases[f] for f in sub_faces},
                          {p: m for p, m in maps.items() if p[0] in sub_faces and p[1] in sub_faces})
        lim = limit(sub) if sub_faces else None
        lrank = lim.rank if lim else 0
        if fat:
            r = lrank + rng.randint(0, 1 if lrank else max_rank)
            cone = [[int(i == j) if j < lrank else rnd() for j in range(r)] for i in range(lrank)]
        else:
            r = rng.randint(0, max_rank)
            cone = [[rnd() for _ in range(r)] for _ in range(lrank)]
        bases[sigma] = tuple(range(r))
        if not (r and lrank):
            continue
        cm = ExactMatrix.from_rows(cone, ZZ, ncols=r)
        for s in sub_faces:
            if bases[s]:
                m = lim.block(s, len(bases[s])) @ cm
                if not m.is_zero():
                    maps[(sigma, s)] = m
    return FaceDiagram(k, ZZ, bases, maps).over(domain)


def random_compatible_family(lim: LimitModule, faces: Sequence[Face], dims: Mapping[Face, int],
                             rng: random.Random, bound: int = 3) -> dict:
    coeffs = [rng.randint(-bound, bound) for _ in range(lim.rank)]
    vec = lim.basis.apply(coeffs) if lim.rank else (0,) * len(lim.ambient)
    return lim.family(vec, faces, dims)
