"""Complete-intersection complexes and their minimal Sullivan models over Q.

A complex L is a complete intersection (CI) when it is the full simplex on V
with every face containing one of the pairwise-disjoint sets lambda(1..t)
removed.  Its face ring is then S(V) modulo the regular sequence
v_lambda(1), ..., v_lambda(t), and the Koszul algebra
S_Q(V) (x) Lambda(w(1..t)), dw(k) = v_lambda(k), is its minimal model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb, factorial
from typing import Sequence

from .checks import CheckResult
from .linalg import QQ, ExactMatrix, cohomology_at, rank, solve
from .simplicial import Face, SimplicialComplex, minimal_nonfaces
from .stanley_reisner import hilbert_function

Poly = dict  # exponent tuple over the even generators -> Fraction coefficient


# ---------------------------------------------------------------------------
# Detection


@dataclass(frozen=True)
class CIPresentation:
    complex: SimplicialComplex
    lambdas: tuple[Face, ...]

    def __post_init__(self):
        seen: set = set()
        for lam in self.lambdas:
            if not lam:
                raise ValueError("each lambda must be nonempty")
            if seen & set(lam):
                raise ValueError("lambdas must be pairwise disjoint")
            seen |= set(lam)
        if reconstruct(self.complex.labels, self.lambdas) != self.complex:
            raise ValueError("complex is not the simplex minus the lambda stars")

    @property
    def t(self) -> int:
        return len(self.lambdas)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(lam) for lam in self.lambdas)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def m(self) -> int:
        return self.complex.m

    def lambda_labels(self) -> list[list[str]]:
        return [self.complex.face_labels(lam) for lam in self.lambdas]

    def to_json(self) -> dict:
        return {"ci": True, "lambdas": self.lambda_labels(), "sizes": list(self.sizes),
                "t": self.t, "n": self.n, "m": self.m}


@dataclass(frozen=True)
class NotCI:
    """Witness that a complex is not a complete intersection."""

    witness: tuple
    reason: str

    def __bool__(self):
        return False

    def to_json(self, k: SimplicialComplex) -> dict:
        return {"ci": False, "reason": self.reason,
                "witness": [k.face_labels(f) for f in self.witness]}


def reconstruct(labels: Sequence[str], lambdas: Sequence[Face]) -> SimplicialComplex:
    """The simplex on ``labels`` minus every face containing some lambda."""
    m = len(labels)
    lams = [set(lam) for lam in lambdas]
    faces = [c for s in range(m + 1) for c in combinations(range(m), s)
             if not any(lam <= set(c) for lam in lams)]
    return SimplicialComplex(labels, faces)


def ci_detect(k: SimplicialComplex) -> CIPresentation | NotCI:
    """Presentation with lambda = the minimal non-faces, or a ``NotCI`` witness."""
    nonfaces = minimal_nonfaces(k)
    if any(not f for f in nonfaces):
        return NotCI((), "the complex has no faces")
    for a, b in combinations(nonfaces, 2):
        if set(a) & set(b):
            return NotCI((a, b), "minimal non-faces overlap")
    if reconstruct(k.labels, nonfaces) != k:
        return NotCI(tuple(nonfaces), "reconstruction differs from the input")
    return CIPresentation(k, tuple(nonfaces))


# ---------------------------------------------------------------------------
# Sullivan models


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def parity(self) -> str:
        return "odd" if self.degree % 2 else "even"


def _poly_str(poly: Poly, names: Sequence[str]) -> str:
    if not poly:
        return "0"
    terms = []
    for exps, c in sorted(poly.items(), reverse=True):
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append(f"-{mono}")
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


@dataclass
class SullivanModel:
    """Free graded-commutative algebra on even generators of degree 2 and odd
    generators whose differentials are polynomials in the even ones."""

    even: list[Generator]
    odd: list[Generator]
    differential: dict = field(default_factory=dict)  # odd name -> Poly

    @property
    def generators(self) -> list[tuple[str, int, str]]:
        return [(g.name, g.degree, g.parity) for g in self.even + self.odd]

    def d(self, name: str) -> Poly:
        if any(g.name == name for g in self.even):
            return {}
        return dict(self.differential.get(name, {}))

    def check_d_squared(self) -> CheckResult:
        """d^2 = 0: evens are cycles and each dw is a homogeneous polynomial of degree |w|+1."""
        m = len(self.even)
        for g in self.even:
            if g.degree != 2:
                return CheckResult.failed(g.name, "even generators must have degree 2")
            if self.differential.get(g.name):
                return CheckResult.failed(g.name, "even generator with nonzero differential")
        for g in self.odd:
            if g.degree % 2 != 1:
                return CheckResult.failed(g.name, "odd generator of even degree")
            for exps, c in self.differential.get(g.name, {}).items():
                if len(exps) != m or not c:
                    return CheckResult.failed(g.name, "malformed differential")
                if 2 * sum(exps) != g.degree + 1:
                    return CheckResult.failed(g.name, "differential has the wrong degree")
        # d(dw) = 0 because dw lies in the subalgebra of cycles generated by the evens
        return CheckResult.passed()

    def is_minimal(self) -> bool:
        """Differentials are decomposable (no linear terms)."""
        return all(sum(e) >= 2 for p in self.differential.values() for e in p)

    def with_differential(self, name: str, poly: Poly) -> SullivanModel:
        """Replace dw for an odd generator; its degree follows a homogeneous ``poly``."""
        degs = {sum(e) for e in poly}
        odd = list(self.odd)
        for i, g in enumerate(odd):
            if g.name == name and len(degs) == 1:
                odd[i] = Generator(name, 2 * degs.pop() - 1)
        diff = dict(self.differential)
        diff[name] = dict(poly)
        return SullivanModel(list(self.even), odd, diff)

    def to_json(self) -> dict:
        names = [g.name for g in self.even]
        return {
            "generators": [{"name": n, "degree": d, "parity": p} for n, d, p in self.generators],
            "differential": {g.name: _poly_str(self.d(g.name), names) for g in self.even + self.odd},
        }


def monomial_poly(m: int, face: Face) -> Poly:
    e = [0] * m
    for v in face:
        e[v] += 1
    return {tuple(e): Fraction(1)}


def minimal_model(p: CIPresentation) -> SullivanModel:
    labels = p.complex.labels
    even = [Generator(f"v{x}", 2) for x in labels]
    odd = [Generator(f"w{k + 1}", 2 * len(lam) - 1) for k, lam in enumerate(p.lambdas)]
    diff = {g.name: monomial_poly(p.m, lam) for g, lam in zip(odd, p.lambdas)}
    return SullivanModel(even, odd, diff)


# ---------------------------------------------------------------------------
# Koszul complex


def _koszul_basis(m: int, odd_degrees: Sequence[int], degree: int) -> list[tuple]:
    """Pairs (exponents of v, subset E of odd generators) of total degree ``degree``."""
    out = []
    t = len(odd_degrees)
    for s in range(t + 1):
        for e in combinations(range(t), s):
            rest = degree - sum(odd_degrees[i] for i in e)
            if rest < 0 or rest % 2:
                continue
            for c in combinations_with_replacement(range(m), rest // 2):
                exps = [0] * m
                for v in c:
                    exps[v] += 1
                out.append((tuple(exps), e))
    return sorted(out)


def _koszul_differential(model: SullivanModel, src: list, dst: list) -> ExactMatrix:
    index = {b: i for i, b in enumerate(dst)}
    polys = [model.d(g.name) for g in model.odd]
    rows = [dict() for _ in dst]
    for col, (exps, e) in enumerate(src):
        for pos, w in enumerate(e):
            sign = -1 if pos % 2 else 1
            rest = e[:pos] + e[pos + 1:]
            for dexp, c in polys[w].items():
                r = index[(tuple(a + b for a, b in zip(exps, dexp)), rest)]
                rows[r][col] = rows[r].get(col, 0) + sign * c
    rows = [{c: v for c, v in r.items() if v} for r in rows]
    return ExactMatrix(len(dst), len(src), QQ, rows)


def koszul_cohomology(model: SullivanModel, degree_cutoff: int = 10) -> list[int]:
    """Dimensions of H^q(S_Q(V) (x) Lambda(odd), d) for q = 0..degree_cutoff."""
    m = len(model.even)
    odd_deg = [g.degree for g in model.odd]
    bases = [_koszul_basis(m, odd_deg, q) for q in range(degree_cutoff + 2)]
    ds = [_koszul_differential(model, bases[q], bases[q + 1]) for q in range(degree_cutoff + 1)]
    out = []
    for q in range(degree_cutoff + 1):
        d_in = ds[q - 1] if q else ExactMatrix.zeros(len(bases[0]), 0, QQ)
        out.append(cohomology_at(d_in, ds[q]).free_rank)
    return out


def koszul_cohomology_check(p: CIPresentation, degree_cutoff: int = 10,
                            model: SullivanModel | None = None) -> CheckResult:
    """The Koszul model has the Hilbert function of Q[L] in even degrees and nothing odd.

    ``model`` overrides the model built from ``p`` (used to corrupt the differential).
    """
    if model is None:
        model = minimal_model(p)
    sq = model.check_d_squared()
    if not sq:
        return CheckResult.failed(sq.witness, sq.detail)
    dims = koszul_cohomology(model, degree_cutoff)
    for q, dim in enumerate(dims):
        want = 0 if q % 2 else hilbert_function(p.complex, q // 2)
        if dim != want:
            return CheckResult.failed(q, f"H^{q} has dimension {dim}, expected {want}", dims=dims)
    return CheckResult.passed(dims=dims)


def hilbert_ci_identity(p: CIPresentation, cutoff: int = 10) -> CheckResult:
    """Hilb(Q[L]) (1-t)^m = prod_k (1 - t^n(k)), coefficientwise in polynomial degrees <= cutoff // 2."""
    top = cutoff // 2
    m = p.m
    lhs = [sum((-1) ** i * comb(m, i) * hilbert_function(p.complex, j - i)
               for i in range(min(j, m) + 1)) for j in range(top + 1)]
    rhs = [1] + [0] * top
    for s in p.sizes:
        nxt = list(rhs)
        for j in range(s, top + 1):
            nxt[j] -= rhs[j - s]
        rhs = nxt
    for j in range(top + 1):
        if lhs[j] != rhs[j]:
            return CheckResult.failed(2 * j, f"coefficient of t^{j}: {lhs[j]} != {rhs[j]}",
                                      lhs=lhs, rhs=rhs)
    return CheckResult.passed(lhs=lhs, rhs=rhs)


# ---------------------------------------------------------------------------
# Automorphisms


def admissible_permutations(p: CIPresentation) -> list[dict]:
    """Bijections of the lambda vertices that carry each lambda(k) onto some lambda(k')
    of the same size.  Returned as vertex -> vertex dicts, sorted."""
    out = []
    lams = p.lambdas
    by_size: dict[int, list[int]] = {}
    for k, lam in enumerate(lams):
        by_size.setdefault(len(lam), []).append(k)
    groups = sorted(by_size.values())
    # choose a block permutation within each size class, then an ordering inside each block
    block_choices = [list(permutations(g)) for g in groups]
    for choice in product(*block_choices):
        target = {}
        for g, img in zip(groups, choice):
            for k, k2 in zip(g, img):
                target[k] = k2
        inner = [list(permutations(lams[target[k]])) for k in range(len(lams))]
        for images in product(*inner):
            perm = {}
            for k, img in enumerate(images):
                for v, w in zip(lams[k], img):
                    perm[v] = w
            out.append(perm)
    return sorted(out, key=lambda d: sorted(d.items()))


def admissible_group_order(p: CIPresentation) -> int:
    order = 1
    sizes: dict[int, int] = {}
    for s in p.sizes:
        sizes[s] = sizes.get(s, 0) + 1
        order *= factorial(s)
    for count in sizes.values():
        order *= factorial(count)
    return order


@dataclass
class AutGenerator:
    kind: str  # "M", "N" or "Sigma"
    description: str
    matrix: ExactMatrix  # column j is the image of generator j (ambient vertex order)


@dataclass
class AutGeneratorSet:
    presentation: CIPresentation
    order: list[int]  # block order: non-lambda vertices, then lambda vertices
    m_block: int
    n_block: int
    permutation_constraints: list[str]
    generators: list[AutGenerator]

    def to_json(self) -> dict:
        k = self.presentation.complex
        return {
            "block_order": [k.labels[v] for v in self.order],
            "M_size": self.m_block,
            "N_shape": [self.n_block, self.m_block],
            "Sigma_size": self.n_block,
            "permutation_constraints": self.permutation_constraints,
            "admissible_permutations": admissible_group_order(self.presentation),
            "generators": [{"kind": g.kind, "description": g.description,
                            "matrix": [[str(x) for x in row] for row in g.matrix.to_rows()]}
                           for g in self.generators],
        }


def _elementary(m: int, entries: dict) -> ExactMatrix:
    rows = [{i: Fraction(1)} for i in range(m)]
    for (i, j), v in entries.items():
        if v:
            rows[i][j] = Fraction(v)
        else:
            rows[i].pop(j, None)
    return ExactMatrix(m, m, QQ, rows)


def automorphism_generators(p: CIPresentation) -> AutGeneratorSet:
    """Generators of the block group (M 0; N Sigma), each verified to be an
    automorphism of Q[L] preserving the relation ideal."""
    lam_vertices = [v for lam in p.lambdas for v in lam]
    free = [v for v in range(p.m) if v not in set(lam_vertices)]
    order = free + lam_vertices
    labels = p.complex.labels
    gens: list[AutGenerator] = []
    m = p.m
    # M block: transvections and two scalings generate GL over Q
    for a in free:
        for b in free:
            if a != b:
                gens.append(AutGenerator("M", f"v{labels[b]} -> v{labels[b]} + v{labels[a]}",
                                         _elementary(m, {(a, b): 1})))
    if free:
        a = free[0]
        for c in (2, -1):
            gens.append(AutGenerator("M", f"v{labels[a]} -> {c}*v{labels[a]}",
                                     _elementary(m, {(a, a): c})))
    # N block: add a lambda vertex to the image of a free vertex
    for a in lam_vertices:
        for b in free:
            gens.append(AutGenerator("N", f"v{labels[b]} -> v{labels[b]} + v{labels[a]}",
                                     _elementary(m, {(a, b): 1})))
    # Sigma block: adjacent transpositions inside each lambda, swaps of equal-size lambdas
    for lam in p.lambdas:
        for x, y in zip(lam, lam[1:]):
            gens.append(AutGenerator("Sigma", f"swap v{labels[x]} <-> v{labels[y]}",
                                     _permutation_matrix(m, {x: y, y: x})))
    for k1, k2 in combinations(range(p.t), 2):
        l1, l2 = p.lambdas[k1], p.lambdas[k2]
        if len(l1) == len(l2) and not any(
                len(p.lambdas[k]) == len(l1) for k in range(k1 + 1, k2)):
            perm = {**dict(zip(l1, l2)), **dict(zip(l2, l1))}
            gens.append(AutGenerator("Sigma", f"swap lambda({k1 + 1}) <-> lambda({k2 + 1})",
                                     _permutation_matrix(m, perm)))
    constraints = [
        "Sigma permutes the vertices of each lambda(k) among themselves",
        "Sigma may interchange lambda(k) and lambda(k') only when n(k) = n(k')",
        "M is any invertible matrix on the vertices outside every lambda",
        "N is arbitrary",
    ]
    out = AutGeneratorSet(p, order, len(free), len(lam_vertices), constraints, gens)
    for g in gens:
        res = verify_automorphism(p, g.matrix)
        if not res:
            raise AssertionError(f"emitted generator {g.description} failed: {res.detail}")
    return out


def _permutation_matrix(m: int, perm: dict) -> ExactMatrix:
    rows = [dict() for _ in range(m)]
    for j in range(m):
        rows[perm.get(j, j)][j] = Fraction(1)
    return ExactMatrix(m, m, QQ, rows)


def _image_of_monomial(a: ExactMatrix, face: Face) -> Poly:
    """Product of the linear forms a[:, v] for v in ``face``."""
    m = a.nrows
    cols = a.columns()
    poly: Poly = {(0,) * m: Fraction(1)}
    for v in face:
        nxt: Poly = {}
        for exps, c in poly.items():
            for i, x in enumerate(cols[v]):
                if x:
                    e = list(exps)
                    e[i] += 1
                    e = tuple(e)
                    nxt[e] = nxt.get(e, 0) + c * x
        poly = {e: c for e, c in nxt.items() if c}
    return poly


def _maps_relations(p: CIPresentation, a: ExactMatrix) -> CheckResult:
    for k, lam in enumerate(p.lambdas):
        img = _image_of_monomial(a, lam)
        targets = [k2 for k2, l2 in enumerate(p.lambdas)
                   if len(l2) == len(lam) and set(img) == set(monomial_poly(p.m, l2))]
        if len(img) != 1 or not targets:
            return CheckResult.failed(k + 1, f"v_lambda({k + 1}) is not sent to a multiple of a relation")
    return CheckResult.passed()


def verify_automorphism(p: CIPresentation, a: ExactMatrix) -> CheckResult:
    """``a`` (columns = images of the vertices) induces an automorphism of Q[L]:
    it is invertible and both it and its inverse send relations to multiples of relations."""
    if a.shape != (p.m, p.m):
        return CheckResult.failed(None, "wrong shape")
    a = a.over(QQ)
    if rank(a) != p.m:
        return CheckResult.failed(None, "matrix is singular")
    inv = solve(a, ExactMatrix.identity(p.m, QQ))
    for mat, what in ((a, "map"), (inv, "inverse")):
        res = _maps_relations(p, mat)
        if not res:
            return CheckResult.failed(res.witness, f"{what}: {res.detail}")
    return CheckResult.passed()
