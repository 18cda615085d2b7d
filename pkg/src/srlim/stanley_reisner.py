"""The face ring R[K]: monomial basis, products, Hilbert data, edge isomorphism.

Internally degrees are polynomial degrees j; a monomial of degree j lives in
topological degree 2j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .checks import CheckResult
from .diagrams import exp_cohomology_diagram, limit, limit_equations
from .linalg import CoefficientDomain, ExactMatrix, hstack, is_surjective_onto, rank, solve
from .simplicial import MultiSet, SimplicialComplex


def _in_algebra(k: SimplicialComplex, mono: MultiSet) -> bool:
    return len(mono.exponents) == k.m and mono.support in k


def sr_basis(k: SimplicialComplex, j: int) -> list[MultiSet]:
    """Monomials of degree j whose support is a face, in lexicographic order."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    if k.is_empty():
        return []
    out = []
    for c in combinations_with_replacement(range(k.m), j):
        mono = MultiSet.from_vertices(k.m, c)
        if mono.support in k:
            out.append(mono)
    return out


def sr_multiply(k: SimplicialComplex, m1: MultiSet, m2: MultiSet) -> MultiSet | None:
    """Product in R[K]; ``None`` stands for zero."""
    for mono in (m1, m2):
        if not _in_algebra(k, mono):
            raise ValueError(f"{mono.monomial(k.labels)} is not a basis monomial of R[K]")
    prod = m1 + m2
    return prod if prod.support in k else None


def hilbert_function(k: SimplicialComplex, j: int) -> int:
    """dim R[K]_j by the face sum: sum over faces sigma of C(j-1, |sigma|-1)."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    total = 0
    for f in k.faces:
        s = len(f)
        if s == 0:
            total += j == 0
        elif j >= s:
            total += comb(j - 1, s - 1)
    return total


def _poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _one_minus_t_power(e: int) -> list[int]:
    return [(-1) ** i * comb(e, i) for i in range(e + 1)]


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^denominator_power."""

    numerator: tuple[int, ...]
    denominator_power: int

    def coefficient(self, j: int) -> int:
        d = self.denominator_power
        if d == 0:
            return self.numerator[j] if j < len(self.numerator) else 0
        return sum(c * comb(j - i + d - 1, d - 1)
                   for i, c in enumerate(self.numerator) if i <= j)

    def expansion(self, n: int) -> list[int]:
        return [self.coefficient(j) for j in range(n + 1)]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"({num}) / (1-t)^{self.denominator_power}"


def hilbert_series(k: SimplicialComplex, verify_to: int = 10) -> HilbertSeries:
    """Reduced Hilbert series from the face numbers, checked against the face sum."""
    m = k.m
    num = [0] * (m + 1)
    for f in k.faces:
        s = len(f)
        term = [0] * s + _one_minus_t_power(m - s)
        for i, c in enumerate(term):
            num[i] += c
    num = _poly_trim(num)
    d = m
    while num and d > 0 and sum(num) == 0:
        # synthetic division by (1 - t)
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _poly_trim(q)
        d -= 1
    if not num:
        d = 0
    series = HilbertSeries(tuple(num), d)
    for j in range(verify_to + 1):
        if series.coefficient(j) != hilbert_function(k, j):
            raise RuntimeError(f"Hilbert series disagrees with face count in degree {j}")
    return series


class StanleyReisnerAlgebra:
    """R[K] = S_R(V) / (v_U : U not a face)."""

    def __init__(self, complex: SimplicialComplex, domain: CoefficientDomain):
        self.complex = complex
        self.domain = domain

    def basis(self, j: int) -> list[MultiSet]:
        return sr_basis(self.complex, j)

    def multiply(self, m1: MultiSet, m2: MultiSet) -> MultiSet | None:
        return sr_multiply(self.complex, m1, m2)

    def hilbert_function(self, j: int) -> int:
        return hilbert_function(self.complex, j)

    def hilbert_series(self, verify_to: int = 10) -> HilbertSeries:
        return hilbert_series(self.complex, verify_to)

    def __repr__(self):
        return f"StanleyReisnerAlgebra({self.complex!r}, {self.domain})"


def _edge_images(d, mons: list[MultiSet]) -> ExactMatrix:
    """Columns: the families sigma -> (projection of v_M to S(sigma))."""
    off = d.offsets()
    pos = {f: {b: i for i, b in enumerate(d.bases[f])} for f in d.complex.faces}
    nrows = sum(d.dim(f) for f in d.complex.faces)
    rows = [dict() for _ in range(nrows)]
    for c, mono in enumerate(mons):
        supp = set(mono.support)
        for f in d.complex.faces:
            if supp <= set(f):
                rows[off[f] + pos[f][mono]][c] = 1
    return ExactMatrix(nrows, len(mons), d.domain, rows)


def _componentwise_products(d1, d2, d12, x: ExactMatrix, y: ExactMatrix, pairs) -> ExactMatrix:
    """Products in each S(sigma) of the families x[:, a] and y[:, b]."""
    off1, off2, off12 = d1.offsets(), d2.offsets(), d12.offsets()
    pos12 = {f: {b: i for i, b in enumerate(d12.bases[f])} for f in d12.complex.faces}
    xc, yc = x.columns(), y.columns()
    nrows = sum(d12.dim(f) for f in d12.complex.faces)
    rows = [dict() for _ in range(nrows)]
    p = d12.domain.p
    for col, (a, b) in enumerate(pairs):
        for f in d12.complex.faces:
            xs = [(mono, xc[a][off1[f] + i]) for i, mono in enumerate(d1.bases[f]) if xc[a][off1[f] + i]]
            if not xs:
                continue
            ys = [(mono, yc[b][off2[f] + i]) for i, mono in enumerate(d2.bases[f]) if yc[b][off2[f] + i]]
            for m1, v1 in xs:
                for m2, v2 in ys:
                    r = off12[f] + pos12[f][m1 + m2]
                    v = rows[r].get(col, 0) + v1 * v2
                    if p is not None:
                        v %= p
                    if v:
                        rows[r][col] = v
                    else:
                        rows[r].pop(col, None)
    return ExactMatrix(nrows, len(pairs), d12.domain, rows)


def edge_iso_check(k: SimplicialComplex, domain: CoefficientDomain, j_max: int) -> CheckResult:
    """R[K] -> lim H^*(B^K; R), induced by projecting to each S(sigma), is a ring isomorphism.

    Degreewise: the images of the monomial basis lie in the limit and form a
    basis of it.  Multiplicatively: componentwise products, written back in
    the image basis, reproduce the structure constants of R[K].
    """
    diags, images, bases = [], [], []
    for j in range(j_max + 1):
        d = exp_cohomology_diagram(k, j, domain).contra
        mons = sr_basis(k, j)
        img = _edge_images(d, mons)
        if not (limit_equations(d) @ img).is_zero():
            return CheckResult.failed(j, "image of the face ring is not compatible")
        lim = limit(d)
        if lim.rank != len(mons):
            return CheckResult.failed(j, f"limit rank {lim.rank} != {len(mons)} monomials")
        coords = solve(lim.basis, img)
        if coords is None:
            return CheckResult.failed(j, "image does not lie in the limit lattice")
        if not is_surjective_onto(coords) or rank(coords) != len(mons):
            return CheckResult.failed(j, "edge map is not bijective")
        diags.append(d)
        images.append(img)
        bases.append(mons)

    for j12 in range(j_max + 1):
        pairs, expected = [], []
        for j1 in range(j12 // 2 + 1):
            j2 = j12 - j1
            for a, m1 in enumerate(bases[j1]):
                for b, m2 in enumerate(bases[j2]):
                    if j1 == j2 and b < a:
                        continue
                    pairs.append((j1, a, j2, b))
                    expected.append(sr_multiply(k, m1, m2))
        if not pairs:
            continue
        cols = []
        for j1 in range(j12 // 2 + 1):
            j2 = j12 - j1
            sub = [(a, b) for (x1, a, x2, b) in pairs if x1 == j1]
            if sub:
                cols.append(_componentwise_products(diags[j1], diags[j2], diags[j12],
                                                    images[j1], images[j2], sub))
        prods = hstack(cols, images[j12].nrows, domain)
        coeffs = solve(images[j12], prods)
        if coeffs is None:
            return CheckResult.failed(j12, "componentwise products leave the image")
        index = {mono: i for i, mono in enumerate(bases[j12])}
        for c, (pair, exp) in enumerate(zip(pairs, expected)):
            col = coeffs.column(c)
            want = [0] * len(bases[j12])
            if exp is not None:
                want[index[exp]] = 1
            if list(col) != want:
                j1, a, j2, b = pair
                return CheckResult.failed(
                    (bases[j1][a].monomial(k.labels), bases[j2][b].monomial(k.labels)),
                    "structure constant mismatch")
    return CheckResult.passed()
