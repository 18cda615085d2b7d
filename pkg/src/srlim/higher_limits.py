"""Higher limits lim^i of face diagrams and the Bousfield-Kan E_2 page.

lim^i D is the i-th cohomology of the cochain complex whose degree-n term is
the product of D(sigma_n) over flags sigma_0 > ... > sigma_n, with
differential sum_k (-1)^k delta^k; delta^k omits sigma_k for k <= n and the
last term applies D(sigma_n > sigma_{n+1}).  The normalized complex (distinct
faces) is the default; the unnormalized one (repetitions allowed) is kept as
an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import CheckResult
from .diagrams import FaceDiagram, exp_cohomology_diagram
from .linalg import CoefficientDomain, ExactMatrix, ModuleSummary, cohomology_at
from .simplicial import SimplicialComplex
from .stanley_reisner import hilbert_function


@dataclass
class CochainLevel:
    """Flags of one length, each carrying a copy of D(last face)."""

    n: int
    flags: list
    offsets: dict
    size: int


def _up_map(d: FaceDiagram) -> dict:
    faces = d.complex.faces
    sets = {f: set(f) for f in faces}
    return {f: [g for g in faces if len(g) > len(f) and sets[f] <= sets[g]] for f in faces}


def cochain_levels(d: FaceDiagram, n_max: int, normalized: bool = True) -> list[CochainLevel]:
    """Levels 0..n_max of the (normalized) cochain complex of ``d``."""
    up = _up_map(d)
    level = [(f,) for f in d.support()]
    out = []
    for n in range(n_max + 1):
        if n:
            if normalized:
                level = [(g,) + fl for fl in level for g in up[fl[0]]]
            else:
                level = [(g,) + fl for fl in level for g in [fl[0]] + up[fl[0]]]
        level.sort()
        offsets, off = {}, 0
        for fl in level:
            offsets[fl] = off
            off += d.dim(fl[-1])
        out.append(CochainLevel(n, level, offsets, off))
    return out


def _coboundary(d: FaceDiagram, src: CochainLevel, dst: CochainLevel) -> ExactMatrix:
    n = src.n
    rows = [dict() for _ in range(dst.size)]
    p = d.domain.p
    for fl in dst.flags:
        last = fl[-1]
        dim = d.dim(last)
        base = dst.offsets[fl]
        for k in range(n + 1):
            sign = -1 if k % 2 else 1
            col = src.offsets[fl[:k] + fl[k + 1:]]
            for r in range(dim):
                row = rows[base + r]
                row[col + r] = row.get(col + r, 0) + sign
        head = fl[:n + 1]
        col = src.offsets.get(head)
        if col is not None:
            sign = -1 if (n + 1) % 2 else 1
            mat = d.structure_map(head[-1], last)
            for r in range(dim):
                row = rows[base + r]
                for c, v in mat.row_dict(r).items():
                    row[col + c] = row.get(col + c, 0) + sign * v
    if p is not None:
        rows = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    else:
        rows = [{c: v for c, v in r.items() if v} for r in rows]
    return ExactMatrix(dst.size, src.size, d.domain, rows, _trusted=p is None)


def coboundary(d: FaceDiagram, n: int, normalized: bool = True) -> ExactMatrix:
    """Matrix of delta from degree n to degree n+1."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    levels = cochain_levels(d, n + 1, normalized)
    return _coboundary(d, levels[n], levels[n + 1])


def _direct_limits(d: FaceDiagram, i_max: int, normalized: bool) -> list[ModuleSummary]:
    levels = cochain_levels(d, i_max + 1, normalized)
    deltas = [_coboundary(d, levels[n], levels[n + 1]) for n in range(i_max + 1)]
    out = []
    for i in range(i_max + 1):
        d_in = deltas[i - 1] if i else ExactMatrix.zeros(levels[0].size, 0, d.domain)
        out.append(cohomology_at(d_in, deltas[i]))
    return out


_CACHE: dict = {}


def _summand_key(comp: FaceDiagram, i_max: int, normalized: bool) -> tuple:
    supp = comp.support()
    up = set(supp)
    for f in comp.complex.faces:
        if any(set(s) <= set(f) for s in supp):
            up.add(f)
    return (comp.domain, normalized, i_max, tuple(sorted(up)),
            tuple((f, comp.dim(f)) for f in supp),
            tuple(sorted((pr, m.key()) for pr, m in comp.stored_maps().items())))


def higher_limits(d: FaceDiagram, i_max: int, normalized: bool = True,
                  split: bool = True) -> list[ModuleSummary]:
    """[lim^0 d, ..., lim^i_max d].

    With ``split`` the complex is computed summand by summand and summands
    with identical content are computed once.
    """
    if i_max < 0:
        raise ValueError("i_max must be nonnegative")
    if not split:
        return _direct_limits(d, i_max, normalized)
    total = [ModuleSummary() for _ in range(i_max + 1)]
    for comp, _ in d.components():
        key = _summand_key(comp, i_max, normalized)
        res = _CACHE.get(key)
        if res is None:
            res = _direct_limits(comp, i_max, normalized)
            if len(_CACHE) > 100_000:
                _CACHE.clear()
            _CACHE[key] = res
        total = [a + b for a, b in zip(total, res)]
    return total


def higher_limit(d: FaceDiagram, i: int, normalized: bool = True) -> ModuleSummary:
    if i < 0:
        raise ValueError("degree must be nonnegative")
    return higher_limits(d, i, normalized)[i]


def default_i_max(k: SimplicialComplex) -> int:
    return len(k.faces)


@dataclass
class E2Table:
    """E_2^{i,q} = lim^i H^q(B^K; R); q is the topological degree."""

    i_max: int
    q_max: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, iq) -> ModuleSummary:
        return self.entries[iq]

    def column(self, i: int) -> list[ModuleSummary]:
        return [self.entries[(i, q)] for q in range(self.q_max + 1)]

    def to_json(self) -> dict:
        return {
            "i_max": self.i_max,
            "q_max": self.q_max,
            "entries": [
                {"i": i, "q": q, **self.entries[(i, q)].to_json()}
                for q in range(self.q_max + 1) for i in range(self.i_max + 1)
            ],
        }

    def format(self) -> str:
        """Plain-text grid, one row per topological degree."""
        head = "q\\i " + " ".join(f"{i:>6}" for i in range(self.i_max + 1))
        lines = [head]
        for q in range(self.q_max + 1):
            cells = []
            for i in range(self.i_max + 1):
                s = self.entries[(i, q)]
                cells.append(f"{s.free_rank if not s.torsion else str(s):>6}")
            lines.append(f"{q:>3} " + " ".join(cells))
        return "\n".join(lines)


def bk_e2_table(k: SimplicialComplex, domain: CoefficientDomain, i_max: int, j_max: int) -> E2Table:
    """Tabulate lim^i of the degree-2j cohomology diagrams; odd rows vanish."""
    if i_max < 0 or j_max < 0:
        raise ValueError("bounds must be nonnegative")
    table = E2Table(i_max, 2 * j_max)
    for j in range(j_max + 1):
        lims = higher_limits(exp_cohomology_diagram(k, j, domain).contra, i_max)
        for i in range(i_max + 1):
            table.entries[(i, 2 * j)] = lims[i]
            if j < j_max:
                table.entries[(i, 2 * j + 1)] = ModuleSummary()
    return table


def verify_sharpness(k: SimplicialComplex, domain: CoefficientDomain,
                     i_max: int, j_max: int) -> CheckResult:
    """The E_2 page is concentrated in column 0, which matches the face ring."""
    table = bk_e2_table(k, domain, i_max, j_max)
    for (i, q), s in sorted(table.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if i > 0 and not s.is_zero:
            return CheckResult.failed((i, q), f"lim^{i} in degree {q} is {s}", table=table)
        if s.torsion:
            return CheckResult.failed((i, q), f"torsion {s.torsion}", table=table)
    for j in range(j_max + 1):
        s = table.entries[(0, 2 * j)]
        expected = hilbert_function(k, j)
        if s.free_rank != expected:
            return CheckResult.failed((0, 2 * j), f"rank {s.free_rank} != Hilbert function {expected}",
                                      table=table)
    return CheckResult.passed(table=table)


def flag_count(d: FaceDiagram, n: int, normalized: bool = True) -> int:
    return len(cochain_levels(d, n, normalized)[n].flags)


def is_acyclic(d: FaceDiagram, i_max: int) -> CheckResult:
    lims = higher_limits(d, i_max)
    for i in range(1, i_max + 1):
        if not lims[i].is_zero:
            return CheckResult.failed(i, f"lim^{i} = {lims[i]}")
    return CheckResult.passed()

