"""Exact linear algebra over Q, Z and prime fields.

Matrices are stored sparsely as one ``{column: value}`` dict per row.  All
arithmetic is exact: Python integers for Z and F_p, integers or
``fractions.Fraction`` for Q.

Pivoting is deterministic everywhere: lowest row index first, then lowest
column index, with +-1 pivots preferred.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


@dataclass(frozen=True)
class CoefficientDomain:
    """One of Q, Z or F_p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Q", "Z", "F"):
            raise ValueError(f"unknown coefficient domain kind {self.kind!r}")
        if self.kind == "F":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"F_p requires a prime p, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("only prime fields carry a characteristic")

    @classmethod
    def rationals(cls) -> CoefficientDomain:
        return cls("Q")

    @classmethod
    def integers(cls) -> CoefficientDomain:
        return cls("Z")

    @classmethod
    def prime_field(cls, p: int) -> CoefficientDomain:
        return cls("F", p)

    @classmethod
    def parse(cls, text: str) -> CoefficientDomain:
        """Parse ``Q``, ``Z``, ``F2``, ``F3``, ``F<p>``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls.rationals()
        if t in ("Z", "ZZ"):
            return cls.integers()
        if t[:1] == "F" and t[1:].isdigit():
            return cls.prime_field(int(t[1:]))
        raise ValueError(f"unsupported coefficient domain {text!r}")

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.kind == "F" else self.kind

    def __str__(self):
        return self.name

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def normalize(self, x):
        """Coerce ``x`` into the canonical representative of this domain."""
        if self.kind == "F":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator
            if self.kind == "Z":
                raise ValueError(f"{x} is not an integer")
            return x
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, float) or not hasattr(x, "__index__"):
                raise TypeError(f"inexact or unsupported scalar {x!r}")
            x = int(x)
        return x

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inv(self, x):
        if self.kind == "F":
            return pow(x, -1, self.p)
        if x in (1, -1):
            return x
        if self.kind == "Z":
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        q = Fraction(1) / x
        return q.numerator if q.denominator == 1 else q


QQ = CoefficientDomain.rationals()
ZZ = CoefficientDomain.integers()
GF2 = CoefficientDomain.prime_field(2)
GF3 = CoefficientDomain.prime_field(3)


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _axpy(target: dict, f, src: dict, domain: CoefficientDomain) -> None:
    """target += f * src, dropping zeros."""
    p = domain.p
    for c, v in src.items():
        w = target.get(c, 0) + f * v
        if p is not None:
            w %= p
        else:
            w = _clean(w)
        if w:
            target[c] = w
        else:
            target.pop(c, None)


class ExactMatrix:
    """Immutable sparse matrix over a :class:`CoefficientDomain`."""

    __slots__ = ("nrows", "ncols", "domain", "_rows")

    def __init__(self, nrows: int, ncols: int, domain: CoefficientDomain,
                 rows: Iterable[dict] | None = None, _trusted: bool = False):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        self.domain = domain
        if rows is None:
            self._rows = tuple({} for _ in range(nrows))
            return
        rows = tuple(rows)
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        if _trusted:
            self._rows = rows
            return
        clean = []
        for r in rows:
            d = {}
            for c, v in r.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range for {ncols} columns")
                v = domain.normalize(v)
                if v:
                    d[c] = v
            clean.append(d)
        self._rows = tuple(clean)

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], domain: CoefficientDomain,
                  ncols: int | None = None) -> ExactMatrix:
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged row list")
        return cls(len(rows), ncols, domain,
                   ({j: v for j, v in enumerate(r) if v} for r in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], domain: CoefficientDomain,
                     nrows: int) -> ExactMatrix:
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols):
            if len(col) != nrows:
                raise ValueError("column of wrong length")
            for i, v in enumerate(col):
                if v:
                    rows[i][j] = v
        return cls(nrows, len(cols), domain, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, domain: CoefficientDomain) -> ExactMatrix:
        return cls(nrows, ncols, domain)

    @classmethod
    def identity(cls, n: int, domain: CoefficientDomain) -> ExactMatrix:
        return cls(n, n, domain, ({i: 1} for i in range(n)), _trusted=True)

    @classmethod
    def diagonal(cls, diag: Sequence, domain: CoefficientDomain) -> ExactMatrix:
        n = len(diag)
        return cls(n, n, domain, ({i: d} if d else {} for i, d in enumerate(diag)))

    # -- access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row_dict(self, i: int) -> dict:
        return dict(self._rows[i])

    def row_dicts(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, 0)

    def to_rows(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self._rows]

    def column(self, j: int) -> tuple:
        return tuple(r.get(j, 0) for r in self._rows)

    def columns(self) -> list[tuple]:
        cols = [[0] * self.nrows for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return [tuple(c) for c in cols]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.domain == other.domain
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.domain,
                     tuple(tuple(sorted(r.items())) for r in self._rows)))

    def key(self) -> tuple:
        """Hashable content fingerprint (without the domain)."""
        return (self.nrows, self.ncols,
                tuple(tuple(sorted(r.items())) for r in self._rows))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.domain}, {self.to_rows()})"

    # -- arithmetic ---------------------------------------------------

    def transpose(self) -> ExactMatrix:
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                rows[j][i] = v
        return ExactMatrix(self.ncols, self.nrows, self.domain, rows, _trusted=True)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def _check_same(self, other):
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        orows = other._rows
        out = []
        for r in self._rows:
            acc: dict = {}
            for k, v in r.items():
                _axpy(acc, v, orows[k], self.domain)
            out.append(acc)
        return ExactMatrix(self.nrows, other.ncols, self.domain, out, _trusted=True)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._rows, other._rows):
            d = dict(a)
            _axpy(d, 1, b, self.domain)
            out.append(d)
        return ExactMatrix(self.nrows, self.ncols, self.domain, out, _trusted=True)

    def __neg__(self) -> ExactMatrix:
        return self.scale(-1)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, f) -> ExactMatrix:
        f = self.domain.normalize(f)
        out = []
        for r in self._rows:
            d: dict = {}
            _axpy(d, f, r, self.domain)
            out.append(d)
        return ExactMatrix(self.nrows, self.ncols, self.domain, out, _trusted=True)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        p = self.domain.p
        for r in self._rows:
            s = sum(v * vec[j] for j, v in r.items())
            out.append(s % p if p is not None else _clean(s))
        return tuple(out)

    def select_rows(self, idx: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(len(idx), self.ncols, self.domain,
                           [dict(self._rows[i]) for i in idx], _trusted=True)

    def select_columns(self, idx: Sequence[int]) -> ExactMatrix:
        pos = {j: k for k, j in enumerate(idx)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self._rows]
        return ExactMatrix(self.nrows, len(idx), self.domain, rows, _trusted=True)

    def over(self, domain: CoefficientDomain) -> ExactMatrix:
        """Reinterpret entries in another domain (e.g. reduce mod p)."""
        return ExactMatrix(self.nrows, self.ncols, domain, self._rows)


def hstack(mats: Sequence[ExactMatrix], nrows: int, domain: CoefficientDomain) -> ExactMatrix:
    rows = [dict() for _ in range(nrows)]
    off = 0
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m._rows):
            for j, v in r.items():
                rows[i][off + j] = v
        off += m.ncols
    return ExactMatrix(nrows, off, domain, rows, _trusted=True)


def vstack(mats: Sequence[ExactMatrix], ncols: int, domain: CoefficientDomain) -> ExactMatrix:
    rows: list[dict] = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(dict(r) for r in m._rows)
    return ExactMatrix(len(rows), ncols, domain, rows, _trusted=True)


# ---------------------------------------------------------------------------
# Module summaries


@dataclass(frozen=True)
class ModuleSummary:
    """A finitely generated module: free part plus invariant factors.

    Over a field ``free_rank`` is the dimension and ``torsion`` is empty.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion {t} is not a divisibility chain")
        if any(d <= 1 for d in t):
            raise ValueError("torsion coefficients must exceed 1")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: ModuleSummary) -> ModuleSummary:
        if not other.torsion:
            return ModuleSummary(self.free_rank + other.free_rank, self.torsion)
        if not self.torsion:
            return ModuleSummary(self.free_rank + other.free_rank, other.torsion)
        diag = list(self.torsion) + list(other.torsion)
        return ModuleSummary(self.free_rank + other.free_rank,
                             tuple(d for d in _dense_invariants([[d if i == j else 0
                                   for j in range(len(diag))] for i, d in enumerate(diag)])
                                   if d != 1))

    def times(self, k: int) -> ModuleSummary:
        out = ModuleSummary()
        for _ in range(k):
            out = out + self
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"R^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# Elimination kernels


def _scaled_integer_rows(m: ExactMatrix) -> list[dict]:
    """Rows of a Q-matrix scaled to integers (row scaling preserves kernel and rank)."""
    out = []
    for r in m._rows:
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({j: int(v * den) for j, v in r.items()} if den != 1 else dict(r))
    return out


def _reduce_unit_pivots(rows: list[dict], domain: CoefficientDomain) -> tuple[int, list[dict]]:
    """Strip off unit pivots by row and column operations.

    Returns the number of unit pivots removed and the residual rows.  Over a
    field the residual is always empty, so the count is the rank.  Over Z the
    invariant factors are ``[1] * count`` followed by those of the residual.
    """
    rows = [dict(r) for r in rows]
    col_rows: dict[int, set] = defaultdict(set)
    for i, r in enumerate(rows):
        for c in r:
            col_rows[c].add(i)
    count = 0
    progress = True
    while progress:
        progress = False
        for i in range(len(rows)):
            r = rows[i]
            if not r:
                continue
            c = None
            for cc in sorted(r):
                v = r[cc]
                if v == 1 or v == -1:
                    c = cc
                    break
                if c is None and domain.is_unit(v):
                    c = cc
            if c is None:
                continue
            a_inv = domain.inv(r[c])
            for s in sorted(col_rows[c]):
                if s == i:
                    continue
                rs = rows[s]
                f = -rs[c] * a_inv
                if domain.p is not None:
                    f %= domain.p
                before = set(rs)
                _axpy(rs, f, r, domain)
                after = set(rs)
                for cc in before - after:
                    col_rows[cc].discard(s)
                for cc in after - before:
                    col_rows[cc].add(s)
            for cc in r:
                col_rows[cc].discard(i)
            rows[i] = {}
            count += 1
            progress = True
    return count, [r for r in rows if r]


def _dense_snf(a: list[list[int]], track: bool = False, ncols: int | None = None):
    """Dense Smith normal form over Z.

    Returns ``(d, U, V)`` with ``U @ a @ V`` diagonal and ``d`` the diagonal
    entries (nonnegative, each dividing the next).  ``U``/``V`` are ``None``
    unless ``track``.
    """
    A = [list(r) for r in a]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, f):  # row_dst += f * row_src
        ra, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                ra[j] += f * rs[j]
        if track:
            ua, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ua[j] += f * us[j]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in A:
            if row[src]:
                row[dst] += f * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            piv = A[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
    return diag, U, V


def _dense_invariants(a: list[list[int]]) -> list[int]:
    return _dense_snf(a)[0]


def _invariant_factors(m: ExactMatrix) -> list[int]:
    """Nonzero invariant factors of an integer matrix, ascending."""
    count, residual = _reduce_unit_pivots(list(m._rows), ZZ)
    rest: list[int] = []
    if residual:
        cols = sorted({c for r in residual for c in r})
        pos = {c: k for k, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in residual]
        for i, r in enumerate(residual):
            for c, v in r.items():
                dense[i][pos[c]] = v
        rest = _dense_invariants(dense)
    return [1] * count + rest


def _echelon(rows: list[dict], pivot_cols: int, domain: CoefficientDomain,
             integral: bool) -> list[tuple[int, int]]:
    """In-place row echelon form on columns ``< pivot_cols``.

    With ``integral`` only unimodular integer row operations are used
    (Euclidean reduction); otherwise field operations.  Columns at or beyond
    ``pivot_cols`` ride along (augmented part).  Returns ``(row, col)``
    pivots in order.
    """
    n = len(rows)
    r = 0
    pivots = []
    for c in range(pivot_cols):
        if r >= n:
            break
        cand = [i for i in range(r, n) if c in rows[i]]
        if not cand:
            continue
        if integral:
            while True:
                best = min(cand, key=lambda i: (abs(rows[i][c]), i))
                rows[r], rows[best] = rows[best], rows[r]
                if rows[r][c] < 0:
                    rows[r] = {j: -v for j, v in rows[r].items()}
                a = rows[r][c]
                cand = []
                for i in range(r + 1, n):
                    b = rows[i].get(c)
                    if b:
                        _axpy(rows[i], -(b // a), rows[r], domain)
                        if c in rows[i]:
                            cand.append(i)
                if not cand:
                    break
                cand.append(r)
        else:
            best = next((i for i in cand if rows[i][c] in (1, -1)), cand[0])
            rows[r], rows[best] = rows[best], rows[r]
            a_inv = domain.inv(rows[r][c])
            if a_inv != 1:
                d: dict = {}
                _axpy(d, a_inv, rows[r], domain)
                rows[r] = d
            for i in range(r + 1, n):
                b = rows[i].get(c)
                if b:
                    _axpy(rows[i], -b, rows[r], domain)
        pivots.append((r, c))
        r += 1
    return pivots


# ---------------------------------------------------------------------------
# Public operations


def rank(m: ExactMatrix) -> int:
    """Rank over the fraction field of the domain."""
    if m.domain.kind == "F":
        return _reduce_unit_pivots(list(m._rows), m.domain)[0]
    # Z and Q: rank over Q, computed fraction-free.
    return len(_invariant_factors(ExactMatrix(m.nrows, m.ncols, ZZ,
                                              _scaled_integer_rows(m), _trusted=True)))


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning ker(m).

    Over Z (and Q, after clearing denominators) the columns are a basis of
    the saturated kernel lattice, obtained from a unimodular reduction of
    the transpose.
    """
    n = m.ncols
    if m.domain.kind == "F":
        src = m.transpose()._rows
        integral = False
        dom = m.domain
    else:
        src = ExactMatrix(m.nrows, m.ncols, ZZ, _scaled_integer_rows(m), _trusted=True).transpose()._rows
        integral = True
        dom = ZZ
    off = m.nrows
    rows = []
    for i, r in enumerate(src):
        d = dict(r)
        d[off + i] = 1
        rows.append(d)
    pivots = _echelon(rows, off, dom, integral)
    k = len(pivots)
    basis = []
    for r in rows[k:]:
        basis.append({j - off: v for j, v in r.items()})
    basis.sort(key=lambda d: sorted(d))
    out_rows = [dict() for _ in range(n)]
    for col, vec in enumerate(basis):
        for i, v in vec.items():
            out_rows[i][col] = v
    return ExactMatrix(n, len(basis), m.domain, out_rows)


def smith_normal_form(m: ExactMatrix):
    """Smith normal form of an integer matrix.

    Returns ``(diag, (U, V))`` where ``diag`` lists the nonzero invariant
    factors ``d_1 | d_2 | ...`` and ``U``, ``V`` are unimodular with
    ``U @ m @ V`` equal to the diagonal matrix carrying ``diag``.
    """
    if m.domain != ZZ:
        raise ValueError(f"Smith normal form requires domain Z, got {m.domain}")
    d, U, V = _dense_snf(m.to_rows(), track=True, ncols=m.ncols)
    Um = ExactMatrix.from_rows(U, ZZ, ncols=m.nrows)
    Vm = ExactMatrix.from_rows(V, ZZ, ncols=m.ncols)
    return [x for x in d if x], (Um, Vm)


def invariant_factors(m: ExactMatrix) -> list[int]:
    """Nonzero invariant factors without computing transforms (sparse path)."""
    if m.domain != ZZ:
        raise ValueError(f"invariant factors require domain Z, got {m.domain}")
    return _invariant_factors(m)


def cohomology_at(d_in: ExactMatrix, d_out: ExactMatrix, check: bool = True) -> ModuleSummary:
    """ker(d_out) / im(d_in) for a composable pair with zero composite."""
    if d_in.domain != d_out.domain:
        raise ValueError("domain mismatch")
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"non-composable shapes {d_in.shape} then {d_out.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise ValueError("d_out o d_in is not zero")
    dom = d_in.domain
    n = d_in.nrows
    if dom == ZZ:
        facs = _invariant_factors(d_in)
        r_in = len(facs)
        torsion = tuple(f for f in facs if f > 1)
    else:
        r_in = rank(d_in)
        torsion = ()
    r_out = rank(d_out)
    return ModuleSummary(n - r_out - r_in, torsion)


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """Solve ``a @ x == b`` exactly; ``None`` if there is no solution.

    Free variables are set to zero.  Over Z with dependent columns the
    solution goes through the Smith normal form.
    """
    if a.domain != b.domain:
        raise ValueError("domain mismatch")
    if a.nrows != b.nrows:
        raise ValueError("row mismatch")
    dom = a.domain
    if dom == ZZ and rank(a) < a.ncols:
        return _solve_snf(a, b)
    na = a.ncols
    if dom.kind == "F":
        rows = []
        for ra, rb in zip(a._rows, b._rows):
            d = dict(ra)
            for j, v in rb.items():
                d[na + j] = v
            rows.append(d)
        pivots = _echelon(rows, na, dom, integral=False)
    else:
        aug = ExactMatrix(a.nrows, na + b.ncols, QQ,
                          [{**ra, **{na + j: v for j, v in rb.items()}}
                           for ra, rb in zip(a._rows, b._rows)], _trusted=True)
        rows = _scaled_integer_rows(aug)
        pivots = _echelon(rows, na, ZZ, integral=True)
    k = len(pivots)
    for r in rows[k:]:
        if r:
            return None
    x_rows = [dict() for _ in range(na)]
    for r_idx, c in reversed(pivots):
        row = rows[r_idx]
        piv = row[c]
        for j in range(b.ncols):
            s = row.get(na + j, 0)
            for cc, v in row.items():
                if c < cc < na:
                    xv = x_rows[cc].get(j)
                    if xv:
                        s -= v * xv
            if dom.kind == "F":
                val = (s * pow(piv, -1, dom.p)) % dom.p
            elif dom.kind == "Z":
                if s % piv:
                    return None
                val = s // piv
            else:
                val = _clean(Fraction(s) / piv)
            if val:
                x_rows[c][j] = val
    return ExactMatrix(na, b.ncols, dom, x_rows)


def _solve_snf(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    # U a V = D, so a x = b  <=>  D y = U b with x = V y
    diag, (u, v) = smith_normal_form(a)
    c = u @ b
    y_rows = [dict() for _ in range(a.ncols)]
    for i in range(a.nrows):
        for j, val in c.row_dict(i).items():
            if i >= len(diag) or val % diag[i]:
                return None
            y_rows[i][j] = val // diag[i]
    return v @ ExactMatrix(a.ncols, b.ncols, ZZ, y_rows)


def is_surjective_onto(f: ExactMatrix) -> bool:
    """Whether the map given by ``f`` (target coordinates x source) is onto."""
    if f.domain == ZZ:
        facs = _invariant_factors(f)
        return len(facs) == f.nrows and all(x == 1 for x in facs)
    return rank(f) == f.nrows
