"""Aggregate verification of one complex, as run by ``verify-all``."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .checks import CheckResult
from .diagrams import (
    TwinPair,
    concentrated_diagram,
    exp_cohomology_diagram,
    fat_splitting,
    is_fat,
    limit,
    random_compatible_family,
    random_functorial_diagram,
    right_kan_extension,
    validate_twin,
)
from .higher_limits import coboundary, higher_limits, verify_sharpness
from .linalg import QQ, CoefficientDomain, ModuleSummary
from .rational import ci_detect, hilbert_ci_identity, koszul_cohomology_check
from .simplicial import Face, SimplicialComplex, delete_maximal
from .stanley_reisner import edge_iso_check

I_MAX = 5
J_MAX = 3


def splitting_roundtrip(t: TwinPair, rho: Face, rng: random.Random) -> CheckResult:
    """Lift a random compatible family on the boundary of rho, then project it back."""
    d = t.contra
    sub = d.restrict_to_boundary(rho)
    lim = limit(sub)
    faces = sub.complex.faces
    u = random_compatible_family(lim, faces, {f: d.dim(f) for f in faces}, rng)
    lift = fat_splitting(t, rho, u)
    for sigma in faces:
        back = d.structure_map(rho, sigma).apply(lift)
        if back != tuple(d.domain.normalize(x) for x in u[sigma]):
            return CheckResult.failed((rho, sigma), "projection of the lift differs")
    return CheckResult.passed()


def kan_extension_check(k: SimplicialComplex, mu: Face, j: int, domain: CoefficientDomain,
                        n_max: int = 4) -> CheckResult:
    """lim^n of the right Kan extension agrees with lim^n on K minus mu."""
    dj = exp_cohomology_diagram(delete_maximal(k, mu), j, domain).contra
    ext = right_kan_extension(dj, k, mu)
    a = higher_limits(dj, n_max)
    b = higher_limits(ext, n_max)
    for n in range(n_max + 1):
        if a[n] != b[n]:
            return CheckResult.failed(n, f"lim^{n}: {b[n]} vs {a[n]}")
    return CheckResult.passed()


def atomic_check(k: SimplicialComplex, mu: Face, r: int, domain: CoefficientDomain,
                 i_max: int = I_MAX) -> CheckResult:
    lims = higher_limits(concentrated_diagram(k, mu, r, domain), i_max)
    want = [ModuleSummary(r)] + [ModuleSummary()] * i_max
    for i, (got, exp) in enumerate(zip(lims, want)):
        if got != exp:
            return CheckResult.failed(i, f"lim^{i} = {got}, expected {exp}")
    return CheckResult.passed()


def delta_squared_check(d, n_max: int | None = None) -> CheckResult:
    n_max = len(d.complex.faces) if n_max is None else n_max
    for n in range(n_max):
        if not (coboundary(d, n + 1) @ coboundary(d, n)).is_zero():
            return CheckResult.failed(n, "delta^2 is nonzero")
    return CheckResult.passed()


def normalization_check(k: SimplicialComplex, domain: CoefficientDomain,
                        j_max: int = 2, i_max: int = 3) -> CheckResult:
    for j in range(j_max + 1):
        d = exp_cohomology_diagram(k, j, domain).contra
        a = higher_limits(d, i_max, normalized=True)
        b = higher_limits(d, i_max, normalized=False, split=False)
        if a != b:
            return CheckResult.failed(j, f"normalized {list(map(str, a))} vs unnormalized {list(map(str, b))}")
    return CheckResult.passed()


def _all(results) -> CheckResult:
    for witness, res in results:
        if not res:
            return CheckResult.failed([witness, res.witness], res.detail)
    return CheckResult.passed()


def _checks(k: SimplicialComplex, domain: CoefficientDomain, seed: int) -> list[tuple[str, Callable]]:
    facets = [f for f in k.facets if f]

    def fat():
        return _all((j, is_fat(exp_cohomology_diagram(k, j, domain).contra)) for j in range(J_MAX + 1))

    def twin():
        return _all((j, validate_twin(exp_cohomology_diagram(k, j, domain))) for j in range(J_MAX + 1))

    def splitting():
        rng = random.Random(seed)
        out = []
        for j in range(1, J_MAX + 1):
            t = exp_cohomology_diagram(k, j, domain)
            for rho in k.faces:
                if rho:
                    out.append(((j, rho), splitting_roundtrip(t, rho, rng)))
        return _all(out)

    def atomic():
        return _all((mu, atomic_check(k, mu, r, domain)) for mu in facets for r in (1, 2))

    def kan():
        return _all(((mu, j), kan_extension_check(k, mu, j, domain)) for mu in facets for j in range(3))

    def delta2():
        rng = random.Random(seed)
        return _all((i, delta_squared_check(random_functorial_diagram(k, domain, rng))) for i in range(5))

    def complete_intersection():
        p = ci_detect(k)
        if not p:
            return CheckResult.passed("not CI")
        kz = koszul_cohomology_check(p, 10)
        if not kz:
            return kz
        return hilbert_ci_identity(p, 10)

    checks = [
        ("sharpness", lambda: verify_sharpness(k, domain, I_MAX, J_MAX)),
        ("fat", fat),
        ("twin", twin),
        ("fat_splitting", splitting),
        ("atomic", atomic),
        ("kan_extension", kan),
        ("edge_isomorphism", lambda: edge_iso_check(k, domain, 4)),
        ("delta_squared", delta2),
        ("complete_intersection", complete_intersection),
    ]
    if k.m <= 3:
        checks.append(("normalization", lambda: normalization_check(k, domain)))
    return checks


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    return str(x)


def verify_all(k: SimplicialComplex, domain: CoefficientDomain = QQ, threads: int = 1,
               seed: int = 0) -> dict:
    """Run every check on ``k``; the result does not depend on ``threads``."""
    checks = _checks(k, domain, seed)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: c[1](), checks))
    else:
        results = [fn() for _, fn in checks]
    out = {}
    for (name, _), res in zip(checks, results):
        entry = {"pass": res.ok}
        if not res.ok:
            entry["witness"] = _jsonable(res.witness)
            entry["detail"] = res.detail
        elif res.detail:
            entry["detail"] = res.detail
        out[name] = entry
    return {"checks": out, "pass": all(e["pass"] for e in out.values())}
