"""Acceptance criteria AC1-AC10.

Each test prints one PASS/FAIL line (visible with ``pytest -s``); the
terminal summary of any run that includes this module lists all of them.
"""

import json
import random
import subprocess
import sys
import time

import pytest

from srlim.corpus import full_corpus, named, small_complexes
from srlim.diagrams import (
    concentrated_diagram,
    exp_cohomology_diagram,
    is_fat,
    random_functorial_diagram,
)
from srlim.higher_limits import coboundary, higher_limits, verify_sharpness
from srlim.linalg import GF2, GF3, QQ, ZZ, ModuleSummary
from srlim.rational import (
    ci_detect,
    hilbert_ci_identity,
    koszul_cohomology_check,
    minimal_model,
    monomial_poly,
)
from srlim.simplicial import from_facets
from srlim.stanley_reisner import edge_iso_check
from srlim.verify import kan_extension_check, normalization_check, splitting_roundtrip

DOMAINS = [QQ, GF2, GF3, ZZ]
CORPUS = full_corpus()


def report(tag, failures, detail=""):
    verdict = "PASS" if not failures else "FAIL"
    print(f"{tag} {verdict} {detail}".rstrip())
    assert not failures, failures[:5]


def describe(k):
    return k.facet_labels()


def test_ac1_collapse_at_e2():
    failures = []
    start = time.perf_counter()
    for dom in DOMAINS:
        for k in CORPUS:
            res = verify_sharpness(k, dom, 5, 3)
            if not res:
                failures.append((str(dom), describe(k), res.witness, res.detail))
    elapsed = time.perf_counter() - start
    report("AC1", failures, f"{len(CORPUS)} complexes x {len(DOMAINS)} domains in {elapsed:.1f}s")
    assert elapsed < 600


def test_ac2_fatness_and_splitting():
    failures = []
    for dom in DOMAINS:
        for k in CORPUS:
            for j in range(4):
                res = is_fat(exp_cohomology_diagram(k, j, dom).contra)
                if not res:
                    failures.append((str(dom), describe(k), j, res.witness))
    rng = random.Random(2)
    candidates = [k for k in CORPUS if len(k.faces) > 1]
    done = 0
    while done < 200:
        k = rng.choice(candidates)
        dom = rng.choice(DOMAINS)
        j = rng.randint(0, 3)
        rho = rng.choice([f for f in k.faces if f])
        res = splitting_roundtrip(exp_cohomology_diagram(k, j, dom), rho, rng)
        if not res:
            failures.append(("split", str(dom), describe(k), j, rho))
        done += 1
    report("AC2", failures, f"fat on all exp diagrams, {done} splitting round trips")


def test_ac3_harness_is_not_vacuous():
    k = from_facets(["1", "2"], [["1"], ["2"]])
    failures = []
    for dom in (QQ, GF2):
        lims = higher_limits(concentrated_diagram(k, (), 1, dom), 3)
        if lims[1] != ModuleSummary(1):
            failures.append((str(dom), str(lims[1])))
        if is_fat(concentrated_diagram(k, (), 1, dom)):
            failures.append((str(dom), "reported fat"))
    report("AC3", failures, "lim^1 = 1 over Q and F2")


def test_ac4_atomic_diagrams():
    rng = random.Random(4)
    failures = []
    for _ in range(100):
        k = rng.choice(CORPUS)
        mu = rng.choice(k.facets)
        r = rng.randint(1, 3)
        dom = rng.choice(DOMAINS)
        lims = higher_limits(concentrated_diagram(k, mu, r, dom), 5)
        if lims != [ModuleSummary(r)] + [ModuleSummary()] * 5:
            failures.append((describe(k), mu, r, str(dom), [str(x) for x in lims]))
    report("AC4", failures, "100 atomic diagrams")


def test_ac5_kan_extension():
    failures = []
    count = 0
    for k in CORPUS:
        for mu in k.facets:
            for j in range(3):
                res = kan_extension_check(k, mu, j, QQ, 4)
                count += 1
                if not res:
                    failures.append((describe(k), mu, j, res.witness, res.detail))
    report("AC5", failures, f"{count} (K, mu, j) cases")


def test_ac6_edge_isomorphism():
    failures = []
    for dom in DOMAINS:
        for k in CORPUS:
            res = edge_iso_check(k, dom, 4)
            if not res:
                failures.append((str(dom), describe(k), res.witness, res.detail))
    report("AC6", failures, f"{len(CORPUS)} complexes x {len(DOMAINS)} domains, j <= 4")


def test_ac7_delta_squared():
    rng = random.Random(7)
    failures = []
    for _ in range(500):
        k = rng.choice(CORPUS)
        dom = rng.choice(DOMAINS)
        d = random_functorial_diagram(k, dom, rng)
        top = max(len(f) for f in k.faces) + 1
        for n in range(top):
            if not (coboundary(d, n + 1) @ coboundary(d, n)).is_zero():
                failures.append((describe(k), str(dom), n))
    report("AC7", failures, "500 random functorial diagrams")


def test_ac8_complete_intersections():
    start = time.perf_counter()
    failures = []
    nm = named()
    for key in ("simplex3", "triangle_boundary", "square"):
        if not ci_detect(nm[key]):
            failures.append((key, "not detected as CI"))
    if ci_detect(nm["pentagon"]):
        failures.append(("pentagon", "detected as CI"))
    ci_count = 0
    for k in CORPUS:
        p = ci_detect(k)
        if not p:
            continue
        ci_count += 1
        kz = koszul_cohomology_check(p, 10)
        hi = hilbert_ci_identity(p, 10)
        if not kz or not hi:
            failures.append((describe(k), kz.witness, hi.witness))
    p = ci_detect(nm["triangle_boundary"])
    corrupted = minimal_model(p).with_differential("w1", monomial_poly(3, (0, 1)))
    if koszul_cohomology_check(p, 10, model=corrupted):
        failures.append(("corrupted differential", "passed"))
    elapsed = time.perf_counter() - start
    report("AC8", failures, f"{ci_count} CI complexes in {elapsed:.1f}s")
    assert elapsed < 60


def test_ac9_normalization_oracle():
    failures = []
    ks = small_complexes(3)
    for dom in DOMAINS:
        for k in ks:
            res = normalization_check(k, dom, 2, 3)
            if not res:
                failures.append((str(dom), describe(k), res.detail))
    report("AC9", failures, f"{len(ks)} complexes x {len(DOMAINS)} domains")


def _verify_all(doc, threads):
    proc = subprocess.run([sys.executable, "-m", "srlim", "verify-all", "--threads", str(threads)],
                          input=json.dumps(doc).encode(), capture_output=True)
    return proc.returncode, proc.stdout


def test_ac10_cli_determinism():
    failures = []
    for key, k in named().items():
        doc = {"vertices": list(k.labels), "facets": k.facet_labels()}
        runs = [_verify_all(doc, 1), _verify_all(doc, 1), _verify_all(doc, 4)]
        if len({out for _, out in runs}) != 1:
            failures.append((key, "reports differ"))
        if any(code != 0 for code, _ in runs):
            failures.append((key, "verify-all failed", [c for c, _ in runs]))
    report("AC10", failures, f"{len(named())} named complexes, 3 runs each")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
