from itertools import product
import random

import pytest
from hypothesis import given, strategies as st

from srlim.corpus import cycle, random_complexes, triangle_boundary, two_disjoint_edges
from srlim.linalg import GF2, QQ, ZZ
from srlim.simplicial import MultiSet, all_complexes, minimal_nonfaces, simplex
from srlim.stanley_reisner import (
    HilbertSeries,
    StanleyReisnerAlgebra,
    edge_iso_check,
    hilbert_function,
    hilbert_series,
    sr_basis,
    sr_multiply,
)

SMALL = [k for m in range(5) for k in all_complexes(m)]


def brute_count(k, j):
    """Count exponent vectors of total degree j whose support is a face."""
    n = 0
    for e in product(range(j + 1), repeat=k.m):
        if sum(e) == j and tuple(i for i, x in enumerate(e) if x) in k:
            n += 1
    return n


def test_basis_examples():
    k = triangle_boundary()
    assert sr_basis(k, 0) == [MultiSet((0, 0, 0))]
    assert len(sr_basis(k, 2)) == 6
    three = sr_basis(k, 3)
    assert len(three) == 9 and MultiSet((1, 1, 1)) not in three
    assert three == sorted(three)


def test_multiply_examples():
    k = triangle_boundary()
    a = StanleyReisnerAlgebra(k, QQ)
    one = MultiSet((0, 0, 0))
    v1, v2, v3 = MultiSet((1, 0, 0)), MultiSet((0, 1, 0)), MultiSet((0, 0, 1))
    assert a.multiply(one, v2) == v2
    assert a.multiply(v1, v2) == MultiSet((1, 1, 0))
    assert a.multiply(MultiSet((1, 1, 0)), v3) is None
    with pytest.raises(ValueError):
        a.multiply(MultiSet((1, 1, 1)), one)


@pytest.mark.parametrize("k", SMALL[::4] + [cycle(5), two_disjoint_edges()])
def test_multiply_is_commutative_associative(k):
    mons = [m for j in range(3) for m in sr_basis(k, j)]
    rng = random.Random(len(k.faces))
    for _ in range(30):
        if not mons:
            break
        a, b, c = (rng.choice(mons) for _ in range(3))
        assert sr_multiply(k, a, b) == sr_multiply(k, b, a)
        ab = sr_multiply(k, a, b)
        bc = sr_multiply(k, b, c)
        left = None if ab is None else sr_multiply(k, ab, c)
        right = None if bc is None else sr_multiply(k, a, bc)
        assert left == right


@pytest.mark.parametrize("k", [cycle(4), cycle(5), triangle_boundary(), two_disjoint_edges()])
def test_minimal_nonfaces_annihilate(k):
    mins = [set(u) for u in minimal_nonfaces(k)]
    mons = [m for j in range(4) for m in sr_basis(k, j)]
    for a in mons:
        for b in mons:
            covers = any(u <= set(a.support) | set(b.support) for u in mins)
            assert (sr_multiply(k, a, b) is None) == covers


def test_edge_iso_detects_wrong_structure_constants(monkeypatch):
    import srlim.stanley_reisner as sr

    def wrong(k, m1, m2):
        return None if m1.cardinality and m2.cardinality else m1 + m2

    monkeypatch.setattr(sr, "sr_multiply", wrong)
    res = edge_iso_check(triangle_boundary(), QQ, 2)
    assert not res and res.detail == "structure constant mismatch"


def test_hilbert_examples():
    assert hilbert_function(cycle(5), 0) == 1
    assert hilbert_function(cycle(4), 1) == 4
    assert hilbert_function(triangle_boundary(), 3) == 9


@pytest.mark.parametrize("k", SMALL[::3] + [cycle(5)] + random_complexes(8))
def test_hilbert_function_counts_basis(k):
    for j in range(5):
        assert hilbert_function(k, j) == len(sr_basis(k, j)) == brute_count(k, j)


def test_hilbert_series_examples():
    s = hilbert_series(simplex(["1", "2"]))
    assert s == HilbertSeries((1,), 2)
    s = hilbert_series(triangle_boundary())
    assert s == HilbertSeries((1, 1, 1), 2)
    assert s.coefficient(3) == 9
    assert str(s) == "(1 + t + t^2) / (1-t)^2"
    sq = hilbert_series(cycle(4))
    assert sq == HilbertSeries((1, 2, 1), 2)
    assert sq.coefficient(2) == 8


@given(st.integers(0, 166))
def test_series_agrees_with_function(i):
    k = all_complexes(4)[i]
    s = hilbert_series(k, verify_to=12)
    assert s.expansion(12) == [hilbert_function(k, j) for j in range(13)]


def test_edge_iso_examples():
    for m in (1, 2, 3):
        assert edge_iso_check(simplex([str(i) for i in range(m)]), QQ, 3)
    assert edge_iso_check(triangle_boundary(), ZZ, 4)


@pytest.mark.parametrize("dom", [QQ, GF2, ZZ])
@pytest.mark.parametrize("k", SMALL[::10] + [cycle(4), cycle(5), two_disjoint_edges()])
def test_edge_iso_corpus_sample(k, dom):
    assert edge_iso_check(k, dom, 3)
