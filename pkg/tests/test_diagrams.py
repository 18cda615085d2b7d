import random

import pytest
from hypothesis import given, settings, strategies as st

from srlim.corpus import cycle, triangle_boundary, two_disjoint_edges
from srlim.diagrams import (
    FaceDiagram,
    concentrated_diagram,
    constant_diagram,
    exp_cohomology_diagram,
    fat_splitting,
    is_fat,
    limit,
    limit_equations,
    random_compatible_family,
    random_functorial_diagram,
    right_kan_extension,
    validate_functoriality,
    validate_twin,
    zero_diagram,
)
from srlim.higher_limits import coboundary
from srlim.linalg import GF2, GF3, QQ, ZZ, ExactMatrix, kernel_basis
from srlim.simplicial import MultiSet, all_complexes, delete_maximal, from_facets, simplex
from srlim.stanley_reisner import hilbert_function

DOMAINS = [QQ, ZZ, GF2, GF3]
SMALL = [k for m in range(4) for k in all_complexes(m)]


def two_points():
    return from_facets(["1", "2"], [["1"], ["2"]])


def test_exp_degree_zero_is_constant():
    d = exp_cohomology_diagram(triangle_boundary(), 0, QQ).contra
    for f in d.complex.faces:
        assert d.dim(f) == 1
    assert d.structure_map((0, 1), (0,)) == ExactMatrix.identity(1, QQ)


def test_exp_degree_one_on_an_edge():
    d = exp_cohomology_diagram(simplex(["1", "2"]), 1, QQ).contra
    v1, v2 = MultiSet((1, 0)), MultiSet((0, 1))
    assert d.bases[()] == ()
    assert d.bases[(0,)] == (v1,) and d.bases[(1,)] == (v2,)
    assert d.bases[(0, 1)] == (v1, v2)
    assert d.structure_map((0, 1), (0,)).to_rows() == [[1, 0]]


def test_exp_basis_size_at_edge():
    d = exp_cohomology_diagram(triangle_boundary(), 2, QQ).contra
    assert d.dim((0, 1)) == 3


def test_functoriality_failure_has_chain_witness():
    k = simplex(["1", "2"])
    d = exp_cohomology_diagram(k, 0, QQ).contra
    bad = d.replace_map((0, 1), (0,), ExactMatrix.zeros(1, 1, QQ))
    res = validate_functoriality(bad)
    assert not res
    assert res.witness == ((0, 1), (0,), ())


def test_zeroing_a_map_in_degree_one_stays_functorial():
    # D(empty) = 0 in degree 1, so no composite sees the replaced map
    d = exp_cohomology_diagram(simplex(["1", "2"]), 1, QQ).contra
    bad = d.replace_map((0, 1), (0,), ExactMatrix.zeros(1, 2, QQ))
    assert validate_functoriality(bad)


def test_single_vertex_anything_goes():
    k = simplex(["1"])
    d = FaceDiagram(k, QQ, {(): (0, 1), (0,): (0,)},
                    {((0,), ()): ExactMatrix.from_rows([[3], [-7]], QQ)})
    assert validate_functoriality(d)


@pytest.mark.parametrize("k", SMALL[::3] + [cycle(4), cycle(5), two_disjoint_edges()])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_exp_diagrams_are_functorial_twins(k, j):
    t = exp_cohomology_diagram(k, j, QQ)
    assert validate_functoriality(t.contra)
    assert validate_twin(t)


def test_twin_failure():
    t = exp_cohomology_diagram(triangle_boundary(), 1, QQ)
    assert validate_twin(t)
    broken = t.replace_co_map((0,), (0, 1), ExactMatrix.zeros(2, 1, QQ))
    res = validate_twin(broken)
    assert not res and res.witness == ((0, 1), (0,))
    assert validate_twin(exp_cohomology_diagram(simplex(["1", "2", "3"]), 2, QQ))


def test_limit_examples():
    for k in (triangle_boundary(), cycle(5), simplex(["1"])):
        assert limit(constant_diagram(k, QQ)).rank == 1
    assert limit(exp_cohomology_diagram(two_points(), 1, QQ).contra).rank == 2
    assert limit(exp_cohomology_diagram(triangle_boundary(), 3, QQ).contra).rank == 9
    assert limit(zero_diagram(cycle(4), QQ)).rank == 0


@pytest.mark.parametrize("dom", DOMAINS)
@pytest.mark.parametrize("k", SMALL[::2] + [cycle(4), cycle(5), two_disjoint_edges()])
def test_limit_rank_is_hilbert_function(k, dom):
    for j in range(4):
        d = exp_cohomology_diagram(k, j, dom).contra
        lim = limit(d)
        assert lim.rank == hilbert_function(k, j)
        assert (limit_equations(d) @ lim.basis).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(DOMAINS))
def test_limit_is_kernel_of_first_coboundary(seed, dom):
    rng = random.Random(seed)
    k = rng.choice(SMALL)
    d = random_functorial_diagram(k, dom, rng)
    lim = limit(d)
    assert (limit_equations(d) @ lim.basis).is_zero()
    assert (coboundary(d, 0) @ lim.basis).is_zero()
    assert lim.rank == kernel_basis(coboundary(d, 0)).ncols
    assert lim.rank == limit(d, split=False).rank


def test_limit_over_z_is_a_lattice_basis():
    # D(1) = Z, D(empty) = Z, restriction multiplication by 2: the limit is all of Z
    k = simplex(["1"])
    d = FaceDiagram(k, ZZ, {(): (0,), (0,): (0,)}, {((0,), ()): ExactMatrix.from_rows([[2]], ZZ)})
    lim = limit(d)
    assert lim.rank == 1
    assert sorted(abs(x) for x in lim.basis.column(0)) == [1, 2]


def test_is_fat_examples():
    for j in range(4):
        assert is_fat(exp_cohomology_diagram(cycle(5), j, ZZ).contra)
    bad = concentrated_diagram(two_points(), (), 1, QQ)
    res = is_fat(bad)
    assert not res and res.witness == (0,)
    empty_only = from_facets(["1"], [])
    assert is_fat(FaceDiagram(empty_only, QQ, {(): (0, 1)}, {}))


def test_fatness_over_z_detects_index():
    # D(1) = Z -> D(empty) = Z by 2 is onto over Q but not over Z
    k = simplex(["1"])
    d = FaceDiagram(k, ZZ, {(): (0,), (0,): (0,)}, {((0,), ()): ExactMatrix.from_rows([[2]], ZZ)})
    assert not is_fat(d)
    assert is_fat(d.over(QQ))


def test_fat_splitting_on_an_edge():
    t = exp_cohomology_diagram(simplex(["1", "2"]), 1, QQ)
    u = {(): (), (0,): (1,), (1,): (1,)}
    assert fat_splitting(t, (0, 1), u) == (1, 1)
    assert fat_splitting(t, (0, 1), {(): (), (0,): (0,), (1,): (0,)}) == (0, 0)


def test_fat_splitting_cancels_in_pairs():
    k = simplex(["1", "2", "3"])
    t = exp_cohomology_diagram(k, 2, QQ)
    d = t.contra
    sq = MultiSet((2, 0, 0))
    u = {}
    for f in k.faces:
        if f == (0, 1, 2):
            continue
        u[f] = tuple(int(b == sq) for b in d.bases[f])
    lift = fat_splitting(t, (0, 1, 2), u)
    assert lift == tuple(int(b == sq) for b in d.bases[(0, 1, 2)])


def test_fat_splitting_validates_input():
    t = exp_cohomology_diagram(simplex(["1", "2"]), 1, QQ)
    with pytest.raises(ValueError):
        fat_splitting(t, (), {})
    with pytest.raises(ValueError):
        fat_splitting(t, (0, 1), {(): (), (0,): (1,)})
    t0 = exp_cohomology_diagram(simplex(["1", "2"]), 0, QQ)
    with pytest.raises(ValueError):
        fat_splitting(t0, (0, 1), {(): (1,), (0,): (1,), (1,): (2,)})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(DOMAINS))
def test_fat_splitting_inverts_projections(seed, dom):
    rng = random.Random(seed)
    k = rng.choice(SMALL + [cycle(4), two_disjoint_edges()])
    j = rng.randint(0, 3)
    t = exp_cohomology_diagram(k, j, dom)
    rho = rng.choice([f for f in k.faces if f] or [None])
    if rho is None:
        return
    d = t.contra
    sub = d.restrict_to_boundary(rho)
    faces = sub.complex.faces
    u = random_compatible_family(limit(sub), faces, {f: d.dim(f) for f in faces}, rng)
    lift = fat_splitting(t, rho, u)
    for s in faces:
        assert d.structure_map(rho, s).apply(lift) == tuple(dom.normalize(x) for x in u[s])


def test_kan_extension_examples():
    k = simplex(["1", "2"])
    j_cx = delete_maximal(k, (0, 1))
    ext = right_kan_extension(constant_diagram(j_cx, QQ), k, (0, 1))
    assert ext.dim((0, 1)) == 1
    assert validate_functoriality(ext)
    ext0 = right_kan_extension(zero_diagram(j_cx, QQ), k, (0, 1))
    assert all(ext0.dim(f) == 0 for f in k.faces)
    tri = triangle_boundary()
    dj = exp_cohomology_diagram(delete_maximal(tri, (0, 1)), 1, QQ).contra
    ext1 = right_kan_extension(dj, tri, (0, 1))
    assert ext1.dim((0, 1)) == 2
    with pytest.raises(ValueError):
        right_kan_extension(dj, tri, (1, 2))


@pytest.mark.parametrize("k", [triangle_boundary(), cycle(4), simplex(["1", "2", "3"]), two_disjoint_edges()])
def test_kan_extension_preserves_limit(k):
    for mu in k.facets:
        for j in range(3):
            for dom in (QQ, ZZ):
                dj = exp_cohomology_diagram(delete_maximal(k, mu), j, dom).contra
                ext = right_kan_extension(dj, k, mu)
                assert validate_functoriality(ext)
                assert limit(ext).summary() == limit(dj).summary()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(DOMAINS), st.booleans())
def test_random_diagrams_are_functorial(seed, dom, fat):
    rng = random.Random(seed)
    k = rng.choice(SMALL + [cycle(4)])
    d = random_functorial_diagram(k, dom, rng, fat=fat)
    assert validate_functoriality(d)
    if fat:
        assert is_fat(d)


def test_components_split_exp_diagrams_by_monomial():
    d = exp_cohomology_diagram(triangle_boundary(), 2, QQ).contra
    comps = d.components()
    assert len(comps) == 6
    assert sum(limit(c).rank for c, _ in comps) == limit(d, split=False).rank
