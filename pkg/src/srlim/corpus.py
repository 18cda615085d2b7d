"""Named and generated test complexes."""

from __future__ import annotations

import random

from .simplicial import SimplicialComplex, all_complexes, from_facets, simplex

RANDOM_SEED = 20240611


def triangle_boundary() -> SimplicialComplex:
    return from_facets(["1", "2", "3"], [["1", "2"], ["2", "3"], ["1", "3"]])


def cycle(m: int) -> SimplicialComplex:
    labels = [str(i + 1) for i in range(m)]
    return from_facets(labels, [[labels[i], labels[(i + 1) % m]] for i in range(m)])


def two_disjoint_edges() -> SimplicialComplex:
    return from_facets(["1", "2", "3", "4"], [["1", "2"], ["3", "4"]])


def named() -> dict[str, SimplicialComplex]:
    return {
        "simplex3": simplex(["1", "2", "3"]),
        "triangle_boundary": triangle_boundary(),
        "square": cycle(4),
        "pentagon": cycle(5),
        "two_edges": two_disjoint_edges(),
    }


def random_complex(rng: random.Random, m: int, max_facets: int = 5,
                   max_facet_size: int = 4) -> SimplicialComplex:
    labels = [str(i + 1) for i in range(m)]
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, min(max_facet_size, m))
        facets.append(rng.sample(labels, size))
    return from_facets(labels, facets)


def random_complexes(count: int = 50, seed: int = RANDOM_SEED) -> list[SimplicialComplex]:
    """Seeded complexes on 5 or 6 vertices (facets of at most 4 vertices)."""
    rng = random.Random(seed)
    return [random_complex(rng, rng.choice((5, 6))) for _ in range(count)]


def small_complexes(max_vertices: int = 4) -> list[SimplicialComplex]:
    """Every complex (containing the empty face) on 0..max_vertices labelled vertices."""
    out = []
    for m in range(max_vertices + 1):
        out.extend(all_complexes(m))
    return out


def full_corpus() -> list[SimplicialComplex]:
    return small_complexes(4) + list(named().values()) + random_complexes()
