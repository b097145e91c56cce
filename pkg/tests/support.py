"""Shared builders for the test suite."""

from __future__ import annotations

import random

from polyclass import (
    Graph,
    IntMatrix,
    Polytope,
    Poset,
    cube,
    dilate,
    edge_polytope,
    fixture,
    fixture_names,
    order_polytope,
    product,
    pyramid,
    simplex,
    stable_set_polytope,
)

SQUARE_PYRAMID = Polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
REEVE_SIMPLEX = Polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
TRIANGLE_GRAPH = Graph(3, [(0, 1), (0, 2), (1, 2)])
FOUR_CYCLE = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def random_int_matrix(rng: random.Random, max_rows: int = 8,
                      max_cols: int = 12, bound: int = 9) -> IntMatrix:
    r = rng.randint(1, max_rows)
    c = rng.randint(1, max_cols)
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)])


def named_corpus() -> list[tuple[str, Polytope]]:
    """Small named polytopes exercised by the oracle-agreement tests."""
    chain2 = Poset.from_relations(2, [(0, 1)])
    antichain3 = Poset.from_relations(3, [])
    items = [
        ("segment01", simplex(1)),
        ("triangle", simplex(2)),
        ("tetrahedron", simplex(3)),
        ("simplex4", simplex(4)),
        ("square", cube(2)),
        ("cube3", cube(3)),
        ("segment02", dilate(simplex(1), 2)),
        ("segment03", dilate(simplex(1), 3)),
        ("triangle-x2", dilate(simplex(2), 2)),
        ("triangle-x3", dilate(simplex(2), 3)),
        ("tetrahedron-x2", dilate(simplex(3), 2)),
        ("prism", product(simplex(1), simplex(2))),
        ("square-pyramid", SQUARE_PYRAMID),
        ("pyramid-lift2", pyramid(simplex(2), 2)),
        ("reeve", REEVE_SIMPLEX),
        ("order-chain2", order_polytope(chain2)),
        ("order-antichain3", order_polytope(antichain3)),
        ("stableset-k3", stable_set_polytope(TRIANGLE_GRAPH)),
        ("edge-k3", edge_polytope(TRIANGLE_GRAPH)),
        ("edge-c4", edge_polytope(FOUR_CYCLE)),
    ]
    items.extend((name, fixture(name)) for name in fixture_names())
    return items


def pyramid_invariance_bases(total: int = 50) -> list[Polytope]:
    """Deterministic pool of pyramid bases: named polytopes plus random ones."""
    from polyclass import random_01_polytopes

    bases = [
        simplex(1), simplex(2), simplex(3), cube(2), cube(3),
        fixture("P1"), fixture("P2"), fixture("P3"), fixture("EX38"),
        dilate(simplex(1), 2), dilate(simplex(1), 3), dilate(simplex(2), 2),
        product(simplex(1), simplex(2)), edge_polytope(TRIANGLE_GRAPH),
    ]
    bases.extend(random_01_polytopes(3, total - len(bases), seed=11))
    return bases
