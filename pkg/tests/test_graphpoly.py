import itertools
import random

import pytest

from lltlab.graphpoly import (
    Multigraph,
    inversion_poly,
    is_connected,
    tutte,
    tutte_at_one_q,
    verify_tutte_cumulant,
)
from lltlab.ring import ONE, Q, QTPoly, T, substitute_q


def test_multigraph_normalizes_and_counts():
    G = Multigraph(3, [(2, 1), (1, 2), (3, 3)])
    assert G.edges == ((1, 2), (1, 2), (3, 3))
    assert G.multiplicity(2, 1) == 2
    assert G.loop_count() == 1
    assert G.edges_within({1, 2}) == 2
    assert G.edges_within({1, 3}) == 1
    assert G.edges_within({2}) == 0
    assert G.simple_edges() == [(1, 2)]
    assert G.adjacent(1, 2) and not G.adjacent(1, 3)
    with pytest.raises(ValueError):
        Multigraph(2, [(1, 3)])


def test_tutte_tree_and_loop():
    path = Multigraph(4, [(1, 2), (2, 3), (3, 4)])
    assert tutte(path) == QTPoly.monomial(1, 3, 0)
    assert tutte_at_one_q(path) == ONE
    loop = Multigraph(1, [(1, 1)])
    assert tutte(loop) == T
    assert tutte_at_one_q(loop) == Q


def test_tutte_triangle():
    K3 = Multigraph(3, [(1, 2), (1, 3), (2, 3)])
    expected = QTPoly.monomial(1, 2, 0) + Q + T
    assert tutte(K3) == expected
    assert tutte_at_one_q(K3) == Q + 2 * ONE


def test_inversion_poly_base_cases():
    assert inversion_poly(Multigraph(2, [(1, 2)])) == ONE
    assert inversion_poly(Multigraph(2, [(1, 2), (1, 2)])) == ONE + Q
    K3 = Multigraph(3, [(1, 2), (1, 3), (2, 3)])
    assert inversion_poly(K3) == Q + 2 * ONE
    assert inversion_poly(K3) == tutte_at_one_q(K3)


def test_inversion_poly_disconnected_vanishes():
    G = Multigraph(4, [(1, 2), (3, 4)])
    assert not is_connected(G)
    assert inversion_poly(G).is_zero()
    assert tutte_at_one_q(G).is_zero()
    assert verify_tutte_cumulant(G)


def test_loop_multiplies_by_q():
    rng = random.Random(401)
    for _ in range(10):
        G = _random_multigraph(rng, max_vertices=4, max_edges=5)
        v = rng.randint(1, G.n)
        with_loop = Multigraph(G.n, list(G.edges) + [(v, v)])
        assert inversion_poly(with_loop) == Q * inversion_poly(G)


def _random_multigraph(rng, max_vertices=4, max_edges=6, allow_loops=True):
    n = rng.randint(1, max_vertices)
    count = rng.randint(0, max_edges)
    edges = []
    for _ in range(count):
        i = rng.randint(1, n)
        j = rng.randint(1, n)
        if i == j and not allow_loops:
            continue
        edges.append((i, j))
    return Multigraph(n, edges)


def _tree_count(G):
    """Spanning trees counted with edge multiplicity, straight from the
    definition: pick n-1 edge instances that connect everything."""
    if G.n == 1:
        return 1
    total = 0
    for combo in itertools.combinations(range(len(G.edges)), G.n - 1):
        chosen = [G.edges[k] for k in combo]
        if any(i == j for i, j in chosen):
            continue
        if len({tuple(sorted(e)) for e in chosen}) < G.n - 1:
            continue
        seen = {1}
        frontier = [1]
        adjacency = {v: [] for v in range(1, G.n + 1)}
        for i, j in chosen:
            adjacency[i].append(j)
            adjacency[j].append(i)
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) == G.n:
            total += 1
    return total


def test_inversion_poly_at_one_counts_trees():
    rng = random.Random(402)
    for _ in range(25):
        G = _random_multigraph(rng, max_vertices=4, max_edges=6)
        value = substitute_q(inversion_poly(G), ONE)
        assert value == QTPoly.integer(_tree_count(G))


def test_trees_verify_with_value_one():
    trees = [
        Multigraph(2, [(1, 2)]),
        Multigraph(4, [(1, 2), (2, 3), (3, 4)]),
        Multigraph(5, [(1, 2), (1, 3), (1, 4), (1, 5)]),
        Multigraph(5, [(3, 1), (3, 2), (3, 4), (4, 5)]),
    ]
    for G in trees:
        assert inversion_poly(G) == ONE
        assert verify_tutte_cumulant(G)


def test_tutte_cumulant_triple_on_random_graphs():
    rng = random.Random(403)
    for _ in range(30):
        G = _random_multigraph(rng, max_vertices=4, max_edges=6)
        assert verify_tutte_cumulant(G)
