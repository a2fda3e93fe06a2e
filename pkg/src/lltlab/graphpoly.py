"""Multigraphs with loops, the Tutte polynomial, and the rooted
spanning-tree inversion polynomial.

The Tutte polynomial is returned as a QTPoly whose q variable carries
x and whose t variable carries y; both exponents stay nonnegative, so
nothing is lost in the reuse.
"""

from __future__ import annotations

import itertools

from .ring import ONE, Q, QTPoly, T, q_integer, substitute_q, substitute_t


class Multigraph:
    """Undirected multigraph on vertices 1..n; loops allowed."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        if n < 1:
            raise ValueError("need at least one vertex")
        normalized = []
        for pair in edges:
            i, j = pair
            i, j = int(i), int(j)
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError("edge %r out of range" % (pair,))
            normalized.append((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    def __setattr__(self, name, value):
        raise AttributeError("Multigraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Multigraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return "Multigraph(%d, %r)" % (self.n, list(self.edges))

    def vertices(self):
        return range(1, self.n + 1)

    def loop_count(self) -> int:
        return sum(1 for i, j in self.edges if i == j)

    def edges_within(self, subset) -> int:
        """Number of edges with both endpoints in the subset; a loop
        counts when its vertex is in the subset."""
        subset = set(subset)
        return sum(1 for i, j in self.edges if i in subset and j in subset)

    def multiplicity(self, i, j) -> int:
        key = (min(i, j), max(i, j))
        return sum(1 for e in self.edges if e == key)

    def simple_edges(self):
        """Distinct non-loop edges, sorted."""
        return sorted({(i, j) for i, j in self.edges if i != j})

    def adjacent(self, i, j) -> bool:
        return i != j and self.multiplicity(i, j) > 0


def _component_count(n, edge_pairs) -> int:
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edge_pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(v) for v in range(1, n + 1)})


def is_connected(G: Multigraph) -> bool:
    return _component_count(G.n, G.edges) == 1


def tutte(G: Multigraph) -> QTPoly:
    """Subset-sum Tutte polynomial; q carries x and t carries y."""
    x1 = Q - ONE
    y1 = T - ONE
    total = QTPoly.zero()
    for size in range(len(G.edges) + 1):
        for subset in itertools.combinations(range(len(G.edges)), size):
            chosen = [G.edges[k] for k in subset]
            c = _component_count(G.n, chosen)
            cycle_rank = len(chosen) - G.n + c
            total = total + x1 ** (c - 1) * y1 ** cycle_rank
    return total


def tutte_at_one_q(G: Multigraph) -> QTPoly:
    """Tu(1, q), evaluated after the full bivariate construction."""
    full = tutte(G)
    return substitute_t(substitute_q(full, ONE), Q)


def _spanning_trees(n, simple_edges):
    if n == 1:
        yield ()
        return
    for subset in itertools.combinations(simple_edges, n - 1):
        if _component_count(n, subset) == 1:
            yield subset


def _rooted_relations(n, tree_edges):
    """Parent map and ancestor sets for the tree rooted at vertex 1."""
    neighbors = {v: [] for v in range(1, n + 1)}
    for i, j in tree_edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    parent = {1: None}
    ancestors = {1: frozenset()}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in neighbors[v]:
            if w not in parent:
                parent[w] = v
                ancestors[w] = ancestors[v] | {v}
                stack.append(w)
    return parent, ancestors


def inversion_poly(G: Multigraph) -> QTPoly:
    """Spanning-tree generating polynomial by kappa-inversions.

    Trees live in the simple support graph, are rooted at vertex 1,
    and each tree edge carries the q-integer of its multiplicity.  A
    kappa-inversion is a pair (i, j) of non-root vertices with i an
    ancestor of j, i > j, and j adjacent in G to the parent of i; it
    contributes the multiplicity of the edge {parent(i), j}.
    """
    simple = G.simple_edges()
    if _component_count(G.n, simple) != 1:
        return QTPoly.zero()
    total = QTPoly.zero()
    for tree in _spanning_trees(G.n, simple):
        parent, ancestors = _rooted_relations(G.n, tree)
        kappa = 0
        for j in range(2, G.n + 1):
            for i in ancestors[j]:
                if i == 1 or i <= j:
                    continue
                kappa += G.multiplicity(parent[i], j)
        weight = QTPoly.monomial(1, kappa, 0)
        for i, j in tree:
            weight = weight * q_integer(G.multiplicity(i, j))
        total = total + weight
    loops = G.loop_count()
    return total * QTPoly.monomial(1, loops, 0)


def verify_tutte_cumulant(G: Multigraph) -> bool:
    """Triple cross-check: inversion polynomial, Tu(1, q), and the
    q-partial cumulant of the family q^{edges within}."""
    from .cumulants import SubsetFamily, q_partial_cumulant
    from .ring import NotDivisible

    inv_route = inversion_poly(G)
    tutte_route = tutte_at_one_q(G)
    family = SubsetFamily.build(
        G.vertices(),
        lambda B: QTPoly.monomial(1, G.edges_within(B), 0),
    )
    try:
        cumulant_route = q_partial_cumulant(family, frozenset(G.vertices()))
    except NotDivisible:
        return False
    return inv_route == tutte_route == cumulant_route
