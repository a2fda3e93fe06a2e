"""Directed graphs with three edge types and their coloring series.

An edge weighs a coloring through one of three gates: strict descent
(type I), weak descent (type II), or the two-way gate that awards q to
a strict descent and 1 otherwise (double).  Summing the weights over
all colorings gives a quasisymmetric function; a tuple of skew shapes
turns into such a graph whose series is its LLT polynomial, which is
the sole fact pinning down all the direction conventions below.
"""

from __future__ import annotations

import itertools

from .errors import LLTLabError
from .graphpoly import Multigraph, inversion_poly, is_connected
from .ring import ONE, Q, QTPoly, substitute_q
from .shapes import Cell, ColoredTuple, shifted_content
from .symfunc import MONOMIAL_Q, QSymExpansion


class WrongEdgeType(LLTLabError):
    pass


_RULES = ("pi1", "pid", "pi_prime", "pi_doubleprime", "pi_tripleprime")


class LLTGraph:
    """Finite directed graph with edge sets e1, e2, ed.

    Vertices are arbitrary hashable ids kept in a fixed order; an
    optional color map (surjective onto 1..r, constant on e1/e2 edges)
    turns the graph into a colored one, and an optional label map
    carries display labels such as shifted contents.
    """

    __slots__ = ("vertices", "e1", "e2", "ed", "colors", "labels")

    def __init__(self, vertices, e1=(), e2=(), ed=(), colors=None, labels=None):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertices")
        known = set(vertices)

        def check_edges(pairs, name):
            out = set()
            for u, v in pairs:
                if u not in known or v not in known:
                    raise ValueError("%s edge (%r, %r) off the vertex set" % (name, u, v))
                if u == v:
                    raise ValueError("self-loop (%r, %r)" % (u, v))
                out.add((u, v))
            return frozenset(out)

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "e1", check_edges(e1, "type I"))
        object.__setattr__(self, "e2", check_edges(e2, "type II"))
        object.__setattr__(self, "ed", check_edges(ed, "double"))
        if colors is not None:
            colors = dict(colors)
            if set(colors) != known:
                raise ValueError("coloring must cover exactly the vertices")
            r = max(colors.values())
            if set(colors.values()) != set(range(1, r + 1)):
                raise ValueError("coloring must be surjective onto 1..r")
            for u, v in self.e1 | self.e2:
                if colors[u] != colors[v]:
                    raise ValueError(
                        "type I/II edge (%r, %r) crosses colors" % (u, v)
                    )
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "labels", dict(labels) if labels is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("LLTGraph is immutable")

    def _key(self):
        color_key = None
        if self.colors is not None:
            color_key = frozenset(self.colors.items())
        return (self.vertices, self.e1, self.e2, self.ed, color_key)

    def __eq__(self, other):
        return isinstance(other, LLTGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "LLTGraph(%d vertices, %d/%d/%d edges)" % (
            len(self.vertices),
            len(self.e1),
            len(self.e2),
            len(self.ed),
        )

    def color_count(self) -> int:
        if self.colors is None:
            raise ValueError("graph is not colored")
        return max(self.colors.values())

    def with_edges(self, e1=None, e2=None, ed=None, keep_colors=True) -> "LLTGraph":
        """Copy with some edge sets swapped out.  Rewrites that move a
        double edge into a plain slot can cross color classes, so they
        pass keep_colors=False and return an uncolored graph."""
        return LLTGraph(
            self.vertices,
            self.e1 if e1 is None else e1,
            self.e2 if e2 is None else e2,
            self.ed if ed is None else ed,
            self.colors if keep_colors else None,
            self.labels,
        )

    def restricted(self, keep) -> "LLTGraph":
        """Induced subgraph on the given vertices."""
        keep = set(keep)
        inside = lambda e: e[0] in keep and e[1] in keep
        colors = None
        if self.colors is not None:
            kept = sorted({c for v, c in self.colors.items() if v in keep})
            renumber = {c: i for i, c in enumerate(kept, start=1)}
            colors = {v: renumber[c] for v, c in self.colors.items() if v in keep}
        labels = None
        if self.labels is not None:
            labels = {v: l for v, l in self.labels.items() if v in keep}
        return LLTGraph(
            tuple(v for v in self.vertices if v in keep),
            {e for e in self.e1 if inside(e)},
            {e for e in self.e2 if inside(e)},
            {e for e in self.ed if inside(e)},
            colors,
            labels,
        )


def graph_from_tuple(tup: ColoredTuple) -> LLTGraph:
    """Graph of a tuple: strict edges down columns, weak edges along
    rows, double edges along attacking pairs, colors inherited, labels
    the shifted contents."""
    cells = tup.cells
    present = set(cells)
    e1 = []
    e2 = []
    for cell in cells:
        below = Cell(cell.shape, cell.x, cell.y - 1)
        if below in present:
            e1.append((cell, below))
        left = Cell(cell.shape, cell.x - 1, cell.y)
        if left in present:
            e2.append((cell, left))
    colors = {cell: tup.colors[cell.shape - 1] for cell in cells}
    labels = {cell: shifted_content(cell, tup.ell) for cell in cells}
    return LLTGraph(cells, e1, e2, tup.attack_pairs, colors, labels)


def _vertex_partitions(items):
    items = list(items)
    out = []
    blocks: list[list] = []

    def extend(index):
        if index == len(items):
            out.append(tuple(tuple(b) for b in blocks))
            return
        x = items[index]
        for block in blocks:
            block.append(x)
            extend(index + 1)
            block.pop()
        blocks.append([x])
        extend(index + 1)
        blocks.pop()

    extend(0)
    return out


def _ordered_set_partitions(items):
    for pi in _vertex_partitions(items):
        for perm in itertools.permutations(pi):
            yield perm


def llt_of_graph(G: LLTGraph) -> QSymExpansion:
    """Sum of edge-gate weights over all colorings, collected in the
    monomial quasisymmetric basis by sweeping surjections only."""
    n = len(G.vertices)
    coeffs: dict[tuple[int, ...], QTPoly] = {}
    for blocks in _ordered_set_partitions(G.vertices):
        level = {}
        for height, block in enumerate(blocks, start=1):
            for v in block:
                level[v] = height
        if any(level[u] <= level[v] for u, v in G.e1):
            continue
        if any(level[u] < level[v] for u, v in G.e2):
            continue
        power = sum(1 for u, v in G.ed if level[u] > level[v])
        alpha = tuple(len(block) for block in blocks)
        prior = coeffs.get(alpha, QTPoly.zero())
        coeffs[alpha] = prior + QTPoly.monomial(1, power, 0)
    return QSymExpansion(MONOMIAL_Q, coeffs, n)


def local_transform(G: LLTGraph, edge, rule: str):
    """One local rewriting step, as a list of (coefficient, graph).

    pi1 trades a type I edge for minus its reversed type II version;
    pid, pi_prime and pi_doubleprime resolve a double edge three ways;
    pi_tripleprime introduces a fresh non-edge as type I plus reversed
    type II.  All five leave llt_of_graph invariant.  Results are
    uncolored because the rewrites can move an edge across color
    classes.
    """
    if rule not in _RULES:
        raise ValueError("unknown rule %r" % (rule,))
    u, v = edge
    reverse = (v, u)
    if rule == "pi1":
        if edge not in G.e1:
            raise WrongEdgeType("pi1 wants a type I edge, got %r" % (edge,))
        dropped = G.with_edges(e1=G.e1 - {edge}, keep_colors=False)
        flipped = G.with_edges(
            e1=G.e1 - {edge}, e2=G.e2 | {reverse}, keep_colors=False
        )
        return [(ONE, dropped), (-ONE, flipped)]
    if rule == "pi_tripleprime":
        if edge in G.e1 | G.e2 | G.ed or reverse in G.e1 | G.e2 | G.ed:
            raise WrongEdgeType("pi_tripleprime wants a non-edge, got %r" % (edge,))
        as_one = G.with_edges(e1=G.e1 | {edge}, keep_colors=False)
        as_two = G.with_edges(e2=G.e2 | {reverse}, keep_colors=False)
        return [(ONE, as_one), (ONE, as_two)]
    if edge not in G.ed:
        raise WrongEdgeType("%s wants a double edge, got %r" % (rule, edge))
    dropped = G.with_edges(ed=G.ed - {edge}, keep_colors=False)
    as_one = G.with_edges(ed=G.ed - {edge}, e1=G.e1 | {edge}, keep_colors=False)
    as_two = G.with_edges(ed=G.ed - {edge}, e2=G.e2 | {reverse}, keep_colors=False)
    if rule == "pid":
        return [(Q, dropped), (ONE - Q, as_two)]
    if rule == "pi_prime":
        return [(ONE, as_two), (Q, as_one)]
    return [(ONE, dropped), (Q - ONE, as_one)]


def pi(G: LLTGraph):
    """Resolve every type I and double edge, returning a combination of
    graphs with only type II edges."""
    order = {v: k for k, v in enumerate(G.vertices)}
    pending = [(QTPoly.one(), G)]
    finished: dict[LLTGraph, QTPoly] = {}
    while pending:
        coeff, graph = pending.pop()
        leftover = sorted(
            graph.e1 | graph.ed, key=lambda e: (order[e[0]], order[e[1]])
        )
        if not leftover:
            finished[graph] = finished.get(graph, QTPoly.zero()) + coeff
            continue
        edge = leftover[0]
        rule = "pi1" if edge in graph.e1 else "pid"
        for piece_coeff, piece in local_transform(graph, edge, rule):
            pending.append((coeff * piece_coeff, piece))
    return [(c, g) for g, c in finished.items() if not c.is_zero()]


def llt_of_combination(combination) -> QSymExpansion:
    total = None
    for coeff, graph in combination:
        piece = llt_of_graph(graph).scaled(coeff)
        total = piece if total is None else total + piece
    if total is None:
        raise ValueError("empty combination has no degree")
    return total


def resolve(G: LLTGraph, E, variant: str) -> LLTGraph:
    """Replace double edges by plain ones: the chosen subset E becomes
    type I; the rest is dropped (sharp), reversed into type II (tilde),
    or dropped along with every type II edge (hat).  The result is
    uncolored since E may cross color classes."""
    E = frozenset(E)
    if not E <= G.ed:
        raise ValueError("E must be a subset of the double edges")
    e1 = G.e1 | E
    if variant == "sharp":
        return G.with_edges(e1=e1, ed=frozenset(), keep_colors=False)
    leftovers = {(v, u) for u, v in G.ed - E}
    if variant == "tilde":
        return G.with_edges(
            e1=e1, e2=G.e2 | leftovers, ed=frozenset(), keep_colors=False
        )
    if variant == "hat":
        return G.with_edges(
            e1=e1, e2=frozenset(), ed=frozenset(), keep_colors=False
        )
    raise ValueError("unknown variant %r" % (variant,))


def quotient_by_colors(G: LLTGraph) -> Multigraph:
    """Identify same-colored vertices; every edge of any type becomes
    an undirected multigraph edge, same-color ones becoming loops."""
    r = G.color_count()
    edges = []
    for u, v in itertools.chain(G.e1, G.e2, G.ed):
        edges.append((G.colors[u], G.colors[v]))
    return Multigraph(r, edges)


def f_connected(G: LLTGraph) -> bool:
    return is_connected(quotient_by_colors(G))


def _double_quotient(G: LLTGraph, E) -> Multigraph:
    """Multigraph on the colors built from the chosen double edges
    alone; the inversion-polynomial factor of the monomial-positive
    expansion lives on this graph."""
    r = G.color_count()
    return Multigraph(r, [(G.colors[u], G.colors[v]) for u, v in E])


def graph_cumulant(G: LLTGraph) -> QSymExpansion:
    """Cumulant of the family of color-class restrictions."""
    from .cumulants import SubsetFamily, q_partial_cumulant

    colors = G.colors
    if colors is None:
        raise ValueError("graph_cumulant needs a colored graph")
    ground = frozenset(colors.values())

    def restricted_llt(B):
        keep = [v for v in G.vertices if colors[v] in B]
        return llt_of_graph(G.restricted(keep))

    family = SubsetFamily.build(ground, restricted_llt)
    return q_partial_cumulant(family, ground)


def _coloring_sweep(G: LLTGraph, weight_of_key) -> QSymExpansion:
    """Collect weight(descended doubles) x^f over colorings respecting
    the strict/weak gates of the plain edges.

    The weight callback receives the multiset of color pairs spanned
    by the doubles the coloring descends, as a sorted tuple, which is
    all either expansion theorem looks at and makes a good cache key.
    """
    n = len(G.vertices)
    colors = G.colors
    coeffs: dict[tuple[int, ...], QTPoly] = {}
    for blocks in _ordered_set_partitions(G.vertices):
        level = {}
        for height, block in enumerate(blocks, start=1):
            for v in block:
                level[v] = height
        if any(level[u] <= level[v] for u, v in G.e1):
            continue
        if any(level[u] < level[v] for u, v in G.e2):
            continue
        key = tuple(
            sorted(
                (min(colors[u], colors[v]), max(colors[u], colors[v]))
                for u, v in G.ed
                if level[u] > level[v]
            )
        )
        weight = weight_of_key(key)
        if weight.is_zero():
            continue
        alpha = tuple(len(block) for block in blocks)
        prior = coeffs.get(alpha, QTPoly.zero())
        coeffs[alpha] = prior + weight
    return QSymExpansion(MONOMIAL_Q, coeffs, n)


def verify_connected_expansion(G: LLTGraph) -> bool:
    """Check that the cumulant at q+1 equals the sum of q^(|E|-r+1)
    times the sharp resolutions at q+1 over color-connecting subsets E.

    The left side runs through the set-partition cumulant machinery;
    the right side is summed coloring by coloring, where only subsets
    of the descended doubles survive, so the routes stay independent.
    """
    r = G.color_count()
    lhs = graph_cumulant(G).map_coefficients(lambda p: substitute_q(p, Q + ONE))

    cache: dict[tuple, QTPoly] = {}

    def weight(key):
        if key in cache:
            return cache[key]
        total = QTPoly.zero()
        for size in range(len(key) + 1):
            for combo in itertools.combinations(key, size):
                if is_connected(Multigraph(r, combo)):
                    total = total + QTPoly.monomial(1, size - r + 1, 0)
        cache[key] = total
        return total

    rhs = _coloring_sweep(G, weight)
    return lhs == rhs


def verify_monomial_positivity(G: LLTGraph) -> bool:
    """Check that the cumulant equals the coloring sweep weighted by
    the inversion polynomial of the color quotient of the descended
    doubles; a disconnecting descent set contributes zero."""
    r = G.color_count()
    lhs = graph_cumulant(G)
    cache: dict[tuple, QTPoly] = {}

    def weight(key):
        if key not in cache:
            cache[key] = inversion_poly(Multigraph(r, key))
        return cache[key]

    rhs = _coloring_sweep(G, weight)
    return lhs == rhs


def monomial_positive_expansion(G: LLTGraph):
    """The certified monomial-positive decomposition of the cumulant.

    Returns triples (E, inversion polynomial, tilde resolution), one
    per subset E of double edges whose color quotient is connected,
    after checking that the weighted sum of the resolutions reproduces
    the cumulant exactly.
    """
    order = {v: k for k, v in enumerate(G.vertices)}
    doubles = sorted(G.ed, key=lambda e: (order[e[0]], order[e[1]]))
    pieces = []
    total = None
    for size in range(len(doubles) + 1):
        for combo in itertools.combinations(doubles, size):
            E = frozenset(combo)
            if not is_connected(_double_quotient(G, E)):
                continue
            factor = inversion_poly(_double_quotient(G, E))
            tilde = resolve(G, E, "tilde")
            pieces.append((E, factor, tilde))
            piece = llt_of_graph(tilde).scaled(factor)
            total = piece if total is None else total + piece
    kappa = graph_cumulant(G)
    matched = kappa.is_zero() if total is None else total == kappa
    if not matched:
        raise LLTLabError("monomial-positive expansion failed to certify")
    return pieces
