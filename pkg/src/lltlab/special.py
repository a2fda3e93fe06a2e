"""Vertical-strip elementary expansions, lattice-path dictionaries,
melting lollipops, and the square-strict-tableau formula for triples.

Strips are tuples whose components carry at most one box per row.
Their graphs have no weak edges, so resolving the doubles leaves
strict edges only, every edge pointing from a smaller to a larger
label, and reachability from the label-smallest sources splits the
vertices into classes; the sorted class sizes index the elementary
basis.  The same strips are encoded as Schroder paths, with boxes
below the path recording attack windows and diagonal crossings
recording cells chained inside one column.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from fractions import Fraction

from .cumulants import llt_cumulant, set_partitions
from .errors import LLTLabError
from .graphpoly import Multigraph, inversion_poly
from .llt import llt
from .lltgraphs import LLTGraph, graph_from_tuple
from .ring import NegativeExponentSubstitution, QTPoly, shift_q
from .shapes import (
    Cell,
    ColoredTuple,
    SkewShape,
    check_partition,
    partitions_of,
    restrict,
    shifted_content,
)
from .symfunc import (
    ELEMENTARY,
    MONOMIAL_Q,
    SCHUR,
    QSymExpansion,
    SymExpansion,
    monomialq_to_schur,
)
from .tableaux import des_set, enumerate_syt


class NotVerticalStrip(LLTLabError):
    """A component has two boxes in the same row."""


class HasNonTypeIEdges(LLTLabError):
    """Source classes are defined for graphs with strict edges only."""


class InvalidPath(LLTLabError):
    """Step sequence is not a Schroder path, or has no strip preimage."""


class InvalidParkingFunction(LLTLabError):
    """Sequence violates the cumulative parking condition."""


class ParameterOutOfRange(LLTLabError):
    """Lollipop parameters outside m >= 1, n >= 0, 0 <= k <= m-1."""


class NotTriple(LLTLabError):
    """The square-strict machinery needs a tuple of exactly 3 shapes."""


# ---------------------------------------------------------------------------
# source classes of strict-edge graphs


def source_classes(G: LLTGraph) -> dict:
    """Vertices grouped by the smallest-labeled source reaching them.

    A source has no incoming strict edge.  Labels come from the graph's
    label map when present and from the vertex ids otherwise; the
    returned dict maps each class's source label to the sorted labels
    of its members.
    """
    if G.e2 or G.ed:
        raise HasNonTypeIEdges("source classes need a graph with strict edges only")
    labels = G.labels if G.labels is not None else {v: v for v in G.vertices}
    out = {v: [] for v in G.vertices}
    has_incoming = set()
    for u, v in G.e1:
        out[u].append(v)
        has_incoming.add(v)
    sources = sorted(
        (v for v in G.vertices if v not in has_incoming), key=lambda v: labels[v]
    )
    owner = {}
    for s in sources:
        seen = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            owner.setdefault(v, s)
            for w in out[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    if len(owner) != len(G.vertices):
        raise ValueError("strict edges form a cycle; some vertex has no source")
    classes = {}
    for v, s in owner.items():
        classes.setdefault(labels[s], []).append(labels[v])
    return {s: sorted(members) for s, members in sorted(classes.items())}


def sources_partition(G: LLTGraph) -> tuple:
    """Sorted class sizes of source_classes, as a partition."""
    classes = source_classes(G)
    return tuple(sorted((len(members) for members in classes.values()), reverse=True))


# ---------------------------------------------------------------------------
# vertical strips and their elementary expansions


def is_vertical_strip_tuple(tup: ColoredTuple) -> bool:
    for s in tup.shapes:
        rows = [y for _, y in s.cells()]
        if len(set(rows)) != len(rows):
            return False
    return True


def _require_vertical(tup: ColoredTuple) -> None:
    if not is_vertical_strip_tuple(tup):
        raise NotVerticalStrip("every component must have at most one box per row")


def _strip_edge_tables(tup: ColoredTuple):
    """Index-based chain and double edges of the strip's graph.

    Cells are numbered in shifted-content order, so every edge points
    from a smaller to a larger index and one ascending pass computes
    the smallest source reaching each vertex.
    """
    G = graph_from_tuple(tup)
    index = {v: i for i, v in enumerate(G.vertices)}
    chains = sorted((index[u], index[v]) for u, v in G.e1)
    doubles = sorted((index[u], index[v]) for u, v in G.ed)
    return len(G.vertices), chains, doubles


def _theta_partition(n, incoming, mask):
    """Class sizes for the strict graph selected by the double-edge mask.

    incoming[v] lists (bit, u) pairs; bit 0 marks an always-on chain
    edge, other bits select a double edge.
    """
    theta = list(range(n))
    for v in range(n):
        best = v
        for bit, u in incoming[v]:
            if bit == 0 or (bit & mask):
                if theta[u] < best:
                    best = theta[u]
        theta[v] = best
    return tuple(sorted(Counter(theta).values(), reverse=True))


@functools.lru_cache(maxsize=4096)
def _e_expansion_of_shapes(shapes) -> SymExpansion:
    tup = ColoredTuple(shapes)
    n, chains, doubles = _strip_edge_tables(tup)
    incoming = [[] for _ in range(n)]
    for u, v in chains:
        incoming[v].append((0, u))
    for k, (u, v) in enumerate(doubles):
        incoming[v].append((1 << k, u))
    coeffs = {}
    for mask in range(1 << len(doubles)):
        lam = _theta_partition(n, incoming, mask)
        prior = coeffs.get(lam, QTPoly.zero())
        coeffs[lam] = prior + QTPoly.monomial(1, mask.bit_count(), 0)
    return SymExpansion(ELEMENTARY, coeffs, n)


def vertical_e_expansion(tup: ColoredTuple) -> SymExpansion:
    """Elementary expansion of the strip series after q -> q+1.

    Sums q^{|E|} e over subsets E of the double edges, indexed by the
    source-class partition of the strict resolution picking E.
    """
    _require_vertical(tup)
    return _e_expansion_of_shapes(tup.shapes)


def vertical_e_cumulant(tup: ColoredTuple) -> SymExpansion:
    """Elementary expansion of the strip cumulant after q -> q+1.

    Same subset sum restricted to E whose color quotient is connected,
    weighted q^{|E|+1-r}.  Computed by set-partition inversion from the
    unrestricted sums of the color restrictions, which agrees with the
    direct filtered sweep because class sizes split over parts of the
    tuple that no chosen edge joins.
    """
    _require_vertical(tup)
    ground = frozenset(range(1, tup.num_colors + 1))
    unrestricted = {}
    for k in range(1, len(ground) + 1):
        for combo in itertools.combinations(sorted(ground), k):
            sub = restrict(tup, combo)
            unrestricted[frozenset(combo)] = _e_expansion_of_shapes(sub.shapes)
    connected = {}
    for subset in sorted(unrestricted, key=len):
        total = unrestricted[subset]
        for pi in set_partitions(sorted(subset)):
            if len(pi) == 1:
                continue
            product = None
            for block in pi:
                piece = connected[frozenset(block)]
                product = piece if product is None else product * piece
            total = total + product.scaled(QTPoly.integer(-1))
        connected[subset] = total
    full = connected[ground]
    shifted = full.map_coefficients(lambda p: shift_q(p, 1 - len(ground)))
    for _, coeff in shifted.items():
        if any(qe < 0 for (qe, _), _ in coeff.items()):
            raise NegativeExponentSubstitution(
                "a connected subset came out smaller than r-1 edges"
            )
    return shifted


# ---------------------------------------------------------------------------
# Schroder paths


NORTH = "north"
EAST = "east"
DIAGONAL = "diagonal"

_STEP_LETTERS = {NORTH: "N", EAST: "E", DIAGONAL: "D"}
_LETTER_STEPS = {"N": NORTH, "E": EAST, "D": DIAGONAL}


class SchroderPath:
    """Path from (0,0) to (n,n) over north, east, and diagonal steps,
    weakly above the main diagonal with every diagonal step strictly
    above it."""

    __slots__ = ("steps", "n")

    def __init__(self, steps):
        steps = tuple(steps)
        x = y = 0
        for s in steps:
            if s == NORTH:
                y += 1
            elif s == EAST:
                x += 1
                if x > y:
                    raise InvalidPath("path dips below the diagonal")
            elif s == DIAGONAL:
                if x >= y:
                    raise InvalidPath("diagonal step touches the diagonal")
                x += 1
                y += 1
            else:
                raise InvalidPath("unknown step %r" % (s,))
        if x != y:
            raise InvalidPath("path must end on the diagonal")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "n", x)

    def __setattr__(self, name, value):
        raise AttributeError("SchroderPath is immutable")

    def __eq__(self, other):
        return isinstance(other, SchroderPath) and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return "SchroderPath(%r)" % (self.word(),)

    def word(self) -> str:
        return "".join(_STEP_LETTERS[s] for s in self.steps)

    @classmethod
    def from_word(cls, word: str) -> "SchroderPath":
        try:
            return cls(_LETTER_STEPS[c] for c in word.upper())
        except KeyError as exc:
            raise InvalidPath("unknown step letter %r" % (exc.args[0],)) from None

    def row_data(self):
        """Where the path crosses each row line and whether diagonally."""
        crossing = [0] * (self.n + 1)
        diagonal = [False] * (self.n + 1)
        x = row = 0
        for s in self.steps:
            if s == NORTH:
                row += 1
                crossing[row] = x
            elif s == DIAGONAL:
                row += 1
                x += 1
                crossing[row] = x
                diagonal[row] = True
            else:
                x += 1
        return crossing, diagonal


def schroder_paths(n: int):
    """Every SchroderPath of size n, in lexicographic step order."""
    if n < 0:
        raise ValueError("path size must be nonnegative")
    steps = []

    def walk(x, y):
        if x == n and y == n:
            yield SchroderPath(steps)
            return
        if x < y and y < n:
            steps.append(DIAGONAL)
            yield from walk(x + 1, y + 1)
            steps.pop()
        if x < y:
            steps.append(EAST)
            yield from walk(x + 1, y)
            steps.pop()
        if y < n:
            steps.append(NORTH)
            yield from walk(x, y + 1)
            steps.pop()

    yield from walk(0, 0)


# ---------------------------------------------------------------------------
# strips <-> paths


def tuple_to_schroder(tup: ColoredTuple) -> SchroderPath:
    """Path whose boxes below row j mark the labels attacked by j and
    whose diagonal crossings mark cells directly below their window's
    left neighbor."""
    _require_vertical(tup)
    ell = tup.ell
    cells = tup.cells
    n = len(cells)
    ctil = [shifted_content(c, ell) for c in cells]
    if len(set(ctil)) != n:
        raise LLTLabError("tied shifted contents on a vertical strip")
    steps = []
    pos = 0
    for j in range(n):
        lower = ctil[j] - ell
        first_attacker = None
        for i in range(j):
            if ctil[i] > lower:
                first_attacker = i
                break
        p = first_attacker if first_attacker is not None else j
        diag = lower in ctil[:j]
        east = p - pos - (1 if diag else 0)
        if east < 0:
            raise LLTLabError("attack windows of the strip are inconsistent")
        steps.extend([EAST] * east)
        steps.append(DIAGONAL if diag else NORTH)
        pos = p
    steps.extend([EAST] * (n - pos))
    return SchroderPath(steps)


def _pick_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Some non-integer rational strictly between the bounds."""
    for m in itertools.count(2):
        candidate = lo + (hi - lo) / m
        if candidate.denominator > 1:
            return candidate
    raise AssertionError("unreachable")


def schroder_to_tuple(path: SchroderPath) -> ColoredTuple:
    """Canonical strip preimage of a path.

    Labels are placed on the rational line so that label j sits within
    distance 1 exactly of the labels the path says it attacks, one full
    unit above a diagonal crossing's parent.  Integer parts become
    contents, fractional parts order the columns, and the result is
    shifted so the deepest column bottoms out at content zero.  The
    rebuilt path is compared with the input, so a step sequence with no
    strip preimage is rejected rather than silently misread.
    """
    n = path.n
    if n == 0:
        raise InvalidPath("the empty path has no strip preimage")
    crossing, diagonal = path.row_data()
    x = [None] * (n + 1)
    chain_of = [None] * (n + 1)
    chains = []
    for j in range(1, n + 1):
        p = crossing[j]
        if diagonal[j]:
            if p < 1 or x[p] is None:
                raise InvalidPath("diagonal crossing without a parent")
            x[j] = x[p] + 1
            if j > 1 and x[j] <= x[j - 1]:
                raise InvalidPath("diagonal crossing breaks the label order")
            if p <= j - 2 and x[j] >= x[p + 1] + 1:
                raise InvalidPath("diagonal crossing escapes its attack window")
            chain = chain_of[p]
            chains[chain].append(j)
            chain_of[j] = chain
        else:
            lo = x[j - 1] if j > 1 else Fraction(0)
            if p >= 1:
                lo = max(lo, x[p] + 1)
            hi = x[p + 1] + 1 if p <= j - 2 else lo + 1
            if lo >= hi:
                raise InvalidPath("empty placement window for label %d" % j)
            x[j] = _pick_between(lo, hi)
            chain_of[j] = len(chains)
            chains.append([j])
    columns = []
    for members in chains:
        top = members[0]
        gamma = x[top].numerator // x[top].denominator
        rho = x[top] - gamma
        columns.append((rho, gamma, len(members)))
    columns.sort(key=lambda col: (col[0], col[1]))
    deepest = max(gamma + length - 1 for _, gamma, length in columns)
    shapes = []
    for _, gamma, length in columns:
        skipped = deepest - (gamma + length - 1)
        shapes.append(SkewShape((1,) * (skipped + length), (1,) * skipped))
    result = ColoredTuple(shapes)
    if tuple_to_schroder(result) != path:
        raise InvalidPath("path does not describe a vertical-strip tuple")
    return result


# ---------------------------------------------------------------------------
# parking functions


def _is_parking(values) -> bool:
    ordered = sorted(values)
    return all(v <= i for i, v in enumerate(ordered, start=1))


def parking_functions(n: int) -> list:
    """All parking sequences of length n; there are (n+1)^{n-1}."""
    if n < 0:
        raise ValueError("parking length must be nonnegative")
    if n == 0:
        return [()]
    return [
        values
        for values in itertools.product(range(1, n + 1), repeat=n)
        if _is_parking(values)
    ]


def parking_to_schroder(P) -> SchroderPath:
    """Path of a parking sequence: a north run per value class on top
    of one leading north-east pair, with every east step followed by a
    north step fused into a diagonal."""
    values = tuple(P)
    n = len(values) + 1
    if not all(isinstance(v, int) and 1 <= v <= n - 1 for v in values):
        raise InvalidParkingFunction("values must lie in 1..%d" % (n - 1))
    if not _is_parking(values):
        raise InvalidParkingFunction("cumulative parking condition fails")
    counts = Counter(values)
    raw = [NORTH, EAST]
    for i in range(1, n):
        raw.extend([NORTH] * counts[i])
        raw.append(EAST)
    steps = []
    k = 0
    while k < len(raw):
        if raw[k] == EAST and k + 1 < len(raw) and raw[k + 1] == NORTH:
            steps.append(DIAGONAL)
            k += 2
        else:
            steps.append(raw[k])
            k += 1
    return SchroderPath(steps)


def single_cell_cumulant_check(r: int) -> bool:
    """Does the cumulant of r separately colored boxes match the strip
    series summed over parking sequences of length r-1?

    Checks the plain and cospin normalizations against the parking sum;
    they agree with each other on single-cell tuples since the cospin
    shift vanishes there.
    """
    if r < 1:
        raise ValueError("need at least one box")
    tup = ColoredTuple([(1,)] * r)
    plain = llt_cumulant(tup, "plain")
    cospin = llt_cumulant(tup, "cospin")
    if plain != cospin:
        return False
    total = QSymExpansion.zero(MONOMIAL_Q, r)
    for P in parking_functions(r - 1):
        total = total + llt(schroder_to_tuple(parking_to_schroder(P)))
    return plain == total


# ---------------------------------------------------------------------------
# melting lollipops


def melting_lollipop(m: int, n: int, k: int) -> LLTGraph:
    """Clique on 1..m with the spokes from 1..k into m erased, joined
    to a path on m..m+n; edges are double edges from smaller to larger
    vertex."""
    if m < 1 or n < 0 or not 0 <= k <= m - 1:
        raise ParameterOutOfRange("need m >= 1, n >= 0, 0 <= k <= m-1")
    edges = {
        (i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)
    }
    edges -= {(i, m) for i in range(1, k + 1)}
    edges |= {(i, i + 1) for i in range(m, m + n)}
    return LLTGraph(range(1, m + n + 1), ed=sorted(edges))


def _require_interval_graph(G: LLTGraph) -> int:
    n = len(G.vertices)
    if set(G.vertices) != set(range(1, n + 1)) or G.e1 or G.e2:
        raise ValueError("expected double edges only on vertices 1..n")
    for u, v in G.ed:
        if u >= v:
            raise ValueError("edges must point from smaller to larger vertex")
    return n


def _syt_reverse_descents(lam, n):
    for T in enumerate_syt(ColoredTuple([lam])):
        yield frozenset(n + 1 - i for i in des_set(T))


def hny_schur(G: LLTGraph) -> SymExpansion:
    """Schur expansion from reverse descents weighted by in-degrees.

    Valid for melting lollipops and their disjoint unions; on other
    interval graphs the formula is still computed so that the known
    counterexamples can be exhibited.
    """
    n = _require_interval_graph(G)
    indegree = Counter(v for _, v in G.ed)
    coeffs = {}
    for lam in partitions_of(n):
        total = QTPoly.zero()
        for rev in _syt_reverse_descents(lam, n):
            power = sum(indegree[i] for i in rev)
            total = total + QTPoly.monomial(1, power, 0)
        coeffs[lam] = total
    return SymExpansion(SCHUR, coeffs, n)


def lollipop_partition_schur(G: LLTGraph, blocks) -> SymExpansion:
    """Schur expansion of the product of block restrictions.

    The within-block edges are laid out as one disjoint union on
    consecutive vertices (blocks ordered by smallest member, each
    block keeping its internal order) and the descent formula is read
    off that graph.  Relabeling matters: counting the same edges at
    their original positions gives a different, generally wrong
    polynomial whenever the blocks interleave.
    """
    n = _require_interval_graph(G)
    blocks = [tuple(sorted(B)) for B in blocks]
    flattened = [v for B in blocks for v in B]
    if sorted(flattened) != sorted(G.vertices):
        raise ValueError("blocks must partition the vertex set")
    blocks.sort(key=lambda B: B[0])
    relabel = {}
    for B in blocks:
        for v in B:
            relabel[v] = len(relabel) + 1
    block_of = {v: i for i, B in enumerate(blocks) for v in B}
    edges = sorted(
        (relabel[u], relabel[v]) for u, v in G.ed if block_of[u] == block_of[v]
    )
    return hny_schur(LLTGraph(range(1, n + 1), ed=edges))


def lollipop_cumulant_schur(G: LLTGraph, colors) -> SymExpansion:
    """Schur expansion of the graph cumulant via rooted-tree inversion
    polynomials of the color quotients of incoming subgraphs."""
    n = _require_interval_graph(G)
    colored = LLTGraph(G.vertices, ed=G.ed, colors=colors)
    palette = colored.colors
    r = colored.color_count()
    coeffs = {}
    for lam in partitions_of(n):
        total = QTPoly.zero()
        for rev in _syt_reverse_descents(lam, n):
            kept = [(palette[u], palette[v]) for u, v in G.ed if v in rev]
            total = total + inversion_poly(Multigraph(r, kept))
        coeffs[lam] = total
    return SymExpansion(SCHUR, coeffs, n)


# ---------------------------------------------------------------------------
# triples of shapes and square-strict tableaux


def _require_triple(nu) -> ColoredTuple:
    tup = nu if isinstance(nu, ColoredTuple) else ColoredTuple(nu)
    if tup.ell != 3:
        raise NotTriple("expected a tuple of exactly 3 shapes")
    return tup


def d_prime(nu) -> Counter:
    """Multiset of label pairs (big, small) three apart carried by
    cells stacked with the larger label lower and weakly left."""
    tup = _require_triple(nu)
    out = Counter()
    for a in tup.cells:
        ca = shifted_content(a, 3)
        for b in tup.cells:
            cb = shifted_content(b, 3)
            if ca == cb + 3 and a.y < b.y and a.x <= b.x:
                out[(ca, cb)] += 1
    return out


def enumerate_rsst(lam, entries):
    """Fillings of lam from the entry multiset with rows strict to the
    right, columns strict upward, and jumps of at least 3 across every
    southwest step.  Yields dicts keyed by (x, y)."""
    lam = check_partition(lam)
    entries = sorted(entries)
    cells = [(x, y) for y, row in enumerate(lam, start=1) for x in range(1, row + 1)]
    if len(entries) != len(cells):
        raise ValueError(
            "entry multiset has %d values for %d cells" % (len(entries), len(cells))
        )
    pool = sorted(Counter(entries).items())
    remaining = [count for _, count in pool]
    values = {}

    def fill(k):
        if k == len(cells):
            yield dict(values)
            return
        x, y = cells[k]
        for idx, (val, _) in enumerate(pool):
            if remaining[idx] == 0:
                continue
            if x > 1 and values[(x - 1, y)] >= val:
                continue
            if y > 1 and values[(x, y - 1)] >= val:
                continue
            if x > 1 and y > 1 and val < values[(x - 1, y - 1)] + 3:
                continue
            remaining[idx] -= 1
            values[(x, y)] = val
            yield from fill(k + 1)
            del values[(x, y)]
            remaining[idx] += 1

    yield from fill(0)


def _tableau_descents(T: dict) -> Counter:
    out = Counter()
    for (xa, ya), ta in T.items():
        for (xb, yb), tb in T.items():
            if ta - tb != 3:
                continue
            if ya > yb and xa <= xb:
                out[(ta, tb)] += 1
            elif xa == xb + 1 and ya == yb + 1 and T[(xb, ya)] == ta - 1:
                out[(ta, tb)] += 1
    return out


def _inversion_pairs(T: dict):
    for (xa, ya), ta in T.items():
        for (xb, yb), tb in T.items():
            if 0 < ta - tb < 3 and ya > yb and xa <= xb:
                yield ta, tb


def _matching_tableaux(tup: ColoredTuple, lam):
    entries = sorted(shifted_content(c, 3) for c in tup.cells)
    target = d_prime(tup)
    for T in enumerate_rsst(lam, entries):
        if _tableau_descents(T) == target:
            yield T


def blasiak_coefficient(nu, lam) -> QTPoly:
    """Schur coefficient of the triple's series: q to the number of
    close-pair inversions, summed over matching square-strict fillings."""
    tup = _require_triple(nu)
    total = QTPoly.zero()
    for T in _matching_tableaux(tup, lam):
        inversions = sum(1 for _ in _inversion_pairs(T))
        total = total + QTPoly.monomial(1, inversions, 0)
    return total


def blasiak_conjecture_check(nu, i, j) -> dict:
    """Report comparing the split product of the triple's series with
    the residue-restricted inversion statistic.  The verdict is data to
    record, never an assertion."""
    tup = _require_triple(nu)
    if not (1 <= i < j <= 3):
        raise ValueError("need shape positions 1 <= i < j <= 3")
    k = ({1, 2, 3} - {i, j}).pop()
    shapes = tup.shapes
    pair_series = llt(ColoredTuple([shapes[i - 1], shapes[j - 1]]))
    single_series = llt(ColoredTuple([shapes[k - 1]]))
    lhs = monomialq_to_schur(pair_series * single_series)
    # entries of the m-th shape sit in residue class m - 1 modulo 3
    wanted = {(i - 1) % 3, (j - 1) % 3}
    n = tup.size()
    coeffs = {}
    for lam in partitions_of(n):
        total = QTPoly.zero()
        for T in _matching_tableaux(tup, lam):
            power = sum(
                1 for ta, tb in _inversion_pairs(T) if {ta % 3, tb % 3} == wanted
            )
            total = total + QTPoly.monomial(1, power, 0)
        coeffs[lam] = total
    rhs = SymExpansion(SCHUR, coeffs, n)
    return {
        "shapes": shapes,
        "pair": (i, j),
        "lhs": lhs,
        "rhs": rhs,
        "verdict": lhs == rhs,
    }
