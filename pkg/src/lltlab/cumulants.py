"""q-partial cumulants over subset families.

A set partition is represented as a tuple of frozensets, blocks ordered
by their smallest element.  Cumulants divide an alternating sum over
set partitions by a power of (q-1); the division is exact whenever the
inputs satisfy the identities this package is built around, so a
NotDivisible escape is a finding, not a nuisance.
"""

from __future__ import annotations

import itertools
from math import factorial

from .errors import LLTLabError
from .graphpoly import Multigraph
from .llt import llt, llt_cospin, llt_mac, macdonald_monomialq
from .ring import ONE, Q, QTPoly, exact_divide
from .shapes import (
    ColoredTuple,
    canonical_coloring,
    maj_stat,
    merge_partitions,
    restrict,
    ribbon_tuples_for,
)
from .symfunc import QSymExpansion, SymExpansion, monomialq_to_schur


def set_partitions(ground):
    """All set partitions of a nonempty finite ground set of integers.

    Each partition is a tuple of frozensets ordered by smallest member;
    the list itself is in a fixed deterministic order.
    """
    elements = sorted(ground)
    if not elements:
        raise ValueError("set partitions need a nonempty ground set")
    out = []
    blocks: list[list[int]] = []

    def extend(index):
        if index == len(elements):
            out.append(tuple(frozenset(b) for b in blocks))
            return
        x = elements[index]
        for block in blocks:
            block.append(x)
            extend(index + 1)
            block.pop()
        blocks.append([x])
        extend(index + 1)
        blocks.pop()

    extend(0)
    return out


def _scale(value, factor):
    scaled = getattr(value, "scaled", None)
    if scaled is not None:
        return scaled(factor)
    return value * factor


class SubsetFamily:
    """A value attached to every nonempty subset of a finite ground set.

    Values are typically QTPoly or QSymExpansion, but anything with
    addition and multiplication works (the q=0 sanity tests feed in
    plain rational vectors).
    """

    __slots__ = ("ground", "_values")

    def __init__(self, ground, values):
        ground = frozenset(ground)
        if not ground:
            raise ValueError("family needs a nonempty ground set")
        table = {frozenset(key): value for key, value in dict(values).items()}
        expected = set()
        members = sorted(ground)
        for size in range(1, len(members) + 1):
            for combo in itertools.combinations(members, size):
                expected.add(frozenset(combo))
        if set(table) != expected:
            raise ValueError(
                "values must cover exactly the nonempty subsets of the ground set"
            )
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "_values", table)

    def __setattr__(self, name, value):
        raise AttributeError("SubsetFamily is immutable")

    @classmethod
    def build(cls, ground, fn):
        """Tabulate fn over every nonempty subset."""
        ground = frozenset(ground)
        members = sorted(ground)
        values = {}
        for size in range(1, len(members) + 1):
            for combo in itertools.combinations(members, size):
                key = frozenset(combo)
                values[key] = fn(key)
        return cls(ground, values)

    def value(self, subset):
        key = frozenset(subset)
        try:
            return self._values[key]
        except KeyError:
            raise KeyError("subset %r outside the ground set" % (sorted(subset),)) from None

    def twisted(self, G: Multigraph) -> "SubsetFamily":
        """Multiply each value by q^(edges of G inside the subset)."""
        return SubsetFamily.build(
            self.ground,
            lambda B: _scale(self.value(B), QTPoly.monomial(1, G.edges_within(B), 0)),
        )


def moebius_sum(family: SubsetFamily, I):
    """Alternating sum over set partitions of I, before any division:
    sum of (-1)^(blocks-1) (blocks-1)! times the product of block values."""
    I = frozenset(I)
    if not I <= family.ground:
        raise ValueError("subset outside the family ground set")
    total = None
    for pi in set_partitions(I):
        term = None
        for block in pi:
            value = family.value(block)
            term = value if term is None else term * value
        weight = factorial(len(pi) - 1)
        if len(pi) % 2 == 0:
            weight = -weight
        piece = _scale(term, weight)
        total = piece if total is None else total + piece
    return total


def _divide_out(value, power: int):
    if power == 0:
        return value
    divisor = (Q - ONE) ** power
    if isinstance(value, QTPoly):
        return exact_divide(value, divisor)
    return value.map_coefficients(lambda c: exact_divide(c, divisor))


def q_partial_cumulant(family: SubsetFamily, I=None):
    """The alternating set-partition sum divided by (q-1)^(|I|-1).

    Raises NotDivisible when the division fails; for the families this
    package produces that would falsify a theorem, so the error is
    allowed to propagate.
    """
    if I is None:
        I = family.ground
    I = frozenset(I)
    if not I:
        raise ValueError("cumulant over an empty index set")
    return _divide_out(moebius_sum(family, I), len(I) - 1)


def moments_from_cumulants(kappas) -> SubsetFamily:
    """Invert a full cumulant table back into its moment family:
    u_I = sum over partitions of (q-1)^(|I|-|pi|) times the product of
    block cumulants."""
    table = {frozenset(key): value for key, value in dict(kappas).items()}
    ground = frozenset().union(*table)
    values = {}
    members = sorted(ground)
    for size in range(1, len(members) + 1):
        for combo in itertools.combinations(members, size):
            I = frozenset(combo)
            total = None
            for pi in set_partitions(I):
                term = None
                for block in pi:
                    value = table[block]
                    term = value if term is None else term * value
                piece = _scale(term, (Q - ONE) ** (len(I) - len(pi)))
                total = piece if total is None else total + piece
            values[I] = total
    return SubsetFamily(ground, values)


_VARIANTS = {"plain": llt, "cospin": llt_cospin, "mac": llt_mac}


def llt_cumulant(tup: ColoredTuple, normalization: str) -> QSymExpansion:
    """Cumulant of the family of color-restricted LLT polynomials, in
    the monomial quasisymmetric basis.

    With a single color this is just the LLT polynomial itself.
    """
    try:
        variant = _VARIANTS[normalization]
    except KeyError:
        raise ValueError("unknown normalization %r" % (normalization,)) from None
    ground = frozenset(tup.colors)
    family = SubsetFamily.build(ground, lambda B: variant(restrict(tup, B)))
    return q_partial_cumulant(family, ground)


def macdonald_cumulant(lambdas) -> SymExpansion:
    """Cumulant of modified Macdonald polynomials over partwise-sum
    merges, returned as a Schur expansion."""
    lambdas = list(lambdas)
    if not lambdas:
        raise ValueError("macdonald_cumulant needs at least one partition")
    ground = frozenset(range(1, len(lambdas) + 1))
    family = SubsetFamily.build(
        ground,
        lambda B: macdonald_monomialq(merge_partitions(lambdas, B)),
    )
    return monomialq_to_schur(q_partial_cumulant(family, ground))


def verify_mac_decomposition(lambdas) -> bool:
    """Check that the Macdonald cumulant equals the t^maj-weighted sum
    of mac-normalized LLT cumulants over ribbon tuples of the merged
    partition, colored canonically by column provenance."""
    lambdas = list(lambdas)
    lhs = macdonald_cumulant(lambdas)
    merged, colors = canonical_coloring(lambdas)
    total = None
    for tup in ribbon_tuples_for(merged):
        colored = ColoredTuple(tup.shapes, colors)
        piece = llt_cumulant(colored, "mac").scaled(
            QTPoly.monomial(1, 0, maj_stat(colored))
        )
        total = piece if total is None else total + piece
    return lhs == monomialq_to_schur(total)


def _block_family(family: SubsetFamily, sigma, twist: Multigraph | None) -> SubsetFamily:
    """Re-index a family by the blocks of a set partition.

    The blocks, sorted by smallest member, become ground elements
    1..len(sigma); a subset of blocks gets the value at the union of
    those blocks, optionally twisted by a multigraph on the block
    positions.
    """
    sigma = tuple(sorted((frozenset(b) for b in sigma), key=min))
    positions = frozenset(range(1, len(sigma) + 1))

    def derived_value(S):
        union = frozenset().union(*(sigma[p - 1] for p in S))
        value = family.value(union)
        if twist is not None:
            value = _scale(value, QTPoly.monomial(1, twist.edges_within(S), 0))
        return value

    return SubsetFamily.build(positions, derived_value)


def partition_cumulant(family: SubsetFamily, sigma, twist: Multigraph | None = None):
    """Cumulant over the blocks of a set partition."""
    derived = _block_family(family, sigma, twist)
    return q_partial_cumulant(derived, derived.ground)


def g_twisted_cumulant_decompose(family: SubsetFamily, G: Multigraph, I=None):
    """Split a graph-twisted cumulant into plain block cumulants.

    Returns the list of pairs (sigma_k, G_k), one per non-loop edge of
    G inside I taken in sorted order: sigma_k merges the k-th edge's
    endpoints and keeps everything else a singleton, and G_k is a
    multigraph on the blocks of sigma_k (ordered by smallest member)
    re-routing the earlier edges.  Before returning, the identity

        cumulant(twisted family) =
            q^(loops at I) * (cumulant(family) + sum of block cumulants)

    is checked by evaluation, with every cumulant multiplied through by
    (q-1)^(|I|-1) so the check stays total on families whose cumulants
    are not themselves polynomial.
    """
    if I is None:
        I = family.ground
    I = frozenset(I)
    if not I <= family.ground:
        raise ValueError("subset outside the family ground set")
    members = sorted(I)
    prime_edges = sorted(
        (i, j) for i, j in G.edges if i != j and i in I and j in I
    )
    pairs = []
    for idx in range(1, len(prime_edges) + 1):
        m, n = prime_edges[idx - 1]
        merged_block = frozenset({m, n})
        blocks = [merged_block] + [frozenset({k}) for k in members if k not in (m, n)]
        sigma = tuple(sorted(blocks, key=min))
        position = {block: p for p, block in enumerate(sigma, start=1)}
        gi_edges = []
        for e_index in range(idx):
            a, b = prime_edges[e_index]
            ends = {a, b}
            if ends == {m, n}:
                if e_index < idx - 1:
                    spot = position[merged_block]
                    gi_edges.append((spot, spot))
                continue
            touching = ends & {m, n}
            if not touching:
                gi_edges.append((position[frozenset({a})], position[frozenset({b})]))
            else:
                other = (ends - {m, n}).pop()
                gi_edges.append((position[frozenset({other})], position[merged_block]))
        pairs.append((sigma, Multigraph(len(sigma), gi_edges)))

    lhs = moebius_sum(family.twisted(G), I)
    loop_power = sum(1 for i, j in G.edges if i == j and i in I)
    inner = moebius_sum(family, I)
    for sigma, G_k in pairs:
        derived = _block_family(family, sigma, G_k)
        inner = inner + _scale(moebius_sum(derived, derived.ground), Q - ONE)
    rhs = _scale(inner, QTPoly.monomial(1, loop_power, 0))
    if lhs != rhs:
        raise LLTLabError(
            "graph-twisted cumulant decomposition failed to verify on %r" % (G,)
        )
    return pairs
