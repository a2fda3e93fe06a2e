import random
from fractions import Fraction
from math import factorial

import pytest

from lltlab.cumulants import (
    SubsetFamily,
    g_twisted_cumulant_decompose,
    llt_cumulant,
    macdonald_cumulant,
    moebius_sum,
    moments_from_cumulants,
    partition_cumulant,
    q_partial_cumulant,
    set_partitions,
    verify_mac_decomposition,
)
from lltlab.graphpoly import Multigraph
from lltlab.llt import llt, llt_cospin, llt_mac, macdonald
from lltlab.ring import ONE, Q, QTPoly, NotDivisible, exact_divide
from lltlab.shapes import ColoredTuple, SkewShape, partitions_of
from lltlab.symfunc import SymExpansion, monomialq_to_schur
from util import random_colored_tuple, random_ribbon_tuple

BELL = [1, 1, 2, 5, 15, 52, 203]


def test_set_partition_counts_and_block_order():
    for n in range(1, 7):
        parts = set_partitions(range(1, n + 1))
        assert len(parts) == BELL[n]
        for pi in parts:
            union = set()
            for block in pi:
                assert block, "empty block"
                assert not (union & block), "overlapping blocks"
                union |= block
            assert union == set(range(1, n + 1))
            assert [min(b) for b in pi] == sorted(min(b) for b in pi)
    assert len(set(set_partitions(range(1, 5)))) == BELL[4]


def test_moebius_weights_cancel():
    for n in range(2, 6):
        total = 0
        for pi in set_partitions(range(n)):
            total += (-1) ** (len(pi) - 1) * factorial(len(pi) - 1)
        assert total == 0


def test_subset_family_validation():
    with pytest.raises(ValueError):
        SubsetFamily({1, 2}, {frozenset({1}): ONE})
    family = SubsetFamily.build({1, 2}, lambda B: QTPoly.integer(len(B)))
    assert family.value({1, 2}) == QTPoly.integer(2)
    with pytest.raises(KeyError):
        family.value({3})


def test_cumulant_small_index_sets():
    family = SubsetFamily.build(
        {1, 2}, lambda B: Q ** 1 if len(B) == 2 else ONE
    )
    assert q_partial_cumulant(family, {1}) == ONE
    assert q_partial_cumulant(family, {2}) == ONE
    assert q_partial_cumulant(family) == ONE


def test_single_edge_graph_family_is_one():
    G = Multigraph(2, [(1, 2)])
    family = SubsetFamily.build(
        G.vertices(), lambda B: QTPoly.monomial(1, G.edges_within(B), 0)
    )
    assert q_partial_cumulant(family) == ONE


def test_not_divisible_is_raised():
    family = SubsetFamily.build(
        {1, 2}, lambda B: Q + ONE if len(B) == 2 else ONE
    )
    with pytest.raises(NotDivisible):
        q_partial_cumulant(family)


def _random_qt(rng, max_terms=3):
    out = QTPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        out = out + QTPoly.monomial(
            rng.randint(-3, 3), rng.randint(0, 3), rng.randint(0, 2)
        )
    return out


def test_moment_cumulant_round_trip():
    rng = random.Random(501)
    for n in (1, 2, 3, 4):
        ground = frozenset(range(1, n + 1))
        kappas = {}
        members = sorted(ground)
        import itertools

        for size in range(1, n + 1):
            for combo in itertools.combinations(members, size):
                kappas[frozenset(combo)] = _random_qt(rng)
        family = moments_from_cumulants(kappas)
        for key, expected in kappas.items():
            assert q_partial_cumulant(family, key) == expected


def test_llt_cumulant_single_color_is_the_polynomial():
    rng = random.Random(502)
    for _ in range(5):
        tup = random_colored_tuple(rng, max_shapes=2, max_cells=5)
        solid = ColoredTuple(tup.shapes, (1,) * len(tup.shapes))
        assert llt_cumulant(solid, "plain") == llt(solid)
        assert llt_cumulant(solid, "cospin") == llt_cospin(solid)
    ribbons = random_ribbon_tuple(rng, max_shapes=2, max_cells=5)
    solid = ColoredTuple(ribbons.shapes, (1,) * len(ribbons.shapes))
    assert llt_cumulant(solid, "mac") == llt_mac(solid)
    with pytest.raises(ValueError):
        llt_cumulant(solid, "spin")


def test_llt_cumulant_two_boxes_cospin():
    tup = ColoredTuple([(1,), (1,)], (1, 2))
    got = monomialq_to_schur(llt_cumulant(tup, "cospin"))
    assert got == SymExpansion.schur((1, 1))


def _schur_table(pairs):
    total = None
    for lam, coeff in pairs:
        piece = SymExpansion.schur(lam).scaled(coeff)
        total = piece if total is None else total + piece
    return total


THREE_SHAPES = (SkewShape((2, 2), (1,)), (2,), (1, 1))


def test_llt_cumulant_three_colors_table():
    tup = ColoredTuple(THREE_SHAPES, (1, 2, 3))
    got = monomialq_to_schur(llt_cumulant(tup, "cospin"))
    q2_2q_2 = Q ** 2 + 2 * Q + 2 * ONE
    expected = _schur_table(
        [
            ((2, 2, 1, 1, 1), q2_2q_2),
            ((2, 2, 2, 1), Q + 2 * ONE),
            ((3, 1, 1, 1, 1), q2_2q_2),
            ((3, 2, 1, 1), 2 * Q + 4 * ONE),
            ((3, 2, 2), QTPoly.integer(2)),
            ((3, 3, 1), ONE),
            ((4, 1, 1, 1), Q + 2 * ONE),
            ((4, 2, 1), ONE),
        ]
    )
    assert got == expected


def test_llt_cumulant_two_colors_table():
    tup = ColoredTuple(THREE_SHAPES, (1, 2, 1))
    got = monomialq_to_schur(llt_cumulant(tup, "cospin"))
    q3_q2 = Q ** 3 + Q ** 2
    q2_q = Q ** 2 + Q
    expected = _schur_table(
        [
            ((2, 2, 1, 1, 1), q3_q2),
            ((2, 2, 2, 1), q2_q),
            ((3, 1, 1, 1, 1), q3_q2),
            ((3, 2, 1, 1), 2 * Q ** 2 + 2 * Q),
            ((3, 2, 2), 2 * Q + ONE),
            ((3, 3, 1), Q + ONE),
            ((4, 1, 1, 1), q2_q),
            ((4, 2, 1), Q + ONE),
        ]
    )
    assert got == expected


def test_macdonald_cumulant_base_cases():
    assert macdonald_cumulant([(2, 1)]) == macdonald((2, 1))
    assert macdonald_cumulant([(1,), (1,)]) == SymExpansion.schur((1, 1))


def test_macdonald_cumulant_stays_polynomial():
    pools = []
    for total in range(2, 5):
        for split in range(1, total):
            for lam in partitions_of(split):
                for mu in partitions_of(total - split):
                    pools.append([lam, mu])
    for lambdas in pools:
        kappa = macdonald_cumulant(lambdas)
        assert kappa.degree == sum(sum(l) for l in lambdas)


def test_mac_decomposition_small():
    assert verify_mac_decomposition([(1,), (1,)])
    assert verify_mac_decomposition([(2,), (1,)])
    assert verify_mac_decomposition([(1, 1), (1,)])


def test_g_twisted_shapes():
    family = SubsetFamily.build({1, 2}, lambda B: _random_qt(random.Random(7)))
    edgeless = Multigraph(2, [])
    assert g_twisted_cumulant_decompose(family, edgeless) == []
    one_edge = Multigraph(2, [(1, 2)])
    pairs = g_twisted_cumulant_decompose(family, one_edge)
    assert len(pairs) == 1
    sigma, G1 = pairs[0]
    assert sigma == (frozenset({1, 2}),)
    assert G1.n == 1 and G1.edges == ()


def test_g_twisted_identity_random():
    rng = random.Random(503)
    for _ in range(12):
        n = 3
        ground = frozenset(range(1, n + 1))
        family = SubsetFamily.build(ground, lambda B: _random_qt(rng))
        edges = []
        for _ in range(rng.randint(0, 4)):
            edges.append((rng.randint(1, n), rng.randint(1, n)))
        G = Multigraph(n, edges)
        pairs = g_twisted_cumulant_decompose(family, G)
        plain = sum(1 for i, j in G.edges if i != j)
        assert len(pairs) == plain
        for sigma, G_k in pairs:
            assert len(sigma) == n - 1
            assert G_k.n == n - 1


def test_g_twisted_on_strict_subset():
    rng = random.Random(504)
    ground = frozenset(range(1, 5))
    family = SubsetFamily.build(ground, lambda B: _random_qt(rng))
    G = Multigraph(4, [(1, 2), (2, 3), (3, 3), (1, 4), (2, 2)])
    pairs = g_twisted_cumulant_decompose(family, G, {1, 2, 3})
    assert len(pairs) == 2
    for sigma, G_k in pairs:
        assert frozenset().union(*sigma) == frozenset({1, 2, 3})


def test_partition_cumulant_of_singletons_matches():
    rng = random.Random(505)
    ground = frozenset(range(1, 4))
    family = SubsetFamily.build(ground, lambda B: _random_qt(rng))
    sigma = tuple(frozenset({k}) for k in sorted(ground))
    try:
        direct = q_partial_cumulant(family, ground)
    except NotDivisible:
        direct = None
    if direct is not None:
        assert partition_cumulant(family, sigma) == direct


# ----------------------------------------------------------------------
# q = 0 check against the conditional cumulant on a toy algebra carrying
# two products: componentwise multiplication on Q^k and a second product
# conjugated by an invertible matrix fixing the all-ones vector.


class Vec(tuple):
    def __add__(self, other):
        return Vec(a + b for a, b in zip(self, other))

    def __mul__(self, other):
        if isinstance(other, Vec):
            return Vec(a * b for a, b in zip(self, other))
        return Vec(a * other for a in self)

    __rmul__ = __mul__


def _matvec(M, x):
    return Vec(sum(row[i] * x[i] for i in range(len(x))) for row in M)


def _inverse(M):
    k = len(M)
    aug = [
        [Fraction(M[i][j]) for j in range(k)]
        + [Fraction(1 if i == j else 0) for j in range(k)]
        for i in range(k)
    ]
    for col in range(k):
        pivot = next((r for r in range(col, k) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        factor = aug[col][col]
        aug[col] = [v / factor for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                scale = aug[r][col]
                aug[r] = [a - scale * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _random_toy_products(rng, k):
    while True:
        M = [[Fraction(1 if i == j else 0) for j in range(k)] for i in range(k)]
        for i in range(k):
            bumps = [rng.randint(-2, 2) for _ in range(k - 1)]
            for j, b in enumerate(bumps):
                M[i][j] += b
            M[i][k - 1] -= sum(bumps)
        Minv = _inverse(M)
        if Minv is not None:
            break

    def oplus(x, y):
        return _matvec(Minv, _matvec(M, x) * _matvec(M, y))

    return oplus


def _series_mul(x, y, mul, zero):
    out = {}
    for S, xv in x.items():
        for U, yv in y.items():
            if S & U:
                continue
            key = S | U
            out[key] = out.get(key, zero) + mul(xv, yv)
    return out


def _conditional_cumulant(xs, oplus, k):
    r = len(xs)
    zero = Vec([Fraction(0)] * k)
    ones = Vec([Fraction(1)] * k)
    unit = {frozenset(): ones}
    linear = {frozenset({i + 1}): xs[i] for i in range(r)}
    series = dict(unit)
    power = dict(unit)
    for n in range(1, r + 1):
        power = _series_mul(power, linear, oplus, zero)
        for key, value in power.items():
            series[key] = series.get(key, zero) + value * Fraction(1, factorial(n))
    bump = {key: value for key, value in series.items() if key}
    log = {}
    layer = dict(bump)
    for n in range(1, r + 1):
        if n > 1:
            layer = _series_mul(layer, bump, lambda a, b: a * b, zero)
        sign = Fraction((-1) ** (n - 1), n)
        for key, value in layer.items():
            log[key] = log.get(key, zero) + value * sign
    return log.get(frozenset(range(1, r + 1)), zero)


def test_moebius_sum_matches_conditional_cumulant_at_q_zero():
    rng = random.Random(506)
    for r in (2, 3):
        for _ in range(4):
            k = 4
            oplus = _random_toy_products(rng, k)
            xs = [
                Vec([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(k)])
                for _ in range(r)
            ]

            def block_value(B):
                value = None
                for b in sorted(B):
                    x = xs[b - 1]
                    value = x if value is None else oplus(value, x)
                return value

            family = SubsetFamily.build(range(1, r + 1), block_value)
            alternating = moebius_sum(family, family.ground)
            conditional = _conditional_cumulant(xs, oplus, k)
            assert alternating == conditional
