import random

import pytest

from lltlab.shapes import (
    Cell,
    ColoredTuple,
    EmptyRestriction,
    InvalidShape,
    SkewShape,
    a_stat,
    attacks,
    canonical_coloring,
    check_partition,
    content,
    des_cells,
    dominates,
    maj_stat,
    merge_partitions,
    partitions_of,
    restrict,
    ribbon_tuples_for,
    ribbons_of_size,
    shifted_content,
    transpose,
)
from util import random_colored_tuple


def test_partition_basics():
    assert check_partition((3, 2, 2, 0, 0)) == (3, 2, 2)
    assert check_partition(()) == ()
    with pytest.raises(InvalidShape):
        check_partition((1, 2))
    with pytest.raises(InvalidShape):
        check_partition((2, -1))
    assert transpose((3, 1)) == (2, 1, 1)
    assert transpose(transpose((4, 3, 1))) == (4, 3, 1)
    assert len(list(partitions_of(5))) == 7
    assert len(list(partitions_of(8))) == 22
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert dominates((3, 1), (2, 2)) and not dominates((2, 2), (3, 1))


def test_skew_shape_cells_and_size():
    s = SkewShape((2, 2), (1,))
    assert s.cells() == [(2, 1), (1, 2), (2, 2)]
    assert s.size() == 3
    assert SkewShape((3,)).cells() == [(1, 1), (2, 1), (3, 1)]
    sh = SkewShape((2, 2), (2, 1))  # empty bottom row kept, it shifts the cell up
    assert sh.cells() == [(2, 2)]
    assert SkewShape((2, 2), (2, 2)).is_empty()


def test_skew_shape_validation():
    with pytest.raises(InvalidShape):
        SkewShape((1,), (2,))
    with pytest.raises(InvalidShape):
        SkewShape((2, 1), (0, 1))


def test_from_cells_round_trip():
    for outer, inner in [((3, 2), ()), ((2, 2), (1,)), ((4, 4, 2), (2, 1)), ((1, 1, 1), (1, 1))]:
        s = SkewShape(outer, inner)
        assert SkewShape.from_cells(s.cells()) == s
    with pytest.raises(InvalidShape):
        SkewShape.from_cells([(1, 1), (3, 1)])  # gap in a row
    with pytest.raises(InvalidShape):
        SkewShape.from_cells([(1, 1), (2, 2)])  # inner would not nest
    with pytest.raises(InvalidShape):
        SkewShape.from_cells([(0, 1)])


def test_is_ribbon():
    assert SkewShape((2, 1)).is_ribbon()
    assert SkewShape((3, 1)).is_ribbon()
    assert not SkewShape((2, 2)).is_ribbon()
    assert SkewShape((2, 2), (1,)).is_ribbon()
    assert not SkewShape((3, 1, 1), (1,)).is_ribbon()  # disconnected
    assert not SkewShape((2, 2), (2, 2)).is_ribbon()


def test_ribbons_of_size_anchoring():
    assert len(ribbons_of_size(1)) == 1
    assert len(ribbons_of_size(2)) == 2
    assert len(ribbons_of_size(4)) == 8
    for k in range(1, 6):
        for rib in ribbons_of_size(k):
            assert rib.is_ribbon()
            contents = sorted(x - y for (x, y) in rib.cells())
            assert contents == list(range(1 - k, 1))  # bottom-right cell at content 0


def test_cell_statistics_shifted_content():
    c = Cell(2, 3, 1)
    assert content(c) == 2
    assert shifted_content(c, ell=2) == 5
    assert shifted_content(Cell(1, 1, 1), 3) == 0


def test_attacks_two_single_boxes():
    tup = ColoredTuple([(1,), (1,)])
    a, b = tup.cells
    assert a.shape == 1 and b.shape == 2
    assert attacks(a, b, tup)
    assert not attacks(b, a, tup)
    assert not attacks(a, a, tup)


def test_attack_pairs_figure_tuple():
    # ((3,2)/(1), (1,1)): the four attacking pairs in shifted-content order
    tup = ColoredTuple([SkewShape((3, 2), (1,)), SkewShape((1, 1))])
    a = Cell(1, 1, 2)
    b = Cell(1, 2, 2)
    c = Cell(1, 2, 1)
    d = Cell(1, 3, 1)
    x = Cell(2, 1, 2)
    y = Cell(2, 1, 1)
    assert set(tup.cells) == {a, b, c, d, x, y}
    assert set(tup.attack_pairs) == {(a, x), (x, b), (b, y), (y, c)}


def test_attack_pairs_sorted_and_antisymmetric():
    rng = random.Random(11)
    for _ in range(40):
        tup = random_colored_tuple(rng)
        pairs = set(tup.attack_pairs)
        for (a, b) in pairs:
            assert attacks(a, b, tup)
            assert (b, a) not in pairs
        # exhaustive cross-check against the definition
        brute = {
            (a, b)
            for a in tup.cells
            for b in tup.cells
            if attacks(a, b, tup)
        }
        assert pairs == brute


def test_des_and_a_stat_examples():
    horizontal = ColoredTuple([(4,)])
    assert des_cells(horizontal) == frozenset()
    assert a_stat(horizontal) == 0
    assert maj_stat(horizontal) == 0

    vertical = ColoredTuple([(1, 1)])
    assert des_cells(vertical) == frozenset({Cell(1, 1, 2)})
    assert a_stat(vertical) == 0
    assert maj_stat(vertical) == 1

    two_dominoes = ColoredTuple([(1, 1), (1, 1)])
    assert a_stat(two_dominoes) == 1
    assert maj_stat(two_dominoes) == 2


def test_maj_on_three_cell_ribbons():
    # words read from the bottom-right anchor: UU, UL, LU, LL
    uu, ul, lu, ll = ribbons_of_size(3)
    assert maj_stat(ColoredTuple([uu])) == 3
    assert maj_stat(ColoredTuple([ul])) == 2
    assert maj_stat(ColoredTuple([lu])) == 1
    assert maj_stat(ColoredTuple([ll])) == 0


def test_a_stat_ribbon_with_boxes():
    vert = ribbons_of_size(2)[0]
    box = ribbons_of_size(1)[0]
    assert a_stat(ColoredTuple([vert, box, box])) == 0
    assert a_stat(ColoredTuple([vert, vert])) == 1


def test_ribbon_tuples_for_counts():
    assert len(ribbon_tuples_for((1,))) == 1
    assert len(ribbon_tuples_for((1, 1))) == 2
    assert len(ribbon_tuples_for((2, 2))) == 4
    for lam in [(3,), (2, 1), (3, 2), (2, 2, 1), (4, 1)]:
        expected = 1
        for h in transpose(lam):
            expected *= 2 ** (h - 1)
        assert len(ribbon_tuples_for(lam)) == expected
        for tup in ribbon_tuples_for(lam):
            assert tuple(s.size() for s in tup.shapes) == transpose(lam)


def test_canonical_coloring_examples():
    merged, fcc = canonical_coloring([(2, 1)])
    assert merged == (2, 1) and fcc == (1, 1)

    merged, fcc = canonical_coloring([(1,), (1,)])
    assert merged == (2,) and fcc == (1, 2)

    merged, fcc = canonical_coloring([(2, 1), (1, 1)])
    assert merged == (3, 2) and fcc == (1, 2, 1)


def test_merge_partitions_blocks():
    lambdas = [(2, 1), (1, 1), (3,)]
    assert merge_partitions(lambdas) == (6, 2)
    assert merge_partitions(lambdas, {1, 3}) == (5, 1)
    assert merge_partitions(lambdas, {2}) == (1, 1)


def test_restrict_paper_example():
    tup = ColoredTuple(
        [SkewShape((2, 2), (1,)), SkewShape((2,)), SkewShape((1, 1))],
        colors=(1, 2, 1),
    )
    b1 = restrict(tup, {1})
    assert b1.shapes == (SkewShape((2, 2), (1,)), SkewShape((1, 1)))
    assert b1.colors == (1, 1)
    b2 = restrict(tup, {2})
    assert b2.shapes == (SkewShape((2,)),)
    assert b2.colors == (1,)
    assert restrict(tup, {1, 2}) == tup
    with pytest.raises(EmptyRestriction):
        restrict(tup, {3})


def test_restrict_reindexes_order_preserving():
    tup = ColoredTuple([(1,), (1,), (1,)], colors=(3, 1, 2))
    sub = restrict(tup, {2, 3})
    assert sub.colors == (2, 1)


def test_maj_additive_over_color_classes():
    rng = random.Random(5)
    for _ in range(30):
        tup = random_colored_tuple(rng)
        total = sum(
            maj_stat(restrict(tup, {c})) for c in range(1, tup.num_colors + 1)
        )
        assert total == maj_stat(tup)


def test_colored_tuple_validation():
    with pytest.raises(InvalidShape):
        ColoredTuple([])
    with pytest.raises(InvalidShape):
        ColoredTuple([(1,)], colors=(2,))  # not surjective
    with pytest.raises(InvalidShape):
        ColoredTuple([(1,), (1,)], colors=(1,))
