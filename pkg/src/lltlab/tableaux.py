"""Semistandard and standard fillings of colored tuples.

Cells are visited in shifted-content order.  Both neighbors that
constrain a cell (the one directly above and the one directly to the
left) have shifted content exactly ell lower, so they are always filled
first and the enumeration can check constraints as it goes.
"""

from __future__ import annotations

from .errors import LLTLabError
from .shapes import Cell, ColoredTuple, attacks, shifted_content


class NotStandard(LLTLabError):
    pass


class Tableau:
    """A filling of a colored tuple, entries aligned with tuple.cells."""

    __slots__ = ("tup", "entries")

    def __init__(self, tup: ColoredTuple, entries):
        entries = tuple(entries)
        if len(entries) != len(tup.cells):
            raise ValueError("expected %d entries" % len(tup.cells))
        object.__setattr__(self, "tup", tup)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Tableau is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Tableau)
            and self.tup == other.tup
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.tup, self.entries))

    def __repr__(self):
        return "Tableau(%s)" % ", ".join(
            "%s=%d" % ((c.shape, c.x, c.y), v)
            for c, v in zip(self.tup.cells, self.entries)
        )

    def entry(self, cell: Cell) -> int:
        return self.entries[self.tup.cell_index[cell]]

    def size(self) -> int:
        return len(self.entries)

    def is_standard(self) -> bool:
        return sorted(self.entries) == list(range(1, len(self.entries) + 1))

    def weight(self) -> tuple[int, ...]:
        """Multiplicity of each value 1..max(entries)."""
        if not self.entries:
            return ()
        top = max(self.entries)
        counts = [0] * top
        for v in self.entries:
            counts[v - 1] += 1
        return tuple(counts)

    def packed_weight(self):
        """The weight as a composition when the value set has no gaps,
        otherwise None.  Only packed fillings carry monomial coefficients."""
        w = self.weight()
        return w if all(w) else None


def _neighbor_indices(tup: ColoredTuple):
    """For each cell position: indices of the left and above neighbors
    (or -1), both guaranteed to appear earlier in the cell order."""
    index = tup.cell_index
    lefts = []
    aboves = []
    for cell in tup.cells:
        members = tup.shape_cell_sets[cell.shape - 1]
        left = (cell.x - 1, cell.y)
        above = (cell.x, cell.y + 1)
        lefts.append(index[Cell(cell.shape, *left)] if left in members else -1)
        aboves.append(index[Cell(cell.shape, *above)] if above in members else -1)
    return lefts, aboves


def enumerate_ssyt(tup: ColoredTuple, max_entry: int):
    """Yield every semistandard filling with entries in [1..max_entry]."""
    if max_entry < 1:
        raise ValueError("max_entry must be positive")
    lefts, aboves = _neighbor_indices(tup)
    n = len(tup.cells)
    values = [0] * n

    def fill(pos):
        if pos == n:
            yield Tableau(tup, values)
            return
        lo = values[lefts[pos]] if lefts[pos] >= 0 else 1
        hi = values[aboves[pos]] - 1 if aboves[pos] >= 0 else max_entry
        for v in range(lo, hi + 1):
            values[pos] = v
            yield from fill(pos + 1)

    yield from fill(0)


def enumerate_syt(tup: ColoredTuple):
    """Yield the standard fillings: bijections onto [1..n]."""
    lefts, aboves = _neighbor_indices(tup)
    n = len(tup.cells)
    values = [0] * n
    used = [False] * (n + 1)

    def fill(pos):
        if pos == n:
            yield Tableau(tup, values)
            return
        lo = values[lefts[pos]] + 1 if lefts[pos] >= 0 else 1
        hi = values[aboves[pos]] - 1 if aboves[pos] >= 0 else n
        for v in range(lo, hi + 1):
            if not used[v]:
                used[v] = True
                values[pos] = v
                yield from fill(pos + 1)
                used[v] = False

    yield from fill(0)


def inv(T: Tableau) -> int:
    """Number of attacking pairs (a, b) with T(a) > T(b)."""
    entries = T.entries
    index = T.tup.cell_index
    return sum(
        1 for a, b in T.tup.attack_pairs if entries[index[a]] > entries[index[b]]
    )


def inv_blocks(T: Tableau, pi) -> int:
    """Inversions whose two shapes are colored within one block of pi."""
    block_of = {}
    for k, block in enumerate(pi):
        for color in block:
            block_of[color] = k
    colors = T.tup.colors
    entries = T.entries
    index = T.tup.cell_index
    total = 0
    for a, b in T.tup.attack_pairs:
        if block_of.get(colors[a.shape - 1]) == block_of.get(colors[b.shape - 1]):
            if entries[index[a]] > entries[index[b]]:
                total += 1
    return total


def _column_row(tup: ColoredTuple, cell: Cell) -> int:
    """Position of a cell counted from the bottom of its own column,
    inside its own shape.  This is insensitive to how far the shape
    floats above the axis, unlike the raw y coordinate."""
    members = tup.shape_cell_sets[cell.shape - 1]
    below = 0
    y = cell.y - 1
    while (cell.x, y) in members:
        below += 1
        y -= 1
    return below + 1


def inv_cospin(T: Tableau) -> int:
    """Inversions (a, b) that stay inversions after replacing b by the
    cell directly above it (absent cells count automatically), with a
    sitting weakly below b when rows are counted within each column.

    Counting rows from the bottom of the cell's own column keeps the
    difference inv - inv_cospin constant across all fillings of a tuple
    even when a shape starts above the axis; comparing raw y
    coordinates breaks that constancy on such tuples.
    """
    tup = T.tup
    entries = T.entries
    index = tup.cell_index
    total = 0
    for a, b in tup.attack_pairs:
        if entries[index[a]] <= entries[index[b]]:
            continue
        if _column_row(tup, a) > _column_row(tup, b):
            continue
        up = Cell(b.shape, b.x, b.y + 1)
        if tup.contains(up):
            if not (attacks(up, a, tup) and entries[index[up]] > entries[index[a]]):
                continue
        total += 1
    return total


def des_set(T: Tableau) -> frozenset:
    """Descents of a standard filling: i such that i+1 sits at a
    strictly smaller shifted content than i."""
    if not T.is_standard():
        raise NotStandard("descent set needs a standard filling")
    ell = T.tup.ell
    where = {}
    for cell, v in zip(T.tup.cells, T.entries):
        where[v] = shifted_content(cell, ell)
    n = len(T.entries)
    return frozenset(i for i in range(1, n) if where[i + 1] < where[i])
