"""Partitions, skew shapes, colored tuples, and their cell statistics.

Conventions are French throughout: rows grow upward, cell (x, y) means
column x and row y, both 1-based, content is x - y.  A skew shape keeps
its absolute position, so ((1,1,1),(1,1)) and ((1,)) are different
shapes even though both have a single cell; the position matters for
contents and therefore for everything downstream.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import LLTLabError


class InvalidShape(LLTLabError):
    pass


class EmptyRestriction(LLTLabError):
    pass


# ----------------------------------------------------------------------
# partitions (plain tuples of weakly decreasing positive ints)

def check_partition(parts) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise InvalidShape("not weakly decreasing: %r" % (parts,))
    if parts and parts[-1] <= 0:
        if any(p < 0 for p in parts):
            raise InvalidShape("negative part in %r" % (parts,))
        while parts and parts[-1] == 0:
            parts = parts[:-1]
    return parts


def transpose(parts) -> tuple[int, ...]:
    """Conjugate partition: column heights of the diagram."""
    parts = check_partition(parts)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= c) for c in range(1, parts[0] + 1))


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of n, lexicographically descending, as tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def dominates(lam, mu) -> bool:
    """True when lam >= mu in dominance order (same size assumed)."""
    total_l = total_m = 0
    for i in range(max(len(lam), len(mu))):
        total_l += lam[i] if i < len(lam) else 0
        total_m += mu[i] if i < len(mu) else 0
        if total_l < total_m:
            return False
    return True


# ----------------------------------------------------------------------
# skew shapes

class SkewShape:
    """A skew diagram outer/inner at an absolute position.

    Rows whose outer and inner parts agree are empty; empty rows at the
    top are stripped, empty rows below occupied ones are kept because
    they raise the occupied cells and change their contents.
    """

    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner=()):
        outer = check_partition(outer)
        inner = check_partition(inner)
        if len(inner) > len(outer):
            inner_tail = inner[len(outer):]
            if any(inner_tail):
                raise InvalidShape("inner %r exceeds outer %r" % (inner, outer))
            inner = inner[: len(outer)]
        padded = inner + (0,) * (len(outer) - len(inner))
        for o, i in zip(outer, padded):
            if i > o:
                raise InvalidShape("inner %r exceeds outer %r" % (inner, outer))
        while outer and padded and outer[-1] == padded[-1]:
            outer = outer[:-1]
            padded = padded[:-1]
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", check_partition(padded))

    def __setattr__(self, name, value):
        raise AttributeError("SkewShape is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SkewShape)
            and self.outer == other.outer
            and self.inner == other.inner
        )

    def __hash__(self):
        return hash((self.outer, self.inner))

    def __repr__(self):
        if self.inner:
            return "SkewShape(%r, %r)" % (list(self.outer), list(self.inner))
        return "SkewShape(%r)" % (list(self.outer),)

    def cells(self) -> list[tuple[int, int]]:
        out = []
        for y, o in enumerate(self.outer, start=1):
            i = self.inner[y - 1] if y <= len(self.inner) else 0
            for x in range(i + 1, o + 1):
                out.append((x, y))
        return out

    def cell_set(self) -> frozenset:
        return frozenset(self.cells())

    def size(self) -> int:
        return sum(
            o - (self.inner[y - 1] if y <= len(self.inner) else 0)
            for y, o in enumerate(self.outer, start=1)
        )

    def is_empty(self) -> bool:
        return not self.outer

    def is_connected(self) -> bool:
        cells = self.cells()
        if not cells:
            return False
        todo = [cells[0]]
        seen = {cells[0]}
        members = set(cells)
        while todo:
            x, y = todo.pop()
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in members and nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(cells)

    def is_ribbon(self) -> bool:
        """Connected and containing no 2x2 block of cells."""
        members = self.cell_set()
        if not members or not self.is_connected():
            return False
        for x, y in members:
            if {(x + 1, y), (x, y + 1), (x + 1, y + 1)} <= members:
                return False
        return True

    @staticmethod
    def from_cells(cells: Iterable[tuple[int, int]]) -> "SkewShape":
        """Reconstruct the unique skew shape with the given cell set."""
        cells = set(cells)
        if not cells:
            return SkewShape((), ())
        rows: dict[int, list[int]] = {}
        for x, y in cells:
            if x < 1 or y < 1:
                raise InvalidShape("cell %r out of the positive quadrant" % ((x, y),))
            rows.setdefault(y, []).append(x)
        ymax = max(rows)
        outer = [0] * (ymax + 1)
        inner = [0] * (ymax + 1)
        prev_outer = prev_inner = 0
        for y in range(ymax, 0, -1):
            if y in rows:
                xs = sorted(rows[y])
                if xs[-1] - xs[0] + 1 != len(xs):
                    raise InvalidShape("row %d not contiguous: %r" % (y, xs))
                o, i = xs[-1], xs[0] - 1
            else:
                o = i = prev_outer
            if o < prev_outer or i < prev_inner:
                raise InvalidShape("cells %r do not form a skew shape" % (sorted(cells),))
            outer[y], inner[y] = o, i
            prev_outer, prev_inner = o, i
        shape = SkewShape(tuple(outer[1:]), tuple(inner[1:]))
        if shape.cell_set() != frozenset(cells):
            raise InvalidShape("cells %r do not form a skew shape" % (sorted(cells),))
        return shape


def ribbons_of_size(k: int) -> list[SkewShape]:
    """The 2^(k-1) ribbons with k cells, bottom-right cell at content 0.

    Each ribbon is encoded by a word over {up, left} read from the
    bottom-right cell; every step lowers the content by one.
    """
    if k < 1:
        raise InvalidShape("ribbon size must be positive")
    out = []
    for word in itertools.product("UL", repeat=k - 1):
        lefts = word.count("L")
        x = y = lefts + 1
        cells = [(x, y)]
        for step in word:
            if step == "U":
                y += 1
            else:
                x -= 1
            cells.append((x, y))
        out.append(SkewShape.from_cells(cells))
    return out


# ----------------------------------------------------------------------
# colored tuples and cells

class Cell(NamedTuple):
    shape: int  # 1-based index into the tuple
    x: int
    y: int


def content(cell: Cell) -> int:
    return cell.x - cell.y


def shifted_content(cell: Cell, ell: int) -> int:
    return ell * (cell.x - cell.y) + cell.shape - 1


def _coerce_shape(s) -> SkewShape:
    """Accept a SkewShape, an (outer, inner) pair, or a bare partition."""
    if isinstance(s, SkewShape):
        return s
    seq = tuple(s)
    if len(seq) == 2 and all(isinstance(part, (tuple, list)) for part in seq):
        return SkewShape(seq[0], seq[1])
    return SkewShape(seq)


class ColoredTuple:
    """A tuple of skew shapes with a surjective coloring onto [1..r]."""

    __slots__ = ("shapes", "colors", "__dict__")

    def __init__(self, shapes, colors=None):
        shapes = tuple(_coerce_shape(s) for s in shapes)
        if not shapes:
            raise InvalidShape("a colored tuple needs at least one shape")
        for s in shapes:
            if s.is_empty():
                raise InvalidShape("empty shape in tuple")
        if colors is None:
            colors = tuple(range(1, len(shapes) + 1))
        colors = tuple(int(c) for c in colors)
        if len(colors) != len(shapes):
            raise InvalidShape("need one color per shape")
        used = sorted(set(colors))
        if used != list(range(1, len(used) + 1)):
            raise InvalidShape("colors must be surjective onto [1..r], got %r" % (colors,))
        object.__setattr__(self, "shapes", shapes)
        object.__setattr__(self, "colors", colors)

    def __setattr__(self, name, value):
        raise AttributeError("ColoredTuple is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ColoredTuple)
            and self.shapes == other.shapes
            and self.colors == other.colors
        )

    def __hash__(self):
        return hash((self.shapes, self.colors))

    def __repr__(self):
        return "ColoredTuple(%r, colors=%r)" % (list(self.shapes), list(self.colors))

    @property
    def ell(self) -> int:
        return len(self.shapes)

    @property
    def num_colors(self) -> int:
        return max(self.colors)

    def size(self) -> int:
        return sum(s.size() for s in self.shapes)

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        """All cells, sorted by (shifted content, shape index, column)."""
        ell = self.ell
        everything = [
            Cell(i, x, y)
            for i, s in enumerate(self.shapes, start=1)
            for (x, y) in s.cells()
        ]
        everything.sort(key=lambda c: (shifted_content(c, ell), c.shape, c.x))
        return tuple(everything)

    @cached_property
    def cell_index(self) -> dict:
        return {cell: k for k, cell in enumerate(self.cells)}

    @cached_property
    def shape_cell_sets(self) -> tuple[frozenset, ...]:
        return tuple(s.cell_set() for s in self.shapes)

    @cached_property
    def attack_pairs(self) -> tuple[tuple[Cell, Cell], ...]:
        """Ordered pairs (a, b) where a attacks b."""
        ell = self.ell
        cells = self.cells
        out = []
        for p, a in enumerate(cells):
            ca = shifted_content(a, ell)
            for b in cells[p + 1:]:
                delta = shifted_content(b, ell) - ca
                if delta >= ell:
                    break
                if 0 < delta:
                    out.append((a, b))
        return tuple(out)

    def contains(self, cell: Cell) -> bool:
        return (
            1 <= cell.shape <= self.ell
            and (cell.x, cell.y) in self.shape_cell_sets[cell.shape - 1]
        )


def attacks(a: Cell, b: Cell, tup: ColoredTuple) -> bool:
    """Does cell a attack cell b inside this tuple?"""
    ell = tup.ell
    return 0 < shifted_content(b, ell) - shifted_content(a, ell) < ell


def des_cells(tup: ColoredTuple) -> frozenset:
    """Cells lying directly above another cell of the same shape."""
    out = []
    for cell in tup.cells:
        if (cell.x, cell.y - 1) in tup.shape_cell_sets[cell.shape - 1]:
            out.append(cell)
    return frozenset(out)


def a_stat(tup: ColoredTuple) -> int:
    ell = tup.ell
    total = 0
    for d in des_cells(tup):
        cd, sd = content(d), shifted_content(d, ell)
        total += sum(
            1 for w in tup.cells if content(w) == cd and shifted_content(w, ell) > sd
        )
    return total


def maj_stat(tup: ColoredTuple) -> int:
    """Sum over cells with a cell directly above, of the number of
    strictly smaller contents in the same shape."""
    total = 0
    for i, s in enumerate(tup.shapes, start=1):
        members = tup.shape_cell_sets[i - 1]
        contents = [x - y for (x, y) in members]
        for (x, y) in members:
            if (x, y + 1) in members:
                c = x - y
                total += sum(1 for c2 in contents if c2 < c)
    return total


def ribbon_tuples_for(lam) -> list[ColoredTuple]:
    """All tuples of ribbons with sizes the column heights of lam,
    each anchored with its bottom-right cell at content 0."""
    lam = check_partition(lam)
    if not lam:
        raise InvalidShape("ribbon_tuples_for expects a nonempty partition")
    heights = transpose(lam)
    pools = [ribbons_of_size(k) for k in heights]
    return [ColoredTuple(combo) for combo in itertools.product(*pools)]


def merge_partitions(lambdas, block=None) -> tuple[int, ...]:
    """Partwise sum of the selected partitions (1-based block indices)."""
    chosen = list(lambdas) if block is None else [lambdas[i - 1] for i in sorted(block)]
    rows = max((len(p) for p in chosen), default=0)
    summed = tuple(
        sum(p[j] if j < len(p) else 0 for p in chosen) for j in range(rows)
    )
    return check_partition(summed)


def canonical_coloring(lambdas):
    """Merged partition and its canonical column coloring.

    Columns of all the input partitions are sorted by height descending,
    ties broken by input index ascending; the resulting color word is
    exactly the coloring of the columns of the merged partition.
    """
    lambdas = [check_partition(p) for p in lambdas]
    if not lambdas or any(not p for p in lambdas):
        raise InvalidShape("canonical_coloring expects nonempty partitions")
    tagged = []
    for color, lam in enumerate(lambdas, start=1):
        for height in transpose(lam):
            tagged.append((height, color))
    tagged.sort(key=lambda hc: (-hc[0], hc[1]))
    merged = merge_partitions(lambdas)
    heights = transpose(merged)
    if tuple(h for h, _ in tagged) != heights:
        raise InvalidShape("column multiset mismatch in canonical coloring")
    return merged, tuple(c for _, c in tagged)


def restrict(tup: ColoredTuple, colors) -> ColoredTuple:
    """Sub-tuple of the shapes whose color lies in the given set,
    with colors re-indexed order-preservingly."""
    wanted = set(colors)
    keep = [k for k, c in enumerate(tup.colors) if c in wanted]
    if not keep:
        raise EmptyRestriction("no shape carries a color from %r" % (sorted(wanted),))
    kept_colors = sorted({tup.colors[k] for k in keep})
    renumber = {c: i for i, c in enumerate(kept_colors, start=1)}
    return ColoredTuple(
        tuple(tup.shapes[k] for k in keep),
        tuple(renumber[tup.colors[k]] for k in keep),
    )
