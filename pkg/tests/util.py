"""Shared random generators for the property tests."""

import random

from lltlab.shapes import ColoredTuple, SkewShape, check_partition


def random_partition(rng, max_size=6):
    n = rng.randint(1, max_size)
    parts = []
    while n > 0:
        p = rng.randint(1, n)
        parts.append(p)
        n -= p
    return tuple(sorted(parts, reverse=True))


def random_skew_shape(rng, max_size=6, allow_shift=True):
    """A random nonempty skew shape, possibly shifted off the origin."""
    while True:
        outer = list(random_partition(rng, max_size))
        inner = [rng.randint(0, o) for o in outer]
        inner = sorted(inner, reverse=True)
        inner = [min(i, o) for i, o in zip(inner, outer)]
        if allow_shift and rng.random() < 0.3:
            pad = rng.randint(1, 2)
            width = outer[0]
            outer = [width + pad] * pad + [o + pad for o in outer]
            inner = [width + pad] * pad + [i + pad for i in inner]
        try:
            shape = SkewShape(tuple(outer), tuple(inner))
        except Exception:
            continue
        if not shape.is_empty():
            return shape


def random_colored_tuple(rng, max_shapes=3, max_cells=7):
    while True:
        ell = rng.randint(1, max_shapes)
        shapes = [random_skew_shape(rng, max_size=3) for _ in range(ell)]
        tup_size = sum(s.size() for s in shapes)
        if tup_size > max_cells:
            continue
        r = rng.randint(1, ell)
        colors = [rng.randint(1, r) for _ in range(ell)]
        if sorted(set(colors)) != list(range(1, r + 1)):
            continue
        return ColoredTuple(tuple(shapes), tuple(colors))


def random_ribbon_tuple(rng, max_shapes=3, max_cells=6):
    from lltlab.shapes import ribbons_of_size

    ell = rng.randint(1, max_shapes)
    sizes = [rng.randint(1, 3) for _ in range(ell)]
    while sum(sizes) > max_cells:
        sizes[sizes.index(max(sizes))] -= 1
    shapes = [rng.choice(ribbons_of_size(k)) for k in sizes]
    return ColoredTuple(tuple(shapes))
