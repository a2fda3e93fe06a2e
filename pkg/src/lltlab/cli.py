"""Command-line driver.

Three subcommands: `compute` renders one expansion or polynomial from
a JSON literal, `verify` replays an identity over a generated corpus
and streams one report per instance, `scan` hunts for negative
coefficients in the positivity conjectures and reports findings
without asserting anything.

Exit codes: 0 success, 1 identity failure, 2 input error, 3 violated
precondition (library errors surfaced verbatim).  Output is
deterministic for a fixed invocation; report timings appear only in
``--json`` mode.  LLTLAB_THREADS caps the verification worker pool.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cumulants import (
    SubsetFamily,
    llt_cumulant,
    macdonald_cumulant,
    q_partial_cumulant,
    set_partitions,
)
from .errors import LLTLabError
from .graphpoly import Multigraph, inversion_poly, is_connected, tutte, tutte_at_one_q
from .llt import llt, llt_cospin, llt_fundamental, llt_mac, macdonald, macdonald_monomialq
from .lltgraphs import (
    LLTGraph,
    graph_cumulant,
    graph_from_tuple,
    llt_of_combination,
    llt_of_graph,
    pi,
    resolve,
)
from .ring import ONE, Q, QTPoly, T, shift_q, substitute_q, substitute_t, swap_qt
from .shapes import (
    ColoredTuple,
    SkewShape,
    canonical_coloring,
    maj_stat,
    partitions_of,
    ribbon_tuples_for,
    transpose,
)
from .special import (
    blasiak_coefficient,
    blasiak_conjecture_check,
    hny_schur,
    lollipop_cumulant_schur,
    lollipop_partition_schur,
    melting_lollipop,
    parking_functions,
    parking_to_schroder,
    schroder_paths,
    schroder_to_tuple,
    vertical_e_cumulant,
    vertical_e_expansion,
)
from .symfunc import (
    ELEMENTARY,
    FUNDAMENTAL,
    MONOMIAL_Q,
    SCHUR,
    QSymExpansion,
    SymExpansion,
    elementary_to_schur,
    fundamental_to_monomialq,
    hook_coefficients,
    monomialq_to_fundamental,
    monomialq_to_schur,
    render,
    schur_to_elementary,
    schur_to_monomialq,
)


class InputDataError(Exception):
    """Structurally invalid input (missing keys, wrong shapes)."""


# ----------------------------------------------------------------------
# JSON input


def _parse_json(text):
    return json.loads(text)


def _tuple_from_json(data) -> ColoredTuple:
    if not isinstance(data, dict) or "shapes" not in data:
        raise InputDataError('expected an object with a "shapes" key')
    return ColoredTuple(data["shapes"], data.get("colors"))


def _partition_from_json(data):
    if not isinstance(data, list) or not all(isinstance(p, int) for p in data):
        raise InputDataError("expected a partition as an array of integers")
    return tuple(data)


def _partitions_from_json(data):
    if not isinstance(data, list):
        raise InputDataError("expected an array of partitions")
    return [_partition_from_json(p) for p in data]


def _multigraph_from_json(data) -> Multigraph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InputDataError('expected an object with "n" and "edges"')
    return Multigraph(data["n"], [tuple(e) for e in data["edges"]])


def _vertex_key(key, known):
    if key in known:
        return key
    try:
        as_int = int(key)
    except (TypeError, ValueError):
        return key
    return as_int if as_int in known else key


def _lltgraph_from_json(data) -> LLTGraph:
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputDataError('expected an object with a "vertices" key')
    vertices = list(data["vertices"])
    known = set(vertices)
    edges = {
        name: [tuple(e) for e in data.get(name, [])] for name in ("e1", "e2", "ed")
    }
    colors = data.get("colors")
    if colors is not None:
        colors = {_vertex_key(k, known): int(c) for k, c in colors.items()}
    labels = data.get("labels")
    if labels is not None:
        labels = {_vertex_key(k, known): l for k, l in labels.items()}
    return LLTGraph(vertices, colors=colors, labels=labels, **edges)


# ----------------------------------------------------------------------
# rendering


def _poly_text(poly: QTPoly) -> str:
    return str(poly).replace(" ", "")


def _render(expansion) -> str:
    return render(expansion) or "0"


def _render_hooks(hooks: dict) -> str:
    return "\n".join("%d: %s" % (k, hooks[k]) for k in sorted(hooks))


def _partition_text(lam) -> str:
    return "(" + ",".join(str(p) for p in lam) + ")"


def _shape_json(s: SkewShape):
    if any(s.inner):
        return [list(s.outer), list(s.inner)]
    return list(s.outer)


def _tuple_json(tup: ColoredTuple) -> str:
    data = {"shapes": [_shape_json(s) for s in tup.shapes], "colors": list(tup.colors)}
    return json.dumps(data, separators=(",", ":"))


def _multigraph_json(G: Multigraph) -> str:
    data = {"n": G.n, "edges": [list(e) for e in sorted(G.edges)]}
    return json.dumps(data, separators=(",", ":"))


def _lltgraph_json(G: LLTGraph) -> str:
    data = {"vertices": list(G.vertices)}
    for name in ("e1", "e2", "ed"):
        edges = getattr(G, name)
        if edges:
            data[name] = [list(e) for e in sorted(edges)]
    if G.colors is not None:
        data["colors"] = {str(v): G.colors[v] for v in G.vertices}
    return json.dumps(data, separators=(",", ":"))


# ----------------------------------------------------------------------
# compute


def _to_basis(f: QSymExpansion, basis: str):
    if basis == MONOMIAL_Q:
        return f
    if basis == FUNDAMENTAL:
        return monomialq_to_fundamental(f)
    schur = monomialq_to_schur(f)
    if basis == SCHUR:
        return schur
    return schur_to_elementary(schur)


def _sym_to_basis(f: SymExpansion, basis: str):
    if basis == SCHUR:
        return f
    if basis == ELEMENTARY:
        return schur_to_elementary(f)
    return _to_basis(schur_to_monomialq(f), basis)


def _parse_at(spec: str, arity: int):
    tokens = spec.split(",")
    if len(tokens) != arity:
        raise InputDataError(
            "--at expects %d comma-separated values, got %r" % (arity, spec)
        )
    images = []
    for token in tokens:
        token = token.strip()
        if token == "q":
            images.append(Q)
        elif token == "t":
            images.append(T)
        else:
            try:
                images.append(QTPoly.integer(int(token)))
            except ValueError:
                raise InputDataError("--at values must be integers, q, or t") from None
    return images


def _evaluate(poly: QTPoly, x_image: QTPoly, y_image: QTPoly) -> QTPoly:
    total = QTPoly.zero()
    for (qe, te), coeff in poly.items():
        if qe < 0 or te < 0:
            raise InputDataError("--at does not support negative exponents")
        total = total + QTPoly.integer(coeff) * x_image**qe * y_image**te
    return total


def _cmd_compute(args) -> int:
    data = _parse_json(args.input)
    basis = args.basis or MONOMIAL_Q
    polynomial_objects = {"tutte", "invpoly"}
    if args.basis and args.object in polynomial_objects:
        raise InputDataError("--basis does not apply to polynomial objects")
    if args.at and args.object not in polynomial_objects:
        raise InputDataError("--at applies to tutte and invpoly only")
    if args.normalization and args.object != "llt-cumulant":
        raise InputDataError("--normalization applies to llt-cumulant only")

    if args.object == "tutte":
        poly = tutte(_multigraph_from_json(data))
        if args.at:
            x_image, y_image = _parse_at(args.at, 2)
            poly = _evaluate(poly, x_image, y_image)
        print(_poly_text(poly))
        return 0
    if args.object == "invpoly":
        poly = inversion_poly(_multigraph_from_json(data))
        if args.at:
            (x_image,) = _parse_at(args.at, 1)
            poly = _evaluate(poly, x_image, ONE)
        print(_poly_text(poly))
        return 0

    if args.object == "macdonald":
        result = _to_basis(macdonald_monomialq(_partition_from_json(data)), basis)
    elif args.object == "macdonald-cumulant":
        result = _sym_to_basis(macdonald_cumulant(_partitions_from_json(data)), basis)
    elif args.object == "llt-cumulant":
        tup = _tuple_from_json(data)
        result = _to_basis(llt_cumulant(tup, args.normalization or "plain"), basis)
    elif args.object in ("llt", "cospin", "mac"):
        fn = {"llt": llt, "cospin": llt_cospin, "mac": llt_mac}[args.object]
        result = _to_basis(fn(_tuple_from_json(data)), basis)
    elif args.object == "graph-llt":
        result = _to_basis(llt_of_graph(_lltgraph_from_json(data)), basis)
    else:
        result = _to_basis(graph_cumulant(_lltgraph_from_json(data)), basis)
    print(_render(result))
    return 0


# ----------------------------------------------------------------------
# corpora shared by verify and scan


def _box_partitions(k):
    for total in range(1, k * k + 1):
        for lam in partitions_of(total, max_part=k):
            if len(lam) <= k:
                yield lam


def _inner_choices(outer, target):
    def rec(row, bound, remaining):
        if row == len(outer):
            if remaining == 0:
                yield ()
            return
        top = min(bound, outer[row], remaining)
        for part in range(top, -1, -1):
            for rest in rec(row + 1, part, remaining - part):
                yield (part,) + rest

    yield from rec(0, outer[0], target)


def _cells_connected(cells) -> bool:
    todo = set(cells)
    stack = [next(iter(todo))]
    todo.discard(stack[0])
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in todo:
                todo.discard(nb)
                stack.append(nb)
    return not todo


_SKEW_CACHE: dict = {}


def connected_skew_shapes(k: int) -> list:
    """Connected skew shapes with k boxes whose diagram touches both
    the first row and the first column."""
    if k in _SKEW_CACHE:
        return _SKEW_CACHE[k]
    seen = set()
    out = []
    for outer in _box_partitions(k):
        excess = sum(outer) - k
        if excess < 0:
            continue
        for inner in _inner_choices(outer, excess):
            shape = SkewShape(outer, inner)
            cells = shape.cells()
            if len(cells) != k or shape in seen:
                continue
            if min(x for x, _ in cells) != 1 or min(y for _, y in cells) != 1:
                continue
            if not _cells_connected(cells):
                continue
            seen.add(shape)
            out.append(shape)
    out.sort(key=lambda s: (s.outer, s.inner))
    _SKEW_CACHE[k] = out
    return out


def tuple_catalog(total: int, components: int | None = None):
    """All tuples of connected skew shapes with the given total box
    count; fix the component count by passing it."""

    def rec(remaining, slots):
        if remaining == 0:
            if slots in (None, 0):
                yield ()
            return
        if slots == 0:
            return
        for k in range(1, remaining + 1):
            for shape in connected_skew_shapes(k):
                for rest in rec(remaining - k, None if slots is None else slots - 1):
                    yield (shape,) + rest

    for shapes in rec(total, components):
        yield ColoredTuple(shapes)


def surjective_colorings(ell: int):
    """Color words on ell positions, one per set partition of the
    positions, blocks numbered by smallest member."""
    for blocks in set_partitions(range(1, ell + 1)):
        word = [0] * ell
        for index, block in enumerate(blocks, start=1):
            for position in block:
                word[position - 1] = index
        yield tuple(word)


def _random_lltgraph(rng, max_vertices, max_doubles, colored):
    n = rng.randint(2, max_vertices)
    r = rng.randint(1, min(3, n)) if colored else 1
    palette = list(range(1, r + 1)) + [rng.randint(1, r) for _ in range(n - r)]
    rng.shuffle(palette)
    color = {v: palette[v - 1] for v in range(1, n + 1)}
    e1, e2, ed = set(), set(), set()
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u == v or (colored and color[u] != color[v]):
                continue
            roll = rng.random()
            if roll < 0.2:
                e1.add((u, v))
            elif roll < 0.4:
                e2.add((u, v))
    pool = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(1, n + 1)
        if u != v and (u, v) not in e1 and (u, v) not in e2
    ]
    rng.shuffle(pool)
    for u, v in pool:
        if len(ed) == max_doubles:
            break
        if (v, u) not in ed and (v, u) not in e1 and (v, u) not in e2:
            ed.add((u, v))
    return LLTGraph(range(1, n + 1), e1, e2, ed, color if colored else None)


# ----------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    identity: str
    instance: str
    lhs: str
    rhs: str
    verdict: bool
    elapsed_ms: int


def _shifted_elem(f) -> SymExpansion:
    e = schur_to_elementary(monomialq_to_schur(f))
    return e.map_coefficients(lambda p: substitute_q(p, Q + ONE))


def _gen_hhl(max_size, rng):
    for n in range(1, max_size + 1):
        for lam in partitions_of(n):

            def check_flip(lam=lam, n=n):
                left = macdonald(transpose(lam))
                flipped = SymExpansion(
                    SCHUR,
                    {mu: swap_qt(c) for mu, c in macdonald(lam).items()},
                    n,
                )
                return _render(left), _render(flipped)

            yield "transpose-swap lambda=%s" % _partition_text(lam), check_flip

            def check_degenerate(lam=lam, n=n):
                left = macdonald(lam).map_coefficients(
                    lambda p: substitute_t(substitute_q(p, ONE), ONE)
                )
                ones = SymExpansion(ELEMENTARY, {(1,) * n: ONE}, n)
                return _render(left), _render(elementary_to_schur(ones))

            yield "at-q=t=1 lambda=%s" % _partition_text(lam), check_degenerate


def _partition_lists(total_budget):
    catalog = [
        lam for k in range(1, total_budget + 1) for lam in partitions_of(k)
    ]

    def rec(start, remaining):
        yield ()
        for i in range(start, len(catalog)):
            lam = catalog[i]
            if sum(lam) <= remaining:
                for rest in rec(i, remaining - sum(lam)):
                    yield (lam,) + rest

    for lams in rec(0, total_budget):
        if lams:
            yield lams


def _gen_mac_cumu(max_size, rng):
    for lams in _partition_lists(max_size):

        def check(lams=lams):
            left = macdonald_cumulant(lams)
            merged, colors = canonical_coloring(lams)
            total = None
            for tup in ribbon_tuples_for(merged):
                colored = ColoredTuple(tup.shapes, colors)
                piece = llt_cumulant(colored, "mac").scaled(
                    QTPoly.monomial(1, 0, maj_stat(colored))
                )
                total = piece if total is None else total + piece
            return _render(left), _render(monomialq_to_schur(total))

        label = "lambdas=(%s)" % ",".join(_partition_text(l) for l in lams)
        yield label, check


def _colored_graph_corpus(max_size, rng):
    for total in range(1, min(max_size, 4) + 1):
        for tup in tuple_catalog(total):
            for colors in surjective_colorings(len(tup.shapes)):
                colored = ColoredTuple(tup.shapes, colors)
                yield "tuple=%s" % _tuple_json(colored), graph_from_tuple(colored)
    for _ in range(8):
        G = _random_lltgraph(rng, max_vertices=max_size, max_doubles=4, colored=True)
        yield "graph=%s" % _lltgraph_json(G), G


def _sorted_doubles(G):
    order = {v: k for k, v in enumerate(G.vertices)}
    return sorted(G.ed, key=lambda e: (order[e[0]], order[e[1]]))


def _gen_cumulant_connected(max_size, rng):
    for label, G in _colored_graph_corpus(max_size, rng):

        def check(G=G):
            r = G.color_count()
            left = graph_cumulant(G).map_coefficients(
                lambda p: substitute_q(p, Q + ONE)
            )
            total = None
            for size in range(len(G.ed) + 1):
                for combo in itertools.combinations(_sorted_doubles(G), size):
                    pairs = [(G.colors[u], G.colors[v]) for u, v in combo]
                    if not is_connected(Multigraph(r, pairs)):
                        continue
                    piece = llt_of_graph(resolve(G, combo, "sharp"))
                    piece = piece.map_coefficients(
                        lambda p, s=size: shift_q(p, s - r + 1)
                    )
                    total = piece if total is None else total + piece
            right = "0" if total is None else _render(total)
            return _render(left), right

        yield label, check


def _gen_monomial_positivity(max_size, rng):
    for label, G in _colored_graph_corpus(max_size, rng):

        def check(G=G):
            r = G.color_count()
            left = graph_cumulant(G)
            total = None
            for size in range(len(G.ed) + 1):
                for combo in itertools.combinations(_sorted_doubles(G), size):
                    pairs = [(G.colors[u], G.colors[v]) for u, v in combo]
                    factor = inversion_poly(Multigraph(r, pairs))
                    if factor.is_zero():
                        continue
                    piece = llt_of_graph(resolve(G, combo, "tilde")).scaled(factor)
                    total = piece if total is None else total + piece
            right = "0" if total is None else _render(total)
            return _render(left), right

        yield label, check


def _multigraph_corpus(max_size, rng):
    small = min(max_size, 3)
    for n in range(1, small + 1):
        pool = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        for count in range(0, 5):
            for edges in itertools.combinations_with_replacement(pool, count):
                yield Multigraph(n, list(edges))
    for _ in range(12):
        n = rng.randint(2, max(2, max_size))
        count = rng.randint(n - 1, n + 3)
        edges = [
            tuple(sorted((rng.randint(1, n), rng.randint(1, n)))) for _ in range(count)
        ]
        yield Multigraph(n, edges)


def _gen_tutte_triple(max_size, rng):
    for G in _multigraph_corpus(max_size, rng):
        label = "graph=%s" % _multigraph_json(G)

        def check_tutte(G=G):
            return _poly_text(inversion_poly(G)), _poly_text(tutte_at_one_q(G))

        yield "vs-tutte %s" % label, check_tutte

        def check_cumulant(G=G):
            family = SubsetFamily.build(
                G.vertices(),
                lambda B: QTPoly.monomial(1, G.edges_within(B), 0),
            )
            route = q_partial_cumulant(family, frozenset(G.vertices()))
            return _poly_text(inversion_poly(G)), _poly_text(route)

        yield "vs-cumulant %s" % label, check_cumulant


def _gen_fundamental(max_size, rng):
    for total in range(1, max_size + 1):
        for tup in tuple_catalog(total):
            label = "tuple=%s" % _tuple_json(tup)

            def check_fund(tup=tup):
                left = fundamental_to_monomialq(llt_fundamental(tup))
                return _render(left), _render(llt(tup))

            yield "fund-vs-monomial %s" % label, check_fund

            def check_hooks(tup=tup, n=total):
                hooks = hook_coefficients(monomialq_to_fundamental(llt(tup)))
                schur = monomialq_to_schur(llt(tup))
                direct = {
                    k: schur.coefficient((k,) + (1,) * (n - k))
                    for k in range(1, n + 1)
                }
                return _render_hooks(hooks), _render_hooks(direct)

            yield "hooks %s" % label, check_hooks


def _gen_e_positivity(max_size, rng):
    for n in range(1, max_size + 1):
        for path in schroder_paths(n):
            tup = schroder_to_tuple(path)
            word = path.word()

            def check_series(tup=tup):
                return _render(vertical_e_expansion(tup)), _render(
                    _shifted_elem(llt(tup))
                )

            yield "strip-series path=%s" % word, check_series
            for colors in surjective_colorings(len(tup.shapes)):
                if max(colors) > 3:
                    continue
                colored = ColoredTuple(tup.shapes, colors)

                def check_cumulant(colored=colored):
                    left = vertical_e_cumulant(colored)
                    right = _shifted_elem(llt_cumulant(colored, "plain"))
                    return _render(left), _render(right)

                label = "strip-cumulant path=%s colors=%s" % (
                    word,
                    _partition_text(colors),
                )
                yield label, check_cumulant


def _gen_lollipop(max_size, rng):
    for m in range(1, max_size + 1):
        for n in range(0, max_size - m + 1):
            for k in range(0, m):
                G = melting_lollipop(m, n, k)
                label = "lollipop={m:%d,n:%d,k:%d}" % (m, n, k)

                def check_descents(G=G):
                    return _render(hny_schur(G)), _render(
                        monomialq_to_schur(llt_of_graph(G))
                    )

                yield "descent-formula %s" % label, check_descents
                for colors in surjective_colorings(m + n):
                    palette = {v: colors[v - 1] for v in G.vertices}

                    def check_cumulant(G=G, palette=palette):
                        colored = LLTGraph(G.vertices, ed=G.ed, colors=palette)
                        left = lollipop_cumulant_schur(G, palette)
                        return _render(left), _render(
                            monomialq_to_schur(graph_cumulant(colored))
                        )

                    yield (
                        "cumulant %s colors=%s" % (label, _partition_text(colors)),
                        check_cumulant,
                    )

                    blocks = {}
                    for v in G.vertices:
                        blocks.setdefault(palette[v], []).append(v)
                    blocks = [tuple(B) for _, B in sorted(blocks.items())]

                    def check_blocks(G=G, blocks=blocks):
                        left = lollipop_partition_schur(G, blocks)
                        product = None
                        for B in blocks:
                            piece = llt_of_graph(G.restricted(B))
                            product = piece if product is None else product * piece
                        return _render(left), _render(monomialq_to_schur(product))

                    yield (
                        "block-product %s colors=%s" % (label, _partition_text(colors)),
                        check_blocks,
                    )


def _gen_singcell(max_size, rng):
    for r in range(1, max_size + 1):

        def check(r=r):
            tup = ColoredTuple([(1,)] * r)
            left = llt_cumulant(tup, "plain")
            total = QSymExpansion.zero(MONOMIAL_Q, r)
            for P in parking_functions(r - 1):
                strip = schroder_to_tuple(parking_to_schroder(P))
                total = total + llt(strip)
            return _render(left), _render(total)

        yield "boxes=%d" % r, check


def _gen_blasiak(max_size, rng):
    for total in range(3, max_size + 1):
        for tup in tuple_catalog(total, components=3):

            def check(tup=tup, n=total):
                coeffs = {
                    lam: blasiak_coefficient(tup, lam) for lam in partitions_of(n)
                }
                left = SymExpansion(SCHUR, coeffs, n)
                return _render(left), _render(monomialq_to_schur(llt(tup)))

            yield "tuple=%s" % _tuple_json(tup), check


def _gen_arrow_relations(max_size, rng):
    for _ in range(8):
        G = _random_lltgraph(rng, max_vertices=max_size, max_doubles=3, colored=False)
        label = "graph=%s" % _lltgraph_json(G)
        base = llt_of_graph(G)

        def check_pi(G=G, base=base):
            combo = pi(G)
            right = _render(llt_of_combination(combo)) if combo else "0"
            left = "0" if base.is_zero() else _render(base)
            return left, right

        yield "pi-invariance %s" % label, check_pi

        def check_tilde(G=G, base=base):
            total = None
            for size in range(len(G.ed) + 1):
                for combo in itertools.combinations(_sorted_doubles(G), size):
                    piece = llt_of_graph(resolve(G, combo, "tilde")).scaled(
                        QTPoly.monomial(1, size, 0)
                    )
                    total = piece if total is None else total + piece
            return _render(base), _render(total)

        yield "tilde-subset-sum %s" % label, check_tilde

        def check_sharp(G=G, base=base):
            total = None
            for size in range(len(G.ed) + 1):
                for combo in itertools.combinations(_sorted_doubles(G), size):
                    piece = llt_of_graph(resolve(G, combo, "sharp")).scaled(
                        (Q - ONE) ** size
                    )
                    total = piece if total is None else total + piece
            return _render(base), _render(total)

        yield "sharp-subset-sum %s" % label, check_sharp


_IDENTITIES = {
    "hhl-decomp": (_gen_hhl, 4, "boxes"),
    "mac-cumu-decomp": (_gen_mac_cumu, 3, "total boxes"),
    "cumulant-connected": (_gen_cumulant_connected, 4, "boxes/vertices"),
    "tutte-triple": (_gen_tutte_triple, 4, "vertices"),
    "monomial-positivity": (_gen_monomial_positivity, 4, "boxes/vertices"),
    "fundamental-expansion": (_gen_fundamental, 4, "boxes"),
    "e-positivity": (_gen_e_positivity, 4, "boxes"),
    "lollipop": (_gen_lollipop, 4, "vertices"),
    "singcell": (_gen_singcell, 4, "boxes"),
    "blasiak": (_gen_blasiak, 5, "boxes"),
    "arrow-relations": (_gen_arrow_relations, 4, "vertices"),
}


def _max_workers() -> int:
    raw = os.environ.get("LLTLAB_THREADS")
    if raw:
        return max(1, int(raw))
    return min(8, os.cpu_count() or 1)


def _run_check(identity, instance, thunk) -> VerificationReport:
    start = time.perf_counter()
    try:
        lhs, rhs = thunk()
    except LLTLabError as exc:
        lhs, rhs = "", "%s: %s" % (type(exc).__name__, exc)
    elapsed = int((time.perf_counter() - start) * 1000)
    return VerificationReport(identity, instance, lhs, rhs, lhs == rhs, elapsed)


def _indent(text: str) -> str:
    return "\n".join("    " + line for line in text.splitlines())


def _cmd_verify(args) -> int:
    generator, default_size, _unit = _IDENTITIES[args.identity]
    max_size = args.max_size if args.max_size is not None else default_size
    rng = random.Random(args.seed)
    checks = list(generator(max_size, rng))
    failures = []
    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        reports = pool.map(
            lambda item: _run_check(args.identity, item[0], item[1]), checks
        )
        for report in reports:
            if args.json:
                print(
                    json.dumps(
                        {
                            "identity": report.identity,
                            "instance": report.instance,
                            "lhs": report.lhs,
                            "rhs": report.rhs,
                            "verdict": "pass" if report.verdict else "fail",
                            "elapsed_ms": report.elapsed_ms,
                        },
                        separators=(",", ":"),
                    )
                )
            elif report.verdict:
                print("[pass] %s %s" % (report.identity, report.instance))
            else:
                print("[FAIL] %s %s" % (report.identity, report.instance))
                print("  lhs:")
                print(_indent(report.lhs))
                print("  rhs:")
                print(_indent(report.rhs))
            if not report.verdict:
                failures.append(report)
    if not args.json:
        if failures:
            print("%d instances, %d failed" % (len(checks), len(failures)))
            print("minimal failing instance: %s" % failures[0].instance)
        else:
            print("%d instances, all pass" % len(checks))
    return 1 if failures else 0


# ----------------------------------------------------------------------
# conjecture scans


def _negative_findings(expansion):
    for key, poly in expansion.items():
        negatives = [
            ((qe, te), c) for (qe, te), c in poly.items() if c < 0
        ]
        if negatives:
            yield key, poly


def _scan_llt_schur(max_size):
    for total in range(1, max_size + 1):
        for tup in tuple_catalog(total):
            for colors in surjective_colorings(len(tup.shapes)):
                colored = ColoredTuple(tup.shapes, colors)
                label = "tuple=%s colors=%s" % (
                    _tuple_json(tup),
                    _partition_text(colors),
                )
                schur = monomialq_to_schur(llt_cumulant(colored, "cospin"))
                findings = [
                    "violation llt-schur-pos %s key=%s coefficient=%s"
                    % (label, _partition_text(key), _poly_text(poly))
                    for key, poly in _negative_findings(schur)
                ]
                yield label, findings


def _scan_mac_schur(max_size):
    for n in range(1, max_size + 1):
        for lam in partitions_of(n):
            label = "lambda=%s" % _partition_text(lam)
            findings = [
                "violation mac-schur-pos %s key=%s coefficient=%s"
                % (label, _partition_text(key), _poly_text(poly))
                for key, poly in _negative_findings(macdonald(lam))
            ]
            yield label, findings


def _scan_blasiak_aux(max_size):
    for total in range(3, max_size + 1):
        for tup in tuple_catalog(total, components=3):
            for i, j in ((1, 2), (1, 3), (2, 3)):
                label = "tuple=%s pair=(%d,%d)" % (_tuple_json(tup), i, j)
                report = blasiak_conjecture_check(tup, i, j)
                findings = []
                if not report["verdict"]:
                    findings.append(
                        "violation blasiak-aux %s lhs=%s rhs=%s"
                        % (
                            label,
                            _render(report["lhs"]).replace("\n", ";"),
                            _render(report["rhs"]).replace("\n", ";"),
                        )
                    )
                yield label, findings


_SCANS = {
    "llt-schur-pos": (_scan_llt_schur, 5),
    "mac-schur-pos": (_scan_mac_schur, 4),
    "blasiak-aux": (_scan_blasiak_aux, 5),
}


def _cmd_scan(args) -> int:
    scanner, default_size = _SCANS[args.conjecture]
    max_size = args.max_size if args.max_size is not None else default_size
    instances = 0
    violations = []
    for _, findings in scanner(max_size):
        instances += 1
        violations.extend(findings)
    for line in violations:
        print(line)
    print(
        "scanned %d instances, %s"
        % (instances, "no violations" if not violations else "%d violations" % len(violations))
    )
    return 0


# ----------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lltlab",
        description="Exact LLT, Macdonald, and graph-cumulant calculator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="render one expansion from JSON input")
    compute.add_argument(
        "object",
        choices=[
            "llt",
            "cospin",
            "mac",
            "macdonald",
            "llt-cumulant",
            "macdonald-cumulant",
            "tutte",
            "invpoly",
            "graph-llt",
            "graph-cumulant",
        ],
    )
    compute.add_argument("input", help="JSON literal for the object")
    compute.add_argument("--basis", choices=[MONOMIAL_Q, FUNDAMENTAL, SCHUR, ELEMENTARY])
    compute.add_argument("--normalization", choices=["plain", "cospin", "mac"])
    compute.add_argument("--at", help="evaluation point, e.g. 1,q for tutte")

    verify = sub.add_parser("verify", help="replay an identity over a corpus")
    verify.add_argument("identity", choices=sorted(_IDENTITIES))
    verify.add_argument(
        "--max-size",
        dest="max_size",
        type=int,
        help="size budget (boxes or vertices, identity-dependent)",
    )
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--json", action="store_true")

    scan = sub.add_parser("scan", help="look for positivity violations")
    scan.add_argument("conjecture", choices=sorted(_SCANS))
    scan.add_argument("--max-size", dest="max_size", type=int)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_scan(args)
    except json.JSONDecodeError as exc:
        print(
            "input error at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg),
            file=sys.stderr,
        )
        return 2
    except InputDataError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except LLTLabError as exc:
        print("%s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 3
    except (KeyError, TypeError, ValueError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
