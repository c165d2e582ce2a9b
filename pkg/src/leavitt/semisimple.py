"""Explicit semisimple structure of finite acyclic graphs.

A finite acyclic graph yields L_K(E) isomorphic to a direct sum of matrix
algebras, one block per sink, of size the number of paths into that sink
(trivial path included). When the graph is additionally bifurcation-free,
each undirected component has a unique sink, every vertex carries a unique
path to it, and the block can equivalently be indexed by the component's
vertices; the matrix units are then the reduced monomials mu_jk.

The isomorphism depends on the index order; here it is pinned to
declaration order (vertices) resp. (length, edge order) for sink paths, so
matrix images are reproducible.
"""

from __future__ import annotations

from itertools import product as cartesian_product

from .algebra import Element, Monomial, full_basis
from .errors import (
    NotFoundWithinBounds,
    NotSquareCancellable,
    PreconditionError,
)
from .fields import QQ
from .graph import Path, connected_components, is_acyclic, is_acyclic_no_bifurcation
from .matrices import BlockMatrix, Matrix


def reduced_expression(m):
    """The unique shortest (alpha, beta) with m = alpha beta*.

    Only defined over acyclic bifurcation-free graphs, where a common last
    edge f of both parts satisfies f f* = s(f) and can be stripped; what
    remains is reduced and unique.
    """
    g = m.graph
    if not is_acyclic_no_bifurcation(g):
        raise PreconditionError("reduced expressions need an acyclic bifurcation-free graph")
    real, ghost = m.real, m.ghost
    while real.edges and ghost.edges and real.edges[-1] == ghost.edges[-1]:
        real = Path(g, real.source, real.edges[:-1])
        ghost = Path(g, ghost.source, ghost.edges[:-1])
    return real, ghost


def _component_sink(component):
    sinks = component.sinks()
    if len(sinks) != 1:
        raise PreconditionError(
            f"component {component.name!r} has {len(sinks)} sinks; expected exactly 1"
        )
    return sinks[0]


def _path_to_sink(g, v):
    """The unique maximal path from v in a bifurcation-free acyclic graph."""
    path = Path.trivial(g, v)
    while not g.is_sink(path.range):
        path = path.append(g.out_edges(path.range)[0].name)
    return path


def reduced_monomial_basis(g):
    """All reduced monomials: alpha_i^2 of them per component, mu_jk ordered
    by the declaration order of the source/range vertex pair."""
    if not is_acyclic_no_bifurcation(g):
        raise PreconditionError("reduced monomial basis needs an acyclic bifurcation-free graph")
    out = []
    for component in connected_components(g):
        to_sink = {v: _path_to_sink(g, v) for v in component.vertices}
        for vj in component.vertices:
            for vk in component.vertices:
                real, ghost = reduced_expression(Monomial(to_sink[vj], to_sink[vk]))
                out.append(Monomial(real, ghost))
    return out


class MatrixDecomposition:
    """Block structure of L_K(E) for finite acyclic E.

    Each block holds its size, its index labels, and the paths realizing
    the index: entry (j, k) is the class of paths[j] paths[k]*.
    """

    __slots__ = ("graph", "kind", "blocks")

    def __init__(self, graph, kind, blocks):
        self.graph = graph
        self.kind = kind  # "vertices" | "sink_paths"
        self.blocks = tuple(blocks)

    @property
    def sizes(self):
        return tuple(len(b["paths"]) for b in self.blocks)

    def block_sizes(self):
        return list(self.sizes)

    def position_of(self, path):
        """(block number, index) of a sink-ended path."""
        for bi, block in enumerate(self.blocks):
            idx = block["position"].get(path)
            if idx is not None:
                return bi, idx
        raise PreconditionError(f"path {path!r} does not end at a decomposed sink")

    def describe(self):
        return [
            {"size": len(b["paths"]), "index": list(b["labels"])} for b in self.blocks
        ]


def matrix_decomposition(g):
    """The direct-sum decomposition of a finite acyclic graph.

    Bifurcation-free graphs are indexed by component vertices (declaration
    order); general acyclic graphs by the paths into each sink, sorted by
    length then edge order. Both index the same matrix units p q* over
    paths into a sink, so to_matrix/from_matrix below serve either case.
    """
    if not is_acyclic(g):
        raise PreconditionError("matrix decomposition needs an acyclic graph")
    blocks = []
    if is_acyclic_no_bifurcation(g):
        for component in connected_components(g):
            _component_sink(component)
            paths = [_path_to_sink(g, v) for v in component.vertices]
            blocks.append(_block(labels=list(component.vertices), paths=paths))
        return MatrixDecomposition(g, "vertices", blocks)
    for sink in g.sinks():
        paths = _paths_into(g, sink)
        labels = [".".join(p.edges) if p.edges else sink for p in paths]
        blocks.append(_block(labels=labels, paths=paths))
    return MatrixDecomposition(g, "sink_paths", blocks)


def _block(labels, paths):
    return {
        "labels": tuple(labels),
        "paths": tuple(paths),
        "position": {p: i for i, p in enumerate(paths)},
    }


def _paths_into(g, sink):
    found = [Path.trivial(g, sink)]
    frontier = found[:]
    while frontier:
        nxt = []
        for p in frontier:
            # extend backwards: q = e . p for every edge e into the source
            for e in g.in_edges(p.source):
                q = Path(g, e.src, (e.name,) + p.edges)
                nxt.append(q)
        found.extend(nxt)
        frontier = nxt
    found.sort(key=lambda p: (p.length, tuple(g.edge_index(e) for e in p.edges)))
    return found


def _expand_to_sinks(g, m, coeff, out):
    """Rewrite p q* as a sum of sink-ended units using relation (4) forward."""
    v = m.real.range
    if g.is_sink(v):
        out.append((m, coeff))
        return
    for e in g.out_edges(v):
        _expand_to_sinks(
            g, Monomial(m.real.append(e.name), m.ghost.append(e.name)), coeff, out
        )


def to_matrix(x, decomposition):
    """The block-matrix image of x; a linear and multiplicative bijection."""
    if x.graph != decomposition.graph:
        raise PreconditionError("element and decomposition disagree on the graph")
    g = x.graph
    field = x.field
    blocks = [[[field.zero()] * n for _ in range(n)] for n in decomposition.sizes]
    expanded = []
    for m, c in x.terms.items():
        _expand_to_sinks(g, m, c, expanded)
    for m, c in expanded:
        bi, j = decomposition.position_of(m.real)
        bj, k = decomposition.position_of(m.ghost)
        if bi != bj:
            raise PreconditionError("monomial straddles two blocks; decomposition is stale")
        blocks[bi][j][k] = blocks[bi][j][k] + c
    return BlockMatrix(Matrix(rows, field, len(rows)) for rows in blocks)


def from_matrix(bm, decomposition, field=QQ):
    """Inverse of to_matrix: entry (j,k) of block i pulls back to p_j p_k*."""
    if bm.sizes != decomposition.sizes:
        raise PreconditionError("block sizes disagree with the decomposition")
    if bm.blocks:
        field = bm.blocks[0].field
    g = decomposition.graph
    raw = []
    for block, mat in zip(decomposition.blocks, bm.blocks):
        for j, row in enumerate(mat.rows):
            for k, c in enumerate(row):
                if c:
                    raw.append((Monomial(block["paths"][j], block["paths"][k]), c))
    return Element(g, field, raw)


def element_group_inverse(x, decomposition=None):
    """Group inverse computed through the matrix image."""
    d = decomposition or matrix_decomposition(x.graph)
    inv = to_matrix(x, d).group_inverse()
    return from_matrix(inv, d, x.field)


def is_square_cancellable(x, decomposition=None):
    """a^2 u = a^2 w implies a u = a w (both sides); equivalent to group
    invertibility of the matrix image in a semisimple artinian algebra."""
    d = decomposition or matrix_decomposition(x.graph)
    return to_matrix(x, d).is_group_invertible()


def verify_fg_witness(a, b, q, membership, decomposition=None):
    """Check q = a b# with a, b inside the subalgebra cut out by ``membership``.

    A non-square-cancellable b is not a legal witness at all and is reported
    as its own error rather than a plain False.
    """
    d = decomposition or matrix_decomposition(q.graph)
    if not membership(a) or not membership(b):
        return False
    bm = to_matrix(b, d)
    if not bm.is_group_invertible():
        raise NotSquareCancellable("witness b is not square-cancellable")
    return to_matrix(q, d) == to_matrix(a, d) * bm.group_inverse()


def find_fg_witness(q, membership, basis=None, coefficients=(-1, 0, 1)):
    """Bounded exhaustive search for (a, b) with q = a b#.

    The existence proofs behind the quotient structure are not constructive,
    so the search space must be bounded: combinations of ``basis`` monomials
    (default: the path-algebra part of the full basis) with coefficients
    drawn from ``coefficients``. Exhausting it raises NotFoundWithinBounds.
    """
    d = matrix_decomposition(q.graph)
    field = q.field
    if basis is None:
        basis = [m for m in full_basis(q.graph) if m.is_pure_path]
    pool = []
    for coeffs in cartesian_product(coefficients, repeat=len(basis)):
        if not any(coeffs):
            continue
        raw = [(m, field.from_int(c)) for m, c in zip(basis, coeffs) if c]
        pool.append(Element(q.graph, field, raw))
    for b in pool:
        if not membership(b):
            continue
        bm = to_matrix(b, d)
        if not bm.is_group_invertible():
            continue
        for a in pool:
            if not membership(a):
                continue
            if to_matrix(q, d) == to_matrix(a, d) * bm.group_inverse():
                return a, b
    raise NotFoundWithinBounds(
        f"no Fountain-Gould witness within {len(pool)} candidate elements"
    )
