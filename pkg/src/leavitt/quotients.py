"""Graded-ideal machinery: quotient graphs, socle membership, restriction
graphs, and the constructive right-denominator search.

For a hereditary saturated H, the quotient graph E/H keeps the vertices
outside H and the edges whose range survives; the induced morphism pi kills
H and fixes everything else. Membership in the graded ideal I(H) is decided
as membership in ker(pi): normal-form monomials of I(H) elements can have
ranges outside H (rewriting at a vertex with edges leaving H moves ranges),
so inspecting monomial ranges would be wrong, while the kernel test is
exact.
"""

from __future__ import annotations

from .algebra import Element, Monomial, is_in_path_algebra
from .errors import PreconditionError
from .graph import (
    Graph,
    Path,
    hereditary_saturated_closure,
    is_hereditary,
    is_saturated,
    line_points,
    _as_members,
)


def _require_hereditary(g, H):
    members = _as_members(g, H)
    if not is_hereditary(g, members):
        raise PreconditionError("H is not hereditary")
    return members


def _require_hereditary_saturated(g, H):
    members = _require_hereditary(g, H)
    if not is_saturated(g, members):
        raise PreconditionError("H is not saturated")
    return members


def quotient_graph(g, H):
    """E/H: drop H and every edge with range in H.

    Hereditarity guarantees surviving edges have surviving sources, so the
    graph is well-formed for any hereditary H; the induced MORPHISM below
    additionally needs H saturated. With H empty the graph itself is
    returned.
    """
    members = _require_hereditary(g, H)
    if not members:
        return g
    vertices = [v for v in g.vertices if v not in members]
    edges = [e for e in g.edges if e.dst not in members]
    name = f"{g.name}_mod_" + "_".join(v for v in g.vertices if v in members)
    return Graph(name, vertices, edges)


def _map_path(path, target):
    """Image of a path under the quotient morphism, or None when killed."""
    if path.source not in target._vindex:
        return None
    for name in path.edges:
        if name not in target._eindex:
            return None
    return Path(target, path.source, path.edges)


def quotient_morphism(x, H, target=None):
    """pi(x) in L_K(E/H): kill H and edges into H, renormalize in E/H.

    H must be saturated as well as hereditary, otherwise killing H breaks
    relation (4) at a vertex feeding only into H and the generator map is
    no algebra morphism at all. The designated edges of E/H generally
    differ from those of E, so the image is rewritten in the target before
    being returned.
    """
    _require_hereditary_saturated(x.graph, H)
    if target is None:
        target = quotient_graph(x.graph, H)
    if target == x.graph:
        return x
    raw = []
    for m, c in x.terms.items():
        real = _map_path(m.real, target)
        ghost = _map_path(m.ghost, target)
        if real is not None and ghost is not None:
            raw.append((Monomial(real, ghost), c))
    return Element(target, x.field, raw)


def in_graded_ideal(x, H):
    """Membership in I(H), the graded ideal generated by the vertices of H."""
    return quotient_morphism(x, H).is_zero()


def in_socle(x):
    """Membership in Soc(L_K(E)) = I(closure of the line points)."""
    H = hereditary_saturated_closure(x.graph, line_points(x.graph))
    return in_graded_ideal(x, H.members)


# ---------------------------------------------------------------------------
# Restriction graph


class RestrictionGraph:
    """The graph HE built from a nonempty hereditary saturated H.

    Vertices are H plus one fresh vertex per path entering H from outside
    (source outside H, interior ranges outside H, final range inside);
    edges are the E-edges starting in H plus one fresh edge from each
    path-vertex to its range. Fresh names are ``path:<edges joined by .>``
    and ``bar:<same>``: collision-free and human-readable.

    H needs to be nonempty and hereditary; saturation is not required (the
    construction and the embedding below are sound without it, and the
    realized ideal I(H) coincides with I(closure(H))).

    The path family is infinite whenever a cycle feeds H, so construction
    takes a length bound; ``complete`` records whether the bound exhausted
    the family (no qualifying path of length bound+1 exists, which rules
    out all longer ones since qualifying paths are suffix-closed).
    """

    __slots__ = ("source", "H", "graph", "entry_paths", "bound", "complete")

    def __init__(self, source, H, graph, entry_paths, bound, complete):
        self.source = source
        self.H = H
        self.graph = graph
        self.entry_paths = entry_paths
        self.bound = bound
        self.complete = complete

    def vertex_for(self, path):
        return "path:" + ".".join(path.edges)

    def bar_edge_for(self, path):
        return "bar:" + ".".join(path.edges)

    def __repr__(self):
        return f"RestrictionGraph({self.graph.name!r}, complete={self.complete})"


def _entry_paths(g, members, length):
    """Qualifying paths of length <= bound: s outside H, interior outside, r inside."""
    out = []
    frontier = [
        Path.from_edges(g, [e.name])
        for v in g.vertices
        if v not in members
        for e in g.out_edges(v)
    ]
    for _ in range(length):
        nxt = []
        for p in frontier:
            if p.range in members:
                out.append(p)
            else:
                nxt.extend(p.append(e.name) for e in g.out_edges(p.range))
        frontier = nxt
    out.sort(key=lambda p: (p.length, p.sort_key()))
    has_longer = any(p.range in members for p in frontier)
    return out, not has_longer


def restriction_graph(g, H, bound):
    members = _as_members(g, H)
    if not members:
        raise PreconditionError("restriction graph needs a nonempty H")
    _require_hereditary(g, members)
    if bound < 1:
        raise PreconditionError("length bound must be at least 1")
    paths, complete = _entry_paths(g, members, bound)
    h_order = [v for v in g.vertices if v in members]
    vertices = h_order + ["path:" + ".".join(p.edges) for p in paths]
    edges = [e for e in g.edges if e.src in members]
    edges = [(e.name, e.src, e.dst) for e in edges]
    edges += [
        ("bar:" + ".".join(p.edges), "path:" + ".".join(p.edges), p.range) for p in paths
    ]
    built = Graph(f"{g.name}_restrict", vertices, edges)
    return RestrictionGraph(g, frozenset(members), built, tuple(paths), bound, complete)


def restriction_embedding(rg, y):
    """Image in L_K(E) of an element over the restriction graph.

    Generator images: u in H -> u; path-vertex for alpha -> alpha alpha*;
    E-edge -> itself; bar edge for alpha -> alpha. The image always lands
    in I(H) (the embedding realizes I(H) inside L_K(E)); this is asserted
    because it is cheap and any failure would mean a bug.
    """
    if y.graph != rg.graph:
        raise PreconditionError("element is not over this restriction graph")
    E = rg.source
    field = y.field

    path_for_vertex = {rg.vertex_for(p): p for p in rg.entry_paths}
    path_for_bar = {rg.bar_edge_for(p): p for p in rg.entry_paths}

    def vertex_image(v):
        if v in path_for_vertex:
            alpha = path_for_vertex[v]
            a = Element.from_path(alpha, field)
            return a * a.star()
        return Element.vertex(E, v, field)

    def path_image(path):
        acc = vertex_image(path.source)
        for name in path.edges:
            if name in path_for_bar:
                step = Element.from_path(path_for_bar[name], field)
            else:
                step = Element.edge(E, name, field)
            acc = acc * step
        return acc

    total = Element.zero(E, field)
    for m, c in y.terms.items():
        total = total + (path_image(m.real) * path_image(m.ghost).star()).scale(c)
    # I(H) = I(closure(H)); the closure is saturated, so the kernel test applies.
    closure = hereditary_saturated_closure(E, rg.H)
    assert in_graded_ideal(total, closure.members), "embedding image escaped I(H)"
    return total


# ---------------------------------------------------------------------------
# Right denominators


class DenominatorWitness:
    """Search transcript for an algebra-of-right-quotients denominator."""

    __slots__ = ("r", "mu", "extensions", "p_times_r", "q_times_r")

    def __init__(self, r, mu, extensions, p_times_r, q_times_r):
        self.r = r
        self.mu = mu
        self.extensions = extensions
        self.p_times_r = p_times_r
        self.q_times_r = q_times_r


def _mu_candidates(p):
    """Paths mu that can make p*mu a nonzero path-algebra element.

    A monomial (a b*) mu is nonzero only when mu is a prefix or an extension
    of the ghost path b, so ghost paths of the normal form, their prefixes,
    and their edge extensions up to the ghost degree exhaust the search
    space. Ghost paths are tried longest first, then extensions breadth
    first with edges in declaration order.
    """
    g = p.graph
    bound = p.ghost_degree()
    ghosts = sorted(
        {m.ghost for m in p.terms},
        key=lambda q: (-q.length, q.sort_key()),
    )
    seen = []

    def emit(path):
        if path not in seen:
            seen.append(path)
            return True
        return False

    for q in ghosts:
        for cut in range(q.length, -1, -1):
            prefix = Path(g, q.source, q.edges[:cut])
            if emit(prefix):
                yield prefix
    frontier = list(ghosts)
    while frontier:
        nxt = []
        for q in frontier:
            if q.length >= bound:
                continue
            for e in g.out_edges(q.range):
                ext = q.append(e.name)
                if emit(ext):
                    yield ext
                nxt.append(ext)
        frontier = nxt


def denominator_search(p, q):
    """The constructive procedure behind the right-quotient property.

    Stage 1 finds a path mu with p*mu a nonzero element of KE. Stage 2
    extends mu by edges h1, h2, ... (first out-edge in declaration order)
    until q*mu*h1...hj lands in KE; each extension strictly lowers the
    ghost degree of the running product, so the loop stops within the
    ghost degree of q.
    """
    if p.is_zero():
        raise PreconditionError("right denominator needs p != 0")
    if p.graph != q.graph or p.field != q.field:
        raise PreconditionError("p and q must live over one graph and field")

    g = p.graph
    mu = None
    for candidate in _mu_candidates(p):
        image = p * Element.from_path(candidate, p.field)
        if not image.is_zero() and is_in_path_algebra(image):
            mu = candidate
            break
    if mu is None:
        raise PreconditionError("no denominator path found; p should admit one")

    extensions = []
    current = mu
    q_image = q * Element.from_path(current, p.field)
    while not is_in_path_algebra(q_image):
        # q*mu not in KE forces r(mu) to emit (a sink would have killed
        # every surviving ghost), so the first out-edge always exists.
        h = g.out_edges(current.range)[0]
        extensions.append(h.name)
        current = current.append(h.name)
        q_image = q * Element.from_path(current, p.field)

    r = Element.from_path(current, p.field)
    return DenominatorWitness(r, mu, tuple(extensions), p * r, q_image)


def right_denominator(p, q):
    """r in KE with p*r != 0 and q*r in KE."""
    return denominator_search(p, q).r
