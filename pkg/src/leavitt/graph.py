"""Directed graphs, the graph DSL, and the structure analyzers.

A graph here is a finite row-finite directed graph (E0, E1, r, s) with
named vertices and edges. Declaration order is significant: it breaks ties
everywhere a canonical choice is needed (designated edges for normal forms,
cycle rotations, report ordering), so graphs preserve it exactly.

Graphs are immutable after construction and every analyzer is a pure
function, so instances can be shared freely across threads.
"""

from __future__ import annotations

import re
from collections import namedtuple

from .errors import (
    DuplicateIdentifier,
    GraphMismatch,
    GraphSyntaxError,
    PreconditionError,
    UnknownIdentifier,
)

Edge = namedtuple("Edge", ["name", "src", "dst"])

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class Graph:
    """Finite directed graph with declaration-ordered vertices and edges."""

    __slots__ = ("name", "vertices", "edges", "_vindex", "_eindex", "_out", "_in", "_hash")

    def __init__(self, name, vertices, edges):
        self.name = name
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(*e) for e in edges)
        self._vindex = {}
        for v in self.vertices:
            if v in self._vindex:
                raise DuplicateIdentifier(f"vertex {v!r} declared twice")
            self._vindex[v] = len(self._vindex)
        self._eindex = {}
        for e in self.edges:
            if e.name in self._eindex or e.name in self._vindex:
                raise DuplicateIdentifier(f"identifier {e.name!r} declared twice")
            if e.src not in self._vindex:
                raise UnknownIdentifier(f"edge {e.name!r}: undeclared source {e.src!r}")
            if e.dst not in self._vindex:
                raise UnknownIdentifier(f"edge {e.name!r}: undeclared range {e.dst!r}")
            self._eindex[e.name] = len(self._eindex)
        # Adjacency indices precomputed once; analyzers are called repeatedly.
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
            inc[e.dst].append(e)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}
        self._hash = hash((self.vertices, self.edges))

    # -- lookups -----------------------------------------------------------

    def vertex_index(self, v):
        try:
            return self._vindex[v]
        except KeyError:
            raise UnknownIdentifier(f"unknown vertex {v!r} in graph {self.name!r}") from None

    def edge_index(self, name):
        try:
            return self._eindex[name]
        except KeyError:
            raise UnknownIdentifier(f"unknown edge {name!r} in graph {self.name!r}") from None

    def edge(self, name):
        return self.edges[self.edge_index(name)]

    def has_vertex(self, v):
        return v in self._vindex

    def has_edge(self, name):
        return name in self._eindex

    def out_edges(self, v):
        self.vertex_index(v)
        return self._out[v]

    def in_edges(self, v):
        self.vertex_index(v)
        return self._in[v]

    def out_degree(self, v):
        return len(self.out_edges(v))

    def is_sink(self, v):
        return self.out_degree(v) == 0

    def sinks(self):
        return tuple(v for v in self.vertices if self.is_sink(v))

    def designated_edge(self, v):
        """The last-declared edge out of v; None for sinks.

        This is the edge consumed by the normal-form rewrite rule, so the
        whole canonical-basis machinery depends on declaration order.
        """
        es = self.out_edges(v)
        return es[-1] if es else None

    # -- equality is structural; the name is metadata ----------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.name!r}, {len(self.vertices)} vertices, {len(self.edges)} edges)"

    def to_dsl(self):
        lines = [f"graph {self.name}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e.name} {e.src} {e.dst}" for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text):
    """Parse the line-oriented graph DSL.

    ``graph <name>`` header, then ``vertex <id>`` and ``edge <id> <src> <dst>``
    lines in any interleaving; ``#`` starts a comment. Declaration order is
    preserved.
    """
    name = None
    vertices = []
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        keyword = words[0]
        if name is None:
            if keyword != "graph" or len(words) != 2:
                raise GraphSyntaxError("expected 'graph <name>' header", lineno, 1)
            _check_ident(words[1], lineno, raw)
            name = words[1]
            continue
        if keyword == "vertex":
            if len(words) != 2:
                raise GraphSyntaxError("expected 'vertex <id>'", lineno, 1)
            _check_ident(words[1], lineno, raw)
            if words[1] in seen:
                raise DuplicateIdentifier(f"line {lineno}: identifier {words[1]!r} declared twice")
            seen.add(words[1])
            vertices.append(words[1])
        elif keyword == "edge":
            if len(words) != 4:
                raise GraphSyntaxError("expected 'edge <id> <src> <dst>'", lineno, 1)
            for w in words[1:]:
                _check_ident(w, lineno, raw)
            if words[1] in seen:
                raise DuplicateIdentifier(f"line {lineno}: identifier {words[1]!r} declared twice")
            for endpoint in words[2:]:
                if endpoint not in vertices:
                    raise UnknownIdentifier(
                        f"line {lineno}: undeclared endpoint {endpoint!r} for edge {words[1]!r}"
                    )
            seen.add(words[1])
            edges.append((words[1], words[2], words[3]))
        elif keyword == "graph":
            raise GraphSyntaxError("duplicate 'graph' header", lineno, 1)
        else:
            raise GraphSyntaxError(f"unknown keyword {keyword!r}", lineno, 1)
    if name is None:
        raise GraphSyntaxError("empty graph source: missing 'graph <name>' header", 1, 1)
    return Graph(name, vertices, edges)


def _check_ident(word, lineno, raw):
    if not IDENT_RE.match(word):
        col = raw.index(word) + 1 if word in raw else 1
        raise GraphSyntaxError(f"bad identifier {word!r}", lineno, col)


# ---------------------------------------------------------------------------
# Paths, cycles, walks


class Path:
    """Directed path: consecutive edges, or a single vertex (trivial path)."""

    __slots__ = ("graph", "source", "edges")

    def __init__(self, graph, source, edges=()):
        self.graph = graph
        self.source = source
        self.edges = tuple(edges)
        graph.vertex_index(source)
        at = source
        for name in self.edges:
            e = graph.edge(name)
            if e.src != at:
                raise PreconditionError(
                    f"edges do not compose: {name!r} starts at {e.src!r}, expected {at!r}"
                )
            at = e.dst

    @classmethod
    def trivial(cls, graph, vertex):
        return cls(graph, vertex, ())

    @classmethod
    def from_edges(cls, graph, edge_names):
        names = list(edge_names)
        if not names:
            raise PreconditionError("from_edges needs at least one edge; use Path.trivial")
        return cls(graph, graph.edge(names[0]).src, names)

    @property
    def range(self):
        if not self.edges:
            return self.source
        return self.graph.edge(self.edges[-1]).dst

    @property
    def length(self):
        return len(self.edges)

    @property
    def is_trivial(self):
        return not self.edges

    def vertex_set(self):
        """All vertices the path passes through, including endpoints."""
        seen = [self.source]
        for name in self.edges:
            v = self.graph.edge(name).dst
            if v not in seen:
                seen.append(v)
        return tuple(seen)

    def concat(self, other):
        if other.source != self.range:
            raise PreconditionError(
                f"paths do not compose: {self.range!r} then {other.source!r}"
            )
        return Path(self.graph, self.source, self.edges + other.edges)

    def append(self, edge_name):
        return Path(self.graph, self.source, self.edges + (edge_name,))

    def is_prefix_of(self, other):
        return (
            self.source == other.source
            and other.edges[: len(self.edges)] == self.edges
        )

    def strip_prefix(self, prefix):
        """The tail t with self == prefix . t."""
        if not prefix.is_prefix_of(self):
            raise PreconditionError("not a prefix")
        return Path(self.graph, prefix.range, self.edges[len(prefix.edges):])

    def sort_key(self):
        g = self.graph
        return (g.vertex_index(self.source),) + tuple(g.edge_index(e) for e in self.edges)

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.source == other.source
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.source, self.edges))

    def __repr__(self):
        if self.is_trivial:
            return f"Path({self.source!r})"
        return f"Path({'.'.join(self.edges)})"


class Cycle:
    """Closed path whose edge sources are pairwise distinct."""

    __slots__ = ("path",)

    def __init__(self, path):
        if path.is_trivial or path.range != path.source:
            raise PreconditionError("not a closed path")
        sources = [path.graph.edge(e).src for e in path.edges]
        if len(set(sources)) != len(sources):
            raise PreconditionError("closed path revisits a source: not a cycle")
        self.path = path

    @property
    def graph(self):
        return self.path.graph

    @property
    def edges(self):
        return self.path.edges

    def vertices(self):
        return tuple(self.graph.edge(e).src for e in self.edges)

    def canonical(self):
        """Rotate so the least source vertex (declaration order) comes first."""
        g = self.graph
        sources = [g.vertex_index(g.edge(e).src) for e in self.edges]
        k = sources.index(min(sources))
        edges = self.edges[k:] + self.edges[:k]
        return Cycle(Path.from_edges(g, edges))

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.canonical().path == other.canonical().path

    def __hash__(self):
        return hash(self.canonical().path)

    def __repr__(self):
        return f"Cycle({'.'.join(self.edges)})"


class Walk:
    """Path in the underlying undirected graph.

    Items are (edge_name, forward) pairs; consecutive items must compose
    once edge direction is forgotten.
    """

    __slots__ = ("graph", "source", "items")

    def __init__(self, graph, source, items=()):
        self.graph = graph
        self.source = source
        self.items = tuple(items)
        graph.vertex_index(source)
        at = source
        for name, forward in self.items:
            e = graph.edge(name)
            start, end = (e.src, e.dst) if forward else (e.dst, e.src)
            if start != at:
                raise PreconditionError(f"walk breaks at {name!r}: at {at!r}, item starts {start!r}")
            at = end

    @property
    def range(self):
        at = self.source
        for name, forward in self.items:
            e = self.graph.edge(name)
            at = e.dst if forward else e.src
        return at


def walk_between(g, u, w):
    """Some undirected walk from u to w, or None if they are disconnected."""
    g.vertex_index(u)
    g.vertex_index(w)
    parents = {u: None}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for e in g.out_edges(x):
                if e.dst not in parents:
                    parents[e.dst] = (x, e.name, True)
                    nxt.append(e.dst)
            for e in g.in_edges(x):
                if e.src not in parents:
                    parents[e.src] = (x, e.name, False)
                    nxt.append(e.src)
        frontier = nxt
    if w not in parents:
        return None
    items = []
    at = w
    while parents[at] is not None:
        prev, name, forward = parents[at]
        items.append((name, forward))
        at = prev
    return Walk(g, u, reversed(items))


# ---------------------------------------------------------------------------
# Vertex sets


class VertexSet:
    """Subset of E0 attached to a graph, iterated in declaration order."""

    __slots__ = ("graph", "members")

    def __init__(self, graph, members):
        members = frozenset(members)
        for v in members:
            graph.vertex_index(v)
        self.graph = graph
        self.members = members

    def ordered(self):
        return tuple(v for v in self.graph.vertices if v in self.members)

    def __contains__(self, v):
        return v in self.members

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            return self.graph == other.graph and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"VertexSet({list(self.ordered())})"


def _as_members(g, X):
    if isinstance(X, VertexSet):
        if X.graph != g:
            raise GraphMismatch("vertex set belongs to a different graph")
        return X.members
    members = frozenset(X)
    for v in members:
        g.vertex_index(v)
    return members


# ---------------------------------------------------------------------------
# Analyzers


def tree(g, v):
    """T(v): every vertex reachable from v by a directed path, v included."""
    g.vertex_index(v)
    reached = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for x in frontier:
            for e in g.out_edges(x):
                if e.dst not in reached:
                    reached.add(e.dst)
                    nxt.append(e.dst)
        frontier = nxt
    return VertexSet(g, reached)


def tree_of_set(g, X):
    members = _as_members(g, X)
    reached = set()
    for v in members:
        reached |= tree(g, v).members
    return VertexSet(g, reached)


def connects_to(g, u, w):
    """True iff there is a directed path from u to w (trivial path included)."""
    return w in tree(g, u)


def bifurcations(g):
    """Vertices emitting at least two edges."""
    return VertexSet(g, (v for v in g.vertices if g.out_degree(v) >= 2))


def cycles(g):
    """All cycles, one representative per rotation class.

    The canonical rotation starts at the least source vertex in declaration
    order, and that is also how representatives are enumerated: a depth-first
    search from each vertex v only closes cycles whose minimal vertex is v.
    """
    found = []

    def extend(path, start):
        at = path.range
        start_idx = g.vertex_index(start)
        for e in g.out_edges(at):
            if e.dst == start:
                found.append(Cycle(path.append(e.name)))
            elif g.vertex_index(e.dst) > start_idx and e.dst not in path.vertex_set():
                extend(path.append(e.name), start)

    for start in g.vertices:
        extend(Path.trivial(g, start), start)
    found.sort(key=lambda c: tuple(g.edge_index(e) for e in c.edges))
    return tuple(found)


def cycle_has_exit(g, cycle):
    """True iff some edge leaves the cycle: s(e) on the cycle, e not in it."""
    if not isinstance(cycle, Cycle):
        raise PreconditionError("cycle_has_exit expects a Cycle")
    if cycle.graph != g:
        raise PreconditionError("cycle belongs to a different graph")
    edge_set = set(cycle.edges)
    for v in cycle.vertices():
        for e in g.out_edges(v):
            if e.name not in edge_set:
                return True
    return False


def vertex_on_a_cycle(g):
    """Set of vertices lying on some cycle (= nontrivially strongly connected)."""
    on = set()
    for c in cycles(g):
        on.update(c.vertices())
    return on


def line_points(g):
    """Vertices u whose tree T(u) has no bifurcations and meets no cycle."""
    bif = bifurcations(g).members
    cyc = vertex_on_a_cycle(g)
    result = []
    for u in g.vertices:
        t = tree(g, u)
        if not (t.members & bif) and not (t.members & cyc):
            result.append(u)
    return VertexSet(g, result)


def is_hereditary(g, X):
    """v >= w and v in X imply w in X."""
    members = _as_members(g, X)
    return all(tree(g, v).members <= members for v in members)


def is_saturated(g, X):
    """Every emitting vertex feeding only into X lies in X."""
    members = _as_members(g, X)
    for v in g.vertices:
        es = g.out_edges(v)
        if es and all(e.dst in members for e in es) and v not in members:
            return False
    return True


def hereditary_saturated_closure(g, X):
    """Least hereditary saturated superset, by the saturation fixpoint.

    Stage 0 is the tree of X; each later stage adds the vertices all of
    whose targets already lie in the previous stage.
    """
    current = tree_of_set(g, X).members
    while True:
        added = {
            v
            for v in g.vertices
            if v not in current
            and g.out_edges(v)
            and all(e.dst in current for e in g.out_edges(v))
        }
        if not added:
            return VertexSet(g, current)
        current = current | added


def strongly_connected_components(g):
    """Tarjan, iterative; components listed in discovery order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = [0]

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.out_edges(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for e in it:
                w = e.dst
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def is_path_algebra_semiprime(g):
    """Path-return criterion, decided at the edge level.

    The path algebra is semiprime iff every path has a return path; by
    composing returns it is enough that every edge has both endpoints in
    one strongly connected component.
    """
    comp_of = {}
    for i, comp in enumerate(strongly_connected_components(g)):
        for v in comp:
            comp_of[v] = i
    return all(comp_of[e.src] == comp_of[e.dst] for e in g.edges)


def socle_is_essential(g):
    """True iff every vertex connects to a line point."""
    lp = line_points(g).members
    return all(tree(g, v).members & lp for v in g.vertices)


def connected_components(g):
    """Partition into undirected components, each an induced subgraph.

    Components are ordered by their least vertex in declaration order, and
    carry vertices and edges in the parent graph's declaration order.
    """
    comp_of = {}
    comp_count = 0
    for v in g.vertices:
        if v in comp_of:
            continue
        comp_of[v] = comp_count
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for e in g.out_edges(x) + g.in_edges(x):
                    for y in (e.src, e.dst):
                        if y not in comp_of:
                            comp_of[y] = comp_count
                            nxt.append(y)
            frontier = nxt
        comp_count += 1
    parts = []
    for i in range(comp_count):
        vs = [v for v in g.vertices if comp_of[v] == i]
        es = [e for e in g.edges if comp_of[e.src] == i]
        parts.append(Graph(f"{g.name}_c{i}", vs, es))
    return tuple(parts)


def is_acyclic(g):
    return not cycles(g)


def is_acyclic_no_bifurcation(g):
    return not cycles(g) and not bifurcations(g).members


def analyzer_report(g):
    """The full structural report, deterministic, JSON-ready."""
    return {
        "semiprime_path_algebra": is_path_algebra_semiprime(g),
        "line_points": list(line_points(g).ordered()),
        "socle_essential": socle_is_essential(g),
        "cycles": [list(c.canonical().edges) for c in cycles(g)],
        "bifurcations": list(bifurcations(g).ordered()),
        "components": [
            {"vertices": list(c.vertices), "edges": [e.name for e in c.edges]}
            for c in connected_components(g)
        ],
    }


# ---------------------------------------------------------------------------
# Builders for the infinite families, truncated.
#
# The infinite graphs behind these builders cannot be represented directly;
# each builder takes an explicit truncation parameter and documents which
# analyzer outputs are stable under it and which carry a boundary artifact.


def line_graph(n, name=None):
    """Oriented line with n vertices: x1 -> x2 -> ... -> xn."""
    if n < 1:
        raise PreconditionError("line_graph needs n >= 1")
    vertices = [f"x{i}" for i in range(1, n + 1)]
    edges = [(f"a{i}", f"x{i}", f"x{i + 1}") for i in range(1, n)]
    return Graph(name or f"line{n}", vertices, edges)


def single_loop_graph(name="R1"):
    """One vertex with one loop."""
    return Graph(name, ["v"], [("e", "v", "v")])


def ladder_graph(columns, name=None):
    """Truncation of the two-row ladder: u_i -> v_i (sinks) and u_i -> u_{i+1}.

    The infinite graph has line points exactly {v_i}. A finite truncation
    cannot reproduce that on the nose: it ends with a tail vertex
    u_{columns+1} (a sink, hence an artifact line point). The tail keeps
    every u_i bifurcated, which is what makes {v_1..v_k} hereditary and
    saturated -- stable under this truncation -- while the line-point set
    gains exactly the tail artifact.
    """
    if columns < 1:
        raise PreconditionError("ladder_graph needs at least one column")
    vertices = []
    edges = []
    for i in range(1, columns + 1):
        vertices += [f"u{i}", f"v{i}"]
        edges.append((f"e{i}", f"u{i}", f"v{i}"))
        edges.append((f"f{i}", f"u{i}", f"u{i + 1}"))
    vertices.append(f"u{columns + 1}")
    return Graph(name or f"ladder{columns}", vertices, edges)


def comb_graph(spokes, name=None):
    """Truncation of the infinite comb: spokes p_i each firing into one sink.

    Connectivity, line points and the one-block matrix decomposition are
    stable under the truncation (only the number of spokes grows).
    """
    if spokes < 1:
        raise PreconditionError("comb_graph needs at least one spoke")
    vertices = [f"p{i}" for i in range(1, spokes + 1)] + ["w"]
    edges = [(f"s{i}", f"p{i}", "w") for i in range(1, spokes + 1)]
    return Graph(name or f"comb{spokes}", vertices, edges)
