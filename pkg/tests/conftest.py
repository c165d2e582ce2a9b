"""Shared corpus graphs, random generators, and independent oracles."""

import random

import pytest

import leavitt as L
from leavitt import Element, Graph, Monomial, Path

TOEPLITZ_DSL = "graph T\nvertex v\nvertex w\nedge e v v\nedge f v w\n"
A2_DSL = "graph A2\nvertex u\nvertex w\nedge f u w\n"
P1_DSL = "graph P1\nvertex v\n"
TWO_A2_DSL = (
    "graph TwoA2\n"
    "vertex u1\nvertex w1\nvertex u2\nvertex w2\n"
    "edge f1 u1 w1\nedge f2 u2 w2\n"
)
# u -> w, then w -> z1 (edge b) and w -> z2 (edge c, designated at w):
# the graph where (a b) b* - a annihilates every ghost-path candidate and
# the denominator search must take the edge-extension branch.
FORK_DSL = (
    "graph Fork\n"
    "vertex u\nvertex w\nvertex z1\nvertex z2\n"
    "edge a u w\nedge b w z1\nedge c w z2\n"
)


@pytest.fixture
def toeplitz():
    return L.parse_graph(TOEPLITZ_DSL)


@pytest.fixture
def a2():
    return L.parse_graph(A2_DSL)


@pytest.fixture
def p1():
    return L.parse_graph(P1_DSL)


@pytest.fixture
def r1():
    return L.single_loop_graph()


@pytest.fixture
def line3():
    return L.line_graph(3)


@pytest.fixture
def fork():
    return L.parse_graph(FORK_DSL)


def corpus_graphs():
    """The graphs every bulk property test runs over."""
    return [
        L.parse_graph(P1_DSL),
        L.parse_graph(A2_DSL),
        L.single_loop_graph(),
        L.parse_graph(TOEPLITZ_DSL),
        L.line_graph(3),
        L.parse_graph(TWO_A2_DSL),
        L.parse_graph(FORK_DSL),
        L.ladder_graph(2),
        L.comb_graph(3),
    ]


def small_corpus_graphs():
    """Corpus members with at most 5 vertices (exhaustive-subset oracles)."""
    return [g for g in corpus_graphs() if len(g.vertices) <= 5]


def random_graph(rng, max_vertices=6, max_edges=10):
    n = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    edges = [
        (f"e{k}", rng.choice(vertices), rng.choice(vertices)) for k in range(m)
    ]
    return Graph(f"rnd{n}_{m}", vertices, edges)


def raw_monomials(g, max_len=3):
    """Spanning-set monomials (not necessarily basis) up to the length bound."""
    by_range = {}
    for p in L.paths_up_to(g, max_len):
        by_range.setdefault(p.range, []).append(p)
    out = []
    for group in by_range.values():
        for p in group:
            for q in group:
                if p.length + q.length <= max_len:
                    out.append(Monomial(p, q))
    return out


def random_raw_terms(g, rng, pool=None, size=4, field=L.QQ):
    pool = pool if pool is not None else raw_monomials(g)
    terms = []
    for _ in range(rng.randint(1, size)):
        m = rng.choice(pool)
        c = field.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))
        terms.append((m, c))
    return terms


def random_element(g, rng, pool=None, size=4, field=L.QQ):
    return Element(g, field, random_raw_terms(g, rng, pool, size, field))


def random_nonzero_element(g, rng, pool=None, size=4, field=L.QQ):
    for _ in range(50):
        x = random_element(g, rng, pool, size, field)
        if not x.is_zero():
            return x
    raise AssertionError("could not sample a nonzero element")


# ---------------------------------------------------------------------------
# Independent oracles (kept deliberately separate from the implementations)


def reachability(g):
    """reach[u][w] with trivial paths included (Floyd-Warshall)."""
    vs = list(g.vertices)
    reach = {u: {w: u == w for w in vs} for u in vs}
    for e in g.edges:
        reach[e.src][e.dst] = True
    for k in vs:
        for i in vs:
            if reach[i][k]:
                for j in vs:
                    if reach[k][j]:
                        reach[i][j] = True
    return reach


def nontrivial_reachability(g):
    """reach via at least one edge."""
    reach = reachability(g)
    out = {u: {w: False for w in g.vertices} for u in g.vertices}
    for e in g.edges:
        for u in g.vertices:
            for w in g.vertices:
                if reach[u][e.src] and reach[e.dst][w]:
                    out[u][w] = True
    return out


def simple_paths(g):
    """All paths with pairwise-distinct vertices, plus single edges."""
    out = [Path.from_edges(g, [e.name]) for e in g.edges]

    def extend(path, seen):
        for e in g.out_edges(path.range):
            if e.dst not in seen:
                longer = path.append(e.name)
                out.append(longer)
                extend(longer, seen | {e.dst})

    for v in g.vertices:
        for e in g.out_edges(v):
            if e.dst != v:
                extend(Path.from_edges(g, [e.name]), {v, e.dst})
    return out


def semiprime_oracle(g):
    reach = reachability(g)
    return all(reach[p.range][p.source] for p in simple_paths(g))


def line_points_oracle(g):
    reach = reachability(g)
    loops = nontrivial_reachability(g)
    result = set()
    for u in g.vertices:
        reachable = [w for w in g.vertices if reach[u][w]]
        if all(g.out_degree(w) <= 1 and not loops[w][w] for w in reachable):
            result.add(u)
    return result


def socle_essential_oracle(g):
    reach = reachability(g)
    lp = line_points_oracle(g)
    return all(any(reach[v][u] for u in lp) for v in g.vertices)


def subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


def hereditary_oracle(g, X):
    reach = reachability(g)
    return all(w in X for v in X for w in g.vertices if reach[v][w])


def saturated_oracle(g, X):
    for v in g.vertices:
        es = g.out_edges(v)
        if es and all(e.dst in X for e in es) and v not in X:
            return False
    return True


def closure_oracle(g, X):
    """Intersection of every hereditary saturated superset (exhaustive)."""
    X = frozenset(X)
    best = frozenset(g.vertices)
    for S in subsets(g.vertices):
        if X <= S and hereditary_oracle(g, S) and saturated_oracle(g, S):
            best = best & S
    return best


def path_count_dimension(g):
    """Sum over sinks of (number of paths into the sink)^2."""
    total = 0
    for sink in g.sinks():
        count = 0
        for p in L.paths_up_to(g, len(g.vertices)):
            if p.range == sink:
                count += 1
        total += count * count
    return total


def seeded(label):
    return random.Random(f"leavitt:{label}")
