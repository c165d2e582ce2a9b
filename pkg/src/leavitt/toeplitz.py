"""The algebraic Toeplitz algebra and its verification reports.

The canonical graph is a loop e at v plus an edge f from v to a sink w.
The generalized family E(n, F) replaces the sink by an acyclic graph F in
which every vertex connects to a line point, and the single edge by n
connecting edges out of the loop vertex. Quotienting by F0 collapses the
algebra onto Laurent polynomials (loop -> x); the kernel is the socle.

The faithful matrix picture acts on the cyclic left module generated by
the sink: basis b0 = w, b_{k+1} = e^k f. Each generator acts by an exact
shift/rank-one rule, so windows onto the first N basis vectors are exact
restrictions of the infinite matrix; the validity bound N - deg(x) is the
region where window products agree with the window of the product.
"""

from __future__ import annotations

from .algebra import Element, Monomial, basis_monomials_up_to
from .errors import PreconditionError
from .expressions import format_element, format_monomial
from .fields import QQ
from .graph import Graph, Path, cycles, is_acyclic, line_points, tree
from .matrices import Matrix
from .quotients import in_socle, quotient_graph, quotient_morphism


class LaurentPoly:
    """Element of K[x, x^-1]: finitely supported exponent -> scalar map."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field=QQ):
        self.coeffs = {n: c for n, c in dict(coeffs).items() if c}
        self.field = field

    @classmethod
    def zero(cls, field=QQ):
        return cls({}, field)

    @classmethod
    def monomial(cls, exponent, field=QQ, coeff=None):
        return cls({exponent: coeff if coeff is not None else field.one()}, field)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            acc = out.get(n)
            acc = c if acc is None else acc + c
            if acc:
                out[n] = acc
            else:
                out.pop(n, None)
        return LaurentPoly(out, self.field)

    def __neg__(self):
        return LaurentPoly({n: -c for n, c in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for n, c in self.coeffs.items():
            for m, d in other.coeffs.items():
                k = n + m
                acc = out.get(k)
                acc = c * d if acc is None else acc + c * d
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        return LaurentPoly(out, self.field)

    def substitute_inverse(self):
        """x -> x^-1, the image of the involution."""
        return LaurentPoly({-n: c for n, c in self.coeffs.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for n in sorted(self.coeffs):
            c = self.coeffs[n]
            if n == 0:
                parts.append(self.field.format(c))
            else:
                var = "x" if n == 1 else f"x^{n}"
                parts.append(var if c == self.field.one() else f"{self.field.format(c)}*{var}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


def toeplitz_graph(name="T"):
    """Loop e at v, edge f to the sink w (f last-declared: it is the
    designated edge at v, so ee* survives normal forms and ff* rewrites)."""
    return Graph(name, ["v", "w"], [("e", "v", "v"), ("f", "v", "w")])


class ToeplitzDecomposition:
    """Loop vertex, loop edge, connecting edges, and the subgraph F."""

    __slots__ = ("loop_vertex", "loop_edge", "connectors", "subgraph")

    def __init__(self, loop_vertex, loop_edge, connectors, subgraph):
        self.loop_vertex = loop_vertex
        self.loop_edge = loop_edge
        self.connectors = tuple(connectors)
        self.subgraph = subgraph

    def describe(self):
        return {
            "loop_vertex": self.loop_vertex,
            "loop_edge": self.loop_edge,
            "connectors": list(self.connectors),
            "subgraph_vertices": list(self.subgraph.vertices),
            "subgraph_edges": [e.name for e in self.subgraph.edges],
        }


def _every_vertex_connects_to_line_point(g):
    lp = line_points(g).members
    return all(tree(g, v).members & lp for v in g.vertices)


def build_toeplitz_family(n, F, attach, name=None):
    """E(n, F): fresh loop vertex v with loop e, plus n connectors into F.

    Connector names: "f" when n == 1 (so the canonical graph is the n = 1,
    single-vertex-F instance), else "f1".."fn". F must be acyclic with every
    vertex connecting to a line point, and must not already use the fresh
    names.
    """
    if n < 1:
        raise PreconditionError("the family needs at least one connecting edge")
    if not is_acyclic(F):
        raise PreconditionError("F must be acyclic")
    if not _every_vertex_connects_to_line_point(F):
        raise PreconditionError("every vertex of F must connect to a line point")
    attach = list(attach)
    if len(attach) != n:
        raise PreconditionError(f"need exactly {n} attachment vertices, got {len(attach)}")
    for a in attach:
        F.vertex_index(a)
    connector_names = ["f"] if n == 1 else [f"f{i}" for i in range(1, n + 1)]
    vertices = ["v"] + list(F.vertices)
    edges = [("e", "v", "v")]
    edges += [(cname, "v", a) for cname, a in zip(connector_names, attach)]
    edges += [(e.name, e.src, e.dst) for e in F.edges]
    return Graph(name or f"T_{n}_{F.name}", vertices, edges)


def recognize_toeplitz(g):
    """Match the E(n, F) pattern exactly; None when it does not fit.

    Required: a unique cycle which is a loop (at v), no other edge entering
    v, at least one edge from v into the rest, and the rest (F) acyclic
    with every vertex connecting to a line point -- automatic for finite F,
    but evaluated anyway.
    """
    cs = cycles(g)
    if len(cs) != 1 or len(cs[0].edges) != 1:
        return None
    loop_edge = cs[0].edges[0]
    v = g.edge(loop_edge).src
    if any(e.dst == v and e.name != loop_edge for e in g.edges):
        return None
    connectors = [e.name for e in g.out_edges(v) if e.name != loop_edge]
    if not connectors:
        return None
    f_vertices = [u for u in g.vertices if u != v]
    f_edges = [e for e in g.edges if e.src != v]
    subgraph = Graph(f"{g.name}_F", f_vertices, [(e.name, e.src, e.dst) for e in f_edges])
    if not is_acyclic(subgraph):
        return None
    if not _every_vertex_connects_to_line_point(subgraph):
        return None
    return ToeplitzDecomposition(v, loop_edge, connectors, subgraph)


def laurent_quotient(x, decomposition=None):
    """Image under L_K(E) -> L_K(E/F0) ~ K[x, x^-1], loop -> x."""
    d = decomposition or recognize_toeplitz(x.graph)
    if d is None:
        raise PreconditionError("graph does not match the Toeplitz pattern")
    H = set(d.subgraph.vertices)
    target = quotient_graph(x.graph, H)
    image = quotient_morphism(x, H, target)
    # Normal forms over the one-loop quotient are e^k, (e^k)*, or v.
    coeffs = {}
    for m, c in image.terms.items():
        n = m.degree
        acc = coeffs.get(n)
        acc = c if acc is None else acc + c
        if acc:
            coeffs[n] = acc
        else:
            coeffs.pop(n, None)
    return LaurentPoly(coeffs, x.field)


def exact_sequence_report(g, degree_bound, field=QQ):
    """Monomial-by-monomial check of 0 -> Soc -> T -> K[x,x^-1] -> 0.

    Over all basis monomials of total length <= d: socle membership must
    coincide with vanishing of the Laurent image (exactness in the middle),
    and every Laurent monomial x^{+-k}, k <= d, must be hit (surjectivity).
    """
    d = recognize_toeplitz(g)
    if d is None:
        raise PreconditionError("graph does not match the Toeplitz pattern")
    monomials = basis_monomials_up_to(g, degree_bound)
    mismatches = []
    hit_exponents = set()
    for m in monomials:
        x = Element.from_monomial(m, field)
        in_ideal = in_socle(x)
        image = laurent_quotient(x, d)
        if in_ideal != image.is_zero():
            mismatches.append(format_monomial(m))
        if not image.is_zero() and len(image.coeffs) == 1:
            (exponent,) = image.coeffs
            hit_exponents.add(exponent)
    wanted = {k for k in range(-degree_bound, degree_bound + 1)}
    missing = sorted(wanted - hit_exponents)
    return {
        "degree": degree_bound,
        "monomials_checked": len(monomials),
        "socle_kernel_mismatches": mismatches,
        "surjectivity_missing": [f"x^{k}" for k in missing],
        "pass": not mismatches and not missing,
    }


# ---------------------------------------------------------------------------
# Row-and-column-finite matrix picture


class MatrixWindow:
    """N x N window onto the action on the module basis b0, b1, ...

    Windows of single elements are exact restrictions of the infinite
    matrix; products of windows are exact only for entries (i, j) with
    i, j below the recorded validity bound.
    """

    __slots__ = ("matrix", "validity_bound", "flags")

    def __init__(self, matrix, validity_bound, flags):
        self.matrix = matrix
        self.validity_bound = validity_bound
        self.flags = dict(flags)

    @property
    def size(self):
        return self.matrix.nrows

    def entries(self):
        return self.matrix.rows

    def __repr__(self):
        return f"MatrixWindow({self.size}, validity={self.validity_bound})"


def _canonical_labels(g):
    d = recognize_toeplitz(g)
    if (
        d is None
        or len(d.connectors) != 1
        or len(d.subgraph.vertices) != 1
        or d.subgraph.edges
    ):
        raise PreconditionError("the matrix picture needs the canonical loop-plus-sink graph")
    return d.loop_vertex, d.loop_edge, d.connectors[0], d.subgraph.vertices[0]


def _basis_index(path, loop_edge, connector, sink):
    """Index of a path among b0 = w, b_{k+1} = e^k f; None if not basis-shaped."""
    if path.is_trivial:
        return 0 if path.source == sink else None
    if path.edges[-1] != connector:
        return None
    if any(e != loop_edge for e in path.edges[:-1]):
        return None
    return len(path.edges)


def _loop_power(path, loop_edge):
    if any(e != loop_edge for e in path.edges):
        return None
    return len(path.edges)


def rcfm_representation(x, window):
    """Window of the left-multiplication action of x on L_K(E) w.

    Monomials ending at the sink act with rank one (b_index(q) -> b_index(p));
    monomials ending at the loop vertex act as the partial shift
    b_j -> b_{j - a + c} for j > a where (c, a) are the real/ghost loop
    powers. Both rules are exact on the infinite basis, so any window is an
    exact restriction of the infinite matrix; the validity bound only
    limits where window PRODUCTS agree with product windows. A rank-one
    monomial whose support misses the window entirely is rejected, since
    such a window could not represent the element at all.
    """
    g = x.graph
    v, loop_edge, connector, sink = _canonical_labels(g)
    if window < 1:
        raise PreconditionError("window size must be positive")
    field = x.field
    rows = [[field.zero()] * window for _ in range(window)]
    for m, c in x.terms.items():
        if m.real.range == sink:
            i = _basis_index(m.real, loop_edge, connector, sink)
            j = _basis_index(m.ghost, loop_edge, connector, sink)
            if i is None or j is None:
                raise PreconditionError("monomial does not act on the sink module")
            if i >= window or j >= window:
                raise PreconditionError(
                    f"window {window} too small: support at ({i}, {j}) falls outside"
                )
            rows[i][j] = rows[i][j] + c
        else:
            creal = _loop_power(m.real, loop_edge)
            aghost = _loop_power(m.ghost, loop_edge)
            if creal is None or aghost is None:
                raise PreconditionError("monomial does not act on the sink module")
            for j in range(aghost + 1, window):
                i = j - aghost + creal
                if i < window:
                    rows[i][j] = rows[i][j] + c
    matrix = Matrix(rows, field, window)
    validity = max(window - x.total_degree(), 0)
    flags = {
        "finitely_supported": _finitely_supported(matrix, validity),
        "row_finite_on_window": _max_count(matrix.rows) <= max(len(x.terms), 1),
        "col_finite_on_window": _max_count(matrix.transpose().rows) <= max(len(x.terms), 1),
    }
    return MatrixWindow(matrix, validity, flags)


def _finitely_supported(matrix, validity):
    """Support well inside the exact region: nothing at or past its margin.

    Shift-type actions keep entries all the way to the window border, so
    they fail this; ideal (socle) elements act with bounded support and
    pass for any window comfortably larger than the support.
    """
    for i, row in enumerate(matrix.rows):
        for j, a in enumerate(row):
            if a and max(i, j) >= validity - 1:
                return False
    return True


def _max_count(rows):
    return max((sum(1 for a in r if a) for r in rows), default=0)


def bandwidth(window):
    """Largest |i - j| over nonzero entries; 0 for the zero window."""
    width = 0
    for i, row in enumerate(window.matrix.rows):
        for j, a in enumerate(row):
            if a:
                width = max(width, abs(i - j))
    return width


def socle_module_element(g, i, j, field=QQ):
    """The element mapping to the matrix unit E_ij: (b_i path)(b_j path)*."""
    v, loop_edge, connector, sink = _canonical_labels(g)

    def basis_path(k):
        if k == 0:
            return Path.trivial(g, sink)
        return Path(g, v, (loop_edge,) * (k - 1) + (connector,))

    return Element.from_monomial(Monomial(basis_path(i), basis_path(j)), field)


def sandwich_report(g, degree_bound, window, field=QQ):
    """Window-level check of M_inf(K) <= T' <= RCFM(K).

    (a) socle basis monomials of total length <= d act with finite support;
    (b) every basis monomial's window is row- and column-finite;
    (c) matrix units E_jk for j, k <= N-2 are images of explicit socle
        elements built from the module basis paths.
    """
    _canonical_labels(g)
    monomials = basis_monomials_up_to(g, degree_bound)
    socle_failures = []
    finiteness_failures = []
    for m in monomials:
        x = Element.from_monomial(m, field)
        w = rcfm_representation(x, window)
        if not (w.flags["row_finite_on_window"] and w.flags["col_finite_on_window"]):
            finiteness_failures.append(format_monomial(m))
        if in_socle(x) and not w.flags["finitely_supported"]:
            socle_failures.append(format_monomial(m))
    unit_failures = []
    for i in range(window - 1):
        for j in range(window - 1):
            x = socle_module_element(g, i, j, field)
            w = rcfm_representation(x, window)
            expected = [
                [field.one() if (a, b) == (i, j) else field.zero() for b in range(window)]
                for a in range(window)
            ]
            if w.matrix != Matrix(expected, field, window):
                unit_failures.append(f"E[{i}][{j}] != window({format_element(x)})")
    return {
        "window": window,
        "degree": degree_bound,
        "monomials_checked": len(monomials),
        "socle_finite_support_failures": socle_failures,
        "row_col_finiteness_failures": finiteness_failures,
        "matrix_unit_failures": unit_failures,
        "pass": not socle_failures and not finiteness_failures and not unit_failures,
    }
