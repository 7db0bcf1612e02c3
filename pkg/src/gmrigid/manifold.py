"""Graph manifolds as labeled graphs of Seifert-fibred blocks.

A graph manifold is recorded as a finite graph: vertices carry
SeifertPiece data, edges carry the gluing matrix between two boundary
tori.  Each boundary torus has the ordered basis (h, e) of fibre and
section, so a gluing along an edge e with d0(e) = (v, i) and
d1(e) = (w, j) is the integer matrix

    A(e) = [alpha beta]       h_v |-> alpha h_w + gamma e_w
           [gamma delta]      e_v |-> beta  h_w + delta e_w

acting on column vectors.  The determinant is -1 (both sides get the
boundary orientation induced from the pieces) and gamma != 0 (otherwise
the fibres would match up and the two blocks would merge into one
Seifert piece).  The reverse orientation of the edge carries A^{-1};
note gamma(A^{-1}) = gamma(A) and delta(A^{-1}) = -alpha(A).

Each edge is stored once with an arbitrary orientation.  All quantities
that depend on a direction (the slope contribution delta/gamma, for
instance) are exposed through per-end views so the stored orientation
never leaks into results.

The moves implemented here, vertical Dehn twists and fibre-orientation
flips, generate exactly the data changes that do not change the
underlying manifold; canonical.py quotients them out.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DeterminantNotMinusOne,
    Disconnected,
    GammaZero,
    NotClosed,
    NotKnotMode,
    SameTarget,
    SlotReused,
    TooManyFreeSlots,
)
from .seifert import SeifertPiece


@dataclass(frozen=True)
class Gluing:
    """A boundary-torus gluing matrix (alpha beta; gamma delta), det = -1."""

    alpha: int
    beta: int
    gamma: int
    delta: int

    def __post_init__(self):
        if self.alpha * self.delta - self.beta * self.gamma != -1:
            raise DeterminantNotMinusOne(
                "gluing matrix %s has determinant %d, expected -1"
                % (self.entries(), self.alpha * self.delta - self.beta * self.gamma)
            )
        if self.gamma == 0:
            raise GammaZero("gluing with gamma = 0 does not separate the fibres")

    def entries(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def inverse(self):
        # For det = -1 the inverse is (-delta, beta; gamma, -alpha).
        return Gluing(-self.delta, self.beta, self.gamma, -self.alpha)

    def negated(self):
        """The same gluing after reversing fibre and base orientation on
        one side: every entry changes sign, the determinant stays -1."""
        return Gluing(-self.alpha, -self.beta, -self.gamma, -self.delta)

    def mirrored(self):
        """Conjugate by diag(1,-1): both boundary tori reverse orientation,
        as happens on every edge at once when the manifold is mirrored."""
        return Gluing(self.alpha, -self.beta, -self.gamma, self.delta)


@dataclass(frozen=True)
class Edge:
    """One stored gluing: boundary slot s0 of vertex v0 to slot s1 of v1."""

    v0: str
    s0: int
    v1: str
    s1: int
    glue: Gluing

    def ends(self):
        return ((self.v0, self.s0), (self.v1, self.s1))

    def is_loop(self):
        return self.v0 == self.v1


def make_edge(end0, end1, matrix):
    (v0, s0), (v1, s1) = end0, end1
    a, b, c, d = matrix
    return Edge(v0, s0, v1, s1, Gluing(a, b, c, d))


@dataclass(frozen=True)
class EdgeEnd:
    """The view of one edge end, oriented out of its vertex.

    gamma_out and delta_out are the entries of the gluing matrix for the
    orientation pointing away from (vertex, slot); for the reverse of a
    stored edge that means gamma and -alpha.
    """

    index: int
    at_d0: bool
    vertex: str
    slot: int
    other_vertex: str
    other_slot: int
    gamma_out: int
    delta_out: int


class GraphManifold:
    """A validated graph of Seifert pieces.

    pieces: mapping vertex id -> SeifertPiece
    edges:  sequence of Edge

    mode is "closed" (no free boundary slot) or "knot" (exactly one).
    Passing mode explicitly asserts it; the default infers it from the
    free-slot count.
    """

    def __init__(self, pieces, edges, mode=None):
        self.pieces = dict(pieces)
        self.edges = tuple(edges)
        seen = set()
        for e in self.edges:
            for v, s in e.ends():
                if v not in self.pieces:
                    raise ValueError("edge references unknown vertex %r" % v)
                if not 0 <= s < self.pieces[v].boundary_count:
                    raise ValueError(
                        "slot %d out of range for vertex %r (%d slots)"
                        % (s, v, self.pieces[v].boundary_count)
                    )
                if (v, s) in seen:
                    raise SlotReused("boundary slot %r.%d glued twice" % (v, s))
                seen.add((v, s))
        self._check_connected()
        free = sum(p.boundary_count for p in self.pieces.values()) - 2 * len(self.edges)
        if mode is None:
            mode = "closed" if free == 0 else "knot"
        if mode == "closed" and free != 0:
            raise TooManyFreeSlots("closed mode but %d free slots" % free)
        if mode == "knot" and free != 1:
            raise TooManyFreeSlots("knot mode needs exactly one free slot, found %d" % free)
        if mode not in ("closed", "knot"):
            raise ValueError("mode must be 'closed' or 'knot'")
        self.mode = mode

    def _check_connected(self):
        if not self.pieces:
            raise Disconnected("empty vertex set")
        adj = {v: set() for v in self.pieces}
        for e in self.edges:
            adj[e.v0].add(e.v1)
            adj[e.v1].add(e.v0)
        start = next(iter(self.pieces))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.pieces):
            raise Disconnected(
                "graph is disconnected (%d of %d vertices reachable)"
                % (len(seen), len(self.pieces))
            )

    # -- views ------------------------------------------------------------

    def vertex_names(self):
        return sorted(self.pieces)

    def glued_slots(self):
        out = {}
        for i, e in enumerate(self.edges):
            out[(e.v0, e.s0)] = (i, True)
            out[(e.v1, e.s1)] = (i, False)
        return out

    def free_slots(self):
        """Map vertex -> tuple of boundary slots not used by any edge."""
        used = self.glued_slots()
        return {
            v: tuple(
                s for s in range(p.boundary_count) if (v, s) not in used
            )
            for v, p in self.pieces.items()
        }

    def root(self):
        """The unique free (vertex, slot) in knot mode."""
        if self.mode != "knot":
            raise NotKnotMode("manifold is closed, no root boundary")
        for v, slots in self.free_slots().items():
            if slots:
                return (v, slots[0])
        raise AssertionError("knot mode with no free slot")

    def edge_ends(self, v):
        """All edge ends at v, loops contributing both of theirs."""
        out = []
        for i, e in enumerate(self.edges):
            g = e.glue
            if e.v0 == v:
                out.append(EdgeEnd(i, True, v, e.s0, e.v1, e.s1, g.gamma, g.delta))
            if e.v1 == v:
                # reverse orientation: matrix (-delta, beta; gamma, -alpha)
                out.append(EdgeEnd(i, False, v, e.s1, e.v0, e.s0, g.gamma, -g.alpha))
        return out

    def total_slope(self, v):
        """tau(v) = sum of delta/gamma over edges leaving v, minus sum q_i/p_i."""
        tau = sum(
            (Fraction(end.delta_out, end.gamma_out) for end in self.edge_ends(v)),
            Fraction(0),
        )
        return tau - self.pieces[v].cone_slope_sum()

    def is_bipartite(self):
        """A two-coloring (R, B) of the graph, or None.  Loops refuse one."""
        color = {}
        for start in self.vertex_names():
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for end in self.edge_ends(v):
                    w = end.other_vertex
                    if w == v:
                        return None
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return None
        r = frozenset(v for v, c in color.items() if c == 0)
        b = frozenset(v for v, c in color.items() if c == 1)
        return (r, b)

    def require_closed(self, what):
        if self.mode != "closed":
            raise NotClosed("%s needs a closed manifold" % what)

    # -- moves -------------------------------------------------------------

    def reorient_vertices(self, signs):
        """Reverse fibre and base orientation together at each sign -1 vertex.

        This is the per-vertex presentation change that multiplies every
        incident gluing matrix by -1 on that side.  Cone data and total
        slopes are untouched; gamma changes sign on edges with exactly
        one reversed endpoint (loops and doubly-reversed edges cancel).
        """
        edges = []
        for e in self.edges:
            toggled = (
                False
                if e.is_loop()
                else signs.get(e.v0, 1) * signs.get(e.v1, 1) == -1
            )
            edges.append(
                Edge(e.v0, e.s0, e.v1, e.s1, e.glue.negated()) if toggled else e
            )
        return GraphManifold(self.pieces, edges, self.mode)

    def mirrored(self):
        """The orientation-reversed manifold: every q negates, every total
        slope negates, and every gluing matrix is conjugated by diag(1,-1)."""
        pieces = {v: p.flipped() for v, p in self.pieces.items()}
        edges = [
            Edge(e.v0, e.s0, e.v1, e.s1, e.glue.mirrored()) for e in self.edges
        ]
        return GraphManifold(pieces, edges, self.mode)


def assemble(pieces, edges, mode=None):
    """Validate and wrap the given data; see GraphManifold."""
    return GraphManifold(pieces, edges, mode)


def flip_fiber_orientation(m, v):
    """Reverse the fibre orientation at v, an involution.

    Concretely this reverses fibre and base at v and then re-presents
    everything in the mirrored convention, which is the unique way to
    negate the Seifert data and total slope at v while keeping every
    matrix determinant -1.  The slope at v (and, as a side effect of the
    mirror bookkeeping, at the other vertices) changes sign.
    """
    if v not in m.pieces:
        raise ValueError("no vertex %r" % v)
    return m.reorient_vertices({v: -1}).mirrored()


def _twist_slot(m, v, slot, s):
    hit = m.glued_slots().get((v, slot))
    if hit is None:
        # A free boundary slot carries no gluing data; twisting into it
        # only moves the (unrecorded) framing of that boundary.
        return m
    idx, at_d0 = hit
    e = m.edges[idx]
    a, b, c, d = e.glue.entries()
    if at_d0:
        g = Gluing(a, b + s * a, c, d + s * c)
    else:
        g = Gluing(a - s * c, b - s * d, c, d)
    edges = list(m.edges)
    edges[idx] = Edge(e.v0, e.s0, e.v1, e.s1, g)
    return GraphManifold(m.pieces, edges, m.mode)


def _twist_cone(m, v, index, s):
    piece = m.pieces[v]
    cone = piece.cones[index]
    pieces = dict(m.pieces)
    pieces[v] = piece.with_cone_q(index, cone.q - s * cone.p)
    return GraphManifold(pieces, m.edges, m.mode)


def dehn_twist(m, v, target_a, target_b, s=1):
    """Vertical Dehn twist in the piece at v between two of its targets.

    A target is ("slot", i) for boundary slot i or ("cone", i) for the
    i-th cone.  The slope contribution of target_a grows by s and that
    of target_b shrinks by s, so the total slope at v is unchanged:
    delta moves by multiples of gamma, q by multiples of p.
    """
    if v not in m.pieces:
        raise ValueError("no vertex %r" % v)
    if target_a == target_b:
        raise SameTarget("twist targets must be distinct: %r" % (target_a,))
    for kind, i in (target_a, target_b):
        if kind == "slot":
            if not 0 <= i < m.pieces[v].boundary_count:
                raise ValueError("slot %d out of range at %r" % (i, v))
        elif kind == "cone":
            if not 0 <= i < len(m.pieces[v].cones):
                raise ValueError("cone %d out of range at %r" % (i, v))
        else:
            raise ValueError("target kind must be 'slot' or 'cone': %r" % kind)
    for (kind, i), amount in ((target_a, s), (target_b, -s)):
        if kind == "slot":
            m = _twist_slot(m, v, i, amount)
        else:
            m = _twist_cone(m, v, i, amount)
    return m
