"""Graph-knot exteriors from cabling and connected-sum expression trees.

Every graph knot arises from torus knots by cabling and connected sums,
and its exterior is a graph manifold whose JSJ graph is a rooted tree:

  * a torus-knot leaf T(p, q) contributes a disc-base piece with two
    exceptional fibres of orders p and |q|,
  * a cable C_{s,t} contributes an annulus-base piece with one cone
    point (s, t), its outer boundary facing the root,
  * a connected sum of k knots contributes a product piece over a
    sphere with k+1 discs removed, the meridian of each summand glued
    to the fibre.

Boundary slot 0 of every piece faces the root; the root's own slot 0
is the free (knot) boundary.  Gluing matrices follow the fixed
conventions below with minimal nonnegative Bezout representatives;
changing representative only shifts data by Dehn twists, which the
rooted canonical form quotients away.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .canonical import canonical_tuple
from .errors import InvalidTree, NonCoprime, ParseError
from .manifold import Edge, Gluing, GraphManifold
from .seifert import SeifertPiece, make_piece


def _bezout_pair(p, q):
    """(qbar, pbar) with p*pbar + q*qbar = 1 and qbar minimal in [0, |p|)."""
    qbar = pow(q % p, -1, p) if p > 1 else 0
    pbar = (1 - q * qbar) // p
    assert p * pbar + q * qbar == 1
    return qbar, pbar


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0:
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)
        if abs(self.p) < 2 or abs(self.q) < 2:
            raise InvalidTree("torus knot parameters need |p|, |q| >= 2")
        if gcd(self.p, self.q) != 1:
            raise InvalidTree("torus knot parameters must be coprime")

    def __str__(self):
        return "torus(%d,%d)" % (self.p, self.q)


@dataclass(frozen=True)
class Cable:
    s: int
    t: int
    child: "KnotTree"

    def __post_init__(self):
        if self.s < 0:
            object.__setattr__(self, "s", -self.s)
            object.__setattr__(self, "t", -self.t)
        if abs(self.s) < 2:
            raise InvalidTree("cable winding |s| must be at least 2")
        if gcd(self.s, self.t) != 1:
            raise InvalidTree("cable parameters must be coprime")
        if not isinstance(self.child, (TorusKnot, Cable, Sum)):
            raise InvalidTree("cable child must be a knot tree")

    def __str__(self):
        return "cable(%d,%d; %s)" % (self.s, self.t, self.child)


@dataclass(frozen=True)
class Sum:
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (tuple, list)):
            children = tuple(children[0])
        flat = []
        for c in children:
            # connected sum is associative, so nested sums collapse into
            # one product piece with more boundary components
            if isinstance(c, Sum):
                flat.extend(c.children)
            elif isinstance(c, (TorusKnot, Cable)):
                flat.append(c)
            else:
                raise InvalidTree("sum children must be knot trees")
        if len(flat) < 2:
            raise InvalidTree("a connected sum needs at least 2 summands")
        object.__setattr__(self, "children", tuple(flat))

    def __str__(self):
        return "sum(%s)" % ", ".join(str(c) for c in self.children)


KnotTree = (TorusKnot, Cable, Sum)


# ---------------------------------------------------------------------------
# Exterior assembly


def _torus_piece(p, q):
    # cones (p, qbar), (|q|, +-pbar): slope sum qbar/p + pbar/q = 1/(pq),
    # the right euler contribution for either handedness of T(p, q)
    qbar, pbar = _bezout_pair(p, q)
    sign = 1 if q > 0 else -1
    return make_piece(0, 1, [(p, qbar), (abs(q), sign * pbar)])


def build_exterior(tree):
    """Assemble the knot-mode graph manifold of a knot tree.

    Vertices are named v0, v1, ... in preorder; the root's slot 0 is
    the single free boundary.
    """
    if not isinstance(tree, KnotTree):
        raise InvalidTree("not a knot tree: %r" % (tree,))
    pieces, edges = {}, []
    counter = [0]

    def fresh():
        name = "v%d" % counter[0]
        counter[0] += 1
        return name

    def emit(node):
        name = fresh()
        if isinstance(node, TorusKnot):
            pieces[name] = _torus_piece(node.p, node.q)
        elif isinstance(node, Cable):
            pieces[name] = make_piece(0, 2, [(node.s, node.t)])
            child = emit(node.child)
            sbar, tbar = _bezout_pair(abs(node.t), node.s)
            if node.t < 0:
                tbar = -tbar  # so that s*sbar + t*tbar = 1 with signed t
            if isinstance(node.child, Sum):
                glue = Gluing(-node.t, sbar, node.s, tbar)
            else:
                glue = Gluing(sbar, node.t, tbar, -node.s)
            edges.append(Edge(child, 0, name, 1, glue))
        else:
            pieces[name] = make_piece(0, len(node.children) + 1, [])
            for i, sub in enumerate(node.children):
                child = emit(sub)
                edges.append(Edge(child, 0, name, i + 1, Gluing(0, 1, 1, 0)))
        return name

    root = emit(tree)
    assert root == "v0"
    return GraphManifold(pieces, edges, "knot")


# ---------------------------------------------------------------------------
# Slope formulas


@dataclass(frozen=True)
class ProductNeighbor:
    pass


@dataclass(frozen=True)
class CableNeighbor:
    s: int
    t: int
    sbar: int
    tbar: int

    def __post_init__(self):
        if self.s * self.sbar + self.t * self.tbar != 1:
            raise ValueError("invalid bezout data for cable neighbor")


def leaf_total_slope(p, q, neighbor):
    """Closed-form total slope of a torus-knot leaf T(p, q) glued to the
    given neighbor kind: -1/(pq) for a product piece, -s/tbar - 1/(pq)
    for a cable.  Nonzero in all valid cases."""
    base = Fraction(-1, p * q)
    if isinstance(neighbor, ProductNeighbor):
        return base
    if isinstance(neighbor, CableNeighbor):
        return Fraction(-neighbor.s, neighbor.tbar) + base
    raise TypeError("neighbor must be ProductNeighbor or CableNeighbor")


# ---------------------------------------------------------------------------
# Invariants


def knot_invariant(k):
    """Rooted canonical tuple of a knot-mode graph manifold."""
    k.root()
    return canonical_tuple(k)


def same_knot_group(tree1, tree2):
    """Whether the two knot trees have isomorphic knot groups: by the
    rooted determining data, equality of the rooted canonical tuples."""
    return knot_invariant(build_exterior(tree1)) == knot_invariant(build_exterior(tree2))


def torus_knot_exterior_check(p, q, k):
    """Whether k-fold scaling of the T(p, q) exterior data can come from
    a knot exterior: exactly when k is 1 modulo pq."""
    if gcd(p, q) != 1:
        raise NonCoprime("torus knot parameters must be coprime")
    m = abs(p * q)
    if gcd(k, m) != 1:
        raise NonCoprime("%d shares a factor with %d" % (k, m))
    return k % m == 1 % m


# ---------------------------------------------------------------------------
# Expression grammar: torus(p,q) | cable(s,t; EXPR) | sum(EXPR, EXPR, ...)


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise ParseError("expected %r" % ch, col=self.pos + 1)
        self.pos += 1

    def word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a knot operator", col=start + 1)
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            raise ParseError("expected an integer", col=start + 1)
        return int(self.text[start:self.pos])


def parse_knot(text):
    """Parse a knot expression; raises ParseError with a column."""
    sc = _Scanner(text)
    tree = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("trailing input", col=sc.pos + 1)
    return tree


def _parse_expr(sc):
    start = sc.pos
    op = sc.word()
    if op == "torus":
        sc.expect("(")
        p = sc.integer()
        sc.expect(",")
        q = sc.integer()
        sc.expect(")")
        try:
            return TorusKnot(p, q)
        except InvalidTree as err:
            raise ParseError(str(err), col=start + 1)
    if op == "cable":
        sc.expect("(")
        s = sc.integer()
        sc.expect(",")
        t = sc.integer()
        sc.expect(";")
        child = _parse_expr(sc)
        sc.expect(")")
        try:
            return Cable(s, t, child)
        except InvalidTree as err:
            raise ParseError(str(err), col=start + 1)
    if op == "sum":
        sc.expect("(")
        children = [_parse_expr(sc)]
        while sc.peek() == ",":
            sc.expect(",")
            children.append(_parse_expr(sc))
        sc.expect(")")
        try:
            return Sum(*children)
        except InvalidTree as err:
            raise ParseError(str(err), col=start + 1)
    raise ParseError("unknown operator %r" % op, col=start + 1)
