"""Finite presentations of graph-manifold groups.

Generators per vertex: one a_i per cone, one e_j per boundary slot
except slot 0, one u_k, v_k pair per unit of genus, and the fibre h.
The slot-0 section e_0 is an abbreviation, not a generator: the surface
relation  a_1 ... a_r e_0 e_1 ... e_{s-1} [u_1,v_1] ... [u_g,v_g] = 1
is spent eliminating it, and any edge relation that mentions slot 0
substitutes the resulting word.  Edges contribute two relations each
(fibre and section images under the gluing); edges outside a spanning
tree conjugate their left side by a stable letter t<idx>.

Words are tuples of (generator, exponent) pairs, freely reduced.  The
exponent-sum matrix of a presentation abelianizes to the same group as
the homology module's matrix, which the tests cross-check.
"""

from dataclasses import dataclass

from .homology import _spanning_tree


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    @property
    def generator_count(self):
        return len(self.generators)


def _invert(word):
    return tuple((g, -e) for g, e in reversed(word))


def _power(word, n):
    if n == 0:
        return ()
    if len(word) == 1:
        g, e = word[0]
        return ((g, e * n),)
    if n < 0:
        word, n = _invert(word), -n
    return word * n


def _reduce(word):
    out = []
    for g, e in word:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            merged = out[-1][1] + e
            out.pop()
            if merged:
                out.append((g, merged))
        else:
            out.append((g, e))
    return tuple(out)


def _commutator(x, y):
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def finite_presentation(m):
    """Presentation of the fundamental group of a graph manifold."""
    generators = []
    e0_word = {}
    for v in m.vertex_names():
        piece = m.pieces[v]
        a = ["%s.a%d" % (v, i + 1) for i in range(len(piece.cones))]
        e = ["%s.e%d" % (v, j) for j in range(1, piece.boundary_count)]
        uv = []
        for k in range(piece.genus):
            uv += ["%s.u%d" % (v, k + 1), "%s.v%d" % (v, k + 1)]
        generators += a + e + uv + ["%s.h" % v]
        # surface relation  a* e0 e* [u,v]* = 1  solved for e0
        prefix = tuple((g, 1) for g in a)
        suffix = tuple((g, 1) for g in e)
        for k in range(piece.genus):
            suffix += _commutator("%s.u%d" % (v, k + 1), "%s.v%d" % (v, k + 1))
        e0_word[v] = _invert(suffix) + _invert(prefix)

    tree = _spanning_tree(m)
    stable = {}
    for idx in range(len(m.edges)):
        if idx not in tree:
            stable[idx] = "t%d" % idx
            generators.append("t%d" % idx)

    def e_word(v, slot):
        if slot == 0:
            return e0_word[v]
        return (("%s.e%d" % (v, slot), 1),)

    relators = []
    for v in m.vertex_names():
        piece = m.pieces[v]
        h = "%s.h" % v
        for i, cone in enumerate(piece.cones):
            relators.append((("%s.a%d" % (v, i + 1), cone.p), (h, cone.q)))
        others = ["%s.a%d" % (v, i + 1) for i in range(len(piece.cones))]
        others += ["%s.e%d" % (v, j) for j in range(1, piece.boundary_count)]
        for k in range(piece.genus):
            others += ["%s.u%d" % (v, k + 1), "%s.v%d" % (v, k + 1)]
        for g in others:
            relators.append(_commutator(h, g))

    for idx, edge in enumerate(m.edges):
        alpha, beta, gamma, delta = edge.glue.entries()
        far = _power(e_word(edge.v1, edge.s1), 1)
        h1 = "%s.h" % edge.v1
        lhs_fiber = (("%s.h" % edge.v0, 1),)
        lhs_section = e_word(edge.v0, edge.s0)
        if idx in stable:
            t = stable[idx]
            lhs_fiber = ((t, 1),) + lhs_fiber + ((t, -1),)
            lhs_section = ((t, 1),) + lhs_section + ((t, -1),)
        relators.append(lhs_fiber + _power(far, -gamma) + ((h1, -alpha),))
        relators.append(lhs_section + _power(far, -delta) + ((h1, -beta),))

    relators = [_reduce(r) for r in relators]
    return Presentation(tuple(generators), tuple(r for r in relators if r))


def exponent_matrix(pres):
    """Relator-by-generator exponent sums (the abelianized relations)."""
    index = {g: i for i, g in enumerate(pres.generators)}
    rows = []
    for rel in pres.relators:
        row = [0] * len(pres.generators)
        for g, e in rel:
            row[index[g]] += e
        rows.append(tuple(row))
    return tuple(rows)


def _cyclic_reduce(word):
    # conjugating a relator changes nothing downstream, so matching ends
    # may be folded together
    word = _reduce(word)
    while len(word) >= 2 and word[0][0] == word[-1][0]:
        g, e = word[0][0], word[0][1] + word[-1][1]
        word = _reduce(word[1:-1] + (((g, e),) if e else ()))
    return word


def normalize_presentation(pres):
    """Freely and cyclically reduce relators, dropping trivial ones."""
    out = []
    for rel in pres.relators:
        reduced = _cyclic_reduce(rel)
        if reduced:
            out.append(reduced)
    return Presentation(pres.generators, tuple(out))
