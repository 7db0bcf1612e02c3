"""First homology of graph-manifold groups via Smith normal form.

The abelianized group of a graph manifold is presented on per-vertex
generators {a_i, e_j, e_0, u_k, v_k, h} (cone sections, boundary
sections, genus handles, the fibre) plus one stable letter per edge
outside a spanning tree, with relations

    p_i a_i + q_i h            for each cone (p_i, q_i),
    sum a_i + sum e_j + e_0    one section relation per vertex,
    h_v0 - alpha h_v1 - gamma e_j1 = 0,
    e_j0 - beta h_v1 - delta e_j1 = 0   for each geometric edge.

Stable letters commute into zero columns after abelianizing, so they
contribute free rank directly.  Everything downstream (Betti number,
torsion, the fibre-class survival test used by the fibration
obstruction) reduces to Smith normal form of this integer matrix.
"""

from dataclasses import dataclass

from .decide import is_profinitely_rigid


@dataclass(frozen=True)
class PresentationMatrix:
    rows: tuple
    row_labels: tuple
    col_labels: tuple

    def column(self, label):
        return self.col_labels.index(label)


@dataclass(frozen=True)
class HomologyResult:
    betti: int
    torsion: tuple

    def __str__(self):
        parts = ["Z"] * self.betti + ["Z/%d" % d for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _spanning_tree(m):
    """Edge indices of a breadth-first spanning tree from the least vertex."""
    names = m.vertex_names()
    adj = {v: [] for v in names}
    for idx, e in enumerate(m.edges):
        adj[e.v0].append((idx, e.v1))
        if e.v0 != e.v1:
            adj[e.v1].append((idx, e.v0))
    seen = {names[0]}
    tree = set()
    queue = [names[0]]
    while queue:
        v = queue.pop(0)
        for idx, w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add(idx)
                queue.append(w)
    return tree


def presentation_matrix(m):
    """Integer relation matrix of H_1 with labeled rows and columns."""
    cols = []
    for v in m.vertex_names():
        piece = m.pieces[v]
        for i in range(len(piece.cones)):
            cols.append("%s.a%d" % (v, i + 1))
        for j in range(1, piece.boundary_count):
            cols.append("%s.e%d" % (v, j))
        cols.append("%s.e0" % v)
        for k in range(piece.genus):
            cols.append("%s.u%d" % (v, k + 1))
            cols.append("%s.v%d" % (v, k + 1))
        cols.append("%s.h" % v)
    tree = _spanning_tree(m)
    for idx in range(len(m.edges)):
        if idx not in tree:
            cols.append("t%d" % idx)
    index = {label: i for i, label in enumerate(cols)}

    rows, row_labels = [], []

    def blank():
        return [0] * len(cols)

    for v in m.vertex_names():
        piece = m.pieces[v]
        for i, cone in enumerate(piece.cones):
            row = blank()
            row[index["%s.a%d" % (v, i + 1)]] = cone.p
            row[index["%s.h" % v]] = cone.q
            rows.append(row)
            row_labels.append("%s.cone%d" % (v, i + 1))
        row = blank()
        for i in range(len(piece.cones)):
            row[index["%s.a%d" % (v, i + 1)]] = 1
        for j in range(1, piece.boundary_count):
            row[index["%s.e%d" % (v, j)]] = 1
        row[index["%s.e0" % v]] = 1
        rows.append(row)
        row_labels.append("%s.section" % v)

    def e_label(v, slot):
        return "%s.e0" % v if slot == 0 else "%s.e%d" % (v, slot)

    for idx, e in enumerate(m.edges):
        a, b, c, d = e.glue.entries()
        row = blank()
        row[index["%s.h" % e.v0]] += 1
        row[index["%s.h" % e.v1]] -= a
        row[index[e_label(e.v1, e.s1)]] -= c
        rows.append(row)
        row_labels.append("edge%d.fiber" % idx)
        row = blank()
        row[index[e_label(e.v0, e.s0)]] += 1
        row[index["%s.h" % e.v1]] -= b
        row[index[e_label(e.v1, e.s1)]] -= d
        rows.append(row)
        row_labels.append("edge%d.section" % idx)

    return PresentationMatrix(
        tuple(tuple(r) for r in rows), tuple(row_labels), tuple(cols)
    )


# ---------------------------------------------------------------------------
# Smith normal form


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """(D, U, V) with D = U . matrix . V diagonal, d1 | d2 | ...

    U and V are products of elementary integer operations, hence
    unimodular.  Pivoting picks the smallest nonzero entry to keep
    intermediate values small.
    """
    d = [list(row) for row in matrix]
    m = len(d)
    n = len(d[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, mult):
        d[dst] = [x + mult * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + mult * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, mult):
        for row in d:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            # pivot must divide the remaining block for the chain property
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % d[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if t < m and d[t][t] < 0:
            negate_row(t)

    return (
        tuple(tuple(row) for row in d),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def _diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def _rank(matrix):
    if not matrix:
        return 0
    d, _, _ = smith_normal_form(matrix)
    return sum(1 for x in _diagonal(d) if x)


def first_homology(m):
    """Betti number and torsion coefficients of H_1."""
    pres = presentation_matrix(m)
    if not pres.rows:
        return HomologyResult(len(pres.col_labels), ())
    d, _, _ = smith_normal_form(pres.rows)
    diag = _diagonal(d)
    rank = sum(1 for x in diag if x)
    torsion = tuple(x for x in diag if x not in (0, 1))
    return HomologyResult(len(pres.col_labels) - rank, torsion)


# ---------------------------------------------------------------------------
# Fibration-related checks


def fibers_rationally_nontrivial(m):
    """Whether every vertex fibre class has infinite order in H_1.

    This is the computable necessary condition for a fibration class:
    a homomorphism H_1 -> Z positive on all fibres exists exactly when
    no fibre class is rationally trivial (finitely many hyperplanes
    cannot cover the rational cone otherwise).
    """
    m.require_closed("fibers_rationally_nontrivial")
    pres = presentation_matrix(m)
    base = [list(r) for r in pres.rows]
    base_rank = _rank(base)
    for v in m.vertex_names():
        probe = [0] * len(pres.col_labels)
        probe[pres.column("%s.h" % v)] = 1
        if _rank(base + [probe]) == base_rank:
            return False
    return True


@dataclass(frozen=True)
class BettiOneReport:
    applicable: bool
    betti: int
    candidate_fibred: bool
    tree_ok: bool = None
    leaf_slopes_ok: bool = None
    rigid_ok: bool = None

    @property
    def passed(self):
        return self.applicable and self.tree_ok and self.leaf_slopes_ok and self.rigid_ok

    def lines(self):
        if not self.applicable:
            why = "betti=%d" % self.betti if self.betti != 1 else "not candidate-fibred"
            return ["not applicable (%s)" % why]
        return [
            "tree graph: %s" % ("pass" if self.tree_ok else "FAIL"),
            "leaf slopes nonzero: %s" % ("pass" if self.leaf_slopes_ok else "FAIL"),
            "profinitely rigid: %s" % ("pass" if self.rigid_ok else "FAIL"),
        ]


def betti_one_rigidity_check(m):
    """For closed candidate-fibred manifolds with betti one, check the
    rigidity consequences: tree JSJ graph, nonzero leaf slopes, and
    rigidity per the decision procedure."""
    m.require_closed("betti_one_rigidity_check")
    betti = first_homology(m).betti
    fibred = fibers_rationally_nontrivial(m)
    if betti != 1 or not fibred:
        return BettiOneReport(False, betti, fibred)
    is_tree = len(m.edges) == len(m.pieces) - 1
    valence = {v: 0 for v in m.pieces}
    for e in m.edges:
        valence[e.v0] += 1
        valence[e.v1] += 1
    leaves = [v for v, count in valence.items() if count == 1]
    leaf_ok = all(m.total_slope(v) != 0 for v in leaves)
    rigid, _ = is_profinitely_rigid(m)
    return BettiOneReport(True, betti, True, is_tree, leaf_ok, rigid)
