"""Canonical twist-orbit invariants and data-level homeomorphism search.

Two labeled graphs describe the same manifold exactly when they differ
by vertex relabeling, presentation moves, and a possible reversal of
the ambient orientation.  The presentation moves are:

  * vertical Dehn twists, which only move q_i inside its class mod p_i
    and delta(e) inside its class mod gamma(e);
  * per-vertex reorientations (fibre and base together), which scale
    every gluing matrix incident to the vertex by -1 and nothing else.

Mirroring the whole manifold negates every q_i, every total slope, and
conjugates every matrix by diag(1,-1).  Fundamental groups cannot see
the mirror, so the invariants here quotient by it as well.

The twist quotient is taken pointwise: q_i survives as q_i mod p_i,
delta(e) as delta(e) mod |gamma(e)|, total slopes survive exactly.
Reorientations, the mirror, and relabelings are quotiented by brute
force: the canonical tuple is the lexicographic minimum of the encoded
data over all sign assignments, the mirror bit, and all
label-compatible vertex orderings.

For knot exteriors the tuple is rooted: the vertex carrying the free
boundary slot is pinned to position 0 and its total slope is dropped,
because twists into the free boundary can change it at will.

is_homeomorphic_data performs the same search but keeps the witness:
a vertex bijection, the per-vertex signs, the mirror bit, and an edge
matching under which the two data sets agree exactly.
"""

from dataclasses import dataclass
from itertools import permutations, product


@dataclass(frozen=True, order=True)
class InvariantTuple:
    """Encoded twist-orbit data, comparable and hashable.

    vertices holds one record per position:
      (genus, free slot count, sorted (p, q mod p) pairs, (tau num, tau den))
    with (0, 0) standing for the discarded slope of a root.  edges holds
    sorted records (i, j, gamma, delta_fwd mod |gamma|, delta_bwd mod |gamma|)
    with i <= j positions.
    """

    rooted: bool
    vertices: tuple
    edges: tuple


@dataclass
class HomeoWitness:
    """Certificate that two data sets present the same manifold.

    Reorienting the first manifold at the sign -1 vertices, mirroring it
    if mirrored is set, and relabeling by vertex_map reproduces the
    second manifold's twist-orbit data.  edge_map matches stored edges
    as (index in M, index in N, reversed) where reversed means d0 of
    the M edge lands on d1 of the N edge.
    """

    vertex_map: dict
    signs: dict
    mirrored: bool
    edge_map: list


class _Raw:
    """Plain-int snapshot of a manifold, cheap to re-evaluate under moves."""

    def __init__(self, m):
        self.names = m.vertex_names()
        free = m.free_slots()
        self.genus = {v: p.genus for v, p in m.pieces.items()}
        self.free = {v: len(free[v]) for v in self.names}
        self.cones = {v: tuple((c.p, c.q) for c in p.cones) for v, p in m.pieces.items()}
        self.edges = [(e.v0, e.v1, e.glue.entries()) for e in m.edges]
        self.tau = {v: m.total_slope(v) for v in self.names}
        self.rooted = m.mode == "knot"
        self.root = m.root()[0] if self.rooted else None

    def signed(self, signs, mirror):
        """Vertex keys and edge records after reorienting the sign -1
        vertices and, when mirror is set, reversing the orientation.

        An edge record is (d0 vertex, d1 vertex, gamma, delta mod |gamma|,
        -alpha mod |gamma|): the twist-invariant residues of the two
        outgoing slope numerators.  Reorienting an endpoint negates all
        three; the mirror negates gamma alone (and every q and slope).
        """
        ms = -1 if mirror else 1
        recs = []
        for u, w, (a, b, c, d) in self.edges:
            t = 1 if u == w else signs[u] * signs[w]
            g = abs(c)
            recs.append((u, w, t * ms * c, (t * d) % g, (-t * a) % g))
        keys = {}
        for v in self.names:
            cones = tuple(sorted((p, (ms * q) % p) for p, q in self.cones[v]))
            tau = ms * self.tau[v]
            t = (0, 0) if v == self.root else (tau.numerator, tau.denominator)
            keys[v] = (self.genus[v], self.free[v], cones, t)
        return keys, recs


def _sign_assignments(names):
    """All reorientation patterns; the global one acts trivially, so the
    first vertex is pinned to +1."""
    for values in product((1, -1), repeat=len(names) - 1):
        yield dict(zip(names, (1,) + values))


def _orderings(keys, names, root):
    """All position orders sorted by vertex key, root (if any) pinned first."""
    rest = sorted((v for v in names if v != root), key=lambda v: (keys[v], v))
    groups = []
    for v in rest:
        if groups and keys[groups[-1][0]] == keys[v]:
            groups[-1].append(v)
        else:
            groups.append([v])
    head = [root] if root is not None else []
    for perms in product(*(permutations(g) for g in groups)):
        order = list(head)
        for p in perms:
            order.extend(p)
        yield order


def _edge_section(recs, pos):
    out = []
    for u, w, g, rf, rb in recs:
        i, j = pos[u], pos[w]
        if i < j:
            out.append((i, j, g, rf, rb))
        elif i > j:
            out.append((j, i, g, rb, rf))
        else:
            out.append(min((i, i, g, rf, rb), (i, i, g, rb, rf)))
    out.sort()
    return tuple(out)


def canonical_tuple(m):
    """The least encoding of m's twist-orbit data over all symmetries."""
    raw = _Raw(m)
    best = None
    for mirror in (False, True):
        for signs in _sign_assignments(raw.names):
            keys, recs = raw.signed(signs, mirror)
            for order in _orderings(keys, raw.names, raw.root):
                pos = {v: i for i, v in enumerate(order)}
                enc = (tuple(keys[v] for v in order), _edge_section(recs, pos))
                if best is None or enc < best:
                    best = enc
    return InvariantTuple(raw.rooted, best[0], best[1])


def _oriented(rec, origin_first):
    u, w, g, rf, rb = rec
    return (g, rf, rb) if origin_first else (g, rb, rf)


def _match_edges(recs_m, recs_n, phi):
    """Pair stored edges carrying equal data under phi, or None.

    Returns [(m index, n index, reversed)] sorted by m index.  Parallel
    bundles are matched by backtracking; bundles are tiny in practice.
    """
    n_by_pair = {}
    for j, (x, y, g, rf, rb) in enumerate(recs_n):
        n_by_pair.setdefault(frozenset((x, y)), []).append(j)
    m_by_pair = {}
    for i, (u, w, g, rf, rb) in enumerate(recs_m):
        m_by_pair.setdefault(frozenset((u, w)), []).append(i)

    assignment = {}
    for pair, m_idx in m_by_pair.items():
        targets = n_by_pair.get(frozenset(phi[v] for v in pair), [])
        if len(targets) != len(m_idx):
            return None
        # candidate (n index, reversed) lists per m edge in this bundle
        cands = []
        for i in m_idx:
            u, w = recs_m[i][0], recs_m[i][1]
            want = _oriented(recs_m[i], True)
            opts = []
            for j in targets:
                x = recs_n[j][0]
                if u == w:
                    if _oriented(recs_n[j], True) == want:
                        opts.append((j, False))
                    if _oriented(recs_n[j], False) == want:
                        opts.append((j, True))
                else:
                    origin_first = x == phi[u]
                    if _oriented(recs_n[j], origin_first) == want:
                        opts.append((j, not origin_first))
            cands.append((i, opts))

        def place(k, used):
            if k == len(cands):
                return True
            i, opts = cands[k]
            for j, rev in opts:
                if j not in used:
                    assignment[i] = (j, rev)
                    if place(k + 1, used | {j}):
                        return True
                    del assignment[i]
            return False

        if not place(0, frozenset()):
            return None
    return [(i, j, rev) for i, (j, rev) in sorted(assignment.items())]


def _graph_isos(keys_m, keys_n, names_m, names_n, root_m, root_n):
    """Yield (phi, edge matching) for every workable vertex bijection."""
    by_key = {}
    for v in names_n:
        if v != root_n:
            by_key.setdefault(keys_n[v], []).append(v)
    groups = {}
    for v in names_m:
        if v != root_m:
            groups.setdefault(keys_m[v], []).append(v)
    if sorted(groups) != sorted(by_key):
        return
    if any(len(groups[k]) != len(by_key[k]) for k in groups):
        return
    src, tgt = [], []
    for key in sorted(groups):
        src.append(groups[key])
        tgt.append(by_key[key])
    for choice in product(*(permutations(t) for t in tgt)):
        phi = {} if root_m is None else {root_m: root_n}
        for s, images in zip(src, choice):
            phi.update(zip(s, images))
        yield phi


def is_homeomorphic_data(m, n):
    """Search for flips + relabeling making the two data sets equal.

    Returns a HomeoWitness (certifying that flipping m by the signs and
    relabeling by the vertex map reproduces n's twist-orbit data) or
    None.  Both manifolds must have the same mode.
    """
    if m.mode != n.mode:
        raise ValueError("cannot compare %s data with %s data" % (m.mode, n.mode))
    raw_m, raw_n = _Raw(m), _Raw(n)
    if len(raw_m.names) != len(raw_n.names) or len(raw_m.edges) != len(raw_n.edges):
        return None
    keys_n, recs_n = raw_n.signed({v: 1 for v in raw_n.names}, False)
    for mirror in (False, True):
        for signs in _sign_assignments(raw_m.names):
            keys_m, recs_m = raw_m.signed(signs, mirror)
            if raw_m.root is not None and keys_m[raw_m.root] != keys_n[raw_n.root]:
                continue
            for phi in _graph_isos(
                keys_m, keys_n, raw_m.names, raw_n.names, raw_m.root, raw_n.root
            ):
                matching = _match_edges(recs_m, recs_n, phi)
                if matching is not None:
                    return HomeoWitness(
                        vertex_map=phi,
                        signs=dict(signs),
                        mirrored=mirror,
                        edge_map=matching,
                    )
    return None
