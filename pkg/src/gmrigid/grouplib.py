"""Finite groups as multiplication tables, with a built-in library.

The hom-counting oracle needs explicit small groups.  We carry every
group of order at most 24 (74 of them, including the symmetric group on
4 letters) plus the alternating group on 5 letters, all built from a
small toolkit: cyclic and abelian types, dihedral and dicyclic series,
permutation closures, cyclic and general semidirect products, matrix
groups over F_3, and a central product for the one order-16 case the
rest miss.  The pool is deduplicated by explicit isomorphism search and
checked against the known count of groups per order, so a missing or
duplicated construction fails loudly at build time.

Tables index elements 0..n-1 with identity 0; table[i][j] = i*j.
External tables load from .gtab files: a header line "name order"
followed by order rows of order indices.
"""

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import BadGroupTable

KNOWN_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
    11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1,
    20: 5, 21: 2, 22: 2, 23: 1, 24: 15,
}


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    table: tuple
    inverses: tuple

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        return self.inverses[a]

    def power(self, a, e):
        if e < 0:
            a, e = self.inverses[a], -e
        out = 0
        while e:
            if e & 1:
                out = self.table[out][a]
            a = self.table[a][a]
            e >>= 1
        return out

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k


def make_group(name, table):
    """Validate a multiplication table and wrap it as a FiniteGroup."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise BadGroupTable("table must be square and nonempty")
    if any(x < 0 or x >= n for row in table for x in row):
        raise BadGroupTable("entries must be element indices")
    if any(table[0][j] != j for j in range(n)) or any(
        table[i][0] != i for i in range(n)
    ):
        raise BadGroupTable("element 0 must be the identity")
    inverses = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == 0:
                inverses[i] = j
                break
        if inverses[i] is None or table[inverses[i]][i] != 0:
            raise BadGroupTable("element %d has no two-sided inverse" % i)
    for a in range(n):
        for b in range(n):
            tab_ab = table[a][b]
            row_a = table[a]
            for c in range(n):
                if table[tab_ab][c] != row_a[table[b][c]]:
                    raise BadGroupTable(
                        "associativity fails at (%d, %d, %d)" % (a, b, c)
                    )
    return FiniteGroup(name, n, tuple(tuple(row) for row in table), tuple(inverses))


# ---------------------------------------------------------------------------
# Construction toolkit (raw tables; validation happens in make_group)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(t1, t2):
    n1, n2 = len(t1), len(t2)

    def idx(i, j):
        return i * n2 + j

    out = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for i1, j1 in iproduct(range(n1), range(n2)):
        for i2, j2 in iproduct(range(n1), range(n2)):
            out[idx(i1, j1)][idx(i2, j2)] = idx(t1[i1][i2], t2[j1][j2])
    return out


def dihedral_table(n):
    """Dihedral group of order 2n as pairs r^i s^j."""

    def idx(i, j):
        return i + n * j

    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i, j in iproduct(range(n), range(2)):
        for k, l in iproduct(range(n), range(2)):
            # (r^i s^j)(r^k s^l) = r^(i + k or i - k) s^(j+l)
            m = (i + k) % n if j == 0 else (i - k) % n
            out[idx(i, j)][idx(k, l)] = idx(m, (j + l) % 2)
    return out


def dicyclic_table(n):
    """Dicyclic group of order 4n: a^(2n)=1, b^2=a^n, b a b^-1 = a^-1."""
    m = 2 * n

    def idx(i, j):
        return i + m * j

    out = [[0] * (4 * n) for _ in range(4 * n)]
    for i, j in iproduct(range(m), range(2)):
        for k, l in iproduct(range(m), range(2)):
            if j == 0:
                i2, j2 = (i + k) % m, l
            elif l == 0:
                i2, j2 = (i - k) % m, 1
            else:
                i2, j2 = (i - k + n) % m, 0
            out[idx(i, j)][idx(k, l)] = idx(i2, j2)
    return out


def semidirect_cyclic_table(m, n, k):
    """C_m x| C_n where the C_n generator acts by multiplication by k."""
    if pow(k, n, m) != 1 % m:
        raise ValueError("k^n must be 1 mod m")

    def idx(a, b):
        return a + m * b

    out = [[0] * (m * n) for _ in range(m * n)]
    for a, b in iproduct(range(m), range(n)):
        for c, d in iproduct(range(m), range(n)):
            out[idx(a, b)][idx(c, d)] = idx((a + c * pow(k, b, m)) % m, (b + d) % n)
    return out


def semidirect_table(a_table, n, phi):
    """A x| C_n with phi an automorphism of A satisfying phi^n = id."""
    na = len(a_table)
    powers = [list(range(na))]
    for _ in range(n - 1):
        powers.append([phi[x] for x in powers[-1]])
    if [phi[x] for x in powers[-1]] != list(range(na)):
        raise ValueError("phi^n is not the identity")

    def idx(x, j):
        return x + na * j

    out = [[0] * (na * n) for _ in range(na * n)]
    for x, j in iproduct(range(na), range(n)):
        for y, l in iproduct(range(na), range(n)):
            out[idx(x, j)][idx(y, l)] = idx(a_table[x][powers[j][y]], (j + l) % n)
    return out


def permutation_closure_table(degree, gens):
    """Multiplication table of the permutation group generated by gens."""
    identity = tuple(range(degree))
    elems = [identity]
    seen = {identity}
    queue = [identity]
    gens = [tuple(g) for g in gens]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                elems.append(y)
                queue.append(y)
    index = {p: i for i, p in enumerate(elems)}
    table = []
    for x in elems:
        row = []
        for y in elems:
            row.append(index[tuple(x[y[i]] for i in range(degree))])
        table.append(row)
    return table


def sl23_table():
    """SL(2, 3): 2x2 matrices over F_3 of determinant 1."""
    mats = []
    for a, b, c, d in iproduct(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            mats.append((a, b, c, d))
    mats.sort(key=lambda m: m != (1, 0, 0, 1))
    index = {m: i for i, m in enumerate(mats)}
    table = []
    for a, b, c, d in mats:
        row = []
        for e, f, g, h in mats:
            row.append(
                index[
                    ((a * e + b * g) % 3, (a * f + b * h) % 3,
                     (c * e + d * g) % 3, (c * f + d * h) % 3)
                ]
            )
        table.append(row)
    return table


def central_quotient_table(table, z):
    """Quotient by the central cyclic subgroup generated by z."""
    n = len(table)
    sub = [0]
    x = z
    while x != 0:
        sub.append(x)
        x = table[x][z]
    coset_of = {}
    reps = []
    for g in range(n):
        if g in coset_of:
            continue
        members = sorted(table[g][s] for s in sub)
        rep = members[0]
        if rep == g:
            reps.append(g)
        for mem in members:
            coset_of[mem] = rep
    # identity's coset representative must sit at index 0
    reps.sort(key=lambda r: r != coset_of[0])
    pos = {r: i for i, r in enumerate(reps)}
    return [[pos[coset_of[table[a][b]]] for b in reps] for a in reps]


# ---------------------------------------------------------------------------
# Isomorphism testing


def _element_orders(table):
    n = len(table)
    orders = []
    for a in range(n):
        k, x = 1, a
        while x != 0:
            x = table[x][a]
            k += 1
        orders.append(k)
    return orders


def _generating_words(table):
    """Greedy generating set plus a word (generator list) per element."""
    n = len(table)
    gens = []
    words = {0: ()}
    frontier = [0]

    def close():
        queue = list(words)
        while queue:
            x = queue.pop(0)
            for gi, g in enumerate(gens):
                y = table[x][g]
                if y not in words:
                    words[y] = words[x] + (gi,)
                    queue.append(y)

    for g in range(1, n):
        if g not in words:
            gens.append(g)
            close()
    return gens, words


def is_isomorphic(t1, t2):
    n = len(t1)
    if n != len(t2):
        return False
    o1, o2 = _element_orders(t1), _element_orders(t2)
    if sorted(o1) != sorted(o2):
        return False
    gens, words = _generating_words(t1)
    by_order = {}
    for x in range(n):
        by_order.setdefault(o2[x], []).append(x)

    def evaluate(images, word):
        out = 0
        for gi in word:
            out = t2[out][images[gi]]
        return out

    def extend(k, images):
        if k == len(gens):
            mapped = [evaluate(images, words[x]) for x in range(n)]
            if len(set(mapped)) != n:
                return False
            for a in range(n):
                for b in range(n):
                    if mapped[t1[a][b]] != t2[mapped[a]][mapped[b]]:
                        return False
            return True
        for cand in by_order.get(o1[gens[k]], ()):
            if extend(k + 1, images + [cand]):
                return True
        return False

    return extend(0, [])


def automorphisms(table):
    """All automorphisms of a small group, as permutation tuples."""
    n = len(table)
    orders = _element_orders(table)
    gens, words = _generating_words(table)
    by_order = {}
    for x in range(n):
        by_order.setdefault(orders[x], []).append(x)
    out = []

    def evaluate(images, word):
        v = 0
        for gi in word:
            v = table[v][images[gi]]
        return v

    def extend(k, images):
        if k == len(gens):
            mapped = tuple(evaluate(images, words[x]) for x in range(n))
            if len(set(mapped)) != n:
                return
            for a in range(n):
                for b in range(n):
                    if mapped[table[a][b]] != table[mapped[a]][mapped[b]]:
                        return
            out.append(mapped)
            return
        for cand in by_order.get(orders[gens[k]], ()):
            extend(k + 1, images + [cand])

    extend(0, [])
    return out


# ---------------------------------------------------------------------------
# The library


def _abelian_chains(n):
    """Divisor chains d1 | d2 | ... with product n (invariant factors)."""
    chains = []

    def rec(remaining, last, acc):
        if remaining == 1:
            chains.append(tuple(acc))
            return
        d = last
        while d <= remaining:
            if remaining % d == 0 and d % last == 0:
                rec(remaining // d, d, acc + [d])
            d += 1

    for first in range(2, n + 1):
        if n % first == 0:
            rec(n // first, first, [first])
    if n == 1:
        chains.append((1,))
    return chains


def _perm_from_cycles(degree, cycles):
    p = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            p[x] = cyc[(i + 1) % len(cyc)]
    return p


_library_cache = None


def builtin_library():
    """Name -> FiniteGroup for all orders <= 24, plus A5. Cached."""
    global _library_cache
    if _library_cache is not None:
        return _library_cache

    pool = []  # (order, name, table), first name wins after dedup

    def add(name, table):
        pool.append((len(table), name, table))

    for n in range(1, 25):
        for chain in _abelian_chains(n):
            if chain == (1,):
                add("C1", cyclic_table(1))
            elif len(chain) == 1:
                add("C%d" % chain[0], cyclic_table(chain[0]))
            else:
                t = cyclic_table(chain[0])
                for d in chain[1:]:
                    t = product_table(t, cyclic_table(d))
                add("x".join("C%d" % d for d in chain), t)

    add("S3", permutation_closure_table(3, [_perm_from_cycles(3, [(0, 1, 2)]),
                                            _perm_from_cycles(3, [(0, 1)])]))
    add("A4", permutation_closure_table(4, [_perm_from_cycles(4, [(0, 1, 2)]),
                                            _perm_from_cycles(4, [(0, 1), (2, 3)])]))
    add("S4", permutation_closure_table(4, [_perm_from_cycles(4, [(0, 1, 2, 3)]),
                                            _perm_from_cycles(4, [(0, 1)])]))
    add("SL(2,3)", sl23_table())

    for n in range(3, 13):
        add("D%d" % (2 * n), dihedral_table(n))
    for n in range(2, 7):
        add("Q%d" % (4 * n), dicyclic_table(n))

    # products of small nonabelian factors with cyclics
    named = {name: tab for _, name, tab in pool}
    for base in ("S3", "D8", "Q8", "A4", "D10", "D12", "Q12"):
        btab = named[base]
        for c in range(2, 25):
            if len(btab) * c > 24:
                continue
            add("%sxC%d" % (base, c), product_table(btab, cyclic_table(c)))

    for m in range(3, 25):
        for n in range(2, 25):
            if m * n > 24:
                continue
            for k in range(2, m):
                try:
                    t = semidirect_cyclic_table(m, n, k)
                except ValueError:
                    continue
                add("C%d:C%d" % (m, n), t)

    # semidirects with non-cyclic abelian kernels (covers the remaining
    # order-16 and order-24 groups)
    kernels = [
        ("C2xC2", product_table(cyclic_table(2), cyclic_table(2))),
        ("C2xC4", product_table(cyclic_table(2), cyclic_table(4))),
        ("C2xC2xC2", product_table(cyclic_table(2), product_table(cyclic_table(2), cyclic_table(2)))),
        ("C4xC4", product_table(cyclic_table(4), cyclic_table(4))),
        ("C3xC3", product_table(cyclic_table(3), cyclic_table(3))),
        ("C2xC6", product_table(cyclic_table(2), cyclic_table(6))),
        ("C2xC2xC3", product_table(cyclic_table(2), product_table(cyclic_table(2), cyclic_table(3)))),
        ("C2xC8", product_table(cyclic_table(2), cyclic_table(8))),
        ("C12", cyclic_table(12)),
    ]
    for kname, ktab in kernels:
        auts = automorphisms(ktab)
        for n in (2, 3, 4):
            if len(ktab) * n > 24:
                continue
            seen_phi = set()
            for phi in auts:
                if phi == tuple(range(len(ktab))):
                    continue
                key = phi
                if key in seen_phi:
                    continue
                seen_phi.add(key)
                try:
                    t = semidirect_table(ktab, n, list(phi))
                except ValueError:
                    continue
                add("%s:C%d" % (kname, n), t)

    # central product D8 * C4 (the Pauli group), order 16: quotient of
    # D8 x C4 by the diagonal central involution
    d8c4 = product_table(dihedral_table(4), cyclic_table(4))
    z = 2 * 4 + 2  # (r^2, c^2) under the product indexing
    add("D8*C4", central_quotient_table(d8c4, z))

    by_order = {}
    for order, name, table in pool:
        by_order.setdefault(order, []).append((name, table))

    library = {}
    for order in sorted(by_order):
        kept = []
        for name, table in by_order[order]:
            if any(is_isomorphic(table, t2) for _, t2 in kept):
                continue
            kept.append((name, table))
        expected = KNOWN_GROUP_COUNTS.get(order)
        if expected is not None and len(kept) != expected:
            raise AssertionError(
                "group library has %d groups of order %d, expected %d"
                % (len(kept), order, expected)
            )
        for name, table in kept:
            base = name
            k = 2
            while name in library:
                name = "%s_%d" % (base, k)
                k += 1
            library[name] = make_group(name, table)

    a5 = permutation_closure_table(
        5,
        [_perm_from_cycles(5, [(0, 1, 2, 3, 4)]), _perm_from_cycles(5, [(0, 1, 2)])],
    )
    if len(a5) != 60:
        raise AssertionError("A5 construction is wrong")
    library["A5"] = make_group("A5", a5)

    _library_cache = library
    return library


# ---------------------------------------------------------------------------
# .gtab files


def save_group(path, group):
    with open(path, "w") as fh:
        fh.write("%s %d\n" % (group.name, group.order))
        for row in group.table:
            fh.write(" ".join(str(x) for x in row) + "\n")


def load_group(path):
    with open(path) as fh:
        lines = [line.strip() for line in fh if line.strip()]
    if not lines:
        raise BadGroupTable("empty group table file")
    head = lines[0].split()
    if len(head) != 2 or not head[1].isdigit():
        raise BadGroupTable("header must be 'name order'")
    name, order = head[0], int(head[1])
    if len(lines) != order + 1:
        raise BadGroupTable("expected %d table rows" % order)
    table = []
    for line in lines[1:]:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise BadGroupTable("table rows must be integers")
        table.append(row)
    return make_group(name, table)
