"""Seifert-fibred blocks over hyperbolic base orbifolds.

A block is described by the base genus g, the number b of boundary
circles, and a list of cone data (p_i, q_i).  The fundamental group is

    < a_1..a_r, e_1..e_s, u_1, v_1, .., u_g, v_g, h |
      h central, a_i^{p_i} h^{q_i} = 1 >

with one boundary generator per circle; the distinguished boundary word
e_0 = (a_1 .. a_r e_1 .. e_s [u_1,v_1] .. [u_g,v_g])^{-1} occupies
slot 0, so slots 0..b-1 index the boundary circles and s = b - 1.

We only admit blocks whose base orbifold is hyperbolic: with b >= 1
this means 2 - 2g - b - sum(1 - 1/p_i) < 0.  Those blocks have
centre exactly <h>, which is what the gluing calculus relies on.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NoBoundary, NonCoprime, NonHyperbolicBase


@dataclass(frozen=True, order=True)
class Cone:
    """One exceptional fibre, recorded as the coprime pair (p, q), p >= 2.

    q is kept as an honest integer, not a residue: vertical Dehn twists
    move q by multiples of p and we want to see that happen.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise NonCoprime("cone order must be >= 2, got p=%d" % self.p)
        if gcd(self.p, self.q) != 1:
            raise NonCoprime("cone pair (%d, %d) is not coprime" % (self.p, self.q))

    def residue(self):
        """q mod p, the part of q that twisting cannot change."""
        return self.q % self.p


@dataclass(frozen=True)
class SeifertPiece:
    """A Seifert-fibred block with nonempty boundary and hyperbolic base."""

    genus: int
    boundary_count: int
    cones: tuple

    def __post_init__(self):
        if self.genus < 0:
            raise NonHyperbolicBase("genus must be >= 0, got %d" % self.genus)
        if self.boundary_count < 1:
            raise NoBoundary("a block must have at least one boundary circle")
        if not isinstance(self.cones, tuple):
            object.__setattr__(self, "cones", tuple(self.cones))
        for c in self.cones:
            if not isinstance(c, Cone):
                raise TypeError("cones must be Cone instances, got %r" % (c,))
        chi = self.base_euler_characteristic()
        if chi >= 0:
            raise NonHyperbolicBase(
                "base orbifold is not hyperbolic (euler characteristic %s)" % chi
            )

    # -- basic shape ------------------------------------------------------

    def base_euler_characteristic(self):
        """Orbifold Euler characteristic 2 - 2g - b - sum(1 - 1/p_i)."""
        chi = Fraction(2 - 2 * self.genus - self.boundary_count)
        for c in self.cones:
            chi -= 1 - Fraction(1, c.p)
        return chi

    def cone_orders(self):
        return tuple(sorted(c.p for c in self.cones))

    def cone_lcm(self):
        """lcm of the cone orders; 1 when there are no cones."""
        return lcm(1, *(c.p for c in self.cones))

    def cone_slope_sum(self):
        """sum q_i / p_i, the exceptional-fibre part of the total slope."""
        return sum((Fraction(c.q, c.p) for c in self.cones), Fraction(0))

    def cone_residues(self):
        """Sorted multiset of (p, q mod p), invariant under vertical twists."""
        return tuple(sorted((c.p, c.residue()) for c in self.cones))

    # -- symmetries -------------------------------------------------------

    def flipped(self):
        """The same block with the fibre direction reversed: all q -> -q."""
        return SeifertPiece(
            self.genus,
            self.boundary_count,
            tuple(Cone(c.p, -c.q) for c in self.cones),
        )

    def with_cone_q(self, index, q):
        """Replace the q of one cone (used by vertical Dehn twists)."""
        cones = list(self.cones)
        cones[index] = Cone(cones[index].p, q)
        return SeifertPiece(self.genus, self.boundary_count, tuple(cones))


def make_piece(genus, boundary_count, cones=()):
    """Build a SeifertPiece from plain (p, q) pairs, validating everything."""
    return SeifertPiece(genus, boundary_count, tuple(Cone(p, q) for p, q in cones))
