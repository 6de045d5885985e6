"""Grothendieck polynomials via isobaric divided differences.

The top cell is the staircase monomial for the longest permutation; every
other polynomial descends from it by applying pi_i along the first-ascent
chain, with each intermediate cached.  The result is chain-independent, so
first-ascent is purely a determinism choice.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .perm import Permutation, is_vexillary, length, w0_compose
from .poly import MultiPoly, PolyRing, UniPoly, divided_difference_pi
from .shapes import covexillary_rank_filling, diag_level_sum


@lru_cache(maxsize=None)
def groth_ring(n: int) -> PolyRing:
    return PolyRing(tuple("x_%d" % i for i in range(1, n + 1)))


@lru_cache(maxsize=None)
def grothendieck(u: Permutation) -> MultiPoly:
    """The Grothendieck polynomial of u in n = u.n variables."""
    n = u.n
    ring = groth_ring(n)
    if length(u) == comb(n, 2):
        exps = tuple(n - k for k in range(1, n + 1))
        return MultiPoly(ring, {exps: Fraction(1)})
    i = u.first_ascent()
    return divided_difference_pi(grothendieck(u.right_s(i)), i)


def groth_degree(u: Permutation) -> int:
    """Total degree; ranges from l(u) (Schubert case) up to the K-theory top."""
    return int(grothendieck(u).degree())


def groth_min_degree(u: Permutation) -> int:
    return grothendieck(u).min_degree()


def groth_spec_1mq(u: Permutation) -> UniPoly:
    """All variables set to 1 - q; collapses by total degree."""
    return grothendieck(u).substitute_all(UniPoly.one_minus_q())


def vexillary_degree_formula(u: Permutation) -> int:
    """deg of the Grothendieck polynomial of vexillary u, combinatorially.

    Computed as l(u) plus the diagonal level sums of the rank filling of the
    partition obtained from the complement diagram of w0*u (a covexillary
    permutation exactly when u is vexillary).
    """
    if not is_vexillary(u):
        raise ValueError("the degree formula needs a 2143-avoiding permutation")
    partner = w0_compose(u)
    return length(u) + diag_level_sum(covexillary_rank_filling(partner))
