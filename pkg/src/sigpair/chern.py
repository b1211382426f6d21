"""Orbit polynomials and orbit Chern classes.

The group acts on C[z1, z2] by (g . h)(z) = h(g^-1 z).  The orbit polynomial
of the full multiset of group translates of h is prod_{g in G} (X + g . h);
its coefficients (elementary symmetric polynomials of the translates) are the
orbit Chern classes, each invariant under the action.  The alternating sum
sum_j (-1)^(j-1) c_j of the classes of z1 + z2 equals the polarized invariant
polynomial evaluated at w = (1, 1), which `verify_chern_identity` checks
against the independent product expansion.

The orbit as a *set* gives a different polynomial whenever the stabilizer is
nontrivial; then the set-based polynomial raised to the stabilizer order
recovers the multiset one (`set_multiset_relation`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fpq import IntBivariatePoly, fpq
from .group import FiniteMatrixGroup, Matrix2
from .invariant import HoloPoly, polarized_at_ones


@dataclass
class Orbit:
    """Group translates of a polynomial: full multiset, distinct set, stabilizer."""

    elements: list[HoloPoly]
    distinct: list[HoloPoly]
    stabilizer_order: int


def act(g: Matrix2, h: HoloPoly) -> HoloPoly:
    """(g . h)(z) = h(g^-1 z), expanded exactly; g must be unitary."""
    gi = g.dagger()
    l1 = HoloPoly({(1, 0): gi.a, (0, 1): gi.b})
    l2 = HoloPoly({(1, 0): gi.c, (0, 1): gi.d})
    max1 = max((m[0] for m in h.terms), default=0)
    max2 = max((m[1] for m in h.terms), default=0)
    p1 = [HoloPoly({(0, 0): 1})]
    for _ in range(max1):
        p1.append(p1[-1] * l1)
    p2 = [HoloPoly({(0, 0): 1})]
    for _ in range(max2):
        p2.append(p2[-1] * l2)
    out = HoloPoly()
    for (a, b), c in h.terms.items():
        out = out + (p1[a] * p2[b]) * c
    return out


def orbit(G: FiniteMatrixGroup, h: HoloPoly) -> Orbit:
    """All group translates of h in group element order, deduplicated exactly."""
    elements = [act(g, h) for g in G.elements]
    seen = {}
    for e in elements:
        seen.setdefault(e.key(), e)
    distinct = list(seen.values())
    stab, rem = divmod(G.order, len(distinct))
    assert rem == 0, "orbit size must divide the group order"
    return Orbit(elements, distinct, stab)


def _orbit_polynomial(polys: list[HoloPoly]) -> list[HoloPoly]:
    """Elementary symmetric polynomials e_0..e_m of the given polynomials."""
    es = [HoloPoly({(0, 0): 1})]
    for b in polys:
        nxt = [es[0]]
        for a in range(1, len(es)):
            nxt.append(es[a] + es[a - 1] * b)
        nxt.append(es[-1] * b)
        es = nxt
    return es


def chern_classes(orb: Orbit, use_multiset: bool = True) -> list[HoloPoly]:
    """Orbit Chern classes c_1..c_m (c_0 = 1 omitted)."""
    polys = orb.elements if use_multiset else orb.distinct
    return _orbit_polynomial(polys)[1:]


def alternating_sum(classes: list[HoloPoly]) -> HoloPoly:
    out = HoloPoly()
    for j, c in enumerate(classes, start=1):
        out = out + (c if j % 2 else -c)
    return out


def verify_chern_identity(G: FiniteMatrixGroup, use_multiset: bool = True) -> bool:
    """sum_j (-1)^(j-1) c_j of the orbit of z1+z2 equals the polarized invariant."""
    orb = orbit(G, HoloPoly({(1, 0): 1, (0, 1): 1}))
    lhs = alternating_sum(chern_classes(orb, use_multiset=use_multiset))
    return lhs == polarized_at_ones(G)


def chern_sum_as_fpq(G: FiniteMatrixGroup) -> IntBivariatePoly:
    """The alternating class sum of cyclic Gamma(p,q) read as an integer polynomial."""
    orb = orbit(G, HoloPoly({(1, 0): 1, (0, 1): 1}))
    total = alternating_sum(chern_classes(orb))
    out = {}
    for m, c in total.terms.items():
        f = c.as_fraction()
        assert f.denominator == 1
        out[m] = int(f)
    return IntBivariatePoly(out)


def set_multiset_relation(G: FiniteMatrixGroup, h: HoloPoly) -> bool:
    """Set-based orbit polynomial ** stabilizer_order == multiset-based one."""
    orb = orbit(G, h)
    multi = _orbit_polynomial(orb.elements)
    if orb.stabilizer_order == 1:
        return multi == _orbit_polynomial(orb.distinct)
    base = _orbit_polynomial(orb.distinct)
    acc = base
    for _ in range(orb.stabilizer_order - 1):
        acc = _poly_in_x_mul(acc, base)
    return acc == multi


def _poly_in_x_mul(a: list[HoloPoly], b: list[HoloPoly]) -> list[HoloPoly]:
    """Product of two polynomials in X whose coefficients are HoloPoly values."""
    out = [HoloPoly() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out
