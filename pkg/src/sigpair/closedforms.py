"""Closed-form structure of the dihedral and binary dihedral invariants.

Both families split into 2p diagonal and 2p (resp. p and p) anti-diagonal
matrices, which turns Phi into a three-term combination of a single bivariate
polynomial evaluated at diagonal and anti-diagonal arguments:

    Phi_Delta_p  = f(x, y) + f(u, v) - f(x, y) f(u, v),   f = f_{p,p-1}
    Phi_Lambda_p = g(x, y) + g(u, -v) - g(x, y) g(u, -v), g = f_{2p,2p-1}

with x = z1 zbar1, y = z2 zbar2, u = z2 zbar1, v = z1 zbar2.  Collecting the
result in invariant-polynomial blocks gives diagonal matrices whose entries
(the coefficients c_{p,j}, E_k, d_k computed here) have known signs, plus one
2x2 block with negative determinant; the closed-form signature pairs follow
by counting.  Everything in this module is an independent prediction that the
exact engine cross-checks; nothing here feeds back into it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .cyclotomic import Cyclotomic, rational
from .fpq import IntBivariatePoly, c_closed, fpq
from .invariant import HermitianPolynomial, pack_key
from .signature import Inertia, SignaturePair


class UnivariateIntPoly:
    """Dense integer polynomial, coefficients indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, UnivariateIntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"UnivariateIntPoly({self.coeffs!r})"


@dataclass
class DiagonalBlockSummary:
    """One block of the nearly-diagonal invariant matrix and its inertia share."""

    label: str
    entry_values: list
    contribution: Inertia


def _subst_terms(f: IntBivariatePoly, anti: bool, negate_y: bool) -> dict[int, Cyclotomic]:
    """Map f(x, y) into Hermitian-polynomial keys.

    Diagonal arguments send x^r y^s to z1^r z2^s zbar1^r zbar2^s; anti-diagonal
    arguments send it to z1^s z2^r zbar1^r zbar2^s, optionally with (-1)^s.
    """
    out = {}
    for (r, s), c in f.terms.items():
        if anti:
            key = pack_key(s, r, r, s)
            val = -c if (negate_y and s % 2) else c
        else:
            key = pack_key(r, s, r, s)
            val = c
        out[key] = rational(val)
    return out


def _three_term_phi(f: IntBivariatePoly, group_order: int, negate_y: bool) -> HermitianPolynomial:
    A = HermitianPolynomial(_subst_terms(f, False, False), group_order)
    B = HermitianPolynomial(_subst_terms(f, True, negate_y), group_order)
    return A + B - A * B


def phi_delta_decomposed(p: int) -> HermitianPolynomial:
    """Phi of the dihedral group built from f_{p,p-1} by substitution only."""
    return _three_term_phi(fpq(p, p - 1), 2 * p, negate_y=False)


def phi_lambda_decomposed(p: int) -> HermitianPolynomial:
    """Phi of the binary dihedral group built from f_{2p,2p-1} by substitution only."""
    return _three_term_phi(fpq(2 * p, 2 * p - 1), 4 * p, negate_y=True)


# -- dihedral blocks ----------------------------------------------------------


def e_coeffs(p: int) -> list[int]:
    """E_k for 1 <= k <= 2*floor(p/2): convolution of the c_{p,*}, plus 2 c_{p,k} low."""
    half = p // 2
    out = []
    for k in range(1, 2 * half + 1):
        total = sum(c_closed(p, a) * c_closed(p, k - a)
                    for a in range(max(1, k - half), min(half, k - 1) + 1))
        if k <= half:
            total += 2 * c_closed(p, k)
        out.append(total)
    return out


def delta_blocks(p: int) -> list[DiagonalBlockSummary]:
    """Predicted block data of the dihedral invariant matrix.

    Blocks: [1]; diag((-1)^j c_{p,j}) for j = 1..floor(p/2); diag((-1)^(k+1) E_k)
    for k = 1..p-1; and the 2x2 tail pairing (z1 z2)^p with z1^(2p)+z2^(2p),
    [[0, -1], [-1, 0]] for odd p and [[-E_p, -1], [-1, 0]] for even p.
    """
    if p < 3:
        raise ValueError("block derivation needs p >= 3")
    half = p // 2
    ev = e_coeffs(p)
    blocks = [DiagonalBlockSummary("A_1", [1], Inertia(1, 0, 0))]
    a1 = [(-1) ** j * c_closed(p, j) for j in range(1, half + 1)]
    blocks.append(DiagonalBlockSummary(
        "A_p1", a1, Inertia(sum(1 for v in a1 if v > 0), sum(1 for v in a1 if v < 0), 0)))
    a2 = [(-1) ** (k + 1) * ev[k - 1] for k in range(1, p)]
    assert all(v != 0 for v in a2)
    blocks.append(DiagonalBlockSummary(
        "A_p2", a2, Inertia(sum(1 for v in a2 if v > 0), sum(1 for v in a2 if v < 0), 0)))
    corner = 0 if p % 2 else -ev[p - 1]
    blocks.append(DiagonalBlockSummary("A_p3", [corner, -1], Inertia(1, 1, 0)))
    return blocks


def delta_counts(p: int) -> tuple[int, int]:
    """(N, N+) for the dihedral group of order 2p: closed form."""
    return p + p // 2 + 2, p // 2 + p // 4 + 2


def delta_signature_closed(p: int) -> SignaturePair:
    """(floor(p/2) + floor(p/4) + 2, floor(3(p+1)/4))."""
    return SignaturePair(p // 2 + p // 4 + 2, 3 * (p + 1) // 4)


def delta_ratio(p: int) -> Fraction:
    """Positivity ratio of the dihedral group by residue of p mod 4."""
    if p < 3:
        raise ValueError("closed form asserted for p >= 3")
    base = Fraction(1, 2)
    res = p % 4
    if res == 0:
        return base + Fraction(2, 3 * p + 4)
    if res == 1:
        return base + Fraction(1, 3 * p + 3)
    if res == 2:
        return base + Fraction(1, 3 * p + 4)
    return base


# -- binary dihedral blocks ---------------------------------------------------


def d_coeff_closed(p: int, j: int) -> int:
    """d_j by direct convolution of the c_{2p,*} coefficients (1 <= j <= p)."""
    c = lambda m: c_closed(2 * p, m)
    total = (-1) ** (j - 1) * c(j) ** 2
    total += 2 * sum((-1) ** (k - 1) * c(k) * c(2 * j - k)
                     for k in range(j + 1, min(2 * j - 1, p) + 1))
    if 2 * j <= p:
        total -= 2 * c(2 * j)
    return total


def d_poly(p: int) -> UnivariateIntPoly:
    """D_p(t) = sum d_k t^(2k) extracted from the decomposed Phi_Lambda_p."""
    P = phi_lambda_decomposed(p)
    coeffs = [0] * (4 * p + 1)
    for k in range(1, p + 1):
        c = P.terms.get(pack_key(2 * k, 2 * k, 2 * k, 2 * k))
        if c is not None:
            coeffs[2 * k] = int(c.as_fraction())
    return UnivariateIntPoly(coeffs)


def d_poly_closed(p: int) -> UnivariateIntPoly:
    """D_p(t) from the generating identity.

    D_p(t) = 1 - 4^(1-2p) * u(t) v(t) with u = sum_j C(2p,2j) (1-4t)^j and
    v = sum_k C(2p,2k) (1+4t)^k.  (The product of the four sign variants of
    (1 +- a)(1 +- b), a^2 = 1-4t, b^2 = 1+4t, collapses to 4 u v.)
    """
    u = [Fraction(0)] * (p + 1)
    v = [Fraction(0)] * (p + 1)
    for j in range(p + 1):
        b = math.comb(2 * p, 2 * j)
        for i in range(j + 1):
            w = b * math.comb(j, i) * (4 ** i)
            u[i] += Fraction((-1) ** i * w)
            v[i] += Fraction(w)
    prod = [Fraction(0)] * (2 * p + 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    prod[i + j] += x * y
    scale = Fraction(4) ** (1 - 2 * p)
    coeffs = []
    for k, c in enumerate(prod):
        val = (1 if k == 0 else 0) - scale * c
        assert val.denominator == 1, "D_p coefficient not integral"
        coeffs.append(int(val))
    return UnivariateIntPoly(coeffs)


def d_sign_check(p: int) -> bool:
    """d_k > 0 for odd k, d_k < 0 for even k, and extraction == closed form."""
    ext = d_poly(p)
    if ext != d_poly_closed(p):
        return False
    if any(ext.coeff(2 * k - 1) for k in range(1, p + 1)):
        return False
    for k in range(1, p + 1):
        d = ext.coeff(2 * k)
        if k % 2 and d <= 0:
            return False
        if k % 2 == 0 and d >= 0:
            return False
    return True


def lambda_blocks(p: int) -> list[DiagonalBlockSummary]:
    """Predicted block data of the binary dihedral invariant matrix.

    Blocks: [1]; diag(c_{2p,j}) for j = 1..p (all positive); diag(d_j) for
    j = 1..p-1 (alternating, odd positive); and [[d_p, -1], [-1, 0]] with
    negative determinant.
    """
    if p < 2:
        raise ValueError("block derivation needs p >= 2")
    blocks = [DiagonalBlockSummary("E_1", [1], Inertia(1, 0, 0))]
    e1 = [c_closed(2 * p, j) for j in range(1, p + 1)]
    assert all(v > 0 for v in e1)
    blocks.append(DiagonalBlockSummary("E_p1", e1, Inertia(p, 0, 0)))
    e2 = [d_coeff_closed(p, j) for j in range(1, p)]
    assert all(v != 0 for v in e2)
    blocks.append(DiagonalBlockSummary(
        "E_p2", e2, Inertia(sum(1 for v in e2 if v > 0), sum(1 for v in e2 if v < 0), 0)))
    blocks.append(DiagonalBlockSummary("E_p3", [d_coeff_closed(p, p), -1], Inertia(1, 1, 0)))
    return blocks


def lambda_signature_closed(p: int) -> SignaturePair:
    """(2 + p + floor(p/2), 1 + floor((p-1)/2)) for the order-4p group."""
    return SignaturePair(2 + p + p // 2, 1 + (p - 1) // 2)


def blocks_signature(blocks: list[DiagonalBlockSummary]) -> SignaturePair:
    pos = sum(b.contribution.n_plus for b in blocks)
    neg = sum(b.contribution.n_minus for b in blocks)
    return SignaturePair(pos, neg)


# -- the auxiliary even-binomial polynomial -----------------------------------


def p_poly(p: int) -> UnivariateIntPoly:
    """P(z) = 2 sum_k C(2p, 2k) z^k."""
    return UnivariateIntPoly([2 * math.comb(2 * p, 2 * k) for k in range(p + 1)])


def p_poly_roots_check(p: int) -> bool:
    """All roots of P are -tan((2j+1)pi/4p)^2 (numeric, 60 bits at 128-bit work),
    and |P(x+iy)|^2 has positive coefficients everywhere on its support (exact)."""
    poly = p_poly(p)
    with mpmath.workprec(128):
        coeffs = [mpmath.mpf(c) for c in reversed(poly.coeffs)]
        roots = sorted(mpmath.polyroots(coeffs, maxsteps=200, extraprec=64),
                       key=lambda r: mpmath.re(r))
        expected = sorted((-mpmath.tan((2 * j + 1) * mpmath.pi / (4 * p)) ** 2
                           for j in range(p)), key=lambda r: mpmath.re(r))
        tol = mpmath.mpf(2) ** -60
        for got, want in zip(roots, expected):
            if abs(mpmath.im(got)) > tol * (1 + abs(want)):
                return False
            if abs(mpmath.re(got) - want) > tol * (1 + abs(want)):
                return False
    # exact part: expand P(x+iy) over Z[i], then multiply by its conjugate
    gauss: dict[int, tuple[int, int]] = {}
    for k, c in enumerate(poly.coeffs):
        if not c:
            continue
        # (x+iy)^k: C(k, m) x^(k-m) (iy)^m
        for m in range(k + 1):
            w = c * math.comb(k, m)
            re_im = (0, w) if m % 2 else (w, 0)
            sgn = -1 if m % 4 in (2, 3) else 1
            key = (k - m, m)
            cur = gauss.get(key, (0, 0))
            gauss[key] = (cur[0] + sgn * re_im[0], cur[1] + sgn * re_im[1])
    sq: dict[tuple[int, int], int] = {}
    for (x1, y1), (re1, im1) in gauss.items():
        for (x2, y2), (re2, im2) in gauss.items():
            key = (x1 + x2, y1 + y2)
            sq[key] = sq.get(key, 0) + re1 * re2 + im1 * im2
    for (dx, dy), c in sq.items():
        if dy % 2 == 1 and c != 0:
            return False
    # every monomial with even y-degree and total degree <= 2p must be positive
    for dy in range(0, 2 * p + 1, 2):
        for dx in range(0, 2 * p + 1 - dy):
            if sq.get((dx, dy), 0) <= 0:
                return False
    return True
