"""Expansion of the group-invariant Hermitian polynomial.

The central object is Phi_G(z, zbar) = 1 - prod_{g in G} (1 - <gz, z>),
expanded exactly as a sparse polynomial in (z1, z2, zbar1, zbar2).  The fold
over group elements is the dominant cost for the large groups, so it runs on
scaled integer coordinate vectors in Z[x]/(x^n - 1) (n the common cyclotomic
order of all matrix entries) and converts to canonical field elements once at
the end: denominators are cleared per factor, multiplication of coefficients
is a cyclic convolution of small integer vectors, and zero vectors are
dropped eagerly.

Monomial keys pack the exponent quadruple (a1, a2, b1, b2) of
z1^a1 z2^a2 zbar1^b1 zbar2^b2 into one integer, 8 bits per slot.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import Cyclotomic, rational
from .group import FiniteMatrixGroup, Matrix2

_SHIFT = (0, 8, 16, 24)
_MASK = 0xFF


def pack_key(a1: int, a2: int, b1: int, b2: int) -> int:
    return a1 | (a2 << 8) | (b1 << 16) | (b2 << 24)


def unpack_key(key: int) -> tuple[int, int, int, int]:
    return (key & _MASK, (key >> 8) & _MASK, (key >> 16) & _MASK, (key >> 24) & _MASK)


class HoloPoly:
    """Sparse polynomial in z1, z2 only, with Cyclotomic coefficients."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in (terms.items() if isinstance(terms, dict) else terms):
                if isinstance(c, (int, Fraction)):
                    c = rational(c)
                if not c.is_zero():
                    self.terms[tuple(mono)] = c

    def __eq__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[m] == c for m, c in self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        p = HoloPoly()
        p.terms = out
        return p

    def __neg__(self):
        p = HoloPoly()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = other if isinstance(other, Cyclotomic) else rational(other)
            if c.is_zero():
                return HoloPoly()
            p = HoloPoly()
            p.terms = {m: v * c for m, v in self.terms.items()}
            return p
        out: dict[tuple[int, int], Cyclotomic] = {}
        for (a1, a2), u in self.terms.items():
            for (b1, b2), v in other.terms.items():
                m = (a1 + b1, a2 + b2)
                s = out.get(m)
                w = u * v
                s = w if s is None else s + w
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        p = HoloPoly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def key(self) -> tuple:
        """Exact hashable identity (for orbit deduplication)."""
        return tuple(sorted((m, c.order, c.items) for m, c in self.terms.items()))

    def __repr__(self):
        return f"HoloPoly({self.terms!r})"


class HermitianPolynomial:
    """Sparse Hermitian polynomial: (alpha, beta) -> coefficient.

    Keys are packed exponent quadruples; coefficients are exact Cyclotomic
    values with the Hermitian symmetry c(beta, alpha) = conj(c(alpha, beta)).
    """

    __slots__ = ("terms", "group_order")
    __hash__ = None

    def __init__(self, terms: dict[int, Cyclotomic], group_order: int):
        self.terms = terms
        self.group_order = group_order

    def term_count(self) -> int:
        return len(self.terms)

    def support(self) -> list[tuple[int, int]]:
        """Sorted distinct monomials occurring as alpha or beta (graded order)."""
        mons = set()
        for key in self.terms:
            a1, a2, b1, b2 = unpack_key(key)
            mons.add((a1, a2))
            mons.add((b1, b2))
        return sorted(mons, key=lambda m: (m[0] + m[1], m[0], m[1]))

    def coeff(self, a1: int, a2: int, b1: int, b2: int) -> Cyclotomic:
        return self.terms.get(pack_key(a1, a2, b1, b2), rational(0))

    def is_diagonal(self) -> bool:
        """True iff every stored term has alpha = beta."""
        for key in self.terms:
            a1, a2, b1, b2 = unpack_key(key)
            if a1 != b1 or a2 != b2:
                return False
        return True

    def check_hermitian(self) -> bool:
        for key, c in self.terms.items():
            a1, a2, b1, b2 = unpack_key(key)
            mirror = self.terms.get(pack_key(b1, b2, a1, a2))
            if mirror is None or mirror != c.conj():
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, HermitianPolynomial):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[k] == c for k, c in self.terms.items())

    def diagonal_restriction(self) -> dict[tuple[int, int], Fraction]:
        """For diagonal polynomials: coefficients of x^a y^b with x=|z1|^2, y=|z2|^2."""
        if not self.is_diagonal():
            raise ValueError("polynomial has off-diagonal terms")
        out = {}
        for key, c in self.terms.items():
            a1, a2, _, _ = unpack_key(key)
            out[(a1, a2)] = c.as_fraction()
        return out

    def compose(self, M: Matrix2) -> "HermitianPolynomial":
        """Exact substitution z -> Mz (and zbar -> conj(M) zbar), re-expanded.

        Quadratic blowup; intended for the invariance checks on small groups.
        """
        l1 = HoloPoly({(1, 0): M.a, (0, 1): M.b})
        l2 = HoloPoly({(1, 0): M.c, (0, 1): M.d})
        k1 = HoloPoly({(1, 0): M.a.conj(), (0, 1): M.b.conj()})
        k2 = HoloPoly({(1, 0): M.c.conj(), (0, 1): M.d.conj()})
        zp = _power_table(l1, l2, self._max_exp(0), self._max_exp(1))
        wp = _power_table(k1, k2, self._max_exp(2), self._max_exp(3))
        out: dict[int, Cyclotomic] = {}
        for key, c in self.terms.items():
            a1, a2, b1, b2 = unpack_key(key)
            zpart = zp[(a1, a2)]
            wpart = wp[(b1, b2)]
            for (u1, u2), cu in zpart.terms.items():
                for (v1, v2), cv in wpart.terms.items():
                    k = pack_key(u1, u2, v1, v2)
                    w = c * cu * cv
                    s = out.get(k)
                    s = w if s is None else s + w
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        return HermitianPolynomial(out, self.group_order)

    def _max_exp(self, slot: int) -> int:
        return max((key >> _SHIFT[slot]) & _MASK for key in self.terms) if self.terms else 0

    def __mul__(self, other: "HermitianPolynomial") -> "HermitianPolynomial":
        out: dict[int, Cyclotomic] = {}
        for ka, u in self.terms.items():
            for kb, v in other.terms.items():
                k = ka + kb
                w = u * v
                s = out.get(k)
                s = w if s is None else s + w
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return HermitianPolynomial(out, max(self.group_order, other.group_order))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return HermitianPolynomial(out, max(self.group_order, other.group_order))

    def __sub__(self, other):
        neg = HermitianPolynomial({k: -c for k, c in other.terms.items()}, other.group_order)
        return self + neg

    def csv_rows(self):
        """Rows 'a1,a2,b1,b2,coeff-json' sorted lexicographically."""
        import json as _json

        for quad in sorted(unpack_key(k) for k in self.terms):
            c = self.terms[pack_key(*quad)]
            yield ",".join(str(x) for x in quad) + "," + _json.dumps(c.to_json_dict(), sort_keys=True)

    def __repr__(self):
        return f"HermitianPolynomial(<{len(self.terms)} terms>, group_order={self.group_order})"


def _power_table(l1: HoloPoly, l2: HoloPoly, max1: int, max2: int) -> dict:
    """(a, b) -> l1^a * l2^b for all needed exponent pairs."""
    p1 = [HoloPoly({(0, 0): 1})]
    for _ in range(max1):
        p1.append(p1[-1] * l1)
    p2 = [HoloPoly({(0, 0): 1})]
    for _ in range(max2):
        p2.append(p2[-1] * l2)
    return {(a, b): p1[a] * p2[b] for a in range(max1 + 1) for b in range(max2 + 1)}


def _scaled_factors(G: FiniteMatrixGroup, n: int):
    """Per group element: (denominator, [(key_delta, [(exp, int_coef), ...])]).

    The factor (1 - <gz, z>) is scaled by the lcm d of its entries'
    denominators, so the fold runs on integers; <gz, z> contributes the
    bilinear form sum_{j,k} g[j][k] z_k zbar_j.
    """
    factors = []
    for M in G.elements:
        placed = []
        dens = [1]
        for j, k, e in ((0, 0, M.a), (0, 1, M.b), (1, 0, M.c), (1, 1, M.d)):
            if e.is_zero():
                continue
            items = e.promote(n).items if e.order != n else e.items
            dens.extend(v.denominator for _, v in items)
            delta = (1 << _SHIFT[k]) + (1 << _SHIFT[2 + j])
            placed.append((delta, items))
        d = math.lcm(*dens)
        terms = []
        for delta, items in placed:
            coefs = [(exp, -(v * d).numerator) for exp, v in items]
            terms.append((delta, coefs))
        factors.append((d, terms))
    return factors


def _fold_product(factors, n: int, progress=None):
    """prod of (d + sum of scaled bilinear terms) over Z[x]/(x^n - 1) vectors."""
    prod = {0: [1] + [0] * (n - 1)}
    rng = range(n)
    for idx, (d, terms) in enumerate(factors):
        out: dict[int, list[int]] = {}
        for key, vec in prod.items():
            acc = out.get(key)
            if acc is None:
                out[key] = [d * v for v in vec]
            else:
                for i in rng:
                    acc[i] += d * vec[i]
            for delta, coefs in terms:
                k2 = key + delta
                acc = out.get(k2)
                if acc is None:
                    acc = [0] * n
                    out[k2] = acc
                for e, c in coefs:
                    for i in rng:
                        v = vec[i]
                        if v:
                            j = i + e
                            acc[j if j < n else j - n] += c * v
        prod = {k: v for k, v in out.items() if any(v)}
        if progress is not None:
            progress(idx + 1, len(factors))
    return prod


def phi(G: FiniteMatrixGroup, progress=None) -> HermitianPolynomial:
    """Exact expansion of Phi_G = 1 - prod_{g in G}(1 - <gz, z>)."""
    if G.order > _MASK:
        raise ValueError(f"group order {G.order} exceeds the packed-exponent limit {_MASK}")
    n = G.field_order()
    factors = _scaled_factors(G, n)
    scale = math.prod(d for d, _ in factors)
    prod = _fold_product(factors, n, progress=progress)
    terms: dict[int, Cyclotomic] = {}
    for key, vec in prod.items():
        c = Cyclotomic(n, {e: Fraction(v, scale) for e, v in enumerate(vec) if v})
        if c.is_zero():
            continue
        if key == 0:
            const = 1 - c
            assert const.is_zero(), "constant term of Phi must vanish"
            continue
        terms[key] = -c
    out = HermitianPolynomial(terms, G.order)
    assert out.check_hermitian(), "expansion lost Hermitian symmetry"
    bound = G.order
    for key in terms:
        assert all(x <= bound for x in unpack_key(key)), "degree bound exceeded"
    return out


def polarized_at_ones(G: FiniteMatrixGroup, progress=None) -> HoloPoly:
    """1 - prod_{g in G}(1 - (gz)_1 - (gz)_2), a polynomial in z only."""
    n = G.field_order()
    factors = []
    for M in G.elements:
        placed = []
        dens = [1]
        for k, e in ((0, M.a + M.c), (1, M.b + M.d)):
            if e.is_zero():
                continue
            items = e.promote(n).items if e.order != n else e.items
            dens.extend(v.denominator for _, v in items)
            placed.append((1 << _SHIFT[k], items))
        d = math.lcm(*dens)
        terms = [(delta, [(exp, -(v * d).numerator) for exp, v in items]) for delta, items in placed]
        factors.append((d, terms))
    scale = math.prod(d for d, _ in factors)
    prod = _fold_product(factors, n, progress=progress)
    out = HoloPoly()
    for key, vec in prod.items():
        c = Cyclotomic(n, {e: Fraction(v, scale) for e, v in enumerate(vec) if v})
        if c.is_zero():
            continue
        a1, a2 = key & _MASK, (key >> 8) & _MASK
        if key == 0:
            const = 1 - c
            assert const.is_zero(), "constant term must vanish"
            continue
        out.terms[(a1, a2)] = -c
    return out
