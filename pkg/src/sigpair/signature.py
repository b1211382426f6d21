"""Coefficient matrices of Hermitian polynomials and their exact inertia.

The inertia (n+, n-, n0) is computed by congruence elimination, never by
characteristic polynomials: a nonzero real diagonal entry gives a 1x1 pivot
contributing its certified sign; if every remaining diagonal entry of a
nonzero block vanishes, an off-diagonal 2x2 pivot [[0, a], [conj(a), 0]]
contributes one eigenvalue of each sign (its determinant -a*conj(a) is
negative).  All arithmetic stays in the cyclotomic field.  Matrices arising
from invariant polynomials split into many small connected components, which
the elimination exploits; inertia is additive across components.

A floating eigenvalue oracle (inertia_numeric) reproduces the original
high-precision workflow; it is advisory only and never feeds certified
results.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .cyclotomic import Cyclotomic, rational
from .group import FiniteMatrixGroup
from .invariant import HermitianPolynomial, pack_key, unpack_key, phi


class NotHermitian(ValueError):
    """Matrix fails the exact Hermitian-symmetry check."""


class EmptySpectrum(ValueError):
    """Positivity ratio of an identically-zero polynomial."""


class Inertia(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def dimension(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero


class SignaturePair(NamedTuple):
    n_plus: int
    n_minus: int


class HermitianMatrix:
    """Sparse Hermitian matrix over a cyclotomic field, with a monomial basis."""

    def __init__(self, basis: list[tuple[int, int]], entries: dict[tuple[int, int], Cyclotomic]):
        self.basis = list(basis)
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def entry(self, i: int, j: int) -> Cyclotomic:
        return self.entries.get((i, j), rational(0))

    def check_hermitian(self):
        for (i, j), c in self.entries.items():
            mirror = self.entries.get((j, i))
            if mirror is None or mirror != c.conj():
                raise NotHermitian(f"entry ({i},{j}) has no conjugate partner")

    def components(self) -> list[list[int]]:
        """Connected components of the off-diagonal support graph."""
        parent = list(range(self.dimension))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (i, j) in self.entries:
            if i != j:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        groups: dict[int, list[int]] = {}
        for i in range(self.dimension):
            groups.setdefault(find(i), []).append(i)
        return [sorted(g) for g in sorted(groups.values())]

    def dense_block(self, idxs: list[int]) -> list[list[Cyclotomic]]:
        z = rational(0)
        pos = {g: i for i, g in enumerate(idxs)}
        block = [[z] * len(idxs) for _ in idxs]
        for (i, j), c in self.entries.items():
            if i in pos and j in pos:
                block[pos[i]][pos[j]] = c
        return block

    def permuted(self, perm: list[int]) -> "HermitianMatrix":
        """Same matrix with rows/columns reordered by perm (for invariance tests)."""
        inv = {old: new for new, old in enumerate(perm)}
        basis = [self.basis[old] for old in perm]
        entries = {(inv[i], inv[j]): c for (i, j), c in self.entries.items()}
        return HermitianMatrix(basis, entries)


def coefficient_matrix(P: HermitianPolynomial) -> HermitianMatrix:
    """Underlying matrix of a Hermitian polynomial in its sorted monomial basis."""
    basis = P.support()
    index = {m: i for i, m in enumerate(basis)}
    entries = {}
    for key, c in P.terms.items():
        a1, a2, b1, b2 = unpack_key(key)
        entries[(index[(a1, a2)], index[(b1, b2)])] = c
    m = HermitianMatrix(basis, entries)
    m.check_hermitian()
    return m


def _magnitude(c: Cyclotomic) -> float:
    est = abs(c.approx_float())
    return est if est > 0.0 else 5e-324


def _eliminate_block(block: list[list[Cyclotomic]]) -> Inertia:
    m = len(block)
    active = list(range(m))
    pos = neg = 0
    while active:
        piv = None
        best = -1.0
        for i in active:
            d = block[i][i]
            if not d.is_zero():
                est = _magnitude(d)
                if est > best:
                    best, piv = est, i
        if piv is not None:
            d = block[piv][piv]
            if d.sign() > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            cols = [i for i in active if not block[i][piv].is_zero()]
            if cols:
                dinv = d.inverse()
                ratio = {i: block[i][piv] * dinv for i in cols}
                for x, i in enumerate(cols):
                    ri = ratio[i]
                    row_p = block[piv]
                    for j in cols[x:]:
                        upd = ri * row_p[j]
                        val = block[i][j] - upd
                        block[i][j] = val
                        if i != j:
                            block[j][i] = val.conj()
        else:
            pair = None
            for x, i in enumerate(active):
                for j in active[x + 1:]:
                    if not block[i][j].is_zero():
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero
            i0, j0 = pair
            pos += 1
            neg += 1
            active.remove(i0)
            active.remove(j0)
            a = block[i0][j0]
            inv_a = a.inverse()
            inv_ac = a.conj().inverse()
            ks = [k for k in active
                  if not block[k][i0].is_zero() or not block[k][j0].is_zero()]
            for x, k in enumerate(ks):
                bi = block[k][i0]
                bj = block[k][j0]
                for l in ks[x:]:
                    upd = bj * block[i0][l] * inv_a + bi * block[j0][l] * inv_ac
                    val = block[k][l] - upd
                    block[k][l] = val
                    if k != l:
                        block[l][k] = val.conj()
    return Inertia(pos, neg, m - pos - neg)


def inertia_exact(M: HermitianMatrix) -> Inertia:
    """Certified inertia by Hermitian congruence elimination."""
    M.check_hermitian()
    pos = neg = zero_ct = 0
    for comp in M.components():
        block = M.dense_block(comp)
        res = _eliminate_block(block)
        pos += res.n_plus
        neg += res.n_minus
        zero_ct += res.n_zero
    return Inertia(pos, neg, zero_ct)


def gauss_rank(M: HermitianMatrix) -> int:
    """Rank by ordinary (non-symmetric) Gaussian elimination; independent of inertia_exact."""
    rank = 0
    for comp in M.components():
        block = M.dense_block(comp)
        m = len(block)
        row = 0
        for col in range(m):
            pr = None
            for i in range(row, m):
                if not block[i][col].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            block[row], block[pr] = block[pr], block[row]
            inv = block[row][col].inverse()
            for i in range(row + 1, m):
                if not block[i][col].is_zero():
                    factor = block[i][col] * inv
                    block[i] = [block[i][j] - factor * block[row][j] for j in range(m)]
            row += 1
            rank += 1
            if row == m:
                break
    return rank


def _mp_value(c: Cyclotomic) -> mpmath.mpc:
    z = mpmath.mpc(0)
    n = c.order
    for k, v in c.items:
        w = mpmath.expjpi(mpmath.mpf(2 * k) / n)
        z += (mpmath.mpf(v.numerator) / v.denominator) * w
    return z


def inertia_numeric(M: HermitianMatrix, precision_bits: int = 256,
                    zero_threshold: float = 1e-30) -> Inertia:
    """Floating eigenvalue oracle: advisory only, never used for certified results."""
    dim = M.dimension
    with mpmath.workprec(precision_bits):
        A = mpmath.zeros(dim, dim)
        for (i, j), c in M.entries.items():
            A[i, j] = _mp_value(c)
        if dim == 0:
            return Inertia(0, 0, 0)
        eigs = mpmath.mp.eighe(A, eigvals_only=True)
        thresh = mpmath.mpf(zero_threshold)
        pos = sum(1 for e in eigs if e > thresh)
        neg = sum(1 for e in eigs if e < -thresh)
    return Inertia(pos, neg, dim - pos - neg)


def signature_pair(G: FiniteMatrixGroup) -> SignaturePair:
    """The pair (N+, N-) for Phi_G."""
    inertia = inertia_exact(coefficient_matrix(phi(G)))
    return SignaturePair(inertia.n_plus, inertia.n_minus)


def positivity_ratio_from(inertia) -> Fraction:
    n = inertia.n_plus + inertia.n_minus
    if n == 0:
        raise EmptySpectrum("polynomial has no nonzero eigenvalues")
    return Fraction(inertia.n_plus, n)


def positivity_ratio(G: FiniteMatrixGroup) -> Fraction:
    """Exact N+ / (N+ + N-) for Phi_G."""
    inertia = inertia_exact(coefficient_matrix(phi(G)))
    return positivity_ratio_from(inertia)


def result_record(G: FiniteMatrixGroup, method: str = "exact",
                  precision_bits: int = 256, zero_threshold: float = 1e-30,
                  progress=None) -> dict:
    """The JSON result record for a single group computation."""
    t0 = time.monotonic()
    M = coefficient_matrix(phi(G, progress=progress))
    if method == "exact":
        inertia = inertia_exact(M)
    elif method == "numeric":
        inertia = inertia_numeric(M, precision_bits, zero_threshold)
    else:
        raise ValueError(f"unknown method {method!r}")
    ratio = positivity_ratio_from(inertia)
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    return {
        "group": G.label,
        "order": G.order,
        "N": inertia.n_plus + inertia.n_minus,
        "N_plus": inertia.n_plus,
        "N_minus": inertia.n_minus,
        "rank": inertia.rank,
        "ratio": f"{ratio.numerator}/{ratio.denominator}",
        "method": method,
        "elapsed_ms": elapsed_ms,
    }
