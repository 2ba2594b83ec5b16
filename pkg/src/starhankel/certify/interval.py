"""Vectorized interval enclosures of polynomials with outward rounding.

Intervals are pairs of float arrays ``(lo, hi)``.  After every floating-point
operation the lower end is moved one ulp toward -inf and the upper end one
ulp toward +inf.  Round-to-nearest is off by at most half an ulp, so the
stored interval always contains the exact real result.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .polynomial import BoxPolynomial

_NEG = -np.inf
_POS = np.inf


def down(x):
    return np.nextafter(x, _NEG)


def up(x):
    return np.nextafter(x, _POS)


def fraction_interval(c: Fraction) -> tuple[float, float]:
    """Tightest float interval containing the rational ``c``."""
    f = float(c)
    exact = Fraction(f)
    if exact == c:
        return f, f
    if exact < c:
        return f, float(np.nextafter(f, _POS))
    return float(np.nextafter(f, _NEG)), f


def add(alo, ahi, blo, bhi):
    return down(alo + blo), up(ahi + bhi)


def mul(alo, ahi, blo, bhi):
    p1 = alo * blo
    p2 = alo * bhi
    p3 = ahi * blo
    p4 = ahi * bhi
    lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
    hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
    return down(lo), up(hi)


def _mag_pow(m, k, direction):
    r = m.copy()
    for _ in range(k - 1):
        r = direction(r * m)
    return r


def power(lo, hi, k: int):
    """Enclosure of ``{x**k : lo <= x <= hi}``."""
    if k == 0:
        one = np.ones_like(lo)
        return one, one.copy()
    if k == 1:
        return lo.copy(), hi.copy()
    alo = np.abs(lo)
    ahi = np.abs(hi)
    lo_dn, lo_up = _mag_pow(alo, k, down), _mag_pow(alo, k, up)
    hi_dn, hi_up = _mag_pow(ahi, k, down), _mag_pow(ahi, k, up)
    if k % 2:
        out_lo = np.where(lo >= 0, lo_dn, -lo_up)
        out_hi = np.where(hi >= 0, hi_up, -hi_dn)
        return out_lo, out_hi
    out_lo = np.where(lo >= 0, lo_dn, np.where(hi <= 0, hi_dn, 0.0))
    out_hi = np.where(lo >= 0, hi_up, np.where(hi <= 0, lo_up, np.maximum(lo_up, hi_up)))
    return out_lo, out_hi


class CompiledPolynomial:
    """Float form of a :class:`BoxPolynomial` ready for batch enclosure."""

    def __init__(self, poly: BoxPolynomial):
        self.poly = poly
        self.dims = poly.dims
        self.exps = np.array(list(poly.coefficients), dtype=int).reshape(-1, poly.dims)
        bounds = [fraction_interval(c) for c in poly.coefficients.values()]
        self.clo = np.array([b[0] for b in bounds], dtype=float)
        self.chi = np.array([b[1] for b in bounds], dtype=float)
        self.maxdeg = self.exps.max(axis=0) if len(self.exps) else np.zeros(self.dims, dtype=int)

    def enclose(self, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Natural interval extension over boxes ``lo, hi`` of shape (B, dims)."""
        lo = np.atleast_2d(lo)
        hi = np.atleast_2d(hi)
        B = lo.shape[0]
        if len(self.exps) == 0:
            return np.zeros(B), np.zeros(B)
        mlo = np.ones((len(self.exps), B))
        mhi = np.ones((len(self.exps), B))
        for i in range(self.dims):
            tables = [power(lo[:, i], hi[:, i], k) for k in range(self.maxdeg[i] + 1)]
            plo = np.stack([t[0] for t in tables])
            phi = np.stack([t[1] for t in tables])
            e = self.exps[:, i]
            if np.any(e):
                mlo, mhi = mul(mlo, mhi, plo[e], phi[e])
        tlo, thi = mul(mlo, mhi, self.clo[:, None], self.chi[:, None])
        slo = tlo[0]
        shi = thi[0]
        for t in range(1, len(self.exps)):
            slo, shi = add(slo, shi, tlo[t], thi[t])
        return slo, shi


class Encloser:
    """Upper/lower enclosures combining the natural extension with a mean-value form."""

    def __init__(self, poly: BoxPolynomial):
        self.poly = CompiledPolynomial(poly)
        self.grad = [CompiledPolynomial(g) for g in poly.gradient()]

    def gradient(self, lo, hi):
        return [g.enclose(lo, hi) for g in self.grad]

    def bounds(self, lo, hi, grad=None):
        """Enclosure of the range over each box; ``grad`` may enclose a superset."""
        nlo, nhi = self.poly.enclose(lo, hi)
        if grad is None:
            grad = self.gradient(lo, hi)
        c = 0.5 * (lo + hi)
        c = np.clip(c, lo, hi)
        r = np.maximum(up(hi - c), up(c - lo))
        clo, chi = self.poly.enclose(c, c)
        slack = np.zeros(lo.shape[0])
        for i, (glo, ghi) in enumerate(grad):
            m = np.maximum(np.abs(glo), np.abs(ghi))
            slack = up(slack + up(m * r[:, i]))
        mv_lo = down(clo - slack)
        mv_hi = up(chi + slack)
        return np.maximum(nlo, mv_lo), np.minimum(nhi, mv_hi)
