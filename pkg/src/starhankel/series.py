"""Truncated power series in one variable with complex coefficients.

A :class:`TruncatedSeries` of order ``N`` stores ``c_0 .. c_N`` and never
carries information about degrees above ``N``.  Operations that lose a
degree (division by ``z``, logarithmic derivative) return a series of order
``N - 1`` so that every stored coefficient is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER = 12
MAX_ORDER = 64


def _as_coeff_array(coeffs: Iterable[complex], order: int | None = None) -> np.ndarray:
    arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=complex)
    if arr.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    if order is None:
        order = len(arr) - 1
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > MAX_ORDER:
        raise ValueError(f"order {order} exceeds the supported maximum {MAX_ORDER}")
    out = np.zeros(order + 1, dtype=complex)
    n = min(len(arr), order + 1)
    out[:n] = arr[:n]
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Taylor prefix ``c_0 + c_1 z + ... + c_N z^N`` of an analytic function at 0."""

    coeffs: np.ndarray

    def __post_init__(self):
        if not isinstance(self.coeffs, np.ndarray) or self.coeffs.flags.writeable:
            object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))
        if len(self.coeffs) < 1:
            raise ValueError("a series needs at least the constant term")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], order: int | None = None) -> "TruncatedSeries":
        """Build a series, zero-padding or cutting ``coeffs`` to ``order``."""
        return cls(_as_coeff_array(coeffs, order))

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def variable(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """The series ``z``."""
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def monomial(cls, degree: int, coeff: complex = 1, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if degree <= order:
            c[degree] = coeff
        return cls.from_coeffs(c, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> complex:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} is outside order {self.order}")
        return complex(self.coeffs[k])

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={np.round(self.coeffs, 12).tolist()})"

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}: higher terms are unknown")
        cls = type(self) if order >= 1 else TruncatedSeries
        return cls.from_coeffs(self.coeffs[: order + 1], order)

    def _check_same_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"series orders differ: {self.order} vs {other.order}")

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_same_order(other)
            return other
        if np.isscalar(other):
            return TruncatedSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(_as_coeff_array(self.coeffs + other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(_as_coeff_array(-self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(_as_coeff_array(self.coeffs - other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(_as_coeff_array(self.coeffs * other))
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return TruncatedSeries(_as_coeff_array(self.coeffs / other))
        if isinstance(other, TruncatedSeries):
            return mul(self, reciprocal(other))
        return NotImplemented

    def mul_z(self) -> "TruncatedSeries":
        """``z * self``; the order grows by one since the new top term is known."""
        return TruncatedSeries.from_coeffs(np.concatenate([[0], self.coeffs]), self.order + 1)

    def div_z(self) -> "TruncatedSeries":
        """``self / z``; requires ``c_0 = 0`` and lowers the order by one."""
        if self.coeffs[0] != 0:
            raise ValueError("division by z needs a vanishing constant term")
        if self.order < 1:
            raise ValueError("series of order 0 has nothing left after division by z")
        return TruncatedSeries.from_coeffs(self.coeffs[1:], self.order - 1)

    def derivative(self) -> "TruncatedSeries":
        """Termwise derivative, order ``N - 1``."""
        if self.order < 1:
            raise ValueError("derivative of an order-0 series is undetermined")
        k = np.arange(1, self.order + 1)
        return TruncatedSeries.from_coeffs(k * self.coeffs[1:], self.order - 1)

    def __call__(self, z):
        """Evaluate the polynomial prefix at ``z`` (scalar or array)."""
        return np.polyval(self.coeffs[::-1], z)

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        """Compare through the shared order only."""
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=0, atol=atol))

    @property
    def is_normalized(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] == 1


class NormalizedSeries(TruncatedSeries):
    """A series with ``c_0 = 0`` and ``c_1 = 1`` exactly (class A)."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_normalized:
            raise ValueError("normalized series need c0 = 0 and c1 = 1 exactly")

    @classmethod
    def from_tail(cls, tail: Sequence[complex], order: int | None = None) -> "NormalizedSeries":
        """Build ``z + a_2 z^2 + ...`` from ``(a_2, a_3, ...)``."""
        if order is None:
            order = len(tail) + 1
        return cls.from_coeffs([0, 1, *tail], order)

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER) -> "NormalizedSeries":
        return cls.from_coeffs([0, 1], order)


def normalized(s: TruncatedSeries) -> NormalizedSeries:
    """Re-tag a series as normalized after checking the class-A conditions."""
    if isinstance(s, NormalizedSeries):
        return s
    return NormalizedSeries(s.coeffs)


def _require_normalized(f: TruncatedSeries) -> None:
    if not f.is_normalized:
        raise ValueError("expected a normalized series (c0 = 0, c1 = 1)")


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    a._check_same_order(b)
    n = a.order + 1
    return TruncatedSeries(_as_coeff_array(np.convolve(a.coeffs, b.coeffs)[:n]))


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    c = a.coeffs
    if c[0] == 0:
        raise ZeroDivisionError("reciprocal of a series with zero constant term")
    n = a.order + 1
    b = np.zeros(n, dtype=complex)
    b[0] = 1 / c[0]
    for k in range(1, n):
        b[k] = -np.dot(c[1 : k + 1], b[k - 1 :: -1]) / c[0]
    return TruncatedSeries(_as_coeff_array(b))


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for a series without constant term.

    Uses ``g' = a' g``, i.e. ``k g_k = sum_{j=1..k} j a_j g_{k-j}``.
    """
    c = a.coeffs
    if c[0] != 0:
        raise ValueError("exp_series needs a vanishing constant term")
    n = a.order + 1
    ja = np.arange(n) * c
    g = np.zeros(n, dtype=complex)
    g[0] = 1
    for k in range(1, n):
        g[k] = np.dot(ja[1 : k + 1], g[k - 1 :: -1]) / k
    return TruncatedSeries(_as_coeff_array(g))


def log_series(h: TruncatedSeries) -> TruncatedSeries:
    """``log(h)`` for ``h_0 = 1``; solves ``h L' = h'`` termwise."""
    c = h.coeffs
    if c[0] != 1:
        raise ValueError("log_series needs constant term 1")
    n = h.order + 1
    L = np.zeros(n, dtype=complex)
    kL = np.zeros(n, dtype=complex)
    for k in range(1, n):
        L[k] = c[k] - np.dot(kL[1:k], c[k - 1 : 0 : -1]) / k
        kL[k] = k * L[k]
    return TruncatedSeries(_as_coeff_array(L))


def log_over_z(f: TruncatedSeries) -> TruncatedSeries:
    """``F_f = log(f(z)/z)`` for normalized ``f`` of order N; result has order N - 1.

    The logarithmic coefficients are ``gamma_n = F_f[n] / 2``.
    """
    _require_normalized(f)
    return log_series(f.div_z())


def integrate_over_z(w: TruncatedSeries) -> TruncatedSeries:
    """``int_0^z w(t)/t dt``: coefficient ``k`` becomes ``c_k / k``."""
    c = w.coeffs
    if c[0] != 0:
        raise ValueError("integrate_over_z needs w(0) = 0")
    out = np.zeros_like(c)
    k = np.arange(1, len(c))
    out[1:] = c[1:] / k
    return TruncatedSeries(_as_coeff_array(out))


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(z))`` for ``g(0) = 0`` by Horner's rule at the common order."""
    f._check_same_order(g)
    if g.coeffs[0] != 0:
        raise ValueError("inner series of a composition needs g(0) = 0")
    acc = TruncatedSeries.constant(f.coeffs[-1], f.order)
    for c in f.coeffs[-2::-1]:
        acc = mul(acc, g) + c
    return acc


def revert(f: TruncatedSeries) -> NormalizedSeries:
    """Compositional inverse of a normalized series.

    Newton iteration ``g <- g - (f(g) - w) / f'(g)`` with the working order
    doubled on each pass, so the number of correct terms doubles as well.
    """
    _require_normalized(f)
    N = f.order
    # f' is only known to order N - 1; the padded top term never reaches the
    # result because the residual has no terms below degree 2.
    fprime = TruncatedSeries.from_coeffs(f.derivative().coeffs, N)
    g = TruncatedSeries.variable(N)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        ft = f.truncate(prec)
        gt = g.truncate(prec)
        resid = compose(ft, gt) - TruncatedSeries.variable(prec)
        dfg = compose(fprime.truncate(prec), gt)
        step = mul(resid, reciprocal(dfg))
        g = TruncatedSeries.from_coeffs((gt - step).coeffs, N)
    c = np.array(g.coeffs)
    c[0], c[1] = 0, 1
    return NormalizedSeries.from_coeffs(c, N)


def derivative_z_fprime_over_f(f: TruncatedSeries) -> TruncatedSeries:
    """``z f'(z) / f(z) = f'(z) / (f(z)/z)`` as a series of order N - 1."""
    _require_normalized(f)
    return mul(f.derivative(), reciprocal(f.div_z()))


def rotate(f: TruncatedSeries, theta: float) -> TruncatedSeries:
    """Rotation ``e^{-i theta} f(e^{i theta} z)``: ``a_n -> e^{i(n-1)theta} a_n``."""
    n = np.arange(f.order + 1)
    out = TruncatedSeries(_as_coeff_array(f.coeffs * np.exp(1j * (n - 1) * theta)))
    if f.is_normalized:
        c = np.array(out.coeffs)
        c[1] = 1
        return NormalizedSeries.from_coeffs(c, f.order)
    return out
