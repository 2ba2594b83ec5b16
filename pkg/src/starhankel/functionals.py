"""Coefficient functionals of normalized functions and their sharp bounds.

Each Hankel-type functional has a closed form in ``a2..a5`` and, where the
definition goes through another series (log coefficients, inverse
coefficients), a second route that builds that series explicitly.  The two
routes are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .genclass import CaratheodoryPrefix, CoeffPrefix
from .series import TruncatedSeries, log_over_z, revert

# Sharp upper bounds on the moduli over S_u*.
BOUNDS = {
    "H21": Fraction(1, 2),
    "H22": Fraction(1, 4),
    "H31": Fraction(1, 9),
    "LOG_H21": Fraction(1, 16),
    "INV_H22": Fraction(5, 12),
}
FUNCTIONAL_IDS = tuple(BOUNDS)


@dataclass(frozen=True)
class FunctionalValue:
    id: str
    value: complex
    source: str = "explicit series"

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @property
    def bound(self) -> Fraction | None:
        return BOUNDS.get(self.id)


def hankel21(c: CoeffPrefix) -> complex:
    return c.a3 - c.a2**2


def hankel22(c: CoeffPrefix) -> complex:
    return c.a2 * c.a4 - c.a3**2


def hankel31(c: CoeffPrefix) -> complex:
    a2, a3, a4, a5 = c.as_tuple()
    return (a3 * a5 - a4**2) - a2 * (a2 * a5 - a3 * a4) + a3 * (a2 * a4 - a3**2)


def log_hankel21_closed(c: CoeffPrefix) -> complex:
    """``gamma1 gamma3 - gamma2^2`` written in ``a_n``."""
    return (c.a2 * c.a4 - c.a3**2 + c.a2**4 / 12) / 4


def inverse_hankel22_closed(c: CoeffPrefix) -> complex:
    """``A2 A4 - A3^2`` written in ``a_n``."""
    a2, a3, a4, _ = c.as_tuple()
    return a2 * a4 - a2**2 * a3 + a2**4 - a3**2


def log_coefficients(f: TruncatedSeries) -> list[complex]:
    """``[gamma_1, .., gamma_{N-1}]`` with ``log(f/z) = 2 sum gamma_n z^n``."""
    F = log_over_z(f)
    return [F[k] / 2 for k in range(1, F.order + 1)]


def log_hankel21(f: TruncatedSeries) -> complex:
    if f.order < 4:
        raise ValueError("log_hankel21 needs f to order 4")
    g1, g2, g3 = log_coefficients(f.truncate(4))[:3]
    return g1 * g3 - g2**2


def inverse_hankel22(f: TruncatedSeries) -> complex:
    if f.order < 4:
        raise ValueError("inverse_hankel22 needs f to order 4")
    g = revert(f.truncate(4))
    A2, A3, A4 = g[2], g[3], g[4]
    return A2 * A4 - A3**2


def successive_diff(f: TruncatedSeries, n: int) -> float:
    """``|a_{n+1}| - |a_n|``."""
    if n < 2:
        raise ValueError("successive differences start at n = 2")
    if f.order < n + 1:
        raise ValueError(f"need f to order {n + 1} for n = {n}")
    return abs(f[n + 1]) - abs(f[n])


def successive_diff_bounds(n: int) -> tuple[float, float]:
    """Range ``[-1/(n-1), 1/n]`` of ``|a_{n+1}| - |a_n|``.

    The upper end is attained for every n; the lower end for n >= 3 (at n = 2
    the infimum is -1/sqrt(2)).
    """
    return -1 / (n - 1), 1 / n


def h31_from_p(p1, p2, p3, p4):
    """``H_{3,1}`` as a polynomial in ``p1..p4`` (weighted-homogeneous of degree 6).

    Accepts scalars or numpy arrays.
    """
    return (
        p4 / 32 * (p2 - p1**2)
        - 3 * p2**3 / 128
        + 13 * p1 * p2 * p3 / 288
        - p1**2 * p2**2 / 576
        - p3**2 / 36
        + p1**3 * p3 / 96
        - p1**4 * p2 / 384
    )


def assemble_h31_from_p(p: CaratheodoryPrefix) -> complex:
    return h31_from_p(*p.as_tuple())


def hankel_values_from_a(a2, a3, a4, a5) -> dict:
    """All five closed-form functionals; accepts scalars or numpy arrays."""
    return {
        "H21": a3 - a2**2,
        "H22": a2 * a4 - a3**2,
        "H31": (a3 * a5 - a4**2) - a2 * (a2 * a5 - a3 * a4) + a3 * (a2 * a4 - a3**2),
        "LOG_H21": (a2 * a4 - a3**2 + a2**4 / 12) / 4,
        "INV_H22": a2 * a4 - a2**2 * a3 + a2**4 - a3**2,
    }


def evaluate_all(f: TruncatedSeries, source: str = "explicit series") -> list[FunctionalValue]:
    """Every functional of a normalized series of order >= 5.

    The log and inverse Hankel values go through the series route.
    """
    c = CoeffPrefix.from_series(f)
    return [
        FunctionalValue("H21", hankel21(c), source),
        FunctionalValue("H22", hankel22(c), source),
        FunctionalValue("H31", hankel31(c), source),
        FunctionalValue("LOG_H21", log_hankel21(f), source),
        FunctionalValue("INV_H22", inverse_hankel22(f), source),
    ]
