"""Reduced polynomials of the third Hankel determinant and the scalar bound chains.

With ``z1 = x`` real in [0, 1], ``144 H31 = h1 + h2 z3 + h3 z3^2 + (1 - |z3|^2) h4 z4``.
Bounding each ``|h_i|`` by a polynomial in ``x = z1`` and ``y = |z2|`` gives
``Gamma1..Gamma4`` and the envelope

    Gamma(x, y, u) = Gamma1 + Gamma4 + Gamma2 u + (Gamma3 - Gamma4) u^2,   u = |z3|.

``R = Gamma1 + Gamma2 + Gamma3`` and ``S = Gamma1 + Gamma2 + Gamma4`` are the two
case envelopes (Gamma at u = 1, and the bound used when Gamma3 < Gamma4).
By default Gamma1 carries ``x^4 (1 - x^2) y`` with coefficient 1; the
term-by-term bound of ``h1`` has coefficient 3 there (``exact_h1=True``).
Both variants have maximum 16 on the unit cube.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .polynomial import BoxPolynomial

F = Fraction


def _gammas(x, y, exact_h1: bool):
    one = 1 - x**2
    g1 = (
        x**6
        + (3 if exact_h1 else 1) * x**4 * one * y
        + x**2 * one * (9 - x**2) * y**2
        + 3 * one * (x**4 + 2 * x**2 + 3) * y**3
        + 2 * x**2 * one**2 * y**4
    )
    g2 = 4 * x * one * (1 - y**2) * (2 * x**2 + (6 + 3 * x**2) * y + one * y**2)
    g3 = 2 * one * (1 - y**2) * (9 * x**2 * y + one * (8 + y**2))
    g4 = 18 * one * (1 - y**2) * (x**2 + one * y)
    return g1, g2, g3, g4


def build_gamma_i(exact_h1: bool = False) -> tuple[BoxPolynomial, ...]:
    """``Gamma1..Gamma4`` as polynomials in (x, y) on [0, 1]^2."""
    x, y = BoxPolynomial.variables(2)
    names = ("Gamma1", "Gamma2", "Gamma3", "Gamma4")
    return tuple(g.named(n) for g, n in zip(_gammas(x, y, exact_h1), names))


def build_gamma(exact_h1: bool = False) -> BoxPolynomial:
    x, y, u = BoxPolynomial.variables(3)
    g1, g2, g3, g4 = _gammas(x, y, exact_h1)
    gamma = g1 + g4 + g2 * u + (g3 - g4) * u**2
    return gamma.named("gamma-exact" if exact_h1 else "gamma")


def _R_expanded():
    x, y = BoxPolynomial.variables(2)
    return (
        x**6 - 8 * x**5 + 16 * x**4 + 8 * x**3 - 32 * x**2 + 16
        - (x**6 + 12 * x**5 + 17 * x**4 + 12 * x**3 - 18 * x**2 - 24 * x) * y
        + (x**6 + 12 * x**5 - 24 * x**4 - 16 * x**3 + 37 * x**2 + 4 * x - 14) * y**2
        - (3 * x**6 - 12 * x**5 - 15 * x**4 - 12 * x**3 + 21 * x**2 + 24 * x - 9) * y**3
        + (2 * x**6 - 4 * x**5 - 6 * x**4 + 8 * x**3 + 6 * x**2 - 4 * x - 2) * y**4
    )


def _S_expanded():
    x, y = BoxPolynomial.variables(2)
    return (
        18 * x**2 + 8 * x**3 - 18 * x**4 - 8 * x**5 + x**6
        + (18 + 24 * x - 36 * x**2 - 12 * x**3 + 19 * x**4 - 12 * x**5 - x**6) * y
        + (4 * x - 9 * x**2 - 16 * x**3 + 8 * x**4 + 12 * x**5 + x**6) * y**2
        + (-9 - 24 * x + 33 * x**2 + 12 * x**3 - 21 * x**4 + 12 * x**5 - 3 * x**6) * y**3
        + (-4 * x + 2 * x**2 + 8 * x**3 - 4 * x**4 - 4 * x**5 + 2 * x**6) * y**4
    )


class ExpansionMismatchError(AssertionError):
    pass


def build_R() -> BoxPolynomial:
    """``Gamma1 + Gamma2 + Gamma3`` from its expanded form, checked against the sum."""
    g1, g2, g3, _ = build_gamma_i()
    R = _R_expanded()
    if R != g1 + g2 + g3:
        raise ExpansionMismatchError("expanded R differs from Gamma1 + Gamma2 + Gamma3")
    return R.named("R")


def build_S() -> BoxPolynomial:
    """``Gamma1 + Gamma2 + Gamma4`` from its expanded form, checked against the sum."""
    g1, g2, _, g4 = build_gamma_i()
    S = _S_expanded()
    if S != g1 + g2 + g4:
        raise ExpansionMismatchError("expanded S differs from Gamma1 + Gamma2 + Gamma4")
    return S.named("S")


def gamma34_gap(x, y):
    """``Gamma3(x, y) - Gamma4(x, y)``; exact for rational input."""
    one = 1 - x**2
    return 2 * one * (1 - y**2) * (9 * x**2 * y + one * (8 + y**2)) - 18 * one * (1 - y**2) * (x**2 + one * y)


# -- the z-level decomposition ----------------------------------------------------

def h_decomposition(z1, z2):
    """``(h1, h2, h3, h4)`` for real ``z1`` in [0, 1] and complex ``z2``.

    Works elementwise on numpy arrays.
    """
    x = np.real(z1)
    if np.any(np.abs(np.imag(z1)) > 1e-12) or np.any(x < -1e-12) or np.any(x > 1 + 1e-12):
        raise ValueError("the decomposition is stated for real z1 in [0, 1]")
    one = 1 - x**2
    w = np.conj(z2)
    s2 = 1 - z2 * w
    h1 = (
        -x**6
        + 3 * x**4 * one * z2
        - x**2 * one * (9 - x**2) * z2**2
        - 3 * one * (x**4 + 2 * x**2 + 3) * z2**3
        + 2 * x**2 * one**2 * z2**4
    )
    h2 = 4 * x * one * s2 * (2 * x**2 + (6 + 3 * x**2) * z2 - one * z2**2)
    h3 = 2 * one * s2 * (9 * x**2 * w - one * (8 + z2 * w))
    h4 = 18 * one * s2 * (-x**2 + z2 * one)
    return h1, h2, h3, h4


def h31_from_decomposition(z1, z2, z3, z4):
    h1, h2, h3, h4 = h_decomposition(z1, z2)
    return (h1 + h2 * z3 + h3 * z3**2 + (1 - z3 * np.conj(z3)) * h4 * z4) / 144


def gamma_envelope_value(x, y, u, exact_h1: bool = True):
    """Float value of Gamma(x, y, u); works on arrays."""
    g1, g2, g3, g4 = _gammas(np.asarray(x, float), np.asarray(y, float), exact_h1)
    return g1 + g4 + g2 * u + (g3 - g4) * u**2


def gamma_parts_value(x, y, exact_h1: bool = False):
    return _gammas(np.asarray(x, float), np.asarray(y, float), exact_h1)


# -- one-variable bound chains ------------------------------------------------------

def scalar_chains() -> dict[str, tuple[BoxPolynomial, Fraction]]:
    """The three final one-variable bounds in ``t = z1`` and their targets."""
    (t,) = BoxPolynomial.variables(1)
    return {
        "chain-h22": (((3 - 2 * t**2) / 12).named("chain-h22"), F(1, 4)),
        "chain-log": (((3 + t**2) * (1 - t**2) / 48).named("chain-log"), F(1, 16)),
        "chain-inv": (((3 + 4 * t**2 - 2 * t**4) / 12).named("chain-inv"), F(5, 12)),
    }
