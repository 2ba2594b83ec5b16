"""Generators for members of S_u* and for Caratheodory data.

Every ``f`` in the class satisfies ``z f'/f - 1 = (p - 1)/(p + 1)`` for some
``p`` with positive real part and ``p(0) = 1``.  The Taylor prefix
``(p1, .., p4)`` of such ``p`` is parameterized by four points of the closed
unit disk (Schur parameters); ``(a2, .., a5)`` follow from ``(p1, .., p4)``.

The closed forms below keep the conjugates that the Schur recursion
produces, so they are valid for complex ``z1``.  With ``z1`` real they
reduce to the familiar real-``z1`` formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .series import (
    NormalizedSeries,
    TruncatedSeries,
    derivative_z_fprime_over_f,
    exp_series,
    integrate_over_z,
    reciprocal,
    rotate,
)

SCHUR_TOL = 1e-12
CARATHEODORY_TOL = 1e-9
DEGENERATE_TOL = 1e-9


class DomainError(ValueError):
    """Raised when data is not attainable by any member of the class."""

    def __init__(self, message: str, layer: int | None = None):
        super().__init__(message)
        self.layer = layer


@dataclass(frozen=True)
class SchurPoint:
    z1: complex
    z2: complex = 0j
    z3: complex = 0j
    z4: complex = 0j
    # first layer whose parameter is undetermined (previous one on the circle)
    degenerate_at: int | None = field(default=None, compare=False)

    def __post_init__(self):
        for i, z in enumerate(self.as_tuple(), start=1):
            if abs(z) > 1 + SCHUR_TOL:
                raise ValueError(f"z{i} = {z} lies outside the closed unit disk")
        for name in ("z1", "z2", "z3", "z4"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.z1, self.z2, self.z3, self.z4)


@dataclass(frozen=True)
class CaratheodoryPrefix:
    p1: complex
    p2: complex
    p3: complex
    p4: complex

    def __post_init__(self):
        for i, p in enumerate(self.as_tuple(), start=1):
            if abs(p) > 2 + CARATHEODORY_TOL:
                raise ValueError(f"|p{i}| = {abs(p):.6g} exceeds 2")
        for name in ("p1", "p2", "p3", "p4"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.p1, self.p2, self.p3, self.p4)

    @classmethod
    def from_series(cls, p: TruncatedSeries) -> "CaratheodoryPrefix":
        if p.order < 4:
            raise ValueError("need p to order 4")
        return cls(*(p[k] for k in range(1, 5)))

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs([1, *self.as_tuple()], 4)


@dataclass(frozen=True)
class CoeffPrefix:
    a2: complex
    a3: complex
    a4: complex
    a5: complex

    def __post_init__(self):
        for name in ("a2", "a3", "a4", "a5"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.a2, self.a3, self.a4, self.a5)

    @classmethod
    def from_series(cls, f: TruncatedSeries) -> "CoeffPrefix":
        if f.order < 5:
            raise ValueError("need f to order 5")
        return cls(*(f[k] for k in range(2, 6)))

    def within_coefficient_bounds(self, tol: float = 1e-9) -> bool:
        """``|a_n| <= 1/(n-1)`` for n = 2..5."""
        return all(abs(a) <= 1 / (n - 1) + tol for n, a in enumerate(self.as_tuple(), start=2))

    def rotate(self, theta: float) -> "CoeffPrefix":
        return CoeffPrefix(*(a * np.exp(1j * (n - 1) * theta) for n, a in enumerate(self.as_tuple(), start=2)))


@dataclass(frozen=True)
class HerglotzMeasure:
    """Finite atomic probability measure on the circle."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(t) % (2 * math.pi), float(w)) for t, w in self.atoms)
        if not atoms:
            raise ValueError("a Herglotz measure needs at least one atom")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("atom weights must be positive")
        if abs(sum(w for _, w in atoms) - 1) > 1e-12:
            raise ValueError("atom weights must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])


# -- Schur parameters <-> Caratheodory coefficients -------------------------

def p_from_z(z1, z2, z3, z4):
    """Closed-form ``(p1, .., p4)`` from Schur parameters; works on arrays."""
    c1 = np.conj(z1)
    c2 = np.conj(z2)
    s1 = 1 - z1 * c1
    s2 = 1 - z2 * c2
    s3 = 1 - z3 * np.conj(z3)
    p1 = 2 * z1
    p2 = 2 * z1**2 + 2 * s1 * z2
    p3 = 2 * z1**3 + 2 * s1 * z2 * (2 * z1 - c1 * z2) + 2 * s1 * s2 * z3
    p4 = (
        2 * z1**4
        + 2 * s1 * z2 * (c1**2 * z2**2 - 3 * z1 * c1 * z2 + 3 * z1**2 + z2)
        + 4 * s1 * s2 * (z1 - c1 * z2) * z3
        - 2 * s1 * s2 * c2 * z3**2
        + 2 * s1 * s2 * s3 * z4
    )
    return p1, p2, p3, p4


def caratheodory_from_schur(sp: SchurPoint) -> CaratheodoryPrefix:
    return CaratheodoryPrefix(*(complex(p) for p in p_from_z(*sp.as_tuple())))


def schur_from_caratheodory(cp: CaratheodoryPrefix) -> SchurPoint:
    """Invert :func:`caratheodory_from_schur` one layer at a time.

    A parameter on the unit circle fixes all later coefficients; the deeper
    parameters are then reported as 0 and ``degenerate_at`` names the first
    undetermined layer.
    """
    p1, p2, p3, p4 = cp.as_tuple()
    zs = [0j, 0j, 0j, 0j]
    degenerate = None
    for layer in range(1, 5):
        z1, z2, z3, _ = zs
        s1 = 1 - abs(z1) ** 2
        s2 = 1 - abs(z2) ** 2
        s3 = 1 - abs(z3) ** 2
        if layer == 1:
            z = p1 / 2
        elif layer == 2:
            z = (p2 - 2 * z1**2) / (2 * s1)
        elif layer == 3:
            known = 2 * z1**3 + 2 * s1 * z2 * (2 * z1 - z1.conjugate() * z2)
            z = (p3 - known) / (2 * s1 * s2)
        else:
            _, _, _, known = p_from_z(z1, z2, z3, 0j)
            z = (p4 - known) / (2 * s1 * s2 * s3)
        if abs(z) > 1 + DEGENERATE_TOL:
            raise DomainError(f"prefix is not attainable: |z{layer}| = {abs(z):.6g} > 1", layer)
        if abs(z) > 1:
            z = z / abs(z)
        zs[layer - 1] = z
        if abs(abs(z) - 1) <= DEGENERATE_TOL and layer < 4:
            zs[layer - 1] = z / abs(z)
            degenerate = layer + 1
            break
    result = SchurPoint(*zs, degenerate_at=degenerate)
    if degenerate is not None:
        back = p_from_z(*result.as_tuple())
        for k, (want, got) in enumerate(zip(cp.as_tuple(), back), start=1):
            if abs(want - got) > 1e-9:
                raise DomainError(
                    f"prefix is not attainable: p{k} is forced to {complex(got):.6g} once "
                    f"z{degenerate - 1} lies on the circle",
                    degenerate,
                )
    return result


def a_from_p(p1, p2, p3, p4):
    """Taylor coefficients ``a2..a5`` of ``f`` from ``p1..p4``; works on arrays."""
    a2 = p1 / 2
    a3 = p2 / 4
    a4 = p3 / 6 - p1 * p2 / 24
    a5 = (p4 - p2**2 / 4 - p1 * p3 / 3 + p1**2 * p2 / 12) / 8
    return a2, a3, a4, a5


def coeffs_from_caratheodory(cp: CaratheodoryPrefix) -> CoeffPrefix:
    return CoeffPrefix(*a_from_p(*cp.as_tuple()))


def coeffs_from_schur(sp: SchurPoint) -> CoeffPrefix:
    return coeffs_from_caratheodory(caratheodory_from_schur(sp))


# -- series-level generators -------------------------------------------------

def herglotz_series(m: HerglotzMeasure, order: int) -> TruncatedSeries:
    """``p(z) = sum_k w_k (1 + e^{i t_k} z)/(1 - e^{i t_k} z)``."""
    n = np.arange(1, order + 1)
    c = 2 * (m.weights[None, :] * np.exp(1j * np.outer(n, m.thetas))).sum(axis=1)
    return TruncatedSeries.from_coeffs(np.concatenate([[1], c]), order)


def function_from_p(p: TruncatedSeries) -> NormalizedSeries:
    """``f = z exp(int_0^z w(t)/t dt)`` with ``w = (p - 1)/(p + 1)``.

    ``p`` of order N determines ``f`` through order N + 1.
    """
    if p[0] != 1:
        raise ValueError("p must satisfy p(0) = 1")
    w = (p - 1) * reciprocal(p + 1)
    w = TruncatedSeries.from_coeffs(np.concatenate([[0], w.coeffs[1:]]))  # w(0) = 0 exactly
    f = exp_series(integrate_over_z(w)).mul_z()
    return NormalizedSeries(f.coeffs)


def function_from_omega(w: TruncatedSeries) -> NormalizedSeries:
    """``f = z exp(int_0^z w(t)/t dt)`` for a Schur-type ``w`` with ``w(0) = 0``."""
    return NormalizedSeries(exp_series(integrate_over_z(w)).mul_z().coeffs)


def extremal(n: int, order: int) -> NormalizedSeries:
    """``f_n(z) = z exp(z^{n-1}/(n-1))`` truncated at ``order``."""
    if n < 2:
        raise ValueError("extremal functions are indexed by n >= 2")
    if order < 1:
        raise ValueError("order must be at least 1")
    w = TruncatedSeries.monomial(n - 1, 1, order)
    return NormalizedSeries(function_from_omega(w).coeffs[: order + 1])


def function_from_schur(sp: SchurPoint) -> NormalizedSeries:
    """Order-5 prefix of a member whose ``p1..p4`` come from ``sp``."""
    return function_from_p(caratheodory_from_schur(sp).to_series())


# -- membership ---------------------------------------------------------------

DEFAULT_RADII = (0.2, 0.4, 0.6, 0.8, 0.95)
DEFAULT_ANGLES = 720
MEMBERSHIP_TOL = 1e-6


def membership_check(
    f: TruncatedSeries,
    radii: Sequence[float] = DEFAULT_RADII,
    angles_per_radius: int = DEFAULT_ANGLES,
    tol: float = MEMBERSHIP_TOL,
) -> tuple[bool, float]:
    """Sample ``|z f'/f - 1|`` on circles; necessary condition only.

    The polynomial prefix is evaluated directly, so the caller must pick an
    order whose tail is negligible at the largest radius.  Returns the
    verdict and the worst sampled value.
    """
    if not f.is_normalized:
        raise ValueError("membership_check expects a normalized series")
    radii = list(radii)
    if not radii or any(not 0 < r < 1 for r in radii):
        raise ValueError("radii must lie strictly inside (0, 1)")
    if angles_per_radius < 1:
        raise ValueError("need at least one angle per radius")
    theta = 2 * np.pi * np.arange(angles_per_radius) / angles_per_radius
    z = (np.asarray(radii)[:, None] * np.exp(1j * theta)[None, :]).ravel()
    c = f.coeffs
    k = np.arange(len(c))
    fz = np.polyval(c[::-1], z)
    zfp = np.polyval((k * c)[::-1], z)
    worst = float(np.max(np.abs(zfp / fz - 1)))
    return worst <= 1 + tol, worst


# -- random sampling ------------------------------------------------------------

def random_disk(rng: np.random.Generator, size, radius: float = 1.0) -> np.ndarray:
    """Uniform points on the disk of given radius (radius-squared law)."""
    r = radius * np.sqrt(rng.random(size))
    t = 2 * np.pi * rng.random(size)
    return r * np.exp(1j * t)


def random_schur_arrays(rng: np.random.Generator, n: int, radius: float = 1.0, real_z1: bool = False):
    """Four arrays of Schur parameters; ``z1`` in ``[0, radius]`` if ``real_z1``."""
    if real_z1:
        z1 = radius * rng.random(n) + 0j
    else:
        z1 = random_disk(rng, n, radius)
    return (z1, random_disk(rng, n, radius), random_disk(rng, n, radius), random_disk(rng, n, radius))


def random_schur_point(rng: np.random.Generator, radius: float = 1.0) -> SchurPoint:
    return SchurPoint(*(complex(z[0]) for z in random_schur_arrays(rng, 1, radius)))


def random_herglotz(rng: np.random.Generator, max_atoms: int = 6) -> HerglotzMeasure:
    k = int(rng.integers(1, max_atoms + 1))
    thetas = 2 * np.pi * rng.random(k)
    weights = rng.dirichlet(np.ones(k))
    # Dirichlet draws sum to 1 up to rounding; renormalize in place
    weights = weights / weights.sum()
    return HerglotzMeasure(tuple(zip(thetas.tolist(), weights.tolist())))


def random_member(rng: np.random.Generator, order: int, max_atoms: int = 6) -> NormalizedSeries:
    """Member of order ``order`` generated from a random Herglotz measure."""
    p = herglotz_series(random_herglotz(rng, max_atoms), order - 1)
    return function_from_p(p)


def rotate_member(f: TruncatedSeries, theta: float) -> TruncatedSeries:
    return rotate(f, theta)


def omega_of(f: TruncatedSeries) -> TruncatedSeries:
    """``z f'/f - 1`` as a series (order N - 1)."""
    return derivative_z_fprime_over_f(f) - 1
