"""Exact-coefficient multivariate polynomials attached to a coordinate box."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]
Box = tuple[tuple[Fraction, Fraction], ...]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)  # exact binary value
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot convert {v!r} to an exact rational")


def unit_box(dims: int) -> Box:
    return tuple((Fraction(0), Fraction(1)) for _ in range(dims))


@dataclass(frozen=True, eq=False)
class BoxPolynomial:
    dims: int
    coefficients: Mapping[Exponent, Fraction]
    box: Box = field(default=None)
    name: str = ""

    def __post_init__(self):
        if self.dims < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for e, c in self.coefficients.items():
            e = tuple(int(k) for k in e)
            if len(e) != self.dims or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e} for {self.dims} variables")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        clean = {e: c for e, c in sorted(clean.items()) if c}
        object.__setattr__(self, "coefficients", clean)
        box = unit_box(self.dims) if self.box is None else tuple((_frac(a), _frac(b)) for a, b in self.box)
        if len(box) != self.dims or any(a > b for a, b in box):
            raise ValueError("box must give one closed interval per variable")
        object.__setattr__(self, "box", box)

    # -- construction ------------------------------------------------------

    @classmethod
    def variables(cls, dims: int) -> tuple["BoxPolynomial", ...]:
        return tuple(
            cls(dims, {tuple(int(j == i) for j in range(dims)): 1}) for i in range(dims)
        )

    @classmethod
    def constant(cls, value, dims: int) -> "BoxPolynomial":
        return cls(dims, {(0,) * dims: value})

    def with_box(self, box: Sequence[tuple], name: str | None = None) -> "BoxPolynomial":
        return BoxPolynomial(self.dims, self.coefficients, tuple(box), self.name if name is None else name)

    def named(self, name: str) -> "BoxPolynomial":
        return BoxPolynomial(self.dims, self.coefficients, self.box, name)

    # -- algebra -----------------------------------------------------------

    def _coerce(self, other) -> "BoxPolynomial":
        if isinstance(other, BoxPolynomial):
            if other.dims != self.dims:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        return BoxPolynomial.constant(other, self.dims)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out.get(e, 0) + c
        return BoxPolynomial(self.dims, out, self.box)

    __radd__ = __add__

    def __neg__(self):
        return BoxPolynomial(self.dims, {e: -c for e, c in self.coefficients.items()}, self.box)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return BoxPolynomial(self.dims, out, self.box)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / _frac(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = BoxPolynomial.constant(1, self.dims).with_box(self.box)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BoxPolynomial):
            return NotImplemented
        return self.dims == other.dims and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.dims, tuple(self.coefficients.items())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<BoxPolynomial{label}: {self.dims} vars, {len(self.coefficients)} terms, degree {self.degree}>"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.coefficients), default=0)

    def degrees(self) -> tuple[int, ...]:
        return tuple(max((e[i] for e in self.coefficients), default=0) for i in range(self.dims))

    def is_zero(self) -> bool:
        return not self.coefficients

    def derivative(self, i: int) -> "BoxPolynomial":
        out = {}
        for e, c in self.coefficients.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return BoxPolynomial(self.dims, out, self.box)

    def gradient(self) -> tuple["BoxPolynomial", ...]:
        return tuple(self.derivative(i) for i in range(self.dims))

    def substitute(self, i: int, value) -> "BoxPolynomial":
        """Fix variable ``i`` at ``value``; the result has one variable fewer."""
        if self.dims == 1:
            raise ValueError("cannot eliminate the only variable")
        v = _frac(value)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.coefficients.items():
            e2 = e[:i] + e[i + 1 :]
            out[e2] = out.get(e2, 0) + c * v ** e[i]
        box = self.box[:i] + self.box[i + 1 :]
        return BoxPolynomial(self.dims - 1, out, box)

    # -- evaluation ----------------------------------------------------------

    def exact(self, *point) -> Fraction:
        """Exact value at a point; floats are read as their exact binary value."""
        if len(point) != self.dims:
            raise ValueError(f"expected {self.dims} coordinates")
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self.coefficients.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v**k
            total += term
        return total

    def __call__(self, *point):
        if all(isinstance(v, (int, Fraction)) for v in point):
            return self.exact(*point)
        return self.evaluate(np.asarray(point, dtype=float)[None, :])[0]

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Float evaluation at an array of points of shape (B, dims)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        exps, coeffs = self.float_arrays()
        if len(coeffs) == 0:
            return np.zeros(len(points))
        mono = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
        return mono @ coeffs

    def float_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        exps = np.array(list(self.coefficients), dtype=int).reshape(-1, self.dims)
        coeffs = np.array([float(c) for c in self.coefficients.values()])
        return exps, coeffs
