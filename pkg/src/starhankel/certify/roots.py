"""Critical points of two-variable envelopes: grid sign scan plus damped Newton."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .envelopes import build_R, build_S
from .polynomial import BoxPolynomial

FD_STEP = 1e-7
DEDUP_TOL = 1e-6


@dataclass
class RootSearch:
    roots: list[tuple[float, float]]
    candidates: int = 0
    dropped: list[str] = field(default_factory=list)


def _system(system) -> BoxPolynomial:
    if isinstance(system, BoxPolynomial):
        return system
    if system == "R":
        return build_R()
    if system == "S":
        return build_S()
    raise ValueError(f"unknown system {system!r}; expected 'R', 'S' or a BoxPolynomial")


def _newton(grad, x0, tol, max_iter=100):
    x = np.array(x0, dtype=float)
    g = grad(x)
    for _ in range(max_iter):
        if np.max(np.abs(g)) <= tol:
            return x, True
        J = np.empty((2, 2))
        for j in range(2):
            e = np.zeros(2)
            e[j] = FD_STEP
            J[:, j] = (grad(x + e) - grad(x - e)) / (2 * FD_STEP)
        try:
            step = np.linalg.solve(J, -g)
        except np.linalg.LinAlgError:
            return x, False
        t = 1.0
        norm = np.linalg.norm(g)
        while t > 1e-6:
            trial = x + t * step
            gt = grad(trial)
            if np.linalg.norm(gt) < norm:
                break
            t /= 2
        else:
            return x, False
        x, g = trial, gt
        if np.linalg.norm(x) > 1e6:
            return x, False
    return x, np.max(np.abs(g)) <= tol


def gradient_roots(
    system,
    box=((0.0, 1.0), (0.0, 1.0)),
    grid: int = 64,
    newton_tol: float = 1e-10,
) -> RootSearch:
    """Points strictly inside ``box`` where both partial derivatives vanish.

    Every grid cell in which both partials change sign (or touch zero) seeds
    a damped Newton iteration with a central-difference Jacobian of the
    exact gradient.  Converged roots are deduplicated at 1e-6.
    """
    if grid < 32:
        raise ValueError("grid must be at least 32")
    poly = _system(system)
    if poly.dims != 2:
        raise ValueError("gradient_roots works on two-variable polynomials")
    gx, gy = poly.gradient()

    def grad(p):
        return np.array([gx.evaluate(p[None, :])[0], gy.evaluate(p[None, :])[0]])

    (x0, x1), (y0, y1) = ((float(a), float(b)) for a, b in box)
    xs = np.linspace(x0, x1, grid + 1)
    ys = np.linspace(y0, y1, grid + 1)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    GX = gx.evaluate(pts).reshape(X.shape)
    GY = gy.evaluate(pts).reshape(X.shape)

    def changes(G):
        corners = np.stack([G[:-1, :-1], G[1:, :-1], G[:-1, 1:], G[1:, 1:]])
        return (corners.min(axis=0) <= 0) & (corners.max(axis=0) >= 0)

    cells = np.argwhere(changes(GX) & changes(GY))
    result = RootSearch(roots=[], candidates=len(cells))
    for i, j in cells:
        start = ((xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2)
        r, ok = _newton(grad, start, newton_tol)
        if not ok:
            result.dropped.append(f"no convergence from {start}")
            continue
        if not (x0 < r[0] < x1 and y0 < r[1] < y1):
            continue
        if any(np.hypot(r[0] - a, r[1] - b) < DEDUP_TOL for a, b in result.roots):
            continue
        result.roots.append((float(r[0]), float(r[1])))
    result.roots.sort()
    return result
