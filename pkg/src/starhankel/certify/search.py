"""Multi-start Nelder-Mead maximization of functional moduli over Schur parameters."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ..functionals import FUNCTIONAL_IDS
from ..genclass import SchurPoint

# Parameters: z1 in [0, 1] (rotation fixes its argument), then
# (|z_k|, arg z_k) for k = 2, 3, 4; absent trailing pairs mean z_k = 0.
_BOUNDS = [(0.0, 1.0), (0.0, 1.0), (None, None), (0.0, 1.0), (None, None), (0.0, 1.0), (None, None)]
_COARSE = {"xatol": 1e-5, "fatol": 1e-8, "maxiter": 4000, "maxfev": 8000, "adaptive": True}
_POLISH = {"xatol": 1e-11, "fatol": 1e-15, "maxiter": 8000, "maxfev": 16000, "adaptive": True}
POLISH_TOP = 8
# number of leading parameters each functional depends on
_ACTIVE = {"H21": 3, "H22": 5, "LOG_H21": 5, "INV_H22": 5, "H31": 7}


@dataclass(frozen=True)
class SearchResult:
    functional: str
    best_modulus: float
    argmax: SchurPoint
    starts: int
    converged_fraction: float
    seed: int = 0


def _schur(v):
    # plain floats: numpy scalars make the complex arithmetic below several times slower
    v = v.tolist() if isinstance(v, np.ndarray) else list(v)
    x = min(max(v[0], 0.0), 1.0)
    zs = [complex(x, 0.0)]
    for k in range(3):
        if len(v) < 3 + 2 * k:
            zs.append(0j)
            continue
        r = min(max(v[1 + 2 * k], 0.0), 1.0)
        zs.append(r * complex(math.cos(v[2 + 2 * k]), math.sin(v[2 + 2 * k])))
    return zs


def _modulus(functional: str, v) -> float:
    z1, z2, z3, z4 = _schur(v)
    c1 = z1.conjugate()
    c2 = z2.conjugate()
    s1 = 1 - (z1 * c1).real
    s2 = 1 - (z2 * c2).real
    s3 = 1 - (z3 * z3.conjugate()).real
    p1 = 2 * z1
    p2 = 2 * z1 * z1 + 2 * s1 * z2
    p3 = 2 * z1**3 + 2 * s1 * z2 * (2 * z1 - c1 * z2) + 2 * s1 * s2 * z3
    a2 = p1 / 2
    a3 = p2 / 4
    a4 = p3 / 6 - p1 * p2 / 24
    if functional == "H21":
        return abs(a3 - a2 * a2)
    if functional == "H22":
        return abs(a2 * a4 - a3 * a3)
    if functional == "LOG_H21":
        return abs((a2 * a4 - a3 * a3 + a2**4 / 12) / 4)
    if functional == "INV_H22":
        return abs(a2 * a4 - a2 * a2 * a3 + a2**4 - a3 * a3)
    p4 = (
        2 * z1**4
        + 2 * s1 * z2 * (c1 * c1 * z2 * z2 - 3 * z1 * c1 * z2 + 3 * z1 * z1 + z2)
        + 4 * s1 * s2 * (z1 - c1 * z2) * z3
        - 2 * s1 * s2 * c2 * z3 * z3
        + 2 * s1 * s2 * s3 * z4
    )
    a5 = (p4 - p2 * p2 / 4 - p1 * p3 / 3 + p1 * p1 * p2 / 12) / 8
    return abs((a3 * a5 - a4 * a4) - a2 * (a2 * a5 - a3 * a4) + a3 * (a2 * a4 - a3 * a3))


def _start_point(seed: int, index: int, active: int) -> np.ndarray:
    rng = np.random.default_rng([seed, index])
    v = np.empty(7)
    v[0] = rng.random()
    for k in range(3):
        v[1 + 2 * k] = math.sqrt(rng.random())
        v[2 + 2 * k] = 2 * math.pi * rng.random()
    return v[:active]


def _local(functional: str, v0, options) -> tuple[float, list[float], bool]:
    active = len(v0)
    res = minimize(lambda v: -_modulus(functional, v), v0, method="Nelder-Mead",
                   bounds=_BOUNDS[:active], options=options)
    x = np.asarray(res.x, dtype=float)
    return _modulus(functional, x), x.tolist(), bool(res.success)


def _run_start(args) -> tuple[float, list[float], bool]:
    functional, seed, index = args
    return _local(functional, _start_point(seed, index, _ACTIVE[functional]), _COARSE)


def _run_polish(args) -> tuple[float, list[float], bool]:
    functional, x = args
    return _local(functional, np.asarray(x), _POLISH)


def sharpness_search(functional: str, starts: int = 200, seed: int = 0, workers: int = 1) -> SearchResult:
    """Largest modulus of ``functional`` found from ``starts`` seeded local searches.

    Every start runs a coarse simplex search; the best ``POLISH_TOP`` end
    points (ranked by value, then start index) are restarted with tight
    tolerances.  Start ``i`` draws from its own generator seeded by
    ``(seed, i)``, so the result does not depend on ``workers``.
    """
    if functional not in FUNCTIONAL_IDS:
        raise ValueError(f"unknown functional {functional!r}; expected one of {FUNCTIONAL_IDS}")
    if starts < 1:
        raise ValueError("need at least one start")
    jobs = [(functional, seed, i) for i in range(starts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_start, jobs, chunksize=max(1, starts // (4 * workers))))
            ranked = sorted(range(starts), key=lambda i: (-results[i][0], i))[:POLISH_TOP]
            polished = list(pool.map(_run_polish, [(functional, results[i][1]) for i in ranked]))
    else:
        results = [_run_start(j) for j in jobs]
        ranked = sorted(range(starts), key=lambda i: (-results[i][0], i))[:POLISH_TOP]
        polished = [_run_polish((functional, results[i][1])) for i in ranked]
    candidates = [results[i] for i in ranked] + polished
    value, x, _ = max(candidates, key=lambda r: r[0])
    argmax = SchurPoint(*_schur(x))
    return SearchResult(
        functional=functional,
        best_modulus=_modulus(functional, x),
        argmax=argmax,
        starts=starts,
        converged_fraction=sum(r[2] for r in results) / starts,
        seed=seed,
    )
