"""Interval branch-and-bound maximization of box polynomials."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .interval import Encloser, down, fraction_interval, up
from .polynomial import BoxPolynomial

DEPTH_CAP = 60
MAX_BOXES = 2_000_000
BATCH = 512


@dataclass(frozen=True)
class BoxCertificate:
    """Machine-checked claim: max over the box <= certified_upper, and
    ``attained_lower`` is the exact value at ``witness``."""

    objective: str
    certified_upper: float
    attained_lower: float
    witness: tuple[float, ...]
    boxes_processed: int
    max_depth: int
    epsilon: float
    status: str = "certified"
    attained_exact: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status == "certified"

    @property
    def gap(self) -> float:
        return self.certified_upper - self.attained_lower

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        d["attained_exact"] = None if self.attained_exact is None else str(self.attained_exact)
        return d


def _initial_box(poly: BoxPolynomial) -> tuple[np.ndarray, np.ndarray]:
    lo = np.array([fraction_interval(a)[0] for a, _ in poly.box])
    hi = np.array([fraction_interval(b)[1] for _, b in poly.box])
    return lo, hi


def _inside(poly: BoxPolynomial, point) -> bool:
    return all(a <= Fraction(v) <= b for v, (a, b) in zip(point, poly.box))


def certify_max(
    poly: BoxPolynomial,
    epsilon: float,
    *,
    depth_cap: int = DEPTH_CAP,
    max_boxes: int = MAX_BOXES,
    batch: int = BATCH,
    objective: str | None = None,
) -> BoxCertificate:
    """Certified upper bound of ``poly`` over its box.

    Best-first subdivision on the interval upper bound, bisecting the widest
    side.  A box whose gradient enclosure has a fixed sign in some coordinate
    is collapsed onto the face where the maximum must lie.  Boxes whose
    upper bound is within ``epsilon`` of the best exact value found are
    retired; the certificate's upper bound is the largest bound among
    retired and unfinished boxes.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    name = objective or poly.name or "polynomial"
    enc = Encloser(poly)
    d = poly.dims

    best_exact = None
    best_point: tuple[float, ...] = ()

    def consider(points: np.ndarray) -> None:
        nonlocal best_exact, best_point
        if len(points) == 0:
            return
        vals = poly.evaluate(points)
        i = int(np.argmax(vals))
        if best_exact is not None and vals[i] <= float(best_exact):
            return
        pt = tuple(float(v) for v in points[i])
        if not _inside(poly, pt):
            return
        val = poly.exact(*pt)
        if best_exact is None or val > best_exact:
            best_exact, best_point = val, pt

    lo0, hi0 = _initial_box(poly)
    corners = np.array(list(itertools.product(*[(float(a), float(b)) for a, b in poly.box])))
    consider(np.vstack([corners, 0.5 * (lo0 + hi0)[None, :]]))

    def evaluate(lo: np.ndarray, hi: np.ndarray, parent_upper: np.ndarray):
        grad = enc.gradient(lo, hi)
        lo = lo.copy()
        hi = hi.copy()
        for i, (glo, ghi) in enumerate(grad):
            inc = glo > 0
            dec = ghi < 0
            lo[inc, i] = hi[inc, i]
            hi[dec, i] = lo[dec, i]
        _, upper = enc.bounds(lo, hi, grad)
        upper = np.minimum(upper, parent_upper)
        consider(0.5 * (lo + hi))
        return lo, hi, upper

    counter = itertools.count()
    lo, hi, upper = evaluate(lo0[None, :], hi0[None, :], np.array([np.inf]))
    heap = [(-float(upper[0]), next(counter), tuple(lo[0]), tuple(hi[0]), 0)]
    processed = 1
    max_depth = 0
    retired_upper = -np.inf
    stuck_upper = -np.inf
    status = "certified"

    while heap:
        threshold = float(best_exact) + epsilon
        if -heap[0][0] <= threshold:
            break
        if processed >= max_boxes:
            status = "budget_exhausted"
            break
        chunk = []
        while heap and len(chunk) < batch and -heap[0][0] > threshold:
            chunk.append(heapq.heappop(heap))
        los, his, parents, depths = [], [], [], []
        for neg_u, _, blo, bhi, depth in chunk:
            blo = np.array(blo)
            bhi = np.array(bhi)
            widths = bhi - blo
            k = int(np.argmax(widths))
            if depth >= depth_cap or widths[k] <= 0:
                stuck_upper = max(stuck_upper, -neg_u)
                status = "depth_exhausted"
                continue
            mid = 0.5 * (blo[k] + bhi[k])
            left_hi = bhi.copy()
            left_hi[k] = mid
            right_lo = blo.copy()
            right_lo[k] = mid
            los += [blo, right_lo]
            his += [left_hi, bhi]
            parents += [-neg_u, -neg_u]
            depths += [depth + 1, depth + 1]
        if not los:
            continue
        clo, chi, cup = evaluate(np.array(los), np.array(his), np.array(parents))
        processed += len(los)
        max_depth = max(max_depth, max(depths))
        threshold = float(best_exact) + epsilon
        for j in range(len(los)):
            u = float(cup[j])
            if u <= threshold:
                retired_upper = max(retired_upper, u)
            else:
                heapq.heappush(heap, (-u, next(counter), tuple(clo[j]), tuple(chi[j]), depths[j]))

    open_upper = -heap[0][0] if heap else -np.inf
    certified_upper = max(retired_upper, open_upper, stuck_upper)
    lower_lo, lower_hi = fraction_interval(best_exact)
    certified_upper = max(certified_upper, lower_hi)
    if status == "certified" and certified_upper - lower_lo > epsilon:
        status = "gap_exceeds_epsilon"
    return BoxCertificate(
        objective=name,
        certified_upper=float(certified_upper),
        attained_lower=float(lower_lo),
        witness=best_point,
        boxes_processed=processed,
        max_depth=max_depth,
        epsilon=float(epsilon),
        status=status,
        attained_exact=best_exact,
    )
