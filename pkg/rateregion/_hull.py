"""Convex-hull helpers for rate regions.

Two-dimensional work only needs the upper-right (Pareto) chain of the hull,
built with a monotone-chain scan.  The three-dimensional hull used for
visualisation export is delegated to ``scipy.spatial.ConvexHull``.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError

logger = logging.getLogger(__name__)

# Rows of the sorted cloud compared at once by the n-dimensional Pareto filter.
_PARETO_BLOCK = 512


def decimals_for_tolerance(tol: float) -> int:
    """Rounding precision matching an absolute rate tolerance (``1e-9 -> 9``)."""
    if not (math.isfinite(tol) and tol > 0):
        msg = f"tolerance must be positive and finite, got {tol}"
        raise ValueError(msg)
    return min(15, max(0, round(-math.log10(tol))))


def _cross(o: tuple[float, float], a: tuple[float, float], b: tuple[float, float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def upper_chain(points: np.ndarray, decimals: int = 9) -> np.ndarray:
    """Indices of the upper concave chain of a 2-D point set.

    The chain runs from the leftmost point with the largest ordinate to the
    rightmost point with the smallest ordinate, turning clockwise at every
    vertex.  Coordinates are rounded to *decimals* before the orientation
    test, so collinear and duplicate samples never become vertices.

    Returns indices into *points*, ordered by increasing abscissa.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        msg = f"expected an (m, 2) array, got shape {pts.shape}"
        raise ValueError(msg)
    if len(pts) == 0:
        return np.empty(0, dtype=int)

    rounded = np.round(pts, decimals=decimals)
    # Sort by x ascending, ties by y descending.
    order = np.lexsort((-rounded[:, 1], rounded[:, 0]))

    chain: list[int] = []
    for idx in order:
        p = (rounded[idx, 0], rounded[idx, 1])
        if chain:
            last = (rounded[chain[-1], 0], rounded[chain[-1], 1])
            if p == last:
                continue
        while len(chain) > 1:
            o = (rounded[chain[-2], 0], rounded[chain[-2], 1])
            a = (rounded[chain[-1], 0], rounded[chain[-1], 1])
            if _cross(o=o, a=a, b=p) >= 0.0:
                chain.pop()
            else:
                break
        chain.append(int(idx))

    return np.asarray(chain, dtype=int)


def envelope_at(vertices: np.ndarray, x: np.ndarray | float) -> np.ndarray:
    """Height of a piecewise-linear upper chain at abscissae *x*.

    *vertices* is an ``(m, 2)`` array ordered by increasing x.  Beyond the
    last vertex the envelope is ``-inf``; before the first it takes the first
    vertex height (the chain starts on the vertical axis).
    """
    v = np.asarray(vertices, dtype=float)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.full(xs.shape, -np.inf)
    if len(v) == 0:
        return out

    inside = xs <= v[-1, 0]
    # Duplicate abscissae (vertical drops) keep the upper value.
    keep = np.concatenate(([True], np.diff(v[:, 0]) > 0))
    vx, vy = v[keep, 0], v[keep, 1]
    if len(vx) == 1:
        out[inside] = vy[0]
    else:
        out[inside] = np.interp(xs[inside], vx, vy)
    return out


def hull_3d(points: np.ndarray) -> np.ndarray:
    """Indices of the vertices of the 3-D convex hull of *points*.

    Degenerate (flat or tiny) clouds return all point indices.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        msg = f"expected an (m, 3) array, got shape {pts.shape}"
        raise ValueError(msg)
    if len(pts) < 4:
        return np.arange(len(pts))
    try:
        hull = ConvexHull(pts)
    except QhullError:
        logger.debug("qhull rejected a degenerate cloud of %d points", len(pts))
        return np.arange(len(pts))
    return np.sort(hull.vertices)


def pareto_mask(rates: np.ndarray, powers: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the Pareto-maximal rows of *rates*.

    A row is dropped when another row is ``>=`` in every coordinate and ``>``
    in at least one.  Identical rate rows keep only the one whose *powers*
    row is lexicographically smallest (the first one when *powers* is None).
    """
    r = np.asarray(rates, dtype=float)
    if r.ndim != 2:
        msg = f"expected an (m, n) array, got shape {r.shape}"
        raise ValueError(msg)
    m, n = r.shape
    mask = np.zeros(m, dtype=bool)
    if m == 0:
        return mask

    # Rates lexicographically descending, ties by powers ascending.  In that
    # order no row can be dominated by a later one.
    keys: list[np.ndarray] = [np.arange(m)]
    if powers is not None:
        p = np.asarray(powers, dtype=float)
        keys.extend(p[:, k] for k in reversed(range(p.shape[1])))
    keys.extend(-r[:, k] for k in reversed(range(n)))
    order = np.lexsort(keys)

    if n == 2:
        best = -np.inf
        for idx in order:
            if r[idx, 1] > best:
                mask[idx] = True
                best = r[idx, 1]
        return mask

    # A row is dropped when an earlier row is >= in every coordinate.  Any
    # such row is either kept or dominated by a kept row, so each block is
    # compared with the kept rows and with its own earlier rows only.
    ordered = r[order]
    kept = np.empty((0, n))
    for start in range(0, m, _PARETO_BLOCK):
        block = ordered[start : start + _PARETO_BLOCK]
        dominated = np.zeros(len(block), dtype=bool)
        if len(kept):
            dominated |= np.any(np.all(kept[np.newaxis, :, :] >= block[:, np.newaxis, :], axis=2), axis=1)
        # ge[i, j]: block row j is >= block row i everywhere.
        ge = np.all(block[np.newaxis, :, :] >= block[:, np.newaxis, :], axis=2)
        dominated |= np.any(np.tril(ge, k=-1), axis=1)
        survivors = ~dominated
        mask[order[start : start + _PARETO_BLOCK][survivors]] = True
        kept = np.vstack((kept, block[survivors]))
    return mask
