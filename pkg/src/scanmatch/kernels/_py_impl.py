"""Pure-numpy implementations of the hot kernels.

This module defines the reference semantics; the compiled backend in
``_native.pyx`` must produce bit-identical outputs (integer arithmetic for
the corner-response tensor, identical floating-point expression order
elsewhere, ties broken by lowest index).
"""
from __future__ import annotations

import math

import numpy as np


def box_sum(values: np.ndarray, window: int) -> np.ndarray:
    """Sum of each window x window neighbourhood (zero padding), int64 exact."""
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    rows, cols = values.shape
    half = window // 2
    padded = np.zeros((rows + window, cols + window), dtype=np.int64)
    padded[half + 1 : half + 1 + rows, half + 1 : half + 1 + cols] = values
    c = padded.cumsum(axis=0).cumsum(axis=1)
    return (
        c[window:, window:]
        - c[:-window, window:]
        - c[window:, :-window]
        + c[:-window, :-window]
    )


def harris_det_trace(img01: np.ndarray, window: int) -> tuple[np.ndarray, np.ndarray]:
    """Structure-tensor determinant and trace per pixel, all-integer.

    img01 is the 0/1 occupancy image. The image is smoothed once with the
    window box weights, differentiated with centered differences, and the
    gradient products are box-summed over the same window. Everything stays
    in int64 so results are exact and orientation-independent.
    """
    img01 = np.ascontiguousarray(img01, dtype=np.int64)
    s = box_sum(img01, window)
    gx = np.zeros_like(s)
    gy = np.zeros_like(s)
    gx[1:-1, :] = s[2:, :] - s[:-2, :]
    gy[:, 1:-1] = s[:, 2:] - s[:, :-2]
    ixx = box_sum(gx * gx, window)
    iyy = box_sum(gy * gy, window)
    ixy = box_sum(gx * gy, window)
    det = ixx * iyy - ixy * ixy
    trace = ixx + iyy
    return det, trace


def raycast_ranges(
    ox: float,
    oy: float,
    dirx: np.ndarray,
    diry: np.ndarray,
    segments: np.ndarray,
    max_range: float,
) -> np.ndarray:
    """Distance along each unit ray to the nearest segment, -1.0 if none.

    segments is (m, 4) float64 rows (x1, y1, x2, y2). Directions must be
    unit vectors so the ray parameter equals the range in mm.
    """
    n = dirx.shape[0]
    out = np.full(n, -1.0)
    if segments.size == 0:
        return out
    px = segments[:, 0]
    py = segments[:, 1]
    sx = segments[:, 2] - px
    sy = segments[:, 3] - py
    wx = px - ox
    wy = py - oy
    for i in range(n):
        denom = dirx[i] * sy - diry[i] * sx
        ok = np.abs(denom) > 1e-12
        safe = np.where(ok, denom, 1.0)
        t = np.where(ok, (wx * sy - wy * sx) / safe, np.inf)
        u = np.where(ok, (wx * diry[i] - wy * dirx[i]) / safe, -1.0)
        hit = ok & (t >= 0.0) & (u >= 0.0) & (u <= 1.0)
        t = np.where(hit, t, np.inf)
        best = t.min()
        out[i] = best if best <= max_range else -1.0
    return out


def support_devsq(
    ref: np.ndarray,
    cur: np.ndarray,
    cos_phi: float,
    sin_phi: float,
    tx: float,
    ty: float,
) -> np.ndarray:
    """Squared deviation per match between predicted and actual current points.

    Each reference point is shifted by (-tx, -ty) and rotated by the
    alignment angle to predict where its current partner should sit.
    """
    rx = ref[:, 0] - tx
    ry = ref[:, 1] - ty
    px = cos_phi * rx - sin_phi * ry
    py = sin_phi * rx + cos_phi * ry
    dx = px - cur[:, 0]
    dy = py - cur[:, 1]
    return dx * dx + dy * dy


def nearest_indices(query: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Index of the nearest data point for each query point.

    Uniform hash grid over the data bounding box with ring search outward
    from the query cell. Ties on distance go to the lowest data index.
    """
    n = data.shape[0]
    if n == 0:
        raise ValueError("data must be nonempty")
    minx = data[:, 0].min()
    miny = data[:, 1].min()
    extent = max(data[:, 0].max() - minx, data[:, 1].max() - miny)
    cell = extent / math.ceil(math.sqrt(n)) if extent > 0.0 else 1.0
    if cell <= 0.0:
        cell = 1.0

    buckets: dict[tuple[int, int], list[int]] = {}
    kminx = kminy = 2**62
    kmaxx = kmaxy = -(2**62)
    for idx in range(n):
        kx = int(math.floor((data[idx, 0] - minx) / cell))
        ky = int(math.floor((data[idx, 1] - miny) / cell))
        buckets.setdefault((kx, ky), []).append(idx)
        kminx = min(kminx, kx)
        kmaxx = max(kmaxx, kx)
        kminy = min(kminy, ky)
        kmaxy = max(kmaxy, ky)

    out = np.empty(query.shape[0], dtype=np.int64)
    for qi in range(query.shape[0]):
        qx = query[qi, 0]
        qy = query[qi, 1]
        ckx = int(math.floor((qx - minx) / cell))
        cky = int(math.floor((qy - miny) / cell))
        r_limit = max(ckx - kminx, kmaxx - ckx, cky - kminy, kmaxy - cky)
        best_d2 = math.inf
        best_idx = -1
        r = 0
        while True:
            if r == 0:
                ring = [(ckx, cky)]
            else:
                ring = [(ckx + dx, cky - r) for dx in range(-r, r + 1)]
                ring += [(ckx + dx, cky + r) for dx in range(-r, r + 1)]
                ring += [(ckx - r, cky + dy) for dy in range(-r + 1, r)]
                ring += [(ckx + r, cky + dy) for dy in range(-r + 1, r)]
            for key in ring:
                for idx in buckets.get(key, ()):
                    dx = data[idx, 0] - qx
                    dy = data[idx, 1] - qy
                    d2 = dx * dx + dy * dy
                    if d2 < best_d2 or (d2 == best_d2 and idx < best_idx):
                        best_d2 = d2
                        best_idx = idx
            r += 1
            if best_idx >= 0:
                lower = (r - 1) * cell
                if lower * lower > best_d2:
                    break
            if r > r_limit + 1:
                break
        out[qi] = best_idx
    return out
