# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _py_impl. Outputs are bit-identical to the pure-python
kernels: integer arithmetic for the corner tensor, same floating-point
expression order elsewhere, distance ties broken by lowest index."""

import math

import numpy as np

cimport numpy as cnp
from libc.math cimport floor, sqrt

cnp.import_array()


def box_sum(values, int window):
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    cdef cnp.ndarray[cnp.int64_t, ndim=2] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t rows = v.shape[0]
    cdef Py_ssize_t cols = v.shape[1]
    cdef Py_ssize_t half = window // 2
    cdef cnp.ndarray[cnp.int64_t, ndim=2] padded = np.zeros(
        (rows + window, cols + window), dtype=np.int64)
    cdef Py_ssize_t r, c
    for r in range(rows):
        for c in range(cols):
            padded[half + 1 + r, half + 1 + c] = v[r, c]
    # in-place 2D prefix sums
    cdef Py_ssize_t prows = rows + window
    cdef Py_ssize_t pcols = cols + window
    for r in range(1, prows):
        for c in range(pcols):
            padded[r, c] += padded[r - 1, c]
    for r in range(prows):
        for c in range(1, pcols):
            padded[r, c] += padded[r, c - 1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((rows, cols), dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            out[r, c] = (padded[r + window, c + window]
                         - padded[r, c + window]
                         - padded[r + window, c]
                         + padded[r, c])
    return out


def harris_det_trace(img01, int window):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] s = box_sum(img01, window)
    cdef Py_ssize_t rows = s.shape[0]
    cdef Py_ssize_t cols = s.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] gx = np.zeros((rows, cols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] gy = np.zeros((rows, cols), dtype=np.int64)
    cdef Py_ssize_t r, c
    for r in range(1, rows - 1):
        for c in range(cols):
            gx[r, c] = s[r + 1, c] - s[r - 1, c]
    for r in range(rows):
        for c in range(1, cols - 1):
            gy[r, c] = s[r, c + 1] - s[r, c - 1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] gxx = np.empty((rows, cols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] gyy = np.empty((rows, cols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] gxy = np.empty((rows, cols), dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            gxx[r, c] = gx[r, c] * gx[r, c]
            gyy[r, c] = gy[r, c] * gy[r, c]
            gxy[r, c] = gx[r, c] * gy[r, c]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ixx = box_sum(gxx, window)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] iyy = box_sum(gyy, window)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] ixy = box_sum(gxy, window)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] det = np.empty((rows, cols), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] trace = np.empty((rows, cols), dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            det[r, c] = ixx[r, c] * iyy[r, c] - ixy[r, c] * ixy[r, c]
            trace[r, c] = ixx[r, c] + iyy[r, c]
    return det, trace


def raycast_ranges(double ox, double oy, dirx, diry, segments, double max_range):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dx = np.ascontiguousarray(dirx, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dy = np.ascontiguousarray(diry, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] seg = np.ascontiguousarray(segments, dtype=np.float64)
    cdef Py_ssize_t n = dx.shape[0]
    cdef Py_ssize_t m = seg.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.full(n, -1.0)
    if m == 0:
        return out
    cdef double px, py, sx, sy, wx, wy, denom, t, u, best
    cdef double inf = float("inf")
    cdef Py_ssize_t i, j
    for i in range(n):
        best = inf
        for j in range(m):
            px = seg[j, 0]
            py = seg[j, 1]
            sx = seg[j, 2] - px
            sy = seg[j, 3] - py
            wx = px - ox
            wy = py - oy
            denom = dx[i] * sy - dy[i] * sx
            if denom > 1e-12 or denom < -1e-12:
                t = (wx * sy - wy * sx) / denom
                u = (wx * dy[i] - wy * dx[i]) / denom
                if t >= 0.0 and u >= 0.0 and u <= 1.0 and t < best:
                    best = t
        if best <= max_range:
            out[i] = best
    return out


def support_devsq(ref, cur, double cos_phi, double sin_phi, double tx, double ty):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(ref, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] b = np.ascontiguousarray(cur, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double rx, ry, px, py, dx, dy
    cdef Py_ssize_t i
    for i in range(n):
        rx = a[i, 0] - tx
        ry = a[i, 1] - ty
        px = cos_phi * rx - sin_phi * ry
        py = sin_phi * rx + cos_phi * ry
        dx = px - b[i, 0]
        dy = py - b[i, 1]
        out[i] = dx * dx + dy * dy
    return out


def nearest_indices(query, data):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] q = np.ascontiguousarray(query, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] d = np.ascontiguousarray(data, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    if n == 0:
        raise ValueError("data must be nonempty")
    cdef double minx = d[0, 0]
    cdef double miny = d[0, 1]
    cdef double maxx = d[0, 0]
    cdef double maxy = d[0, 1]
    cdef Py_ssize_t idx
    for idx in range(1, n):
        if d[idx, 0] < minx:
            minx = d[idx, 0]
        if d[idx, 0] > maxx:
            maxx = d[idx, 0]
        if d[idx, 1] < miny:
            miny = d[idx, 1]
        if d[idx, 1] > maxy:
            maxy = d[idx, 1]
    cdef double ex = maxx - minx
    cdef double ey = maxy - miny
    cdef double extent = ex if ex > ey else ey
    cdef double cell
    if extent > 0.0:
        cell = extent / math.ceil(sqrt(<double> n))
    else:
        cell = 1.0
    if cell <= 0.0:
        cell = 1.0

    buckets = {}
    cdef long kx, ky
    cdef long kminx = 2**62
    cdef long kminy = 2**62
    cdef long kmaxx = -(2**62)
    cdef long kmaxy = -(2**62)
    for idx in range(n):
        kx = <long> floor((d[idx, 0] - minx) / cell)
        ky = <long> floor((d[idx, 1] - miny) / cell)
        key = (kx, ky)
        lst = buckets.get(key)
        if lst is None:
            buckets[key] = [idx]
        else:
            lst.append(idx)
        if kx < kminx:
            kminx = kx
        if kx > kmaxx:
            kmaxx = kx
        if ky < kminy:
            kminy = ky
        if ky > kmaxy:
            kmaxy = ky

    cdef Py_ssize_t nq = q.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(nq, dtype=np.int64)
    cdef double qx, qy, best_d2, ddx, ddy, d2, lower
    cdef long ckx, cky, r_limit, r, cx, cy
    cdef Py_ssize_t best_idx, pt
    cdef double inf = float("inf")
    for qi in range(nq):
        qx = q[qi, 0]
        qy = q[qi, 1]
        ckx = <long> floor((qx - minx) / cell)
        cky = <long> floor((qy - miny) / cell)
        r_limit = max(ckx - kminx, kmaxx - ckx, cky - kminy, kmaxy - cky)
        best_d2 = inf
        best_idx = -1
        r = 0
        while True:
            if r == 0:
                ring = [(ckx, cky)]
            else:
                ring = [(ckx + ddi, cky - r) for ddi in range(-r, r + 1)]
                ring += [(ckx + ddi, cky + r) for ddi in range(-r, r + 1)]
                ring += [(ckx - r, cky + ddj) for ddj in range(-r + 1, r)]
                ring += [(ckx + r, cky + ddj) for ddj in range(-r + 1, r)]
            for key in ring:
                lst = buckets.get(key)
                if lst is None:
                    continue
                for pt in lst:
                    ddx = d[pt, 0] - qx
                    ddy = d[pt, 1] - qy
                    d2 = ddx * ddx + ddy * ddy
                    if d2 < best_d2 or (d2 == best_d2 and pt < best_idx):
                        best_d2 = d2
                        best_idx = pt
            r += 1
            if best_idx >= 0:
                lower = (r - 1) * cell
                if lower * lower > best_d2:
                    break
            if r > r_limit + 1:
                break
        out[qi] = best_idx
    return out
