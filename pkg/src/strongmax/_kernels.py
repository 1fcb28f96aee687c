"""Hot loops for exact all-rectangles maximal evaluation.

Two interchangeable backends compute the same floating-point expressions in
the same order, so their outputs are bit-identical:

* numba: @njit sweep kernels (default when numba imports cleanly);
* numpy: vectorized sweeps using suffix/prefix max-accumulates.

Set STRONGMAX_NO_NUMBA=1 to force the numpy path. Each kernel takes the
stacked cumulative cell sums P of the m input functions, with
P[i] = prefix-sum array of f_i (shape (N_1+1, ..., N_n+1)), and the volume
exponent e = alpha/n - m; the output cell value is
max over rects R containing the cell of |R|^e * prod_i integral_R f_i.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("STRONGMAX_NO_NUMBA", "").strip() not in ("", "0", "false")

if not _FORCE_NUMPY:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - depends on environment
        _FORCE_NUMPY = True

USING_NUMBA = not _FORCE_NUMPY


# --- numpy backend ----------------------------------------------------------


def _interval_best_numpy(vals: np.ndarray) -> np.ndarray:
    """best[x] = max over a <= x <= b of vals[a, b] (upper triangle valid)."""
    n = vals.shape[0]
    v = np.where(np.triu(np.ones((n, n), dtype=bool)), vals, -np.inf)
    # suffix max over b, then prefix max over a; diagonal picks x = both
    w = np.maximum.accumulate(v[:, ::-1], axis=1)[:, ::-1]
    u = np.maximum.accumulate(w, axis=0)
    return u.diagonal().copy()


def _interval_vals(pc: np.ndarray, span: float, h: float, cellvol: float, e: float) -> np.ndarray:
    """vals[a, b] for all column intervals given cumulative cell sums pc[m, N+1]."""
    n = pc.shape[1] - 1
    a = np.arange(n)
    b = np.arange(n)
    lengths = b[None, :] - a[:, None] + 1.0
    with np.errstate(invalid="ignore", divide="ignore"):
        vol = span * (lengths * h)
        vals = vol**e
        for i in range(pc.shape[0]):
            s = pc[i, b + 1][None, :] - pc[i, a][:, None]
            vals = vals * (s * cellvol)
    return vals


def _sweep_1d_numpy(P: np.ndarray, h: tuple, e: float) -> np.ndarray:
    cellvol = h[0]
    vals = _interval_vals(P, 1.0, h[0], cellvol, e)
    return _interval_best_numpy(vals)


def _sweep_2d_numpy(P: np.ndarray, h: tuple, e: float) -> np.ndarray:
    m, n1p, n2p = P.shape
    n1, n2 = n1p - 1, n2p - 1
    cellvol = h[0] * h[1]
    out = np.zeros((n1, n2))
    for r0 in range(n1):
        for r1 in range(r0, n1):
            colcum = P[:, r1 + 1, :] - P[:, r0, :]
            span = (r1 - r0 + 1) * h[0]
            best = _interval_best_numpy(_interval_vals(colcum, span, h[1], cellvol, e))
            np.maximum(out[r0 : r1 + 1, :], best[None, :], out=out[r0 : r1 + 1, :])
    return out


def _sweep_3d_numpy(P: np.ndarray, h: tuple, e: float) -> np.ndarray:
    m, n1p, n2p, n3p = P.shape
    n1, n2, n3 = n1p - 1, n2p - 1, n3p - 1
    cellvol = h[0] * h[1] * h[2]
    out = np.zeros((n1, n2, n3))
    for r0 in range(n1):
        for r1 in range(r0, n1):
            plane = P[:, r1 + 1, :, :] - P[:, r0, :, :]
            span0 = (r1 - r0 + 1) * h[0]
            for s0 in range(n2):
                for s1 in range(s0, n2):
                    line = plane[:, s1 + 1, :] - plane[:, s0, :]
                    span01 = span0 * ((s1 - s0 + 1) * h[1])
                    best = _interval_best_numpy(
                        _interval_vals(line, span01, h[2], cellvol, e)
                    )
                    np.maximum(
                        out[r0 : r1 + 1, s0 : s1 + 1, :],
                        best[None, None, :],
                        out=out[r0 : r1 + 1, s0 : s1 + 1, :],
                    )
    return out


# --- numba backend ----------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True)
    def _sweep_1d_numba(P, h0, e):
        # out[x] = max over a <= x of (max over b >= x of val(a, b)),
        # computed with a running suffix max per a: O(n^2) total
        m = P.shape[0]
        n = P.shape[1] - 1
        out = np.zeros(n)
        for a in range(n):
            run = 0.0
            for b in range(n - 1, a - 1, -1):
                vol = (b - a + 1.0) * h0
                val = vol**e
                for i in range(m):
                    val *= (P[i, b + 1] - P[i, a]) * h0
                if val > run:
                    run = val
                if run > out[b]:
                    out[b] = run
        return out

    @njit(cache=True)
    def _sweep_2d_numba(P, h0, h1, e):
        m = P.shape[0]
        n1 = P.shape[1] - 1
        n2 = P.shape[2] - 1
        cellvol = h0 * h1
        out = np.zeros((n1, n2))
        colcum = np.empty((m, n2 + 1))
        best = np.empty(n2)
        for r0 in range(n1):
            for r1 in range(r0, n1):
                for i in range(m):
                    for c in range(n2 + 1):
                        colcum[i, c] = P[i, r1 + 1, c] - P[i, r0, c]
                span = (r1 - r0 + 1.0) * h0
                for x in range(n2):
                    best[x] = 0.0
                for a in range(n2):
                    run = 0.0
                    for b in range(n2 - 1, a - 1, -1):
                        vol = span * ((b - a + 1.0) * h1)
                        val = vol**e
                        for i in range(m):
                            val *= (colcum[i, b + 1] - colcum[i, a]) * cellvol
                        if val > run:
                            run = val
                        if run > best[b]:
                            best[b] = run
                for y in range(r0, r1 + 1):
                    for x in range(n2):
                        if best[x] > out[y, x]:
                            out[y, x] = best[x]
        return out

    @njit(cache=True)
    def _sweep_3d_numba(P, h0, h1, h2, e):
        m = P.shape[0]
        n1 = P.shape[1] - 1
        n2 = P.shape[2] - 1
        n3 = P.shape[3] - 1
        cellvol = h0 * h1 * h2
        out = np.zeros((n1, n2, n3))
        line = np.empty((m, n3 + 1))
        best = np.empty(n3)
        for r0 in range(n1):
            for r1 in range(r0, n1):
                span0 = (r1 - r0 + 1.0) * h0
                for s0 in range(n2):
                    for s1 in range(s0, n2):
                        for i in range(m):
                            for c in range(n3 + 1):
                                line[i, c] = (P[i, r1 + 1, s1 + 1, c] - P[i, r0, s1 + 1, c]) - (
                                    P[i, r1 + 1, s0, c] - P[i, r0, s0, c]
                                )
                        span01 = span0 * ((s1 - s0 + 1.0) * h1)
                        for x in range(n3):
                            best[x] = 0.0
                        for a in range(n3):
                            run = 0.0
                            for b in range(n3 - 1, a - 1, -1):
                                vol = span01 * ((b - a + 1.0) * h2)
                                val = vol**e
                                for i in range(m):
                                    val *= (line[i, b + 1] - line[i, a]) * cellvol
                                if val > run:
                                    run = val
                                if run > best[b]:
                                    best[b] = run
                        for y in range(r0, r1 + 1):
                            for z in range(s0, s1 + 1):
                                for x in range(n3):
                                    if best[x] > out[y, z, x]:
                                        out[y, z, x] = best[x]
        return out


def sweep_all_rects(P: np.ndarray, h: tuple[float, ...], e: float) -> np.ndarray:
    """Exact all-rectangles maximal over the stacked prefix sums P.

    P has shape (m, N_1+1, ..., N_n+1); returns an array of shape
    (N_1, ..., N_n).
    """
    n = P.ndim - 1
    if USING_NUMBA:
        if n == 1:
            return _sweep_1d_numba(P, h[0], e)
        if n == 2:
            return _sweep_2d_numba(P, h[0], h[1], e)
        return _sweep_3d_numba(P, h[0], h[1], h[2], e)
    if n == 1:
        return _sweep_1d_numpy(P, h, e)
    if n == 2:
        return _sweep_2d_numpy(P, h, e)
    return _sweep_3d_numpy(P, h, e)
