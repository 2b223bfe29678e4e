"""numba twins of ``_np_kernels``; compiled lazily and cached on disk."""
import numpy as np
from numba import njit


@njit(cache=True)
def _ipow(z, k):
    if k < 0:
        z = 1.0 / z
        k = -k
    out = 1.0 + 0.0j
    while k:
        if k & 1:
            out *= z
        z *= z
        k >>= 1
    return out


@njit(cache=True)
def monomial_images(mats, x):
    g_count, r = mats.shape[0], mats.shape[1]
    out = np.empty((g_count, r), dtype=np.complex128)
    for g in range(g_count):
        for i in range(r):
            acc = 1.0 + 0.0j
            for j in range(r):
                e = mats[g, i, j]
                if e != 0:
                    acc *= _ipow(x[j], e)
            out[g, i] = acc
    return out


@njit(cache=True)
def monomial_apply_many(mat, pts):
    n, r = pts.shape
    out = np.empty((n, r), dtype=np.complex128)
    for k in range(n):
        for i in range(r):
            acc = 1.0 + 0.0j
            for j in range(r):
                e = mat[i, j]
                if e != 0:
                    acc *= _ipow(pts[k, j], e)
            out[k, i] = acc
    return out


@njit(cache=True)
def lexmin_row(pts, tol):
    n, r = pts.shape
    cand = np.arange(n)
    m = n
    for j in range(r):
        for part in range(2):
            best = np.inf
            for c in range(m):
                z = pts[cand[c], j]
                v = z.imag if part else z.real
                if v < best:
                    best = v
            kept = 0
            for c in range(m):
                z = pts[cand[c], j]
                v = z.imag if part else z.real
                if v - best <= tol * max(1.0, abs(z)):
                    cand[kept] = cand[c]
                    kept += 1
            m = kept
            if m == 1:
                return cand[0]
    return cand[0]


@njit(cache=True)
def grid_action(mats, n):
    g_count, r = mats.shape[0], mats.shape[1]
    size = 1
    for _ in range(r):
        size *= n
    out = np.empty((g_count, size), dtype=np.int64)
    digits = np.empty(r, dtype=np.int64)
    for p in range(size):
        rem = p
        for i in range(r - 1, -1, -1):
            digits[i] = rem % n
            rem //= n
        for g in range(g_count):
            code = 0
            for i in range(r):
                acc = 0
                for j in range(r):
                    acc += mats[g, i, j] * digits[j]
                code = code * n + acc % n
            out[g, p] = code
    return out


@njit(cache=True)
def pair_orbit_canon(perm, conj, gs, xs):
    size = perm.shape[1]
    k_count = gs.shape[0]
    best = np.empty(k_count, dtype=np.int64)
    for k in range(k_count):
        b = np.iinfo(np.int64).max
        g, x = gs[k], xs[k]
        for a in range(perm.shape[0]):
            code = conj[a, g] * size + perm[a, x]
            if code < b:
                b = code
        best[k] = b
    return best
