"""Pure-numpy implementations of the hot kernels.

Every function here has a loop-level twin in ``_jit_kernels`` with the same
signature and the same results; ``kernels`` picks one at import time.
"""
import numpy as np


def monomial_images(mats, x):
    """Images of one torus point under a stack of monomial maps.

    ``out[g, i] = prod_j x[j] ** mats[g, i, j]``.
    """
    x = np.asarray(x, dtype=np.complex128)
    return np.prod(x[None, None, :] ** mats, axis=2)


def monomial_apply_many(mat, pts):
    """Apply a single monomial map to a batch of points, shape (n, r)."""
    pts = np.asarray(pts, dtype=np.complex128)
    return np.prod(pts[:, None, :] ** mat[None, :, :], axis=2)


def lexmin_row(pts, tol):
    """Index of the lexicographically least row, comparing with slack.

    Coordinates are compared real part first, then imaginary part. At each
    step every row within ``tol * max(1, |z|)`` of the running minimum stays
    a candidate; the first surviving row wins.
    """
    pts = np.asarray(pts, dtype=np.complex128)
    cand = np.arange(pts.shape[0])
    for j in range(pts.shape[1]):
        for imag in (False, True):
            col = pts[cand, j]
            part = col.imag if imag else col.real
            keep = part - part.min() <= tol * np.maximum(1.0, np.abs(col))
            cand = cand[keep]
            if cand.size == 1:
                return int(cand[0])
    return int(cand[0])


def grid_action(mats, n):
    """Permutations of the grid ``mu_n^r`` induced by each monomial map.

    Grid points are exponent vectors ``e`` in ``(Z/n)^r``, encoded in base
    ``n`` with coordinate 0 most significant. The map ``M`` sends ``e`` to
    ``M e mod n``.
    """
    mats = np.asarray(mats, dtype=np.int64)
    r = mats.shape[1]
    size = n**r
    weights = n ** np.arange(r - 1, -1, -1, dtype=np.int64)
    digits = (np.arange(size, dtype=np.int64)[:, None] // weights[None, :]) % n
    images = np.einsum("gij,pj->gpi", mats, digits) % n
    return images @ weights


def pair_orbit_canon(perm, conj, gs, xs):
    """Smallest encoded member of the orbit of each pair ``(gs[k], xs[k])``.

    The group acts on pairs by ``a.(g, x) = (a g a^-1, a x)``; ``conj[a, g]``
    is the index of ``a g a^-1`` and ``perm[a, x]`` the image of grid point
    ``x``. Pairs are encoded as ``g * P + x``.
    """
    size = perm.shape[1]
    best = np.full(gs.shape[0], np.iinfo(np.int64).max, dtype=np.int64)
    for a in range(perm.shape[0]):
        code = conj[a, gs] * size + perm[a, xs]
        np.minimum(best, code, out=best)
    return best
