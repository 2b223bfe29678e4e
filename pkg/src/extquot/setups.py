"""Named test setups.

``BUNDLED`` holds groups whose matrices have entries in {-1, 0, 1} and rank
at most 4, so every one of them works with the grid oracle. ``EXTRA`` holds
setups outside that range.
"""
from __future__ import annotations

import itertools

import numpy as np

from .quotient import QuotientSetup, make_setup


def _perm(p):
    n = len(p)
    return [[int(p[i] == j) for j in range(n)] for i in range(n)]


def _adjacent_transpositions(r):
    return [_perm(list(range(i)) + [i + 1, i] + list(range(i + 2, r))) for i in range(r - 1)]


def _sign_flip(r, i=0):
    m = np.eye(r, dtype=int)
    m[i, i] = -1
    return m.tolist()


def _signed_pair_flip(r):
    m = np.eye(r, dtype=int)
    m[0, 0] = m[1, 1] = -1
    return m.tolist()


def _definitions():
    return {
        "trivial_r1": ([[[1]]], 1),
        "trivial_r2": ([[[1, 0], [0, 1]]], 2),
        "inversion_r1": ([[[-1]]], 1),
        "swap_r2": ([[[0, 1], [1, 0]]], 2),
        "g2_klein": ([[[0, 1], [1, 0]], [[0, -1], [-1, 0]]], 2),
        "cyclic3_r2": ([[[0, -1], [1, -1]]], 2),
        "cyclic4_r2": ([[[0, -1], [1, 0]]], 2),
        "cyclic6_r2": ([[[1, -1], [1, 0]]], 2),
        "a2_weyl_r2": ([[[-1, 1], [0, 1]], [[1, 0], [1, -1]]], 2),
        "b2_weyl_r2": ([[[0, -1], [1, 0]], [[0, 1], [1, 0]]], 2),
        "g2_weyl_r2": ([[[1, -1], [1, 0]], [[0, 1], [1, 0]]], 2),
        "neg_identity_r3": ([(-np.eye(3, dtype=int)).tolist()], 3),
        "s3_r3": (_adjacent_transpositions(3), 3),
        "b3_weyl_r3": (_adjacent_transpositions(3) + [_sign_flip(3)], 3),
        "s4_r4": (_adjacent_transpositions(4), 4),
        "d4_weyl_r4": (_adjacent_transpositions(4) + [_signed_pair_flip(4)], 4),
        "b4_weyl_r4": (_adjacent_transpositions(4) + [_sign_flip(4)], 4),
    }


def _extra_definitions():
    return {
        # Weyl group of G2 on its root lattice: entries up to 3
        "g2_weyl_roots": ([[[-1, 0], [3, 1]], [[1, 1], [0, -1]]], 2),
        "s5_r5": (_adjacent_transpositions(5), 5),
    }


def bundled() -> dict[str, QuotientSetup]:
    return {name: make_setup(gens, name, rank=r) for name, (gens, r) in _definitions().items()}


def extra() -> dict[str, QuotientSetup]:
    return {name: make_setup(gens, name, rank=r) for name, (gens, r) in _extra_definitions().items()}


def small() -> dict[str, QuotientSetup]:
    """Bundled setups of rank <= 2 plus the rank-3 ones of order <= 8."""
    return {k: v for k, v in bundled().items()
            if v.rank <= 2 or (v.rank == 3 and v.group.order <= 8)}


def random_pairs(count: int, seed: int) -> list[tuple[QuotientSetup, QuotientSetup]]:
    pool = list(small().values())
    rng = np.random.default_rng(seed)
    pairs = list(itertools.product(range(len(pool)), repeat=2))
    picks = rng.choice(len(pairs), size=count, replace=False)
    return [(pool[pairs[k][0]], pool[pairs[k][1]]) for k in picks]
