"""Exact integer matrix algebra.

Matrices at this layer are tuples of tuples of Python ints, so nothing can
overflow. The batched helpers at the bottom work on int64 stacks and check
their magnitudes before multiplying.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

IntMatrix = tuple[tuple[int, ...], ...]

# r * INT64_SAFE**2 stays below 2**63 for any rank we handle
INT64_SAFE = 2**26


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    out = []
    for row in rows:
        vals = []
        for v in row:
            if isinstance(v, (bool, np.bool_)) or not float(v).is_integer():
                raise TypeError(f"matrix entry {v!r} is not an integer")
            vals.append(int(v))
        out.append(tuple(vals))
    widths = {len(row) for row in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def det(a: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, exactly."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    inv = []
    for row in m:
        tail = row[n:]
        if any(v.denominator != 1 for v in tail):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(v) for v in tail))
    return tuple(inv)


def rank(a: IntMatrix) -> int:
    return sum(1 for d in smith_normal_form(a).diagonal if d != 0)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    The diagonal is nonnegative and each entry divides the next.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    a = as_int_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        U=tuple(map(tuple, u)), D=tuple(map(tuple, d)), V=tuple(map(tuple, v))
    )


def check_int64(stack: np.ndarray) -> None:
    if stack.size and int(np.abs(stack).max()) > INT64_SAFE:
        raise OverflowError("integer entries exceed the safe int64 range")


def charpoly_batch(stack: np.ndarray) -> np.ndarray:
    """Characteristic polynomials of a stack of integer matrices.

    Faddeev-LeVerrier in exact integer arithmetic: row ``k`` holds
    ``c_0 = 1, c_1, ..., c_d`` with ``det(xI - B) = sum_i c_i x^(d-i)``.
    Falls back to Python ints if the int64 guard trips.
    """
    stack = np.asarray(stack, dtype=np.int64)
    count, dim = stack.shape[0], stack.shape[1]
    out = np.zeros((count, dim + 1), dtype=object)
    out[:, 0] = 1
    if dim == 0:
        return out
    try:
        check_int64(stack)
        eye = np.eye(dim, dtype=np.int64)
        m = np.broadcast_to(eye, stack.shape).copy()
        for k in range(1, dim + 1):
            am = stack @ m
            check_int64(am)
            tr = np.trace(am, axis1=1, axis2=2)
            if np.any(tr % k):
                raise ArithmeticError("non-integral Faddeev-LeVerrier step")
            c = -tr // k
            out[:, k] = c.astype(object)
            m = am + c[:, None, None] * eye
    except OverflowError:
        stack_o = stack.astype(object)
        eye = np.eye(dim, dtype=object)
        for idx in range(count):
            b = stack_o[idx]
            m = eye.copy()
            for k in range(1, dim + 1):
                am = b.dot(m)
                tr = sum(am[i, i] for i in range(dim))
                c = -tr // k
                out[idx, k] = c
                m = am + c * eye
    return out
