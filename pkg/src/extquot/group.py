"""Finite groups of monomial automorphisms of the torus (C^x)^r.

An integer matrix ``M`` acts on a point by ``(x^M)_i = prod_j x_j^M[i, j]``,
so composing actions multiplies matrices. Group elements are kept as an
int64 stack sorted in row-major lexicographic order; that order also picks
conjugacy class representatives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import intmat, kernels
from ._config import close, default_tolerance
from .errors import (
    ClosureExceedsBound,
    NonUnimodular,
    NotAMember,
    RankMismatch,
)

DEFAULT_BOUND = 100_000


@dataclass(frozen=True)
class LatticeAutomorphism:
    matrix: intmat.IntMatrix

    def __post_init__(self):
        m = intmat.as_int_matrix(self.matrix)
        if not m or any(len(row) != len(m) for row in m):
            raise ValueError("automorphism matrix must be square and nonempty")
        if abs(intmat.det(m)) != 1:
            raise NonUnimodular(f"|det| != 1 for {m}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_array(cls, arr) -> LatticeAutomorphism:
        return cls(tuple(tuple(int(v) for v in row) for row in np.asarray(arr)))

    @classmethod
    def identity(cls, rank: int) -> LatticeAutomorphism:
        return cls(intmat.identity(rank))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.matrix, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @property
    def key(self) -> bytes:
        return self.array.tobytes()

    def __matmul__(self, other: LatticeAutomorphism) -> LatticeAutomorphism:
        return LatticeAutomorphism(intmat.matmul(self.matrix, other.matrix))

    def inverse(self) -> LatticeAutomorphism:
        return LatticeAutomorphism(intmat.inverse(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == intmat.identity(self.rank)

    def __repr__(self):
        return f"LatticeAutomorphism({[list(r) for r in self.matrix]})"


@dataclass(frozen=True)
class TorusPoint:
    coords: tuple[complex, ...]
    tolerance: float = field(default_factory=default_tolerance)

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if not coords:
            raise ValueError("torus point needs at least one coordinate")
        if any(abs(c) < 1e-300 or not np.isfinite(c) for c in coords):
            raise ValueError(f"torus coordinates must be finite and nonzero: {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.complex128)

    def isclose(self, other: TorusPoint, tol: float | None = None) -> bool:
        tol = self.tolerance if tol is None else tol
        return self.rank == other.rank and all(
            close(a, b, tol) for a, b in zip(self.coords, other.coords)
        )

    def __mul__(self, other: TorusPoint) -> TorusPoint:
        return TorusPoint(tuple(a * b for a, b in zip(self.coords, other.coords)), self.tolerance)


def _point(x, tol=None) -> TorusPoint:
    if isinstance(x, TorusPoint):
        return x
    return TorusPoint(tuple(x), default_tolerance() if tol is None else tol)


def _keys(stack: np.ndarray) -> list[bytes]:
    return [m.tobytes() for m in stack]


class FiniteMatrixGroup:
    """A finite group of unimodular integer matrices of a fixed rank."""

    def __init__(self, mats: np.ndarray):
        mats = np.ascontiguousarray(mats, dtype=np.int64)
        rank = mats.shape[1]
        flat = mats.reshape(len(mats), -1)
        order = np.lexsort(flat.T[::-1])
        mats = mats[order]
        mats.flags.writeable = False
        self.rank = rank
        self.mats = mats
        self.index = {k: i for i, k in enumerate(_keys(mats))}
        if len(self.index) != len(mats):
            raise ValueError("duplicate group elements")
        self._weights = np.random.default_rng(0).integers(
            1, 2**62, size=rank * rank, dtype=np.int64
        )
        hashes = flat[order] @ self._weights
        self._hash_order = np.argsort(hashes, kind="stable")
        self._sorted_hashes = hashes[self._hash_order]

    def __len__(self) -> int:
        return len(self.mats)

    @property
    def order(self) -> int:
        return len(self.mats)

    def __contains__(self, g) -> bool:
        return self._key(g) in self.index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteMatrixGroup)
            and self.rank == other.rank
            and np.array_equal(self.mats, other.mats)
        )

    def __hash__(self):
        return hash(self.mats.tobytes())

    def __repr__(self):
        return f"FiniteMatrixGroup(rank={self.rank}, order={self.order})"

    def _key(self, g) -> bytes:
        if isinstance(g, LatticeAutomorphism):
            return g.key
        return np.ascontiguousarray(g, dtype=np.int64).tobytes()

    def index_of(self, g) -> int:
        try:
            return self.index[self._key(g)]
        except KeyError:
            raise NotAMember(f"{g!r} is not in {self!r}") from None

    def lookup(self, stack: np.ndarray) -> np.ndarray:
        """Indices of a stack of matrices known to lie in the group.

        Hash lookup followed by exact comparison; raises NotAMember on miss.
        """
        flat = np.ascontiguousarray(stack, dtype=np.int64).reshape(len(stack), -1)
        hashes = flat @ self._weights
        pos = np.searchsorted(self._sorted_hashes, hashes)
        pos = np.minimum(pos, len(self) - 1)
        idx = self._hash_order[pos]
        ok = np.all(self.mats.reshape(len(self), -1)[idx] == flat, axis=1)
        if not ok.all():
            # hash collision or a genuine non-member; resolve exactly
            for j in np.flatnonzero(~ok):
                idx[j] = self.index_of(flat[j].reshape(self.rank, self.rank))
        return idx

    def element(self, i: int) -> LatticeAutomorphism:
        return LatticeAutomorphism.from_array(self.mats[i])

    @cached_property
    def elements(self) -> tuple[LatticeAutomorphism, ...]:
        return tuple(self.element(i) for i in range(len(self)))

    @cached_property
    def identity_index(self) -> int:
        return self.index[np.eye(self.rank, dtype=np.int64).tobytes()]

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        approx = np.rint(np.linalg.inv(self.mats.astype(np.float64))).astype(np.int64)
        eye = np.eye(self.rank, dtype=np.int64)
        if not np.all(self.mats @ approx == eye):
            raise ArithmeticError("float inverse failed exact verification")
        return self.lookup(approx)

    def subgroup(self, indices: Iterable[int]) -> FiniteMatrixGroup:
        return FiniteMatrixGroup(self.mats[np.fromiter(indices, dtype=np.int64)])

    @cached_property
    def _float_stacks(self) -> tuple[np.ndarray, np.ndarray]:
        # float64 products are exact while |entries| stay far below 2**26
        intmat.check_int64(self.mats)
        return self.mats.astype(np.float64), self.mats[self.inverse_indices].astype(np.float64)

    def conjugates(self, i: int) -> np.ndarray:
        """Indices of ``h g h^-1`` for every ``h`` (``g`` at index ``i``)."""
        cache = self.__dict__.setdefault("_conj_cache", {})
        if i not in cache:
            cache[i] = self._conjugates(i)
            cache[i].flags.writeable = False
        return cache[i]

    def _conjugates(self, i: int) -> np.ndarray:
        mats_f, inv_f = self._float_stacks
        left = (mats_f.reshape(-1, self.rank) @ mats_f[i]).reshape(mats_f.shape)
        conj = np.rint(left @ inv_f).astype(np.int64)
        return self.lookup(conj)

    def conjugation_table(self) -> np.ndarray:
        """``table[a, g]`` is the index of ``a g a^-1``."""
        return np.stack([self.conjugates(i) for i in range(len(self))], axis=1)

    @cached_property
    def classes(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Conjugacy classes as ``(representative, members)`` index tuples.

        Since elements are stored in lexicographic order, the smallest index
        in a class is its lexicographically least matrix.
        """
        assigned = np.full(len(self), -1, dtype=np.int64)
        out = []
        for i in range(len(self)):
            if assigned[i] >= 0:
                continue
            members = np.unique(self.conjugates(i))
            assigned[members] = len(out)
            out.append((int(members[0]), tuple(int(m) for m in members)))
        return tuple(out)

    def centralizer_indices(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.conjugates(i) == i)

    def stabilizer_indices(self, x: TorusPoint) -> np.ndarray:
        images = kernels.monomial_images(self.mats, x.array)
        tol = x.tolerance
        scale = np.maximum(1.0, np.maximum(np.abs(images), np.abs(x.array)[None, :]))
        mask = np.all(np.abs(images - x.array[None, :]) <= tol * scale, axis=1)
        return np.flatnonzero(mask)


def group_closure(generators: Sequence[LatticeAutomorphism], bound: int = DEFAULT_BOUND
                  ) -> FiniteMatrixGroup:
    """Smallest matrix group containing ``generators``.

    Raises ClosureExceedsBound if more than ``bound`` elements appear, or if
    entries grow past the int64 safety range (a finite group never does that
    from small generators).
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    gens = [g if isinstance(g, LatticeAutomorphism) else LatticeAutomorphism(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator to fix the rank")
    ranks = {g.rank for g in gens}
    if len(ranks) != 1:
        raise RankMismatch(f"generators have mixed ranks {sorted(ranks)}")
    rank = ranks.pop()
    gen_stack = np.stack([g.array for g in gens])
    eye = np.eye(rank, dtype=np.int64)
    seen = {eye.tobytes()}
    found = [eye]
    frontier = eye[None]
    while len(frontier):
        prods = (frontier[:, None] @ gen_stack[None]).reshape(-1, rank, rank)
        if prods.size and int(np.abs(prods).max()) > intmat.INT64_SAFE:
            raise ClosureExceedsBound("matrix entries grew without bound; group is not finite")
        fresh = []
        for m in prods:
            k = m.tobytes()
            if k not in seen:
                seen.add(k)
                fresh.append(m)
                if len(seen) > bound:
                    raise ClosureExceedsBound(f"group has more than {bound} elements")
        found.extend(fresh)
        frontier = np.stack(fresh) if fresh else np.empty((0, rank, rank), dtype=np.int64)
    return FiniteMatrixGroup(np.stack(found))


def conjugacy_classes(G: FiniteMatrixGroup) -> list[tuple[LatticeAutomorphism, list[LatticeAutomorphism]]]:
    return [(G.element(rep), [G.element(i) for i in members]) for rep, members in G.classes]


def centralizer(G: FiniteMatrixGroup, g: LatticeAutomorphism) -> FiniteMatrixGroup:
    return G.subgroup(G.centralizer_indices(G.index_of(g)))


def apply(g: LatticeAutomorphism, x) -> TorusPoint:
    x = _point(x)
    if g.rank != x.rank:
        raise RankMismatch(f"rank {g.rank} automorphism applied to rank {x.rank} point")
    out = kernels.monomial_apply_many(g.array, x.array[None, :])[0]
    return TorusPoint(tuple(out), x.tolerance)


def stabilizer(G: FiniteMatrixGroup, x) -> FiniteMatrixGroup:
    x = _point(x)
    if G.rank != x.rank:
        raise RankMismatch(f"rank {G.rank} group, rank {x.rank} point")
    return G.subgroup(G.stabilizer_indices(x))


@dataclass(frozen=True)
class FixedSet:
    """Structure of ``X^g = {x : x^M = x}`` read off a Smith decomposition.

    With ``U (M - I) V = diag(d)``, the substitution ``x = z^V`` turns the
    fixed-point equations into ``z_i^d_i = 1``. Coordinates with ``d_i = 0``
    are free, those with ``d_i > 1`` carry a root-of-unity label, and the rest
    are pinned to 1. Connected components are indexed by torsion labels.
    """

    element: LatticeAutomorphism
    dimension: int
    torsion_orders: tuple[int, ...]
    smith: intmat.SmithDecomposition

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.smith.diagonal

    @cached_property
    def free_axes(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.diagonal) if d == 0)

    @cached_property
    def torsion_axes(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.diagonal) if d > 1)

    @property
    def component_count(self) -> int:
        return math.prod(self.torsion_orders)

    @cached_property
    def V(self) -> np.ndarray:
        return np.array(self.smith.V, dtype=np.int64)

    @cached_property
    def V_inv(self) -> np.ndarray:
        return np.array(intmat.inverse(self.smith.V), dtype=np.int64)

    def labels(self) -> list[tuple[int, ...]]:
        """All torsion labels, in mixed-radix order (last axis fastest)."""
        return [tuple(k) for k in np.ndindex(*self.torsion_orders)] if self.torsion_orders else [()]

    def label_code(self, label: Sequence[int]) -> int:
        code = 0
        for k, d in zip(label, self.torsion_orders):
            code = code * d + k
        return code

    def z_point(self, label: Sequence[int], params: Sequence[complex]) -> np.ndarray:
        z = np.ones(self.element.rank, dtype=np.complex128)
        for ax, k, d in zip(self.torsion_axes, label, self.torsion_orders):
            z[ax] = np.exp(2j * np.pi * k / d)
        for ax, lam in zip(self.free_axes, params):
            z[ax] = lam
        return z

    def parametrize(self, label: Sequence[int], params: Sequence[complex]) -> TorusPoint:
        if len(label) != len(self.torsion_orders) or len(params) != self.dimension:
            raise ValueError("label/parameter sizes do not match the fixed set")
        z = self.z_point(label, params)
        return TorusPoint(tuple(kernels.monomial_apply_many(self.V, z[None, :])[0]))

    def locate(self, x: TorusPoint) -> tuple[tuple[int, ...], tuple[complex, ...]]:
        """Inverse of ``parametrize`` for a point already known to be fixed."""
        z = kernels.monomial_apply_many(self.V_inv, x.array[None, :])[0]
        label = []
        for ax, d in zip(self.torsion_axes, self.torsion_orders):
            label.append(int(round(np.angle(z[ax]) * d / (2 * np.pi))) % d)
        return tuple(label), tuple(complex(z[ax]) for ax in self.free_axes)

    def contains(self, x: TorusPoint) -> bool:
        return apply(self.element, x).isclose(x)

    def conjugated(self, h_stack: np.ndarray) -> np.ndarray:
        """``V^-1 h V`` for each ``h`` in a stack of centralizer elements."""
        return self.V_inv @ h_stack @ self.V

    def label_action(self, h_stack: np.ndarray) -> np.ndarray:
        """Permutation of label codes induced by each centralizing element.

        Returns an array of shape (len(h_stack), component_count).
        """
        count = self.component_count
        if not self.torsion_orders:
            return np.zeros((len(h_stack), 1), dtype=np.int64)
        b = self.conjugated(h_stack)
        tors = list(self.torsion_axes)
        free = list(self.free_axes)
        pinned = [i for i in range(self.element.rank) if i not in free]
        if free and np.any(b[:, pinned][:, :, free]):
            raise ArithmeticError("centralizer does not preserve the identity component")
        dmax = self.torsion_orders[-1]
        steps = np.array([dmax // d for d in self.torsion_orders], dtype=np.int64)
        labels = np.array(self.labels(), dtype=np.int64)
        # exponents over the common denominator dmax
        u = labels * steps[None, :]
        bt = b[:, tors][:, :, tors]
        img = np.einsum("hij,lj->hli", bt, u) % dmax
        if np.any(img % steps[None, None, :]):
            raise ArithmeticError("label image is not a torsion point")
        k = img // steps[None, None, :]
        codes = np.zeros(k.shape[:2], dtype=np.int64)
        for pos, d in enumerate(self.torsion_orders):
            codes = codes * d + k[:, :, pos]
        assert codes.shape[1] == count
        return codes

    def free_block(self, h_stack: np.ndarray) -> np.ndarray:
        """Linear part of each centralizing element on the identity component."""
        b = self.conjugated(h_stack)
        free = list(self.free_axes)
        return b[:, free][:, :, free]


def fixed_set(g: LatticeAutomorphism) -> FixedSet:
    a = tuple(
        tuple(v - int(i == j) for j, v in enumerate(row)) for i, row in enumerate(g.matrix)
    )
    snf = intmat.smith_normal_form(a)
    diag = snf.diagonal
    return FixedSet(
        element=g,
        dimension=sum(1 for d in diag if d == 0),
        torsion_orders=tuple(d for d in diag if d > 1),
        smith=snf,
    )


def det_one_plus_t(stack: np.ndarray) -> np.ndarray:
    """Integer coefficients of ``det(I + t B)`` for each matrix ``B``, one row each.

    From ``det(xI - B) = sum c_k x^(d-k)`` the coefficient of ``t^k`` in
    ``det(I + tB)`` is ``(-1)^k c_k``.
    """
    cp = intmat.charpoly_batch(stack)
    signs = np.array([(-1) ** k for k in range(cp.shape[1])], dtype=object)
    return cp * signs[None, :]
