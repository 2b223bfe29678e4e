"""Extended quotients X//G of a torus by a finite monomial group.

X//G is the quotient of {(g, x) : g x = x} by a.(g, x) = (a g a^-1, a x), and
splits as the disjoint union over conjugacy classes of X^g / Z(g). Each piece
is further split into Z(g)-orbits of connected components of X^g; those
orbits are the components reported by ``decompose``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .group import (
    DEFAULT_BOUND,
    FiniteMatrixGroup,
    FixedSet,
    LatticeAutomorphism,
    TorusPoint,
    _point,
    det_one_plus_t,
    fixed_set,
    group_closure,
)
from .errors import GridNotStable, NotFixed, RankMismatch

MAX_GRID = 16
MAX_GRID_RANK = 5


@dataclass(frozen=True)
class PoincarePolynomial:
    """Polynomial in ``t`` with rational coefficients, degree 0 first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs) or (Fraction(0),))

    @classmethod
    def zero(cls) -> PoincarePolynomial:
        return cls((Fraction(0),))

    @classmethod
    def one(cls) -> PoincarePolynomial:
        return cls((Fraction(1),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if k < len(self.coefficients) else Fraction(0)

    def __add__(self, other: PoincarePolynomial) -> PoincarePolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        return PoincarePolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PoincarePolynomial(tuple(c * other for c in self.coefficients))
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return PoincarePolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t):
        return sum(c * t**k for k, c in enumerate(self.coefficients))

    def even_odd(self) -> tuple[Fraction, Fraction]:
        """Sums of even-degree and odd-degree coefficients."""
        even = sum(self.coefficients[0::2], Fraction(0))
        odd = sum(self.coefficients[1::2], Fraction(0))
        return even, odd

    def is_integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coefficients)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            num = str(c)
            if k == 0:
                terms.append(num)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                terms.append(mono if c == 1 else f"{num}*{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class QuotientSetup:
    group: FiniteMatrixGroup
    rank: int
    label: str = "setup"
    generators: tuple[LatticeAutomorphism, ...] = ()

    def __post_init__(self):
        if self.group.rank != self.rank:
            raise RankMismatch(f"group rank {self.group.rank} != setup rank {self.rank}")


def make_setup(generators: Sequence, label: str = "setup", bound: int = DEFAULT_BOUND,
               rank: int | None = None) -> QuotientSetup:
    gens = tuple(g if isinstance(g, LatticeAutomorphism) else LatticeAutomorphism(g)
                 for g in generators)
    if not gens:
        if rank is None:
            raise ValueError("a setup without generators needs an explicit rank")
        gens = (LatticeAutomorphism.identity(rank),)
    group = group_closure(gens, bound)
    if rank is not None and rank != group.rank:
        raise RankMismatch(f"declared rank {rank}, generators have rank {group.rank}")
    return QuotientSetup(group=group, rank=group.rank, label=label, generators=gens)


@dataclass(frozen=True)
class ExtComponent:
    class_rep: LatticeAutomorphism
    component_orbit: tuple[tuple[int, ...], ...]
    dimension: int
    torsion_orders: tuple[int, ...]
    class_size: int
    centralizer_order: int
    isotropy_order: int
    poincare: PoincarePolynomial
    fixed: FixedSet = field(repr=False, compare=False)
    cocharacter: tuple[int, ...] | None = None
    name: str | None = None

    def label_point(self, label: Sequence[int], params: Sequence[complex]) -> TorusPoint:
        return self.fixed.parametrize(label, params)

    def base_point(self) -> TorusPoint:
        return self.fixed.parametrize(self.component_orbit[0], (1.0,) * self.dimension)

    def sample(self, rng: np.random.Generator) -> TorusPoint:
        label = self.component_orbit[rng.integers(len(self.component_orbit))]
        mod = np.exp(rng.uniform(-0.5, 0.5, self.dimension))
        arg = rng.uniform(0.0, 2 * np.pi, self.dimension)
        return self.fixed.parametrize(label, tuple(mod * np.exp(1j * arg)))

    def contains(self, x: TorusPoint) -> bool:
        if x.rank != self.class_rep.rank or not self.fixed.contains(x):
            return False
        label, _ = self.fixed.locate(x)
        return label in self.component_orbit


@dataclass(frozen=True)
class ComponentCatalog:
    setup: QuotientSetup
    components: tuple[ExtComponent, ...]
    ordinary_component_index: int = 0

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i) -> ExtComponent:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(c.dimension for c in self.components)

    def by_name(self, name: str) -> ExtComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def locate(self, g: LatticeAutomorphism, x: TorusPoint) -> int:
        """Index of the component of (g, x), with g a class representative."""
        for i, c in enumerate(self.components):
            if c.class_rep == g and c.contains(x):
                return i
        raise NotFixed(f"{x.coords} is not on any component of class {g!r}")

    def annotated(self, cocharacters: Sequence, names: Sequence | None = None
                  ) -> ComponentCatalog:
        names = names if names is not None else [c.name for c in self.components]
        comps = tuple(
            replace(c, cocharacter=None if h is None else tuple(int(e) for e in h), name=n)
            for c, h, n in zip(self.components, cocharacters, names)
        )
        return replace(self, components=comps)


def _average(rows: np.ndarray, count: int) -> PoincarePolynomial:
    """Mean of integer coefficient rows, kept exact."""
    return PoincarePolynomial(tuple(Fraction(int(v), count) for v in rows.sum(axis=0)))


def decompose(setup: QuotientSetup) -> ComponentCatalog:
    G = setup.group
    comps = []
    for rep, members in G.classes:
        g = G.element(rep)
        fs = fixed_set(g)
        zi = G.centralizer_indices(rep)
        zmats = G.mats[zi]
        action = fs.label_action(zmats)
        dets = det_one_plus_t(fs.free_block(zmats))
        labels = fs.labels()
        seen = set()
        for code in range(fs.component_count):
            if code in seen:
                continue
            orbit = sorted(set(action[:, code].tolist()))
            seen.update(orbit)
            stab = np.flatnonzero(action[:, code] == code)
            comps.append(ExtComponent(
                class_rep=g,
                component_orbit=tuple(labels[c] for c in orbit),
                dimension=fs.dimension,
                torsion_orders=fs.torsion_orders,
                class_size=len(members),
                centralizer_order=len(zi),
                isotropy_order=len(stab),
                poincare=_average(dets[stab], len(stab)),
                fixed=fs,
            ))
    # class order is already lexicographic by representative; stable sort keeps it
    comps.sort(key=lambda c: -c.dimension)
    return ComponentCatalog(setup=setup, components=tuple(comps), ordinary_component_index=0)


def poincare_polynomial(setup: QuotientSetup) -> PoincarePolynomial:
    """Sum over classes of the averaged Lefschetz-style traces on H*(X^g).

    Only labels fixed by each centralizing element contribute; the torus
    cohomology trace of ``h`` on a component is ``det(I + t h)`` for its
    linear part.
    """
    G = setup.group
    total = PoincarePolynomial.zero()
    for rep, _ in G.classes:
        fs = fixed_set(G.element(rep))
        zi = G.centralizer_indices(rep)
        zmats = G.mats[zi]
        action = fs.label_action(zmats)
        fixed_counts = np.sum(action == np.arange(action.shape[1])[None, :], axis=1)
        dets = det_one_plus_t(fs.free_block(zmats))
        weighted = dets * fixed_counts.astype(object)[:, None]
        total = total + _average(weighted, len(zi))
    return total


@dataclass(frozen=True)
class OrbitPoint:
    representative: TorusPoint

    @property
    def coords(self) -> tuple[complex, ...]:
        return self.representative.coords

    def isclose(self, other: OrbitPoint, tol: float | None = None) -> bool:
        return self.representative.isclose(other.representative, tol)


def canonical_under(mats: np.ndarray, x: TorusPoint) -> OrbitPoint:
    images = kernels.monomial_images(mats, x.array)
    idx = kernels.lexmin_row(images, x.tolerance)
    return OrbitPoint(TorusPoint(tuple(images[idx]), x.tolerance))


def _checked(setup: QuotientSetup, x) -> TorusPoint:
    x = _point(x)
    if x.rank != setup.rank:
        raise RankMismatch(f"rank {x.rank} point for rank {setup.rank} setup")
    return x


def orbit_canonical(setup: QuotientSetup, x) -> OrbitPoint:
    return canonical_under(setup.group.mats, _checked(setup, x))


def project(setup: QuotientSetup, class_rep: LatticeAutomorphism, x) -> OrbitPoint:
    x = _checked(setup, x)
    setup.group.index_of(class_rep)
    if not fixed_set(class_rep).contains(x):
        raise NotFixed(f"{x.coords} is not fixed by {class_rep!r}")
    return orbit_canonical(setup, x)


def reduced_membership(setup: QuotientSetup, x) -> bool:
    x = _checked(setup, x)
    return len(setup.group.stabilizer_indices(x)) > 1


def _distinct(points: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Deduplicate rows within tolerance; returns (unique rows, row -> unique)."""
    uniq: list[np.ndarray] = []
    where = np.empty(len(points), dtype=np.int64)
    for i, p in enumerate(points):
        for j, u in enumerate(uniq):
            if np.all(np.abs(p - u) <= tol * np.maximum(1.0, np.maximum(np.abs(p), np.abs(u)))):
                where[i] = j
                break
        else:
            where[i] = len(uniq)
            uniq.append(p)
    return np.array(uniq), where


def fiber(catalog: ComponentCatalog, x) -> list[tuple[int, TorusPoint]]:
    """Points of X//G over the orbit of ``x``, as (component index, point).

    For each class representative g, the preimages are the Z(g)-orbits of
    orbit points fixed by g.
    """
    setup = catalog.setup
    x = _checked(setup, x)
    G = setup.group
    tol = x.tolerance
    orbit, _ = _distinct(kernels.monomial_images(G.mats, x.array), tol)
    out = []
    for rep, _ in G.classes:
        g = G.mats[rep]
        fixed = [k for k, y in enumerate(orbit)
                 if np.all(np.abs(kernels.monomial_apply_many(g, y[None, :])[0] - y)
                           <= tol * np.maximum(1.0, np.abs(y)))]
        if not fixed:
            continue
        zmats = G.mats[G.centralizer_indices(rep)]
        remaining = set(fixed)
        while remaining:
            k = min(remaining)
            imgs = kernels.monomial_images(zmats, orbit[k])
            for y in imgs:
                for j in list(remaining):
                    if np.all(np.abs(y - orbit[j]) <= tol * np.maximum(1.0, np.abs(y))):
                        remaining.discard(j)
            pt = TorusPoint(tuple(orbit[k]), tol)
            out.append((catalog.locate(G.element(rep), pt), pt))
    return out


def product_setup(s1: QuotientSetup, s2: QuotientSetup) -> QuotientSetup:
    r1, r2 = s1.rank, s2.rank
    a, b = s1.group.mats, s2.group.mats
    mats = np.zeros((len(a), len(b), r1 + r2, r1 + r2), dtype=np.int64)
    mats[:, :, :r1, :r1] = a[:, None]
    mats[:, :, r1:, r1:] = b[None, :]
    gens = tuple(
        LatticeAutomorphism.from_array(_block(g.array, np.eye(r2, dtype=np.int64)))
        for g in s1.generators
    ) + tuple(
        LatticeAutomorphism.from_array(_block(np.eye(r1, dtype=np.int64), g.array))
        for g in s2.generators
    )
    return QuotientSetup(
        group=FiniteMatrixGroup(mats.reshape(-1, r1 + r2, r1 + r2)),
        rank=r1 + r2,
        label=f"{s1.label}x{s2.label}",
        generators=gens,
    )


def _block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    r1, r2 = len(a), len(b)
    out = np.zeros((r1 + r2, r1 + r2), dtype=np.int64)
    out[:r1, :r1] = a
    out[r1:, r1:] = b
    return out


@dataclass(frozen=True)
class GridCensus:
    """Extended-quotient points whose torus coordinate lies in mu_N^r."""

    grid: int
    total: int
    per_class: dict[int, int]
    pair_stabilizers: dict[int, int] = field(default_factory=dict)
    point_stabilizers: dict[int, int] = field(default_factory=dict)


def _check_grid(setup: QuotientSetup, n: int) -> None:
    if np.any(np.abs(setup.group.mats) > 1):
        raise GridNotStable(f"{setup.label}: matrix entries outside {{-1, 0, 1}}")
    if not 1 <= n <= MAX_GRID or setup.rank > MAX_GRID_RANK:
        raise ValueError(f"grid oracle needs 1 <= N <= {MAX_GRID} and rank <= {MAX_GRID_RANK}")


def grid_oracle(setup: QuotientSetup, n: int) -> GridCensus:
    """Brute-force census of X//G restricted to the grid of N-th roots of unity.

    Enumerates every pair (g, x) with g x = x on the grid and counts orbits of
    a.(g, x) = (a g a^-1, a x) directly; nothing here uses Smith forms.
    """
    _check_grid(setup, n)
    G = setup.group
    perm = kernels.grid_action(G.mats, n)
    size = perm.shape[1]
    conj = G.conjugation_table()
    fixed = perm == np.arange(size)[None, :]
    gs, xs = np.nonzero(fixed)
    canon = kernels.pair_orbit_canon(perm, conj, gs.astype(np.int64), xs.astype(np.int64))
    codes, counts = np.unique(canon, return_counts=True)
    class_of = np.empty(len(G), dtype=np.int64)
    for rep, members in G.classes:
        class_of[list(members)] = rep
    per_class = Counter(int(class_of[c // size]) for c in codes)
    # an orbit of pairs has |G| / |stabilizer| members
    pair_hist = Counter(int(len(G) // k) for k in counts)
    ident = G.identity_index
    point_codes = canon[gs == ident]
    point_hist = Counter()
    stab_sizes = fixed.sum(axis=0)
    for c in np.unique(point_codes):
        point_hist[int(stab_sizes[c % size])] += 1
    return GridCensus(
        grid=n,
        total=len(codes),
        per_class=dict(sorted(per_class.items())),
        pair_stabilizers=dict(sorted(pair_hist.items())),
        point_stabilizers=dict(sorted(point_hist.items())),
    )


def component_grid_points(comp: ExtComponent, n: int) -> np.ndarray:
    """Encoded grid points of mu_N^r lying on a catalog component."""
    fs = comp.fixed
    r = comp.class_rep.rank
    free = fs.free_axes
    choices = []
    for label in comp.component_orbit:
        base = np.zeros(r, dtype=np.int64)
        ok = True
        for ax, k, d in zip(fs.torsion_axes, label, fs.torsion_orders):
            if (k * n) % d:
                ok = False
                break
            base[ax] = k * n // d
        if not ok:
            continue
        if free:
            mesh = np.stack(np.meshgrid(*[np.arange(n)] * len(free), indexing="ij"), -1)
            z = np.repeat(base[None, :], n ** len(free), axis=0)
            z[:, list(free)] = mesh.reshape(-1, len(free))
        else:
            z = base[None, :]
        choices.append(z)
    if not choices:
        return np.empty(0, dtype=np.int64)
    z = np.concatenate(choices)
    x = (z @ fs.V.T) % n
    weights = n ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return np.unique(x @ weights)


def catalog_grid_census(catalog: ComponentCatalog, n: int) -> GridCensus:
    """Grid census assembled from the component parametrizations."""
    setup = catalog.setup
    _check_grid(setup, n)
    G = setup.group
    per_class: Counter = Counter()
    for comp in catalog:
        pts = component_grid_points(comp, n)
        if not len(pts):
            continue
        rep = G.index_of(comp.class_rep)
        zmats = G.mats[G.centralizer_indices(rep)]
        perm = kernels.grid_action(zmats, n)
        per_class[rep] += len(np.unique(perm[:, pts].min(axis=0)))
    return GridCensus(grid=n, total=sum(per_class.values()),
                      per_class=dict(sorted(per_class.items())))
