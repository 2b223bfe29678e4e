"""Concrete Bernstein-component cases: GL(n), SL(2) and the ramified G2 case.

Each case fixes a torus D with a finite group W and attaches to every
component c of D//W a cocharacter h_c. The deformed projection is
``pi_t(x) = pi(h_c(t) x)``, and ``X_t`` is the image of the non-ordinary
components under it.

Family parameter conventions (GL only): cocharacters step their exponents
by 2, so points of ``pi_t`` images satisfy ``z_i = t^2 z_j``. Under the
default ``"t_squared"`` convention the equation check uses ``s = t^2``. Under
``"direct"`` the supplied value is the equation parameter ``s`` itself and
``pi`` is evaluated at ``t = sqrt(s)``.
"""
from __future__ import annotations

import cmath
import functools
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from ._config import close, default_tolerance
from .errors import NotOnComponent, SizeMismatch, ZeroParameter
from .group import LatticeAutomorphism, TorusPoint, _point, fixed_set
from .quotient import (
    ComponentCatalog,
    ExtComponent,
    OrbitPoint,
    QuotientSetup,
    canonical_under,
    decompose,
    make_setup,
    orbit_canonical,
    reduced_membership,
)

CONVENTIONS = ("t_squared", "direct")
DEFAULT_Q = 9.0


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        if not parts or any(a <= 0 for a in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def r(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def multiplicities(self) -> dict[int, int]:
        """Part size a_j -> repeat count r_j."""
        out: dict[int, int] = {}
        for a in self.parts:
            out[a] = out.get(a, 0) + 1
        return out

    def __str__(self):
        return "+".join(map(str, self.parts))


def partitions(r: int) -> list[Partition]:
    """All partitions of r in reverse lexicographic order."""
    if r < 1:
        raise ValueError("r must be positive")

    def gen(n, cap):
        if n == 0:
            yield ()
            return
        for a in range(min(n, cap), 0, -1):
            for rest in gen(n - a, a):
                yield (a,) + rest

    return [Partition(p) for p in gen(r, r)]


def partition_to_class(p: Partition) -> LatticeAutomorphism:
    """Permutation matrix cycling consecutive index blocks of sizes a_1, a_2, ..."""
    r = p.r
    m = [[0] * r for _ in range(r)]
    start = 0
    for a in p.parts:
        for k in range(a):
            m[start + k][start + (k + 1) % a] = 1
        start += a
    return LatticeAutomorphism(tuple(map(tuple, m)))


def permutation_cycles(g: LatticeAutomorphism) -> list[list[int]]:
    """Cycles of i -> j where row i of the permutation matrix has its 1 at j.

    Cycles are listed by smallest index and traversed from it.
    """
    arr = g.array
    if not (np.all((arr == 0) | (arr == 1)) and np.all(arr.sum(axis=1) == 1)):
        raise ValueError(f"{g!r} is not a permutation matrix")
    succ = arr.argmax(axis=1)
    seen = set()
    cycles = []
    for i in range(len(succ)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = int(succ[i])
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = int(succ[j])
        cycles.append(cyc)
    return cycles


def cycle_type(g: LatticeAutomorphism) -> Partition:
    return Partition(tuple(sorted((len(c) for c in permutation_cycles(g)), reverse=True)))


@dataclass(frozen=True)
class Cocharacter:
    """t -> (t^e_1, ..., t^e_r)."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    def at(self, t: complex) -> np.ndarray:
        if t == 0:
            raise ZeroParameter("cocharacters are only defined on C^x")
        return np.array([complex(t) ** e for e in self.exponents], dtype=np.complex128)

    def act(self, t: complex, x: TorusPoint) -> TorusPoint:
        if len(self.exponents) != x.rank:
            raise SizeMismatch(f"cocharacter of length {len(self.exponents)} on rank {x.rank}")
        return TorusPoint(tuple(self.at(t) * x.array), x.tolerance)


def _cycle_exponents(a: int) -> list[int]:
    return [a - 1 - 2 * k for k in range(a)]


def cocharacter_gl(p: Partition) -> Cocharacter:
    return Cocharacter(tuple(e for a in p.parts for e in _cycle_exponents(a)))


def _gl_cocharacter_for(g: LatticeAutomorphism) -> tuple[int, ...]:
    # same exponent pattern, laid along the cycles of an arbitrary class representative
    exps = [0] * g.rank
    for cyc in permutation_cycles(g):
        for idx, e in zip(cyc, _cycle_exponents(len(cyc))):
            exps[idx] = e
    return tuple(exps)


@functools.lru_cache(maxsize=32)
def _symmetric_setup(r: int, label: str) -> QuotientSetup:
    if r == 1:
        return make_setup([((1,),)], label)
    gens = []
    for i in range(r - 1):
        m = np.eye(r, dtype=np.int64)
        m[[i, i + 1]] = m[[i + 1, i]]
        gens.append(m.tolist())
    return make_setup(gens, label)


G2_GENERATORS = (((0, 1), (1, 0)), ((0, -1), (-1, 0)))
# s_alpha swaps the coordinates, s_{3alpha+2beta} swaps and inverts them
S_ALPHA = LatticeAutomorphism(G2_GENERATORS[0])
S_LONG = LatticeAutomorphism(G2_GENERATORS[1])

G2_COCHARACTERS = {
    "D/W": (0, 0),
    "C1": (1, -1),
    "C2": (-1, -1),
    "pt1": (0, -2),
    "pt2": (0, -2),
    "pt3": (0, 0),
}
G2_POINTS = {"pt1": (1, 1), "pt2": (-1, -1), "pt3": (1, -1)}


@dataclass(frozen=True)
class InertialCase:
    kind: str
    q: float = DEFAULT_Q
    m: int = 1
    r: int = 1

    def __post_init__(self):
        if self.kind not in ("gl", "sl2", "g2"):
            raise ValueError(f"unknown case kind {self.kind!r}")
        if not self.q > 1:
            raise ValueError("q must exceed 1")
        if self.kind == "gl" and (self.r < 1 or self.m < 1):
            raise ValueError("GL case needs m >= 1 and r >= 1")

    @classmethod
    def gl(cls, m: int, r: int, q: float = DEFAULT_Q) -> InertialCase:
        return cls("gl", q=q, m=m, r=r)

    @classmethod
    def sl2(cls, q: float = DEFAULT_Q) -> InertialCase:
        return cls("sl2", q=q)

    @classmethod
    def g2(cls, q: float = DEFAULT_Q) -> InertialCase:
        return cls("g2", q=q)

    @property
    def label(self) -> str:
        if self.kind == "gl":
            return f"GL({self.m * self.r}) [GL({self.m})^{self.r}]"
        return {"sl2": "SL(2) [T,1]", "g2": "G2 [T,chi x chi]"}[self.kind]

    def as_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "gl":
            d.update(m=self.m, r=self.r)
        d["q"] = self.q
        return d

    @cached_property
    def setup(self) -> QuotientSetup:
        if self.kind == "gl":
            return _symmetric_setup(self.r, self.label)
        if self.kind == "sl2":
            return make_setup([((-1,),)], self.label)
        return make_setup(list(G2_GENERATORS), self.label)

    @cached_property
    def catalog(self) -> ComponentCatalog:
        """Component catalog with cocharacters and names attached."""
        cat = decompose(self.setup)
        hs, names = [], []
        for comp in cat:
            h, name = self._annotate(comp)
            hs.append(h)
            names.append(name)
        return cat.annotated(hs, names)

    def _annotate(self, comp: ExtComponent) -> tuple[tuple[int, ...], str]:
        if self.kind == "gl":
            return _gl_cocharacter_for(comp.class_rep), f"partition {cycle_type(comp.class_rep)}"
        base = orbit_canonical(self.setup, comp.base_point())
        if self.kind == "sl2":
            if comp.dimension == 1:
                return (0,), "D/W"
            # exponent 2 on {1}, 0 on {-1}: images t^2 and -1
            if close(base.coords[0], 1.0, 1e-9):
                return (2,), "pt(+1)"
            return (0,), "pt(-1)"
        if comp.dimension == 2:
            name = "D/W"
        elif comp.class_rep == S_ALPHA:
            name = "C1"
        elif comp.class_rep == S_LONG:
            name = "C2"
        else:
            name = next(n for n, p in G2_POINTS.items()
                        if base.isclose(orbit_canonical(self.setup, p)))
        return G2_COCHARACTERS[name], name


def _param(t) -> complex:
    t = complex(t)
    if t == 0:
        raise ZeroParameter("family parameter must be nonzero")
    return t


def pi_t(case: InertialCase, component: ExtComponent, x, t) -> OrbitPoint:
    """``pi(h_c(t) x)`` for ``x`` on ``component``."""
    t = _param(t)
    x = _point(x)
    if not component.contains(x):
        raise NotOnComponent(f"{x.coords} is not on component {component.name!r}")
    h = Cocharacter(component.cocharacter or (0,) * x.rank)
    return orbit_canonical(case.setup, h.act(t, x))


def gl_family_test(z, s, tol: float | None = None) -> bool:
    """Whether ``prod_{i != j} (z_i - s z_j)`` vanishes at ``z``."""
    s = _param(s)
    tol = default_tolerance() if tol is None else tol
    coords = _point(z).coords
    return any(
        close(coords[i], s * coords[j], tol)
        for i, j in itertools.permutations(range(len(coords)), 2)
    )


def gl_reducibility_test(z, q: float, tol: float | None = None) -> bool:
    if not q > 1:
        raise ValueError("q must exceed 1")
    return gl_family_test(z, q, tol)


@dataclass(frozen=True)
class LParamOrbitPoint:
    """Partition shape plus one unramified twist value per part."""

    partition: Partition
    twists: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(complex(c) for c in self.twists))
        if len(self.twists) != len(self.partition):
            raise SizeMismatch(
                f"{len(self.twists)} twists for {len(self.partition)} parts"
            )
        if any(c == 0 for c in self.twists):
            raise ValueError("twists must be nonzero")

    def same_multisets(self, other: LParamOrbitPoint, tol: float = 1e-9) -> bool:
        """Equality of twist multisets part size by part size."""
        if self.partition != other.partition:
            return False
        for a in self.partition.multiplicities():
            mine = [c for c, p in zip(self.twists, self.partition.parts) if p == a]
            theirs = [c for c, p in zip(other.twists, other.partition.parts) if p == a]
            for c in mine:
                hit = next((k for k, d in enumerate(theirs) if close(c, d, tol)), None)
                if hit is None:
                    return False
                theirs.pop(hit)
        return True


@functools.lru_cache(maxsize=128)
def _partition_setup(p: Partition):
    setup = _symmetric_setup(p.r, f"S_{p.r}")
    g = partition_to_class(p)
    G = setup.group
    return setup, g, G.mats[G.centralizer_indices(G.index_of(g))]


def lparam_embed(p: LParamOrbitPoint) -> TorusPoint:
    """Twist values spread over the cycle blocks: a point of D^gamma."""
    coords = []
    for a, c in zip(p.partition.parts, p.twists):
        coords.extend([c] * a)
    return TorusPoint(tuple(coords))


def lparam_point(p: LParamOrbitPoint) -> OrbitPoint:
    """Image of an L-parameter orbit point in D^gamma / Z(gamma)."""
    _, _, zmats = _partition_setup(p.partition)
    return canonical_under(zmats, lparam_embed(p))


def lparam_from_fixed(partition: Partition, x) -> LParamOrbitPoint:
    """Read twists back off a point of D^gamma (constant on each block)."""
    x = _point(x)
    g = partition_to_class(partition)
    if not fixed_set(g).contains(x):
        raise NotOnComponent("point is not fixed by the partition's permutation")
    twists, start = [], 0
    for a in partition.parts:
        twists.append(x.coords[start])
        start += a
    return LParamOrbitPoint(partition, tuple(twists))


def sl2_family(t) -> tuple[complex, complex]:
    """Roots of (x + 1)(x - t^2), with multiplicity."""
    t = _param(t)
    return (-1 + 0j, t * t)


def sl2_polynomial(t) -> tuple[complex, complex, complex]:
    """Coefficients (constant first) of (x + 1)(x - t^2)."""
    t = _param(t)
    return (-t * t, 1 - t * t, 1 + 0j)


@dataclass(frozen=True)
class G2CaseData:
    q: float
    case: InertialCase
    catalog: ComponentCatalog
    reduced_quotient: tuple[str, ...]
    line: str = "x - t**2*y"
    hyperbola: str = "x*y - t**(-2)"
    # constituents of the induced representation at t = sqrt(q); quoted data, not computed
    constituents: dict = field(default_factory=lambda: {
        "intersection(+)": 4, "intersection(-)": 4, "pt3 (tempered)": 2,
    })

    @staticmethod
    def intersection_points(t) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        t = _param(t)
        return ((1 + 0j, t**-2), (-1 + 0j, -(t**-2)))

    def symbolic_intersections(self):
        """Solve the line/hyperbola system with sympy, t kept symbolic."""
        import sympy as sp

        x, y = sp.symbols("x y")
        t = sp.symbols("t", positive=True)
        sols = sp.solve([sp.sympify(self.line, locals={"t": t, "x": x, "y": y}),
                         sp.sympify(self.hyperbola, locals={"t": t, "x": x, "y": y})],
                        [x, y], dict=True)
        return t, [(s[x], s[y]) for s in sols]


def _on_line(x, y, t2, tol):
    return close(x, t2 * y, tol)


def _on_hyperbola(x, y, t2, tol):
    return close(x * y * t2, 1.0, tol)


def g2_family_test(case: InertialCase, z: OrbitPoint | TorusPoint, t, tol: float | None = None
                   ) -> bool:
    """Whether the orbit of ``z`` meets x - t^2 y = 0, x y = t^-2 or pt3."""
    t = _param(t)
    tol = default_tolerance() if tol is None else tol
    pt = z.representative if isinstance(z, OrbitPoint) else _point(z)
    t2 = t * t
    members = kernels.monomial_images(case.setup.group.mats, pt.array)
    pt3 = orbit_canonical(case.setup, G2_POINTS["pt3"])
    if orbit_canonical(case.setup, pt).isclose(pt3, tol):
        return True
    return any(_on_line(x, y, t2, tol) or _on_hyperbola(x, y, t2, tol) for x, y in members)


def g2_catalog(q: float = DEFAULT_Q) -> G2CaseData:
    case = InertialCase.g2(q)
    cat = case.catalog
    reduced = []
    for comp in cat:
        if comp.name == "D/W":
            continue
        # the reduced quotient is the union of images; drop pieces already covered
        covered = any(
            other.name != comp.name and other.dimension > comp.dimension
            and _covers(case, other, comp.base_point())
            for other in cat if other.name != "D/W"
        )
        if not covered:
            assert reduced_membership(case.setup, comp.base_point())
            reduced.append(comp.name)
    return G2CaseData(q=q, case=case, catalog=cat, reduced_quotient=tuple(sorted(reduced)))


def _covers(case: InertialCase, comp: ExtComponent, x: TorusPoint) -> bool:
    """Whether the orbit of x meets the fixed curve of ``comp`` (pi-image test)."""
    G = case.setup.group
    for row in kernels.monomial_images(G.mats, x.array):
        if comp.fixed.contains(TorusPoint(tuple(row), x.tolerance)):
            return True
    return False


@dataclass(frozen=True)
class FamilyPoint:
    component: int
    name: str | None
    source: TorusPoint
    image: OrbitPoint
    flag: bool


@dataclass(frozen=True)
class FamilyReport:
    case: InertialCase
    t: complex
    convention: str
    equation_parameter: complex
    points: tuple[FamilyPoint, ...]
    variety: tuple[complex, ...] | None = None

    @property
    def ok(self) -> bool:
        return all(p.flag for p in self.points)


def resolve_parameter(t, convention: str) -> tuple[complex, complex]:
    """(cocharacter parameter, equation parameter) for a supplied value."""
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    t = _param(t)
    if convention == "t_squared":
        return t, t * t
    return cmath.sqrt(t), t


def image_check(case: InertialCase, image: OrbitPoint, t: complex, s: complex) -> bool:
    if case.kind == "gl":
        return gl_family_test(image.representative, s)
    if case.kind == "sl2":
        # X_t lives in D/W, so compare orbits, not raw coordinates
        return any(image.isclose(orbit_canonical(case.setup, (v,))) for v in sl2_family(t))
    return g2_family_test(case, image, t)


def family_sample(case: InertialCase, t, n: int, seed: int,
                  convention: str = "t_squared") -> FamilyReport:
    """Sample n points on every non-ordinary component and check pi_t images."""
    if n < 1:
        raise ValueError("n must be at least 1")
    tt, s = resolve_parameter(t, convention)
    rng = np.random.default_rng(seed)
    cat = case.catalog
    pts = []
    for idx, comp in enumerate(cat):
        if idx == cat.ordinary_component_index:
            continue
        for _ in range(n):
            x = comp.sample(rng)
            img = pi_t(case, comp, x, tt)
            pts.append(FamilyPoint(idx, comp.name, x, img, image_check(case, img, tt, s)))
    variety = sl2_family(tt) if case.kind == "sl2" else None
    return FamilyReport(case=case, t=complex(t), convention=convention,
                        equation_parameter=s, points=tuple(pts), variety=variety)
