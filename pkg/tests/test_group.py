import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extquot import (
    LatticeAutomorphism,
    TorusPoint,
    apply,
    centralizer,
    conjugacy_classes,
    fixed_set,
    group_closure,
    stabilizer,
)
from extquot.errors import ClosureExceedsBound, NonUnimodular, RankMismatch
from extquot.setups import bundled

SWAP = [[0, 1], [1, 0]]
NEG_SWAP = [[0, -1], [-1, 0]]
G2 = [SWAP, NEG_SWAP]


def perm_matrix(p):
    return [[int(p[i] == j) for j in range(len(p))] for i in range(len(p))]


S3_ELEMENTS = [perm_matrix(p) for p in itertools.permutations(range(3))]
S3_GENS = [perm_matrix((1, 0, 2)), perm_matrix((0, 2, 1))]


def L(m):
    return LatticeAutomorphism(m)


# -- closure ---------------------------------------------------------------

def test_closure_identity():
    assert group_closure([L([[1, 0], [0, 1]])]).order == 1


def test_closure_swap():
    assert group_closure([L(SWAP)]).order == 2


def test_closure_g2_klein():
    G = group_closure([L(m) for m in G2])
    assert G.order == 4
    assert all((g @ g).is_identity() for g in G.elements)


def test_closure_idempotent():
    for setup in bundled().values():
        G = setup.group
        assert group_closure(list(G.elements)) == G


def test_closure_bound():
    with pytest.raises(ClosureExceedsBound):
        group_closure([L([[2, 1], [1, 1]])])
    with pytest.raises(ClosureExceedsBound):
        group_closure([L(m) for m in S3_GENS], bound=5)


def test_closure_rejects_bad_input():
    with pytest.raises(NonUnimodular):
        L([[2, 0], [0, 1]])
    with pytest.raises(RankMismatch):
        group_closure([L([[1]]), L(SWAP)])


# -- conjugacy -------------------------------------------------------------

def _brute_classes(elements):
    mats = [np.array(m) for m in elements]
    seen, sizes = set(), []
    for g in mats:
        if g.tobytes() in seen:
            continue
        cls = {(h @ g @ np.linalg.inv(h).round().astype(int)).tobytes() for h in mats}
        seen |= cls
        sizes.append(len(cls))
    return sorted(sizes)


def test_classes_trivial():
    G = group_closure([L([[1]])])
    assert len(conjugacy_classes(G)) == 1


def test_classes_s3():
    G = group_closure([L(m) for m in S3_GENS])
    sizes = sorted(len(members) for _, members in conjugacy_classes(G))
    assert sizes == _brute_classes(S3_ELEMENTS) == [1, 2, 3]


def test_classes_g2_singletons():
    G = group_closure([L(m) for m in G2])
    assert [len(m) for _, m in conjugacy_classes(G)] == [1, 1, 1, 1]


def test_class_representatives_are_lex_least():
    for setup in bundled().values():
        for rep, members in conjugacy_classes(setup.group):
            assert rep.matrix == min(m.matrix for m in members)


@pytest.mark.parametrize("name", sorted(bundled()))
def test_class_equation(name):
    G = bundled()[name].group
    classes = conjugacy_classes(G)
    assert sum(len(m) for _, m in classes) == G.order
    for rep, members in classes:
        assert len(members) * centralizer(G, rep).order == G.order


def test_classes_match_brute_force_on_bundled():
    for setup in bundled().values():
        G = setup.group
        if G.order > 48:
            continue
        got = sorted(len(m) for _, m in conjugacy_classes(G))
        assert got == _brute_classes([g.matrix for g in G.elements])


# -- centralizer -----------------------------------------------------------

def test_centralizer_identity_is_group():
    G = group_closure([L(m) for m in S3_GENS])
    assert centralizer(G, L(np.eye(3, dtype=int).tolist())) == G


def test_centralizer_transposition_s3():
    G = group_closure([L(m) for m in S3_GENS])
    Z = centralizer(G, L(perm_matrix((1, 0, 2))))
    assert Z.order == 2
    assert L(perm_matrix((1, 0, 2))) in Z


def test_centralizer_abelian():
    G = group_closure([L(m) for m in G2])
    for g in G.elements:
        assert centralizer(G, g) == G


# -- fixed sets ------------------------------------------------------------

def test_fixed_set_identity():
    fs = fixed_set(L(np.eye(3, dtype=int).tolist()))
    assert fs.dimension == 3 and fs.torsion_orders == ()


def test_fixed_set_swap():
    fs = fixed_set(L(SWAP))
    assert fs.dimension == 1 and fs.component_count == 1
    x = fs.parametrize((), (2.5,))
    assert np.allclose(x.array, [2.5, 2.5])


def test_fixed_set_minus_identity():
    fs = fixed_set(L([[-1, 0], [0, -1]]))
    assert fs.dimension == 0 and fs.torsion_orders == (2, 2)
    pts = {tuple(np.round(fs.parametrize(l, ()).array.real).astype(int)) for l in fs.labels()}
    assert pts == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def _brute_fixed_exponents(m, n):
    """Exponent vectors e mod n with M e = e mod n, pure Python."""
    r = len(m)
    out = set()
    for e in itertools.product(range(n), repeat=r):
        img = tuple(sum(m[i][j] * e[j] for j in range(r)) % n for i in range(r))
        if img == e:
            out.add(e)
    return out


def _parametrized_grid_exponents(fs, n):
    """Grid points reachable through ``parametrize``; free params run over mu_n."""
    roots = [np.exp(2j * np.pi * k / n) for k in range(n)]
    out = set()
    for label in fs.labels():
        for params in itertools.product(roots, repeat=fs.dimension):
            x = fs.parametrize(label, params).array
            if np.allclose(x ** n, 1, atol=1e-9):
                e = tuple(int(round(np.angle(c) * n / (2 * np.pi))) % n for c in x)
                out.add(e)
    return out


GROUP_NAMES = ["g2_klein", "b2_weyl_r2", "g2_weyl_r2", "cyclic3_r2", "s3_r3", "neg_identity_r3"]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("name", GROUP_NAMES)
def test_fixed_set_soundness(name, n):
    G = bundled()[name].group
    for g in G.elements:
        fs = fixed_set(g)
        assert _parametrized_grid_exponents(fs, n) == _brute_fixed_exponents(g.matrix, n)


def test_fixed_points_are_fixed(rng):
    for setup in bundled().values():
        for g in setup.group.elements:
            fs = fixed_set(g)
            for label in fs.labels()[:4]:
                params = np.exp(rng.normal(size=fs.dimension) + 1j * rng.uniform(0, 6, fs.dimension))
                assert fs.contains(fs.parametrize(label, tuple(params)))


def test_locate_inverts_parametrize(rng):
    fs = fixed_set(L([[-1, 0, 0], [0, 0, 1], [0, 1, 0]]))
    for label in fs.labels():
        params = tuple(np.exp(rng.normal(size=fs.dimension)).astype(complex))
        lab, back = fs.locate(fs.parametrize(label, params))
        assert lab == label
        assert np.allclose(back, params)


# -- action ----------------------------------------------------------------

def test_apply_examples():
    assert apply(L([[1, 0], [0, 1]]), (2, 5)).isclose(TorusPoint((2, 5)))
    assert apply(L(SWAP), (2, 5)).isclose(TorusPoint((5, 2)))
    assert apply(L(NEG_SWAP), (2, 5)).isclose(TorusPoint((0.2, 0.5)))


def test_apply_rank_mismatch():
    with pytest.raises(RankMismatch):
        apply(L(SWAP), (1, 2, 3))


def test_torus_point_rejects_zero():
    with pytest.raises(ValueError):
        TorusPoint((0, 1))


@pytest.mark.parametrize("name", ["b2_weyl_r2", "g2_weyl_r2", "b3_weyl_r3", "d4_weyl_r4"])
def test_action_functoriality(name, rng):
    G = bundled()[name].group
    els = G.elements
    for _ in range(1000):
        g, h = els[rng.integers(len(els))], els[rng.integers(len(els))]
        x = tuple(np.exp(rng.normal(size=G.rank) + 1j * rng.uniform(-3, 3, G.rank)))
        assert apply(g @ h, x).isclose(apply(g, apply(h, x)))
        assert apply(g.inverse(), apply(g, x)).isclose(TorusPoint(x))


# -- stabilizer ------------------------------------------------------------

def test_stabilizer_generic_s3(rng):
    G = group_closure([L(m) for m in S3_GENS])
    x = tuple(np.exp(rng.normal(size=3)))
    assert stabilizer(G, x).order == 1


def test_stabilizer_repeated_coordinate_s3():
    G = group_closure([L(m) for m in S3_GENS])
    assert stabilizer(G, (3, 3, 7)).order == 2


def test_stabilizer_pt3_g2():
    G = group_closure([L(m) for m in G2])
    S = stabilizer(G, (1, -1))
    assert S.order == 2
    assert L([[-1, 0], [0, -1]]) in S


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, 0.5, 3]), min_size=3, max_size=3))
def test_stabilizer_is_subgroup(coords):
    G = bundled()["b3_weyl_r3"].group
    S = stabilizer(G, tuple(coords))
    assert G.order % S.order == 0
    for g in S.elements:
        for h in S.elements:
            assert (g @ h) in S
