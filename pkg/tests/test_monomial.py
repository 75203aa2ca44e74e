import random
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import TWO_PLANES, rand_ideal
from norilc.errors import InputError
from norilc.monomial import (
    SqfIdeal,
    StraightMap,
    cech_complex,
    clamp,
    cousin_complex,
    local_cohomology,
    local_cohomology_dims,
    localize_module,
    mask_str,
    members,
    monomial_localization,
    oracle_extended,
    oracle_multiplication_ranks,
    top_module,
    to_mask,
)
from norilc.ratlin import Matrix, rank


def S(*idx):
    return to_mask(idx)


@st.composite
def ideals(draw, max_n=4, max_gens=4):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(st.sets(st.integers(1, n), min_size=1), min_size=1, max_size=max_gens))
    return SqfIdeal.from_supports(n, [sorted(g) for g in gens])


def reduced_cohomology(faces, q):
    """dim of reduced cohomology in degree q of a simplicial complex given by all its faces (sympy ranks)."""
    by_size = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(f)

    def coboundary_rank(size):
        # delta: cochains on faces of `size` -> faces of size+1
        src, dst = by_size.get(size, []), by_size.get(size + 1, [])
        if not src or not dst:
            return 0
        idx = {f: r for r, f in enumerate(dst)}
        m = sympy.zeros(len(dst), len(src))
        for c, f in enumerate(src):
            for x in set(range(max(max(g, default=-1) for g in dst) + 1)) - set(f):
                g = tuple(sorted(f + (x,)))
                if g in idx:
                    m[idx[g], c] = (-1) ** g.index(x)
        return m.rank()

    size = q + 1
    return len(by_size.get(size, [])) - coboundary_rank(size) - coboundary_rank(size - 1)


def simplicial_oracle(i: SqfIdeal, k: int, s: int) -> int:
    """H^k_I(R) at the box degree with negative set s, via the complex of generator subsets not covering s.

    The Cech terms present at s form the complement of the simplicial complex
    K_s = {T : s not inside the union of T}; by the long exact sequence of the
    pair (simplex, K_s), H^k equals reduced H^{k-2}(K_s).
    """
    g = len(i.gens)
    faces = []
    for size in range(g + 1):
        for t in combinations(range(g), size):
            u = 0
            for x in t:
                u |= i.gens[x]
            if s & ~u:
                faces.append(t)
    return reduced_cohomology(faces, k - 2)


def test_ideal_basics():
    i = SqfIdeal.from_supports(1, [[1]])
    assert i.minimal_primes() == [S(1)] and i.height == 1
    m = SqfIdeal.maximal(4)
    assert m.minimal_primes() == [S(1, 2, 3, 4)] and m.height == 4
    assert TWO_PLANES.minimal_primes() == [S(1, 2), S(3, 4)] and TWO_PLANES.height == 2
    assert SqfIdeal.from_supports(3, [[1], [1, 2]]).gens == (S(1),)
    with pytest.raises(InputError):
        SqfIdeal.from_supports(2, [])
    with pytest.raises(InputError):
        SqfIdeal.from_supports(2, [[]])
    with pytest.raises(InputError):
        SqfIdeal.from_supports(2, [[3]])
    with pytest.raises(InputError):
        SqfIdeal.unit(2).minimal_primes()


@settings(max_examples=60, deadline=None)
@given(ideals(max_n=5))
def test_minimal_primes_brute_force(i):
    covers = [p for p in range(1 << i.n) if all(g & p for g in i.gens)]
    mins = sorted(p for p in covers if not any(q != p and q & p == q for q in covers))
    assert sorted(i.minimal_primes()) == mins
    assert i.height == min(bin(p).count("1") for p in mins)


def test_json_round_trip():
    obj = {"n": 4, "gens": [[1, 3], [1, 4], [2, 3], [2, 4]]}
    assert SqfIdeal.from_json(obj).to_json() == obj
    assert mask_str(S(2, 3), 4) == "0110"


def test_monomial_localization():
    r = monomial_localization(3, 0)
    assert r.comp == (1,) + (0,) * 7
    lau = monomial_localization(2, S(1, 2))
    assert lau.comp == (1, 1, 1, 1)
    lau.check()
    m = monomial_localization(2, S(1))
    assert m.support() == [0, S(1)]
    assert m.up_map(S(1), 0) == Matrix.identity(1)


def test_localize_module_examples():
    for n in (1, 2, 3):
        r = monomial_localization(n, 0)
        for u in range(1 << n):
            loc = localize_module(r, u)
            assert loc.comp == monomial_localization(n, u).comp
            assert loc.up == monomial_localization(n, u).up
        e = top_module(n)
        assert localize_module(e, 0).comp == e.comp
        for u in range(1, 1 << n):
            assert localize_module(e, u).is_zero()


def _localize_map(f: StraightMap, u: int) -> StraightMap:
    src, dst = localize_module(f.source, u), localize_module(f.target, u)
    return StraightMap(src, dst, tuple(f.mats[s & ~u] for s in range(1 << f.source.n)))


def test_localization_is_exact():
    # 0 -> R -> R_x1 -> H^1_(x1) -> 0 and its analogue for (x1 x2) in three variables
    for n, gen in ((2, S(1)), (3, S(1)), (3, S(1, 2))):
        i = SqfIdeal(n, (gen,))
        r = monomial_localization(n, 0)
        rx = monomial_localization(n, gen)
        h = local_cohomology(i, 1)
        full = 1 << n
        f = StraightMap(r, rx, tuple(Matrix.identity(1) if s == 0 else Matrix(rx.comp[s], 0) for s in range(full)))
        g_mats = []
        for s in range(full):
            g_mats.append(Matrix.identity(1) if h.comp[s] and rx.comp[s] else Matrix(h.comp[s], rx.comp[s]))
        g = StraightMap(rx, h, tuple(g_mats))
        f.check()
        g.check()
        for u in range(full):
            lf, lg = _localize_map(f, u), _localize_map(g, u)
            lf.check()
            lg.check()
            for s in range(full):
                a, b = lf.mats[s], lg.mats[s]
                mid = lf.target.comp[s]
                assert (b @ a).is_zero()
                assert rank(a) == lf.source.comp[s]  # injective
                assert rank(b) == lg.target.comp[s]  # surjective
                assert rank(a) + rank(b) == mid  # exact in the middle


def test_cech_complex_terms():
    c = cech_complex(SqfIdeal.from_supports(2, [[1]]))
    assert [c.term(k).comp for k in c.degrees()] == [(1, 0, 0, 0), (1, 1, 0, 0)]
    c = cech_complex(SqfIdeal.from_supports(2, [[1], [2]]))
    assert [c.term(k).total_dim for k in c.degrees()] == [1, 4, 4]
    c.check()


def test_local_cohomology_examples():
    for n in (1, 2, 3, 4):
        m = SqfIdeal.maximal(n)
        dims = local_cohomology_dims(m)
        top = local_cohomology(m, n)
        assert top.comp == top_module(n).comp and top.all_up_zero()
        assert all(not any(dims[k]) for k in range(n))
    h1 = local_cohomology(SqfIdeal.from_supports(2, [[1]]), 1)
    assert h1.support() == [S(1)]
    dims = local_cohomology_dims(TWO_PLANES)
    assert any(dims[2]) and any(dims[3])
    full = S(1, 2, 3, 4)
    assert [s for s, v in enumerate(dims[3]) if v] == [full] and dims[3][full] == 1


@settings(max_examples=40, deadline=None)
@given(ideals(max_n=4))
def test_local_cohomology_against_simplicial_oracle(i):
    dims = local_cohomology_dims(i)
    for k in range(i.n + 1):
        for s in range(1 << i.n):
            assert dims[k][s] == simplicial_oracle(i, k, s), (k, mask_str(s, i.n))


@settings(max_examples=40, deadline=None)
@given(ideals(max_n=4))
def test_vanishing_outside_height_range(i):
    dims = local_cohomology_dims(i)
    for k, row in dims.items():
        if k < i.height:
            assert not any(row)
    assert all(k <= i.n for k in ideals_degrees(i))


def ideals_degrees(i):
    return [k for k, row in cech_complex(i).cohomology_dims().items() if any(row)]


@settings(max_examples=30, deadline=None)
@given(ideals(max_n=3, max_gens=3))
def test_generator_set_independence(i):
    every = sorted(i.squarefree_monomials())
    a = cech_complex(i).cohomology_dims()
    b = cech_complex(i, every).cohomology_dims()
    for k in range(i.n + 1):
        zero = (0,) * (1 << i.n)
        assert a.get(k, zero) == b.get(k, zero)


@settings(max_examples=40, deadline=None)
@given(ideals(max_n=4))
def test_cech_and_cousin_models_agree(i):
    assert local_cohomology_dims(i, "cech") == local_cohomology_dims(i, "cousin")
    for k in range(i.height, i.n + 1):
        a, b = local_cohomology(i, k, "cech"), local_cohomology(i, k, "cousin")
        a.check()
        b.check()
        # the multiplication maps have the same ranks in both models
        for s in range(1 << i.n):
            for j in members(s):
                assert rank(a.up_map(s, j)) == rank(b.up_map(s, j))


def test_oracle_examples():
    i = SqfIdeal.from_supports(2, [[1]])
    box = local_cohomology_dims(i)
    o = oracle_extended(i, 1, [-1, 0])
    assert all(box[1][clamp(a)] == v for a, v in o.items())
    o = oracle_extended(i, 1, (-2, 1))
    assert o[(-2, 0)] == o[(-1, 0)] == 1
    m = SqfIdeal.maximal(3)
    o = oracle_extended(m, 3, (-2, -1))
    assert set(o.values()) == {1}


@settings(max_examples=25, deadline=None)
@given(ideals(max_n=3), st.randoms(use_true_random=False))
def test_clamp_and_multiplication_isomorphisms(i, rnd):
    box = local_cohomology_dims(i)
    for k in range(i.n + 1):
        o = oracle_extended(i, k, (-3, 1))
        for a, v in o.items():
            assert box[k][clamp(a)] == v
    # x_j from a_j = -3 to a_j = -2 is an isomorphism
    for _ in range(3):
        a = [rnd.randint(-3, 1) for _ in range(i.n)]
        j = rnd.randrange(i.n)
        a[j] = -3
        for k in range(i.n + 1):
            da, db, r = oracle_multiplication_ranks(i, k, a, j)
            assert da == db == r


def test_multiplication_maps_match_oracle():
    rng = random.Random(4)
    for _ in range(6):
        i = rand_ideal(rng, rng.randint(2, 3), 3)
        for k in range(i.n + 1):
            h = local_cohomology(i, k)
            for a in product([-1, 0], repeat=i.n):
                s = clamp(a)
                for j in members(s):
                    _, _, r = oracle_multiplication_ranks(i, k, a, j)
                    assert rank(h.up_map(s, j)) == r
