import itertools
import random
from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.solvers.simplex import lpmax

from okcluster.cluster import initial_seed, mutate
from okcluster.okbody import (
    _strict_feasible, build_tmap, decompose_point, delta_seed, delta_total, interiors_disjoint,
    normal_fan, psi_of_monomial, revlex_compare, tmap_defect, total_volume,
)

from instances import DESK, context, desk

SIMPLY_LACED = [n for n in DESK if not n.startswith("B")]


def test_revlex_examples():
    assert revlex_compare((1, 0, 0), (0, 1, 0)) == -1
    assert revlex_compare((2, 3, 4), (2, 3, 4)) == 0
    assert revlex_compare((0, 1, 1), (1, 1, 0)) == 1
    with pytest.raises(ValueError):
        revlex_compare((1,), (1, 2))


def test_psi_of_monomial_examples():
    ctx = context("A2")
    s = initial_seed(ctx)
    assert psi_of_monomial(s, (0, 1, 0)) == s.psi[1]
    assert psi_of_monomial(s, (1, 1, 0)) == (1, 1, 0)
    assert psi_of_monomial(s, (1, 0, -1)) == (0, 0, -1)


def test_delta_total_examples():
    sx = delta_total(context("A2"))
    assert sx.vertices == ((1, 0, 0), (0, Q(1, 2), 0), (0, 0, 1))
    assert sx.volume == Q(1, 2)
    ctx = context("A3", None, (1, 2, 3, 1, 2))
    assert delta_total(ctx).lam == (1, 2, 3, 1, 2)
    assert context("A3", None, (2,)).lam == (1,)
    assert delta_total(context("A3", None, (2,))).vertices == ((1,),)


def test_delta_seed_examples():
    ctx = context("A2")
    sx = delta_seed(initial_seed(ctx), ctx)
    assert sx.vertices == ((1, 0, 0), (0, Q(1, 2), 0), (Q(1, 2), 0, Q(1, 2)))
    assert sx.volume == Q(1, 4)
    ctx = context("A3", (2, 1, 3), (2, 1, 3, 2))
    assert delta_seed(initial_seed(ctx), ctx).volume == Q(1, 16)


@pytest.mark.parametrize("name", list(DESK))
def test_normals_are_inverse_transpose(name):
    ctx, enum = desk(name)
    for s in enum.seeds:
        sx = delta_seed(s, ctx)
        M = sympy.Matrix(s.psi_matrix)
        Nmat = sympy.Matrix([list(Nj) for Nj in sx.normals_N]).T  # columns N_j
        assert Nmat == M.inv().T
        for v in sx.vertices:
            assert ctx.degree(v) == 1
        # vertices of Delta_S lie in Delta(A): nonnegative coordinates
        assert all(x >= 0 for v in sx.vertices for x in v)


@pytest.mark.parametrize("name", list(DESK))
def test_normal_fan_on_every_seed(name):
    ctx, enum = desk(name)
    for s in enum.seeds:
        normal_fan(s, ctx)


def test_initial_n_vectors():
    ctx = context("A2")
    s = initial_seed(ctx)
    lam, norm2 = (1, 2, 1), 6
    assert s.nvec[1] == tuple(Q(int(i == 1)) - Q(2 * l, norm2) for i, l in enumerate(lam))
    # exchangeable j with ht(beta_j) = ht(beta_{j+}) gives e_j - e_{j+}
    ctx = context("A3", None, (1, 2, 3, 1, 2))
    s = initial_seed(ctx)
    assert s.nvec[0] == (1, 0, 0, -1, 0)
    t = mutate(s, ctx, 0)
    assert t.nvec[0] == tuple(-x for x in s.nvec[0])


def test_tmap_defining_property_and_dimension():
    ctx = context("A2")
    s = initial_seed(ctx)
    T = build_tmap(s, ctx)
    assert len(T.basis) == len(ctx.exchangeable) == 1
    assert T(s.muhat[0]) == s.nvec[0]
    with pytest.raises(ValueError):
        T((1, 0, 0))
    # matrix form agrees with T on ker(wt)
    Tm = sympy.Matrix(T.matrix)
    assert list(Tm * sympy.Matrix(s.muhat[0])) == list(s.nvec[0])


@pytest.mark.parametrize("name", SIMPLY_LACED)
def test_tmap_carries_muhat_to_n_simply_laced(name):
    ctx, enum = desk(name)
    T = build_tmap(initial_seed(ctx), ctx)
    for s in enum.seeds:
        assert tmap_defect(T, s, ctx) == []


@pytest.mark.parametrize("name", list(DESK))
def test_symmetrized_tmap_on_every_seed(name):
    ctx, enum = desk(name)
    T = build_tmap(initial_seed(ctx), ctx, symmetrized=True)
    for s in enum.seeds:
        assert tmap_defect(T, s, ctx, symmetrized=True) == []


def test_decompose_point_examples():
    ctx = context("A2")
    s = initial_seed(ctx)
    sx = delta_seed(s, ctx)
    for j, v in enumerate(sx.vertices):
        d = decompose_point(s, ctx, v)
        assert d.exponents == tuple(int(i == j) for i in range(3))
        assert d.scale == ctx.degree(s.psi[j])
    assert decompose_point(s, ctx, (0, 0, 1)) is None
    d = decompose_point(s, ctx, (1, 1, 0))
    assert d.exponents == (1, 1, 0) and d.scale == 3
    d = decompose_point(s, ctx, (Q(1, 4), Q(1, 4), Q(1, 4)))
    assert d.exponents == (0, 1, 1) and d.scale == 4
    assert decompose_point(s, ctx, (Q(1, 4), 0, Q(3, 4))) is None  # inside the other simplex
    assert decompose_point(s, ctx, (1, Q(1, 2), 0)) is None  # off H, not integral


@st.composite
def seed_and_exponents(draw):
    name = draw(st.sampled_from(list(DESK)))
    ctx, enum = desk(name)
    s = draw(st.sampled_from(enum.seeds))
    a = tuple(draw(st.lists(st.integers(0, 5), min_size=ctx.N, max_size=ctx.N)))
    return ctx, s, a


@given(seed_and_exponents())
def test_decompose_round_trip(data):
    ctx, s, a = data
    p = psi_of_monomial(s, a)
    if not any(a):
        return
    d = decompose_point(s, ctx, p)
    assert d is not None and d.exponents == a and d.scale == ctx.degree(p)
    # the same ray as a point of H decomposes to a multiple of a
    h = tuple(Q(x, ctx.degree(p)) for x in p)
    dh = decompose_point(s, ctx, h)
    assert dh is not None
    assert all(x * d.scale == y * dh.scale for x, y in zip(dh.exponents, a))


def _lp_strict(rows):
    """Oracle: max t subject to r.y >= t, 0 <= t <= 1; strictly feasible iff the max is positive.

    Free variables are split as y = p - q with p, q >= 0, since lpmax mishandles
    some unbounded variables; a positive answer is re-checked exactly.
    """
    n = len(rows[0])
    ps, qs = sympy.symbols(f"p0:{n}"), sympy.symbols(f"q0:{n}")
    t = sympy.Symbol("t")
    ys = [a - b for a, b in zip(ps, qs)]
    forms = [sum(sympy.Rational(c) * y for c, y in zip(r, ys)) for r in rows]
    cons = [f >= t for f in forms] + [t <= 1, t >= 0] + [v >= 0 for v in ps + qs]
    value, point = lpmax(t, cons)
    if value > 0:
        assert all(f.subs(point) > 0 for f in forms)
    return bool(value > 0)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=6))
def test_fourier_motzkin_matches_lp(rows):
    assert _strict_feasible([tuple(Q(x) for x in r) for r in rows]) == _lp_strict(rows)


@pytest.mark.parametrize("name", ["A2 w0", "A3 s1s2s3s1s2", "B2 w0", "A3 w0"])
def test_interiors_disjoint_matches_lp(name):
    ctx, enum = desk(name)
    pairs = list(itertools.combinations(enum.seeds, 2))
    for a, b in random.Random(1).sample(pairs, min(len(pairs), 12)):
        assert interiors_disjoint(a, b, ctx)
        rows = list(delta_seed(a, ctx).normals_N) + list(delta_seed(b, ctx).normals_N)
        assert not _lp_strict(rows)


def test_seed_against_itself_is_not_disjoint():
    ctx, enum = desk("A3 s1s2s3s1s2")
    for s in enum.seeds:
        assert not interiors_disjoint(s, s, ctx)


def test_a2_two_simplices():
    ctx, enum = desk("A2 w0")
    a, b = enum.seeds
    assert interiors_disjoint(a, b, ctx)
    assert total_volume(enum.seeds, ctx) == delta_total(ctx).volume


@pytest.mark.parametrize("name", list(DESK))
def test_volume_sum(name):
    ctx, enum = desk(name)
    assert sum(delta_seed(s, ctx).volume for s in enum.seeds) == delta_total(ctx).volume
    assert total_volume(enum.seeds, ctx) == delta_total(ctx).volume
