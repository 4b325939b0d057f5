import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gitloci import (
    INF,
    DomainError,
    Location,
    ParseError,
    Polytope,
    ValuedWeightConfig,
    conjugate_eval,
    convex_hull,
    lower_hull_value,
    polytope_query,
    polytope_vertices,
    recession_cone_trivial,
    subdiff_zero,
    sublevel_polytope,
    weight_polytopes,
)

from . import oracles

SEXTIC = ValuedWeightConfig(2, [((-3, -3), 3), ((3, 0), 3), ((0, 3), 3), ((0, 0), 0)])
SEXTIC_FLAT = ValuedWeightConfig(2, [(w, 0) for w, _ in SEXTIC.entries])
TRIANGLE = [(-3, -3), (3, 0), (0, 3)]


def cfg(r, *entries):
    return ValuedWeightConfig(r, entries)


@st.composite
def configs(draw, ranks=(1, 2, 3)):
    r = draw(st.sampled_from(ranks))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    ents = oracles.random_config_entries(random.Random(seed), r, max_entries=8, wmax=3)
    return ValuedWeightConfig(r, ents)


# -- configurations ---------------------------------------------------------


def test_duplicates_merge_by_minimum():
    c = cfg(1, ((1,), 3), ((1,), Q(1, 2)), ((0,), INF), ((-1,), 0))
    assert c.entries == (((-1,), 0), ((0,), INF), ((1,), Q(1, 2)))
    assert c.weights == ((-1,), (1,))
    assert c.normalized and not c.shifted(1).normalized


def test_config_needs_a_finite_value():
    with pytest.raises(DomainError):
        cfg(1, ((0,), INF))


def test_config_text_round_trip():
    text = SEXTIC.to_text()
    assert text.splitlines()[0] == "rank 2"
    assert ValuedWeightConfig.from_text(text) == SEXTIC
    assert ValuedWeightConfig.from_text("# comment\nrank 1\n 2 : inf  # note\n-1 : 1/3\n").entries == (
        ((-1,), Q(1, 3)),
        ((2,), INF),
    )


@pytest.mark.parametrize(
    "text, line",
    [("rank 1\n0 : 0.5\n", "line 2"), ("rank 2\n1 : 0\n", "line 2"), ("rank x\n", "line 1"), ("rank 1\n1 0\n", "line 2")],
)
def test_config_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError, match=line):
        ValuedWeightConfig.from_text(text)


# -- lower hull -------------------------------------------------------------


def test_lower_hull_examples():
    assert lower_hull_value(cfg(1, ((-1,), 0), ((1,), 0)), (0,)) == 0
    assert lower_hull_value(cfg(1, ((1,), 0)), (0,)) is INF
    two = cfg(1, ((-1,), 0), ((1,), 1))
    assert lower_hull_value(two, (0,)) == Q(1, 2)
    assert oracles.caratheodory_lower_hull(two.finite_entries, (0,), 1) == Q(1, 2)


def test_lower_hull_ignores_infinite_entries():
    c = cfg(1, ((-1,), 0), ((1,), INF))
    assert lower_hull_value(c, (0,)) is INF
    assert lower_hull_value(c, (-1,)) == 0


@settings(max_examples=60, deadline=None)
@given(configs(), st.data())
def test_lower_hull_matches_caratheodory(c, data):
    w = tuple(data.draw(st.integers(-3, 3)) for _ in range(c.rank))
    expected = oracles.caratheodory_lower_hull(c.finite_entries, tuple(map(Q, w)), c.rank)
    got = lower_hull_value(c, w)
    assert (got is INF) if expected is None else got == expected


# -- conjugate ----------------------------------------------------------------


def test_conjugate_examples():
    assert conjugate_eval(cfg(1, ((-1,), 0), ((1,), 0)), (2,)) == 2
    for y in (Q(-7, 3), 0, 5):
        assert conjugate_eval(cfg(1, ((0,), y)), (Q(9, 2),)) == -y
    assert conjugate_eval(SEXTIC, (0, 0)) == oracles.brute_conjugate(SEXTIC.finite_entries, (0, 0)) == 0


@settings(max_examples=80, deadline=None)
@given(configs(), st.data())
def test_conjugate_hull_identity(c, data):
    v = tuple(Q(data.draw(st.integers(-8, 8)), 2) for _ in range(c.rank))
    direct = conjugate_eval(c, v)
    assert direct == oracles.brute_conjugate(c.finite_entries, v)
    via_hull = max(sum(a * b for a, b in zip(w, v)) - lower_hull_value(c, w) for w in c.weights)
    assert direct == via_hull


# -- subdifferential -----------------------------------------------------------


def test_subdiff_point_matches_grid_subgradient_oracle():
    c = cfg(1, ((-1,), 0), ((1,), 0))
    p = subdiff_zero(c)
    assert p.is_bounded and p.vertices == ((0,),)
    # B(w) = 0 on [-1, 1]; v is a subgradient at 0 iff B(w') >= <w', v> on that interval
    ws = [Q(k, 8) for k in range(-8, 9)]
    brute = [v for v in oracles.grid(-2, 2, Q(1, 4), 1) if all(0 >= w * v[0] for w in ws)]
    assert brute == [(0,)]
    assert [v for v in oracles.grid(-2, 2, Q(1, 4), 1) if v in p] == brute


def test_subdiff_single_weight_at_origin_is_everything():
    p = subdiff_zero(cfg(1, ((0,), 0)))
    assert p.halfspaces == () and not p.is_bounded


def test_subdiff_sextic():
    expected = Polytope(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])
    assert subdiff_zero(SEXTIC).minimized().same_set(expected)
    assert set(subdiff_zero(SEXTIC).vertices) == {(1, 1), (1, -2), (-2, 1)}


def test_subdiff_requires_zero_in_hull():
    with pytest.raises(DomainError, match="outside"):
        subdiff_zero(cfg(1, ((1,), 0), ((2,), 0)))


@settings(max_examples=40, deadline=None)
@given(configs())
def test_subgradient_characterization_on_grid(c):
    base = lower_hull_value(c, (0,) * c.rank)
    if base is INF:
        return
    p = subdiff_zero(c)
    step = {1: Q(1, 8), 2: Q(1, 2), 3: Q(1)}[c.rank]
    for v in oracles.grid(-3, 3, step, c.rank)[:350]:
        assert (v in p) == (oracles.brute_conjugate(c.finite_entries, v) == -base)


# -- weight polytopes and queries --------------------------------------------


def test_weight_polytopes_examples():
    full, special = weight_polytopes(SEXTIC)
    assert full.same_set(convex_hull(TRIANGLE, 2))
    assert special.vertices == ((0, 0),)
    full, special = weight_polytopes(SEXTIC_FLAT)
    assert full.same_set(special)
    assert set(special.vertices) == {tuple(map(Q, p)) for p in TRIANGLE}
    full, special = weight_polytopes(cfg(1, ((0,), 0)))
    assert full.vertices == special.vertices == ((0,),)
    with pytest.raises(DomainError):
        weight_polytopes(SEXTIC.shifted(1))


def test_query_examples():
    p = convex_hull(TRIANGLE, 2)
    assert polytope_query(p, (0, 0)) is Location.INTERIOR
    assert all(sum(a * 0 for a in n) < b for n, b in p.halfspaces)
    assert polytope_query(p, (3, 0)) is Location.BOUNDARY
    assert polytope_query(p, (5, 5)) is Location.OUTSIDE
    with pytest.raises(DomainError):
        p.query((0,))


def test_lower_dimensional_hull_has_no_interior():
    seg = convex_hull([(-1, 0), (1, 0)], 2)
    assert seg.query((0, 0)) is Location.BOUNDARY
    assert seg.relative_interior_contains((0, 0))
    assert not seg.relative_interior_contains((1, 0))
    assert seg.query((0, Q(1, 10))) is Location.OUTSIDE


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.just(r),
    st.lists(st.tuples(*[st.integers(-3, 3)] * r), min_size=1, max_size=7),
    st.tuples(*[st.builds(Q, st.integers(-7, 7), st.just(2))] * r),
)))
def test_hull_membership_matches_caratheodory(args):
    r, pts, x = args
    assert (x in convex_hull(pts, r)) == oracles.in_hull(pts, x)


# -- vertices -------------------------------------------------------------


def test_vertex_examples():
    tri = Polytope(2, [((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)])
    assert polytope_vertices(tri) == [(-1, -1), (-1, 2), (2, -1)]
    assert polytope_vertices(Polytope.point((0,))) == [(0,)]
    empty = Polytope(1, [((1,), 0), ((-1,), -1)])
    assert empty.is_empty and polytope_vertices(empty) == []
    assert "vertices 0 (empty)" in empty.to_text()
    with pytest.raises(DomainError, match="unbounded"):
        polytope_vertices(Polytope(1, [((1,), 0)]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.just(r), st.lists(st.tuples(*[st.integers(-4, 4)] * r), min_size=1, max_size=8))))
def test_vertices_are_tight_and_reproduce_the_polytope(args):
    r, pts = args
    hull = convex_hull(pts, r)
    ref = Polytope(r, hull.halfspaces)  # fresh object, no preset flags
    verts = polytope_vertices(ref)
    for v in verts:
        tight = sum(1 for a, b in ref.halfspaces if sum(x * y for x, y in zip(a, v)) == b)
        assert all(sum(x * y for x, y in zip(a, v)) <= b for a, b in ref.halfspaces)
        assert tight >= r
    assert set(verts) <= {tuple(map(Q, p)) for p in pts}
    assert convex_hull(verts, r).same_set(ref)


def test_polytope_text_round_trip():
    p = subdiff_zero(SEXTIC)
    text = p.to_text()
    assert text.startswith("polytope dim 2\nhalfspaces 3\n")
    assert Polytope.from_text(text).same_set(p)
    assert "vertices none (unbounded)" in Polytope(1, [((1,), 0)]).to_text()
    with pytest.raises(ParseError):
        Polytope.from_text("polygon 2\n")


# -- sublevel sets -----------------------------------------------------------


def test_sublevel_examples():
    seg = sublevel_polytope(cfg(1, ((-1,), 0), ((1,), 0)), 1)
    assert seg.is_bounded and seg.vertices == ((-1,), (1,))
    half = sublevel_polytope(cfg(1, ((1,), 0)), 0)
    assert not half.is_bounded and (Q(10**6),) in half
    tri = sublevel_polytope(SEXTIC, 0)
    assert set(tri.vertices) == {(-1, -1), (-1, 2), (2, -1)}


def _sublevel_of_hull(c, u):
    return convex_hull(oracles.sublevel_generators(c.finite_entries, u), c.rank)


def test_sublevel_hull_inclusion_and_the_failing_middle_level():
    c = cfg(1, ((-1,), 0), ((1,), 2))
    levels = convex_hull([w for w, y in c.finite_entries if y <= 1], 1)
    assert levels.vertices == ((-1,),)
    # the value of the lower hull at 0 is 1, so {w : B(w) <= 1} = [-1, 0] is strictly larger
    assert lower_hull_value(c, (0,)) == 1
    assert _sublevel_of_hull(c, 1).vertices == ((-1,), (0,))
    assert levels.issubset(_sublevel_of_hull(c, 1))


@settings(max_examples=50, deadline=None)
@given(configs(), st.integers(0, 24))
def test_sublevel_hull_inclusion_always_holds(c, k):
    u = Q(k, 4)
    low = [w for w, y in c.finite_entries if y <= u]
    big = _sublevel_of_hull(c, u)
    for g in oracles.sublevel_generators(c.finite_entries, u):
        assert lower_hull_value(c, g) <= u
    assert convex_hull(low, c.rank).issubset(big)
    if u == 0 or u >= max(y for _, y in c.finite_entries):
        assert convex_hull(low, c.rank).same_set(big)


# -- coercivity ------------------------------------------------------------


def test_recession_cone_criterion():
    assert recession_cone_trivial(SEXTIC)
    assert recession_cone_trivial(cfg(2, ((1, 0), 0), ((0, 1), 0), ((-1, -1), 1), ((2, 2), 0)))
    assert not recession_cone_trivial(cfg(2, ((1, 0), 0), ((0, 1), 0), ((-1, 0), 1)))
    assert not recession_cone_trivial(cfg(1, ((1,), 0), ((0,), 0)))
