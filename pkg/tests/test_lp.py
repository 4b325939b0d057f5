import itertools
from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st

from gitloci import lp

from .oracles import solve_unique


def test_beale_cycling_example_terminates():
    # classic instance on which the textbook pivot rule cycles
    c = [Q(-3, 4), 150, Q(-1, 50), 6]
    a = [[Q(1, 4), -60, Q(-1, 25), 9], [Q(1, 2), -90, Q(-1, 50), 3], [0, 0, 1, 0]]
    res = lp.linprog(c, a, [0, 0, 1])
    assert res.optimal
    assert res.value == Q(-1, 20)
    assert res.x == (Q(1, 25), 0, 1, 0)


def test_infeasible_and_unbounded():
    assert lp.linprog([1], [[1], [-1]], [1, -2]).status == lp.INFEASIBLE
    assert lp.linprog([-1], [[-1]], [0]).status == lp.UNBOUNDED
    assert lp.linprog([1, 1], a_eq=[[1, 1], [1, 1]], b_eq=[1, 1]).value == 1  # redundant row


def test_free_variables():
    res = lp.linprog([1, 0], [[-1, 0], [0, 1]], [3, 2], free=True)
    assert res.value == -3 and res.x[0] == -3


def _vertex_oracle(c, a, b):
    """Optimum of min c.x over {a x <= b} in 2 variables by enumerating vertices."""
    best = None
    for i, j in itertools.combinations(range(len(a)), 2):
        x = solve_unique([a[i], a[j]], [b[i], b[j]])
        if x is None or any(sum(r * v for r, v in zip(row, x)) > bi for row, bi in zip(a, b)):
            continue
        val = c[0] * x[0] + c[1] * x[1]
        best = val if best is None or val < best else best
    return best


small = st.integers(-4, 4)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.tuples(small, small, st.integers(-3, 6)), min_size=1, max_size=6),
    st.tuples(small, small),
)
def test_matches_vertex_enumeration_in_the_box(rows, c):
    # the fixed box keeps every instance bounded with a vertex optimum
    a = [[x, y] for x, y, _ in rows] + [[1, 0], [-1, 0], [0, 1], [0, -1]]
    b = [z for _, _, z in rows] + [5, 5, 5, 5]
    res = lp.linprog(list(c), a, b, free=True)
    expected = _vertex_oracle(c, a, b)
    if expected is None:
        assert res.status == lp.INFEASIBLE
    else:
        assert res.optimal and res.value == expected
        assert all(sum(r * v for r, v in zip(row, res.x)) <= bi for row, bi in zip(a, b))
