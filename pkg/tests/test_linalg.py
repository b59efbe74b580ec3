import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspenv.linalg import bareiss, determinant, rank, vanishing_locus
from cuspenv.paramring import ParamPoly

from conftest import poly_to_sympy, small

d = ParamPoly.symbol("d")


def test_parametric_determinant():
    m = [[d, ParamPoly.const(1)], [ParamPoly.const(2), d]]
    assert determinant(m) == d * d - 2
    assert rank([[d, 2 * d], [ParamPoly.const(1), ParamPoly.const(2)]]) == 1


def test_vanishing_locus_of_parametric_matrix():
    m = [[d, ParamPoly()], [ParamPoly(), ParamPoly.const(1)]]
    assert vanishing_locus(m) != []


@st.composite
def matrices(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    return [[ParamPoly.const(draw(small)) + draw(small) * d for _ in range(m)] for _ in range(n)]


@settings(max_examples=80)
@given(matrices())
def test_rank_agrees_with_sympy(m):
    oracle = sp.Matrix([[poly_to_sympy(v) for v in row] for row in m]).rank(simplify=True)
    assert bareiss(m).rank == oracle


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_agrees_with_sympy(rows):
    m = [[ParamPoly.const(v) for v in r] for r in rows]
    assert determinant(m) == ParamPoly.const(sp.Matrix(rows).det())
