from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from cuspenv.jets import (CoordChangeJet, MapJet, NonInvertibleError, NotAGermError, TruncatedSeries, compose,
                          differentiate, invert_coordinate_change, jacobian_determinant, solve_implicit)
from cuspenv.paramring import ParamPoly
from cuspenv.ctf import psi

from conftest import X, Y, germs, series, series_to_sympy, truncate_sympy

N = 6
x = TruncatedSeries.var(0, N)
y = TruncatedSeries.var(1, N)


def test_multiplication_truncates():
    p = (x + y) ** 7
    assert p.is_zero()
    assert (x * y).coeff((1, 1)) == 1
    assert (x ** 3).valuation() == 3


def test_reciprocal_and_sqrt():
    u = 1 + x + y * y
    assert (u * u.reciprocal()).agrees_with(TruncatedSeries.const(1, N))
    r = (1 + x).sqrt()
    assert (r * r).agrees_with(1 + x)


def test_jacobian_of_psi_symbolic():
    J = jacobian_determinant(psi(ParamPoly.symbol("d")))
    d = sp.Symbol("d")
    assert sp.expand(series_to_sympy(J) - (4 * X * Y - 6 * X ** 2 * Y - 9 * d * X ** 2 * Y ** 2)) == 0


def test_compose_rejects_constant_inner():
    inner = MapJet([x + 1, y])
    with pytest.raises(NotAGermError):
        compose(x * y, inner)


def test_invert_requires_invertible_linear_part():
    with pytest.raises(NonInvertibleError):
        invert_coordinate_change(CoordChangeJet([x * x + y, y]))


def test_solve_implicit_matches_sympy_series():
    G = y - x - x * y - y ** 3
    sol = solve_implicit(G, 1)
    assert compose(G, MapJet([x, sol])).is_zero()
    assert sol.coeff((1, 0)) == 1 and sol.coeff((2, 0)) == 1


def test_differentiate():
    f = x ** 3 * y + 2 * y * y
    assert differentiate(f, 0).agrees_with((3 * x * x * y).truncate(N - 1))


@settings(max_examples=60)
@given(series(4), series(4))
def test_product_matches_sympy(a, b):
    lhs = series_to_sympy(a * b)
    rhs = truncate_sympy(series_to_sympy(a) * series_to_sympy(b), (X, Y), 4)
    assert sp.expand(lhs - rhs) == 0


@settings(max_examples=40)
@given(series(4), germs(4))
def test_compose_matches_sympy(f, g):
    lhs = series_to_sympy(compose(f, g))
    sub = series_to_sympy(f).subs({X: series_to_sympy(g[0]), Y: series_to_sympy(g[1])}, simultaneous=True)
    assert sp.expand(lhs - truncate_sympy(sub, (X, Y), compose(f, g).order)) == 0
