from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from cuspenv.paramring import ParamPoly, factor_locus

from conftest import poly_to_sympy, small

d = ParamPoly.symbol("d")
l = ParamPoly.symbol("l")


@st.composite
def polys(draw):
    out = ParamPoly()
    for _ in range(draw(st.integers(0, 4))):
        out = out + draw(small) * d ** draw(st.integers(0, 3)) * l ** draw(st.integers(0, 2))
    return out


def test_arithmetic_basics():
    p = (d + 1) * (d - 1)
    assert p == d ** 2 - 1
    assert str(1280 * d) == "1280*d"
    assert (p.exquo(d + 1)) == d - 1
    assert ParamPoly.const(Fraction(3, 4)).as_fraction() == Fraction(3, 4)
    assert not ParamPoly()
    assert p.params() == {"d"}


def test_exquo_rejects_non_divisor():
    with pytest.raises(ArithmeticError):
        (d ** 2 + 1).exquo(d + 1)


def test_subs_and_evaluate():
    p = 3 * d * l - l ** 2
    assert p.subs({"d": 2}) == 6 * l - l ** 2
    assert p.evaluate({"d": 1.0, "l": 2.0}) == pytest.approx(2.0)


def test_factor_locus_lists_zero_set():
    assert any("d" in s for s in factor_locus(1280 * d))


@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ParamPoly()


@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert sp.expand(poly_to_sympy(a * b) - poly_to_sympy(a) * poly_to_sympy(b)) == 0
