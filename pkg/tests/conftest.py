"""Shared helpers: sympy conversion (the independent oracle) and hypothesis strategies."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cuspenv.jets import MapJet, TruncatedSeries
from cuspenv.paramring import ParamPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

X, Y, S = sp.symbols("x y s")


def poly_to_sympy(p: ParamPoly):
    out = sp.Integer(0)
    for mono, c in p.items():
        term = sp.Rational(c.numerator, c.denominator)
        for name, e in mono:
            term *= sp.Symbol(name) ** e
        out += term
    return out


def series_to_sympy(f: TruncatedSeries, names=None):
    names = names or ((S,) if f.nvars == 1 else (X, Y, sp.Symbol("z"))[: f.nvars])
    out = sp.Integer(0)
    for e, c in f.items():
        term = poly_to_sympy(c)
        for v, k in zip(names, e):
            term *= v ** k
        out += term
    return sp.expand(out)


def truncate_sympy(expr, variables, order):
    """Drop monomials of total degree > order in ``variables``."""
    p = sp.Poly(sp.expand(expr), *variables)
    return sp.expand(sum(c * sp.prod([v ** k for v, k in zip(variables, m)])
                         for m, c in p.terms() if sum(m) <= order))


def sympy_to_series(expr, variables=(X, Y), order=8) -> TruncatedSeries:
    p = sp.Poly(sp.expand(expr), *variables)
    terms = {}
    for m, c in p.terms():
        c = sp.Rational(c)
        terms[tuple(m)] = Fraction(int(c.p), int(c.q))
    return TruncatedSeries(terms, order, len(variables))


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonzero = small.filter(lambda q: q != 0)


@st.composite
def series(draw, order=4, nvars=2, min_degree=0, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.lists(st.integers(0, order), min_size=nvars, max_size=nvars)))
        if min_degree <= sum(e) <= order:
            terms[e] = draw(small)
    return TruncatedSeries(terms, order, nvars)


@st.composite
def germs(draw, order=4):
    """Plane germs with the origin fixed."""
    return MapJet([draw(series(order, 2, 1)), draw(series(order, 2, 1))])


@st.composite
def invertible_linear(draw):
    while True:
        a, b, c, d = (draw(small) for _ in range(4))
        if a * d - b * c != 0:
            return ((a, b), (c, d))


def random_ctf(rng, n, order=None, generic=True, remainder=True):
    """Random rational CTF data with flatness ``n`` (alpha_0..alpha_{n-1} = 0)."""
    from cuspenv.ctf import CTFData

    order = order or max(6, n + 3)

    def q(nonzero=False):
        while True:
            v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            if v or not nonzero:
                return v

    def coeffs(k=3):
        return [q() for _ in range(k)]

    while True:
        alpha = [Fraction(0)] * n + [q(True)] + coeffs(2)
        A, B, C, D = coeffs(), coeffs(), coeffs(), coeffs()
        if generic:
            B[0] = q(True)
            if A[0] * D[0] - B[0] * C[0] == 0:
                continue
        rem = None
        if remainder:
            t4 = {(i, 4): q() for i in range(2)}
            rem = MapJet([TruncatedSeries(t4, order), TruncatedSeries({(0, 4): q(), (1, 5): q()}, order)])
        return CTFData.make(alpha, A, B, C, D, rem, order)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
