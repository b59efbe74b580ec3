import pytest
import sympy as sp

from cuspenv.ctf import psi
from cuspenv.jets import MapJet, TruncatedSeries
from cuspenv.orbitspace import (check_inclusion_4, check_inclusion_5, determinacy_degree, du_plessis_determinacy,
                                extended_codimension, is_miniversal, order_reduction_check, quotient_basis,
                                tangent_generators)
from cuspenv.paramring import ParamPoly

from conftest import X, Y, series_to_sympy

d = ParamPoly.symbol("d")


def _tangent_oracle_rank(f, a, b):
    """rank of TA(f) + M^a E^2 modulo M^b, built with sympy from scratch."""
    f1, f2 = (series_to_sympy(c) for c in f)
    mons = lambda lo, hi: [X ** i * Y ** j for k in range(lo, hi) for i in range(k + 1) for j in [k - i]]
    vecs = []
    for m in mons(1, b):
        vecs.append((m * sp.diff(f1, X), m * sp.diff(f2, X)))
        vecs.append((m * sp.diff(f1, Y), m * sp.diff(f2, Y)))
    for i in range(b):
        for j in range(b):
            if i + j >= 1:
                g = f1 ** i * f2 ** j
                vecs.append((g, 0))
                vecs.append((0, g))
    for m in mons(a, b):
        vecs.append((m, 0))
        vecs.append((0, m))
    basis = [(c, m) for c in range(2) for m in mons(0, b)]

    def coords(v):
        polys = [sp.Poly(sp.expand(v[c]), X, Y) for c in range(2)]
        return [polys[c].coeff_monomial(m) for c, m in basis]

    return sp.Matrix([coords(v) for v in vecs]).rank(), len(basis)


def test_quotient_dimension():
    assert quotient_basis(2, 3).dimension == 6


def test_inclusion_5_determinant_symbolic():
    cert = check_inclusion_5(psi(d), 2, 2)
    assert cert.holds
    assert cert.square.shape == (14, 14)
    assert cert.square.determinant == 1280 * d


def test_inclusion_4_rank():
    cert = check_inclusion_4(psi(d), 2)
    assert cert.holds and cert.square.rank == 6


def test_delta_zero_fails_inclusion_5():
    assert not check_inclusion_5(psi(0), 2, 2).holds
    assert not du_plessis_determinacy(psi(0), 2, 2).certified


def test_determinacy_of_psi_one():
    assert du_plessis_determinacy(psi(1), 2, 2).certified
    assert order_reduction_check(psi(1), 4)
    assert determinacy_degree(psi(1), 4) == 3


def test_whitney_cusp_is_three_determined():
    x = TruncatedSeries.var(0, 6)
    y = TruncatedSeries.var(1, 6)
    f = MapJet([x, y ** 3 + x * y])
    assert determinacy_degree(f, 4) == 3


def test_codimension_of_psi_one_and_complement():
    res = extended_codimension(psi(1))
    assert res.codim == 2 and not res.lower_bound
    x = TruncatedSeries.var(0, 8)
    y = TruncatedSeries.var(1, 8)
    z = TruncatedSeries.zero(8)
    assert is_miniversal(psi(1), [MapJet([y, z]), MapJet([z, x])])
    assert not is_miniversal(psi(1), [MapJet([y, z])])


def test_order_reduction_rank_matches_sympy_oracle():
    ok = order_reduction_check(psi(1), 4)
    r_with, n = _tangent_oracle_rank(psi(1, 5), 4, 5)
    r_without, _ = _tangent_oracle_rank(psi(1, 5), 5, 5)
    # M^4 E^2 lies in TA + M^5 E^2 exactly when adding it does not raise the rank
    assert ok == (r_with == r_without)


def test_tangent_generators_are_labelled():
    gens = tangent_generators(psi(1), "TA", 3)
    assert any(g.label.startswith("x*") or g.label.startswith("y*") for g in gens.generators)
