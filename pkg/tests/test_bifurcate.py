from fractions import Fraction

import pytest
import sympy as sp

from cuspenv.bifurcate import (BEAKS, CUSPIDAL_EDGE, GAMMA_TO_U, LAM, MU, NU, OTHER, SELF_TANGENCY,
                               WHITNEY_UMBRELLA, classify_branch_surface, grid_sweep, h_branch_series, h_family,
                               k_family, miniversal_family, nu_family, sample_values, specialize, sweep,
                               tangential_deformation_check)
from cuspenv.ctf import psi
from cuspenv.jets import MapJet, TruncatedSeries
from cuspenv.paramring import ParamPoly

from conftest import X, Y, series_to_sympy, truncate_sympy

lam_s, d_s = sp.symbols("lam d")
VALUES = sample_values(Fraction(-1, 10), Fraction(1, 10), 21)


def test_specialize_zero_is_base():
    fam = miniversal_family(1)
    assert specialize(fam, {LAM: 0, MU: 0, NU: 0}) == psi(1)
    with pytest.raises(KeyError):
        specialize(fam, {"q": 1})


def test_formal_parameters_stay_formal():
    assert specialize(miniversal_family(1), {LAM: 0}).params() == {MU, NU}


def test_h_series_against_sympy():
    hs = h_branch_series()
    quad = series_to_sympy(hs.quadratic)
    assert sp.expand(quad - (3 * lam_s * X - 4 * Y + 6 * X * Y + 9 * d_s * X * Y ** 2)) == 0
    root = series_to_sympy(hs.sqrt_discriminant, (X,))
    disc = sp.expand((6 * X - 4) ** 2 - 4 * 9 * d_s * X * 3 * lam_s * X)
    oracle = sp.series(sp.sqrt(disc), X, 0, 7).removeO()
    assert sp.expand(truncate_sympy(root, (X,), 6) - truncate_sympy(oracle, (X,), 6)) == 0


def test_h_branch_solution_slope():
    ysol = h_branch_series(1).branch_solution
    assert ysol.coeff((1,)) == Fraction(3, 4) * ParamPoly.symbol(LAM)


def test_h_sweep_events():
    res = sweep(h_family(1), LAM, VALUES)
    gam = res.events_of(GAMMA_TO_U)
    assert len(gam) == 1 and abs(gam[0].location) < 1e-6
    assert all(s.tags["support"] == "semicubic-cusp" for s in res.samples)
    assert res.events_of(SELF_TANGENCY)


def test_k_sweep_mirrors_h():
    h = sweep(h_family(1), LAM, VALUES).events_of(GAMMA_TO_U)
    k = sweep(k_family(1), MU, VALUES).events_of(GAMMA_TO_U)
    assert len(k) == 1
    assert {h[0].branch, k[0].branch} == {"support", "second"}


def test_nu_sweep_quiet():
    assert sweep(nu_family(1), NU, VALUES).events == []


def test_sweep_rejects_out_of_radius():
    with pytest.raises(ValueError):
        sweep(h_family(1), LAM, [Fraction(1)])


@pytest.mark.parametrize("lam", [Fraction(1, 10), Fraction(-1, 10)])
def test_tangential_check(lam):
    chk = tangential_deformation_check(1, lam)
    assert chk.tangency_order == 2
    want = [Y, X ** 3 + X ** 2 * Y]
    assert all(sp.expand(series_to_sympy(c) - w) == 0 for c, w in zip(chk.normalized_jet, want))


def test_surface_classes():
    s = TruncatedSeries.var(0, 6)
    l = TruncatedSeries.var(1, 6)
    umbrella = MapJet([l * s + s * s + s ** 3, s * s, l])
    edge = MapJet([s * s + (l * l * s).scale(Fraction(3, 4)), s ** 3, l])
    assert classify_branch_surface(umbrella).kind == WHITNEY_UMBRELLA
    assert classify_branch_surface(edge).kind == CUSPIDAL_EDGE
    assert classify_branch_surface(MapJet([s, s * s, l])).kind == OTHER


def test_grid_sweep_strata():
    vals = [Fraction(k, 40) for k in (-3, -1, 1, 3)]
    _, events = grid_sweep(1, vals, vals, resolution=80)
    kinds = {(e.kind, e.stratum) for e in events}
    assert (BEAKS, "lam = 0") in kinds
    assert (SELF_TANGENCY, "mu = 0") in kinds
