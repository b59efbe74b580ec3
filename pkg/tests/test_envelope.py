from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from cuspenv.ctf import psi
from cuspenv.envelope import (DEGENERATE, REGULAR, SEMICUBIC, classify_branch, curve, envelope_of, hausdorff,
                              numeric_envelope, sample_branch, self_intersection, tangency_order)
from cuspenv.jets import MapJet, TruncatedSeries, compose, jacobian_determinant
from cuspenv.paramring import ParamPoly

from conftest import S, series_to_sympy

s = TruncatedSeries.var(0, 8, 1)
WINDOW = (-0.4, 0.4, -0.4, 0.4)


def _images(res):
    return {b.label: [series_to_sympy(c) for c in b.image] for b in res.branches}


def test_psi_one_branches():
    res = envelope_of(psi(1))
    imgs = _images(res)
    assert len(res.branches) == 2
    assert imgs["y = 0"] == [S ** 2, S ** 3]
    assert sp.expand(imgs["x = 0"][0] - (S ** 2 + S ** 3)) == 0 and imgs["x = 0"][1] == S ** 2
    assert all(b.tag == SEMICUBIC for b in res.branches)


def test_delta_zero_branch_is_degenerate():
    tags = {b.label: b.tag for b in envelope_of(psi(0)).branches}
    assert tags["x = 0"] == DEGENERATE and tags["y = 0"] == SEMICUBIC


def test_symbolic_delta_condition():
    b = next(b for b in envelope_of(psi(ParamPoly.symbol("d"))).branches if b.label == "x = 0")
    assert b.tag == SEMICUBIC and b.condition == "d ≠ 0"


def test_branch_sources_lie_on_critical_set():
    f = psi(Fraction(-2))
    J = jacobian_determinant(f)
    for b in envelope_of(f).branches:
        assert compose(J, b.source).truncate(J.order - 1).is_zero()


def test_fold_and_immersion():
    x = TruncatedSeries.var(0, 6)
    y = TruncatedSeries.var(1, 6)
    fold = envelope_of(MapJet([x, y * y]))
    assert [b.tag for b in fold.branches] == [REGULAR]
    assert envelope_of(MapJet([x, y])).branches == []


def test_classify_images():
    assert classify_branch(curve(s * s, s ** 3)) == SEMICUBIC
    assert classify_branch(curve(s, s * s)) == REGULAR
    assert classify_branch(curve(s * s, s ** 5)) == DEGENERATE


def test_tangency_orders():
    assert tangency_order(curve(s, s * 0), curve(s * 0, s)) == 0
    assert tangency_order(curve(s, s * 0), curve(s, s * s)) == 1
    assert tangency_order(curve(s, s * s), curve(s, s * s + s ** 3)) == 2


def _elimination_oracle(lam, delta):
    """Double points of s -> (lam s + s^2 + delta s^3, s^2): solve with s2 != s1 by sympy."""
    a, b = sp.symbols("a b")
    X = lambda t: lam * t + t ** 2 + delta * t ** 3
    sols = sp.solve([sp.expand((X(a) - X(b)) / (a - b)), a + b], [a, b], dict=True)
    real = [(r[a], r[b]) for r in sols if r[a].is_real and r[a] != r[b]]
    return real


@pytest.mark.parametrize("lam,delta", [(Fraction(-1, 100), 1), (Fraction(1, 100), 1), (Fraction(1, 50), -2),
                                       (Fraction(-1, 50), -2), (Fraction(3, 100), Fraction(1, 2))])
def test_self_intersection_against_elimination(lam, delta):
    b = curve(s.scale(ParamPoly.symbol("l")) + s * s + (s ** 3).scale(delta), s * s)
    r = self_intersection(b, "l", lam)
    pairs = _elimination_oracle(sp.Rational(lam.numerator, lam.denominator), sp.nsimplify(delta))
    assert r.exists == bool(pairs)
    if r.exists:
        want = -lam / Fraction(delta)
        assert r.point[0] == want and r.point[1] == want


def test_self_intersection_symbolic():
    b = curve(s.scale(ParamPoly.symbol("l")) + s * s + (s ** 3).scale(ParamPoly.symbol("d")), s * s)
    assert str(self_intersection(b, "l").exists) == "l/(d) < 0"


def test_numeric_envelope_near_symbolic_branches():
    f = psi(1)
    cloud = numeric_envelope(f, window=WINDOW, resolution=256)
    branches = [sample_branch(b, None, (-0.3, 0.3), 600) for b in envelope_of(f).branches]
    ref = np.vstack(branches)
    box = lambda a, r: a[np.all(np.abs(a) < r, axis=1)]
    ref = box(ref, 0.05)
    pts = box(cloud.image, 0.05)
    assert len(pts) > 10
    assert hausdorff(pts, ref) < 0.02
