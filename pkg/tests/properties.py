"""Randomised invariant checks shared by the hypothesis suite and the acceptance run.

Each ``check_*`` takes a ``random.Random`` and returns None or raises AssertionError.
"""
from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

from cuspenv.ctf import psi
from cuspenv.envelope import envelope_of
from cuspenv.jets import MapJet, TruncatedSeries, apply_matrix, compose, differentiate, jacobian_determinant, \
    linear_map
from cuspenv.orbitspace import du_plessis_determinacy, extended_codimension
from cuspenv.paramring import ParamPoly


def rq(rng, lo=-3, hi=3, den=3, nonzero=False):
    while True:
        v = Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))
        if v or not nonzero:
            return v


def rseries(rng, order=4, nvars=2, min_degree=0, terms=5):
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = [0] * nvars
        for _ in range(rng.randint(min_degree, order)):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rq(rng)
    return TruncatedSeries(out, order, nvars)


def rgerm(rng, order=4, min_degree=1):
    return MapJet([rseries(rng, order, 2, min_degree), rseries(rng, order, 2, min_degree)])


def rlinear(rng):
    while True:
        m = [[rq(rng, -2, 2, 2) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            return [[ParamPoly.const(v) for v in row] for row in m]


def check_ring(rng):
    a, b, c = (rseries(rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a


def check_chain_rule(rng):
    f = rseries(rng, 5)
    g = rgerm(rng, 5)
    lhs = differentiate(compose(f, g), 0)
    fx, fy = (compose(differentiate(f, k), g) for k in range(2))
    rhs = fx * differentiate(g[0], 0) + fy * differentiate(g[1], 0)
    k = min(lhs.order, rhs.order) - 1
    assert lhs.truncate(k) == rhs.truncate(k)


def check_associativity(rng):
    f, g, h = rseries(rng, 4), rgerm(rng, 4), rgerm(rng, 4)
    left = compose(f, MapJet(compose(g, h)))
    right = compose(compose(f, g), h)
    k = min(left.order, right.order)
    assert left.truncate(k) == right.truncate(k)


def perturbed_psi(rng, order=10):
    """psi_delta plus random terms of degree 4 and 5 (same 3-jet, so the same germ type).

    Higher perturbation degrees need a working order growing with the degree
    to separate the branches; 4 and 5 are resolved at order 10.
    """
    delta = rq(rng, nonzero=True)
    base = psi(delta, order)
    return MapJet([base[0] + rseries(rng, 5, 2, 4, 3).with_order(order),
                   base[1] + rseries(rng, 5, 2, 4, 3).with_order(order)])


def check_branch_soundness(rng):
    f = perturbed_psi(rng)
    J = jacobian_determinant(f)
    res = envelope_of(f)
    assert len(res.branches) == 2
    for b in res.branches:
        k = min(J.order, b.source.order) - 1
        assert compose(J, b.source).truncate(k).is_zero()


def transformed(rng, f):
    src = linear_map(rlinear(rng), f.order)
    return apply_matrix(rlinear(rng), compose(f, src))


def _tags(f):
    return Counter(b.tag for b in envelope_of(f).branches)


def check_envelope_invariance(rng):
    f = perturbed_psi(rng)
    assert _tags(transformed(rng, f)) == _tags(f)


def check_determinacy_invariance(rng):
    f = psi(rq(rng, nonzero=True) if rng.random() < 0.8 else 0, 6)
    g = transformed(rng, f)
    assert du_plessis_determinacy(g, 2, 2).certified == du_plessis_determinacy(f, 2, 2).certified


def check_codim_invariance(rng):
    f = perturbed_psi(rng, 6)
    g = transformed(rng, f)  # the cap-6 computation only needs the 6-jet
    assert extended_codimension(g, 6).codim == extended_codimension(f, 6).codim


SUITE = [
    ("jet-ring laws", check_ring, 250),
    ("chain rule", check_chain_rule, 150),
    ("composition associativity", check_associativity, 150),
    ("Newton-branch soundness", check_branch_soundness, 200),
    ("A-invariance of envelope", check_envelope_invariance, 150),
    ("A-invariance of determinacy", check_determinacy_invariance, 85),
    ("A-invariance of codimension", check_codim_invariance, 15),
]


def run_suite(seed=0):
    """Run every check; returns {name: (cases, failures)}."""
    out = {}
    for name, fn, count in SUITE:
        rng = random.Random(f"{seed}:{name}")
        fails = 0
        for _ in range(count):
            try:
                fn(rng)
            except AssertionError:
                fails += 1
        out[name] = (count, fails)
    return out
