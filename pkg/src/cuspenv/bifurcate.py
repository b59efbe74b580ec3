"""Deformations of the double-cusp envelope germ and their envelope perestroikas.

The three-parameter family ``psi_d + (lam*y + nu*y^3, mu*x)`` and its axes are
swept with exact rational samples.  Branches are followed as families in the
sweep parameter (promoted to a third jet variable), so that self-intersection
and cusp persistence are decided on formal series and only evaluated at the
samples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import envelope as env
from .ctf import psi
from .jets import (DEFAULT_ORDER, CoordChangeJet, MapJet, TruncatedSeries, compose, differentiate,
                   invert_coordinate_change, jacobian_determinant, solve_implicit)
from .paramring import ParamPoly

GAMMA_TO_U = "gamma-to-U"
SELF_TANGENCY = "second-order-self-tangency"
BEAKS = "beaks"
NONE = "none"

WHITNEY_UMBRELLA = "whitney-umbrella"
CUSPIDAL_EDGE = "cuspidal-edge"
OTHER = "other"

LAM, MU, NU = "lam", "mu", "nu"
DEFAULT_RADIUS = Fraction(1, 5)
BISECTION_WIDTH = 1e-6


# -- families ------------------------------------------------------------------------


@dataclass
class DeformationFamily:
    """``base + sum_p p * terms[p]`` with formal parameters ``p``."""

    base: MapJet
    terms: Dict[str, MapJet] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for p, t in self.terms.items():
            if len(t) != len(self.base):
                raise ValueError(f"deformation term {p} has the wrong number of components")

    @property
    def parameters(self) -> List[str]:
        return list(self.terms)

    @property
    def order(self) -> int:
        return self.base.order

    def jet(self) -> MapJet:
        """The family with every parameter left formal."""
        return specialize(self, {})

    def restricted(self, keep: Sequence[str], name: str = "") -> "DeformationFamily":
        return DeformationFamily(self.base, {p: self.terms[p] for p in keep}, name or self.name)


def specialize(fam: DeformationFamily, values: Mapping[str, object]) -> MapJet:
    """Exact substitution; unassigned parameters stay formal."""
    unknown = set(values) - set(fam.terms)
    if unknown:
        raise KeyError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    out = fam.base
    for p, t in fam.terms.items():
        v = ParamPoly.coerce(values[p]) if p in values else ParamPoly.symbol(p)
        if v:
            out = out + t.scale(v)
    return out


def miniversal_family(delta=1, order: int = DEFAULT_ORDER) -> DeformationFamily:
    x = TruncatedSeries.var(0, order)
    y = TruncatedSeries.var(1, order)
    z = TruncatedSeries.zero(order)
    return DeformationFamily(psi(delta, order), {
        LAM: MapJet([y, z]), MU: MapJet([z, x]), NU: MapJet([y ** 3, z])}, "Psi")


def h_family(delta=1, order: int = DEFAULT_ORDER) -> DeformationFamily:
    return miniversal_family(delta, order).restricted([LAM], "H")


def k_family(delta=1, order: int = DEFAULT_ORDER) -> DeformationFamily:
    return miniversal_family(delta, order).restricted([MU], "K")


def nu_family(delta=1, order: int = DEFAULT_ORDER) -> DeformationFamily:
    return miniversal_family(delta, order).restricted([NU], "nu")


# -- the series of the H critical set ----------------------------------------------


@dataclass
class HBranchSeries:
    critical_set_polynomial: TruncatedSeries  # 3x^2(lam + 2y + 3d y^2) - 4xy
    quadratic: TruncatedSeries  # (9 d x) y^2 + (6x - 4) y + 3 lam x
    discriminant: TruncatedSeries  # in x
    sqrt_discriminant: TruncatedSeries  # in x
    branch_solution: TruncatedSeries  # y(x), coefficients in Q[d, lam]

    def as_dict(self) -> dict:
        return {
            "criticalSetPolynomial": str(self.critical_set_polynomial),
            "quadratic": str(self.quadratic),
            "discriminant": self.discriminant.format(("x",)),
            "sqrtDiscriminant": self.sqrt_discriminant.format(("x",)),
            "branchSolution": self.branch_solution.format(("x",)),
        }


def h_branch_series(delta=None, order: int = DEFAULT_ORDER) -> HBranchSeries:
    """Critical set of ``H = psi_d + (lam*y, 0)`` and its non-axis branch ``y(x)``."""
    d = ParamPoly.symbol("d") if delta is None else ParamPoly.coerce(delta)
    if not d:
        raise ValueError("the branch series needs d != 0")
    fam = h_family(d, order)
    H = fam.jet()
    crit = -jacobian_determinant(H)
    if crit.monomial_content(0) < 1:
        raise ArithmeticError("critical set polynomial is not divisible by x")
    quad = crit.divide_by_monomial(0, 1)  # drop the x = 0 family
    # as a polynomial in y: a y^2 + b y + c with a = 9 d x, b = 6x - 4, c = 3 lam x
    a = _y_coefficient(quad, 2)
    b = _y_coefficient(quad, 1)
    c = _y_coefficient(quad, 0)
    disc = b * b - (a * c).scale(4)
    root = (-disc if disc.constant_term().as_fraction() < 0 else disc).sqrt()
    if root.constant_term().as_fraction() < 0:
        root = -root
    ysol = env._to_univariate(solve_implicit(quad, 1), 0)
    return HBranchSeries(crit, quad, disc, root, ysol)


def _y_coefficient(q: TruncatedSeries, k: int) -> TruncatedSeries:
    return TruncatedSeries({(e[0],): c for e, c in q.items() if e[1] == k}, q.order, 1)


# -- branch surfaces -------------------------------------------------------------------


@dataclass
class SurfaceClass:
    kind: str
    witnesses: Dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"class": self.kind, "witnesses": {k: str(v) for k, v in self.witnesses.items()}}


def _unfolding_form(F: MapJet) -> MapJet:
    """Bring ``(s, lam) -> R^3`` to the form ``(X, Y, lam)`` by a source change."""
    lam = TruncatedSeries.var(1, F.order)
    if F[2].agrees_with(lam):
        return F
    h = CoordChangeJet([TruncatedSeries.var(0, F.order), F[2]])
    hinv = invert_coordinate_change(h)
    return MapJet([compose(F[0], hinv), compose(F[1], hinv), lam.truncate(hinv.order)])


def classify_branch_surface(F: MapJet) -> SurfaceClass:
    """Whitney umbrella ``(lam s, s^2, lam)`` versus cuspidal edge ``(s^2, s^3, lam)``.

    ``F`` is a 3-component jet in (branch parameter ``s``, ``lam``).  The
    umbrella is recognised by the cross-cap 2-jet test; the edge by reducing
    the slice family to ``(s^2, s * O(s^2, lam))`` and checking that
    ``O(0, lam)`` vanishes through the 3-jet.
    """
    if len(F) != 3 or F.nvars != 2:
        raise ValueError("expected a 3-component jet in (s, lam)")
    try:
        G = _unfolding_form(F)
    except Exception as exc:  # third component not a coordinate
        return SurfaceClass(OTHER, {"reason": f"no unfolding form: {exc}"})
    X, Y = G[0], G[1]
    if X.coeff((1, 0)) or Y.coeff((1, 0)):
        return SurfaceClass(OTHER, {"reason": "immersion at the origin"})
    c = lambda f, e: f.coeff(e).as_fraction() if f.coeff(e).is_constant() else None
    mat = [[c(X, (2, 0)), c(X, (1, 1))], [c(Y, (2, 0)), c(Y, (1, 1))]]
    if any(v is None for row in mat for v in row):
        return SurfaceClass(OTHER, {"reason": "parametric 2-jet"})
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if det:
        return SurfaceClass(WHITNEY_UMBRELLA, {"crossCapDeterminant": det,
                                               "normalForm": "(lam*s, s^2, lam)"})
    # cuspidal edge: the slice lam = 0 must be a semicubic cusp
    slice0 = MapJet([env._to_univariate(X.restrict(1, 0), 0), env._to_univariate(Y.restrict(1, 0), 0)])
    if env.classify_branch(slice0) != env.SEMICUBIC:
        return SurfaceClass(OTHER, {"reason": f"slice at lam = 0 is {env.classify_branch(slice0)}"})
    if not mat[0][0]:
        X, Y = Y, X
    a = mat[0][0] if mat[0][0] else mat[1][0]
    Y = Y - X.scale(Fraction(Y.coeff((2, 0)).as_fraction(), a))  # s^2 only in X
    N = X.order
    s0 = solve_implicit(differentiate(X, 0), 0)  # fold curve of X in s
    shift = MapJet([(s0 + TruncatedSeries.var(0, N)).truncate(N - 1), TruncatedSeries.var(1, N - 1)])
    Xs, Ys = compose(X, shift), compose(Y, shift)
    Xs = Xs - Xs.restrict(0, 0)
    U = Xs.divide_by_monomial(0, 2)
    sigma = TruncatedSeries.var(0, U.order) * U.scale(1 / a).sqrt()
    inv = invert_coordinate_change(CoordChangeJet([sigma, TruncatedSeries.var(1, sigma.order)]))
    Yn = compose(Ys, inv)
    _, odd = env._split_even_odd(Yn)
    edge_terms = odd.restrict(0, 0)  # O(0, lam): obstruction to a cuspidal edge
    low = [j for (i, j), v in edge_terms.items() if 1 + j <= 3]
    witnesses = {"foldCurve": s0.format(("s", "lam")), "obstruction": edge_terms.format(("s", "lam"))}
    if low:
        return SurfaceClass(OTHER, dict(witnesses, reason="s*lam^k terms in the 3-jet"))
    witnesses["normalForm"] = "(s^2, s^3, lam)"
    witnesses["level"] = "3-jet"
    return SurfaceClass(CUSPIDAL_EDGE, witnesses)


# -- branch families --------------------------------------------------------------------


@dataclass
class BranchFamily:
    """A critical branch followed in one deformation parameter (third slot)."""

    role: str
    source: MapJet  # (x(s, p), y(s, p))
    image: MapJet  # (X(s, p), Y(s, p))
    fold: Optional[TruncatedSeries] = None  # cusp location s0(p) if the cusp persists

    def at(self, value) -> MapJet:
        v = ParamPoly.coerce(value)
        return MapJet([env._to_univariate(c.restrict(1, v), 0) for c in self.image])


def _promote_family(f: MapJet, param: str) -> MapJet:
    return MapJet([c.promote_param(param) for c in f])


def branch_families(fam: DeformationFamily, axis: str, others: Mapping[str, object] | None = None
                    ) -> Tuple[List[BranchFamily], List[str]]:
    """Critical branches of the one-parameter subfamily along ``axis``.

    The parameter is promoted to a third variable; the Jacobian is split into
    monomial factors and the rest is solved by the implicit function theorem.
    Branch roles are named after the undeformed germ: ``support`` (the x-axis
    branch of psi) and ``second`` (the y-axis branch).
    """
    values = {p: 0 for p in fam.terms if p != axis}
    values.update(others or {})
    f = _promote_family(specialize(fam, values), axis)  # variables (x, y, p)
    N = f.order
    J = differentiate(f[0], 0) * differentiate(f[1], 1) - differentiate(f[0], 1) * differentiate(f[1], 0)
    s = TruncatedSeries.var(0, N)
    p = TruncatedSeries.var(1, N)
    z = TruncatedSeries.zero(N)
    sources = []
    residual = []
    G = J
    kx, ky = G.monomial_content(0), G.monomial_content(1)
    if kx:
        sources.append(("second", [z, s]))
        G = G.divide_by_monomial(0, kx)
    if ky:
        sources.append(("support", [s, z]))
        G = G.divide_by_monomial(1, ky)
    if not G.constant_term():
        gx, gy = G.coeff((1, 0, 0)), G.coeff((0, 1, 0))
        if gy and gy.is_constant():
            ysol = solve_implicit(G, 1)  # y(x, p)
            sources.append(("support", [s, _two_slot(ysol, 0, 2)]))
        elif gx and gx.is_constant():
            xsol = solve_implicit(G, 0)  # x(y, p)
            sources.append(("second", [_two_slot(xsol, 1, 2), s]))
        else:
            residual.append(f"unresolved Jacobian factor: {G}")
    out = []
    for role, (xs, ys) in sources:
        src = MapJet([xs, ys])
        inner = MapJet([xs, ys, p.truncate(src.order)])
        img = MapJet([compose(c, inner) for c in f])
        img = MapJet([c - c.restrict(0, 0).restrict(1, 0) for c in img])  # translate base point
        out.append(BranchFamily(role, src, img, _fold_curve(img)))
    return out, residual


def _two_slot(series: TruncatedSeries, svar: int, pvar: int) -> TruncatedSeries:
    return TruncatedSeries({(e[svar], e[pvar]): c for e, c in series.items()}, series.order)


def _fold_curve(img: MapJet) -> Optional[TruncatedSeries]:
    """``s0(p)`` with vanishing velocity along the family, if the cusp persists."""
    for k in (0, 1):
        dk = differentiate(img[k], 0)
        lin = dk.coeff((1, 0))
        if lin and lin.is_constant():
            s0 = solve_implicit(dk, 0)
            other = differentiate(img[1 - k], 0)
            path = MapJet([(s0 + TruncatedSeries.var(0, s0.order)).truncate(s0.order),
                           TruncatedSeries.var(1, s0.order)])
            rest = compose(other, path).restrict(0, 0)
            return s0 if rest.is_zero() else None
    return None


def _cusp_tag(bf: BranchFamily, value) -> str:
    """Tag of the sample curve at its (possibly displaced) singular point."""
    if bf.fold is None:
        tag = env.classify_branch(bf.at(value))
        if tag == env.REGULAR or value != 0:
            return env.REGULAR if tag in (env.REGULAR, env.UNRESOLVED) or value != 0 else tag
        return tag
    N = bf.fold.order
    path = MapJet([(bf.fold + TruncatedSeries.var(0, N)), TruncatedSeries.var(1, N)])
    moved = BranchFamily(bf.role, bf.source, MapJet([compose(c, path) for c in bf.image]))
    shifted = moved.at(value)
    shifted = MapJet([c - c.constant_term() for c in shifted])
    return env.classify_branch(shifted)


# -- sweeps ----------------------------------------------------------------------------


@dataclass
class BifurcationEvent:
    kind: str
    location: object  # a number (bisected) or a stratum equation
    branch: str
    stratum: str = ""
    confidence: str = "high"
    interval: Optional[Tuple[float, float]] = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "branch": self.branch, "confidence": self.confidence}
        out["location"] = self.location if isinstance(self.location, str) else float(self.location)
        if self.stratum:
            out["stratum"] = self.stratum
        if self.interval is not None:
            out["interval"] = [float(self.interval[0]), float(self.interval[1])]
        return out


@dataclass
class SweepSample:
    value: Fraction
    envelope: env.EnvelopeResult
    tags: Dict[str, str]
    self_intersecting: Dict[str, bool]
    tangency: Optional[object] = None

    def as_dict(self) -> dict:
        return {"value": str(self.value), "tags": dict(self.tags),
                "selfIntersecting": dict(self.self_intersecting),
                "tangencyOrder": self.tangency,
                "branches": [b.as_dict() for b in self.envelope.branches],
                "residual": list(self.envelope.residual)}


@dataclass
class SweepResult:
    family: str
    axis: str
    delta: Fraction
    samples: List[SweepSample]
    events: List[BifurcationEvent]
    conditions: Dict[str, str]

    def events_of(self, kind: str) -> List[BifurcationEvent]:
        return [e for e in self.events if e.kind == kind]

    def as_dict(self) -> dict:
        return {"family": self.family, "axis": self.axis, "delta": str(self.delta),
                "conditions": dict(self.conditions),
                "samples": [s.as_dict() for s in self.samples],
                "events": [e.as_dict() for e in self.events]}


def sample_values(lo=-DEFAULT_RADIUS / 2, hi=DEFAULT_RADIUS / 2, count: int = 21) -> List[Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def sweep(fam: DeformationFamily, axis: str, values: Sequence | None = None, delta=None,
          radius=DEFAULT_RADIUS) -> SweepResult:
    """Envelopes along one parameter axis with gamma-to-U and self-tangency events."""
    if axis not in fam.terms:
        raise KeyError(f"unknown parameter: {axis}")
    if delta is not None:
        fam = DeformationFamily(psi(delta, fam.order), fam.terms, fam.name)
    dval = _delta_of(fam)
    if dval == 0:
        raise ValueError("sweeps need d != 0")
    values = sorted(Fraction(v) for v in (values if values is not None else sample_values()))
    if values and max(abs(v) for v in values) > Fraction(radius):
        raise ValueError(f"sample values exceed the sweep radius {radius}")
    families, residual = branch_families(fam, axis)
    selfint = {}
    conditions = {}
    for bf in families:
        try:
            si = env.self_intersection(bf.image, param=axis)
            selfint[bf.role] = bf
            conditions[bf.role] = str(si.exists)
        except ValueError as exc:
            conditions[bf.role] = f"unresolved: {exc}"
    samples = []
    for v in values:
        germ = specialize(fam, {p: (v if p == axis else 0) for p in fam.terms})
        res = env.envelope_of(germ)
        res.residual.extend(residual)
        tags = {bf.role: _cusp_tag(bf, v) for bf in families}
        flags = {role: _exists(bf, axis, v) for role, bf in selfint.items()}
        samples.append(SweepSample(v, res, tags, flags, _sample_tangency(res)))
    events = []
    for role, bf in selfint.items():
        for a, b in zip(samples, samples[1:]):
            if a.self_intersecting[role] != b.self_intersecting[role]:
                lo, hi = _bisect(lambda t: _exists(bf, axis, t), a.value, b.value)
                events.append(BifurcationEvent(GAMMA_TO_U, (lo + hi) / 2, role,
                                               _stratum(conditions[role], axis), interval=(lo, hi)))
    for role in conditions:
        if conditions[role].startswith("unresolved"):
            events.append(BifurcationEvent("unresolved", conditions[role], role))
    tangent = [s for s in samples if s.value != 0 and s.tangency == 2]
    if tangent and len(tangent) == sum(1 for s in samples if s.value != 0):
        events.append(BifurcationEvent(SELF_TANGENCY, f"{axis} != 0", "support/second",
                                       _other_axes_zero(fam, axis)))
    return SweepResult(fam.name, axis, dval, samples, events, conditions)


def _delta_of(fam: DeformationFamily):
    c = fam.base[0].coeff((0, 3))
    return c.as_fraction() if c.is_constant() else c


def _exists(bf: BranchFamily, axis: str, value) -> bool:
    return bool(env.self_intersection(bf.image, param=axis, value=Fraction(value)).exists)


def _bisect(pred, lo, hi, width: float = BISECTION_WIDTH):
    lo, hi = Fraction(lo), Fraction(hi)
    plo = pred(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if pred(mid) == plo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _stratum(condition: str, axis: str) -> str:
    return f"{axis} = 0" if axis in condition else ""


def _other_axes_zero(fam: DeformationFamily, axis: str) -> str:
    others = [p for p in fam.terms if p != axis]
    return ", ".join(f"{p} = 0" for p in others) if others else f"{axis} != 0"


def _sample_tangency(res: env.EnvelopeResult):
    """Contact order of two branch images through the common image point at the origin."""
    if len(res.branches) != 2:
        return None
    b1, b2 = res.branches
    try:
        return env.tangency_order(b1, b2)
    except (ValueError, ArithmeticError):
        return None


# -- tangential deformation check ---------------------------------------------------------


@dataclass
class TangentialCheck:
    tangency_order: object
    reduced_jet: MapJet  # (y, a x^3 + b x^2 y) after the source change, modulo degree 4
    normalized_jet: MapJet  # (y, x^3 + x^2 y)
    scaling: Fraction

    def as_dict(self) -> dict:
        return {"tangencyOrder": self.tangency_order, "reducedJet": str(self.reduced_jet),
                "normalizedJet": str(self.normalized_jet), "xScaling": str(self.scaling)}


def tangential_deformation_check(delta=1, lam=Fraction(1, 10), order: int = DEFAULT_ORDER) -> TangentialCheck:
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("tangency is undefined at lam = 0 (double-cusp point)")
    if Fraction(delta) == 0:
        raise ValueError("needs d != 0")
    H = specialize(h_family(delta, order), {LAM: lam})
    res = env.envelope_of(H)
    if len(res.branches) != 2:
        raise ArithmeticError(f"expected two envelope branches, found {len(res.branches)}")
    k = env.tangency_order(res.branches[0], res.branches[1])
    # new y-coordinate: the first component (its linear part is lam*y)
    x = TruncatedSeries.var(0, order)
    y = TruncatedSeries.var(1, order)
    hinv = invert_coordinate_change(CoordChangeJet([x, H[0]]))
    g = compose(H[1], hinv)
    g3 = TruncatedSeries({e: c for e, c in g.truncate(3).items() if e[0] > 0}, 3)  # drop functions of y
    a = g3.coeff((3, 0)).as_fraction()
    b = g3.coeff((2, 1)).as_fraction()
    extra = {e: c for e, c in g3.items() if e not in ((3, 0), (2, 1))}
    if not a or not b or extra:
        raise ArithmeticError(f"reduced 3-jet not of the form a x^3 + b x^2 y: {g3}")
    reduced = MapJet([y.truncate(3), g3])
    alpha = b / a  # x -> alpha x, then divide the target by a alpha^3
    X = TruncatedSeries.var(0, 3)
    Y = TruncatedSeries.var(1, 3)
    scaled = compose(g3, MapJet([X.scale(alpha), Y])).scale(1 / (a * alpha ** 3))
    return TangentialCheck(k, reduced, MapJet([Y, scaled]), alpha)


# -- beaks and the diagram ---------------------------------------------------------------


def _labels(points: np.ndarray, radius: float) -> np.ndarray:
    """Connected-component label per point under the ``radius`` neighbour graph."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components
    from scipy.spatial import cKDTree

    n = len(points)
    pairs = cKDTree(points).query_pairs(radius, output_type="ndarray")
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    return connected_components(graph, directed=False)[1]


ARMS = ("E", "N", "W", "S")


def arm_pairing(germ: MapJet, window=(-0.3, 0.3, -0.3, 0.3), resolution: int = 120) -> Tuple[Tuple[str, ...], ...]:
    """How the critical-set arms leaving the window are joined near the origin.

    Each component of the numeric critical set is reduced to the set of
    compass directions (E, N, W, S) in which it reaches the window border; the
    sorted tuple of these sets is a topological signature that changes when
    the critical set passes through a crossing.
    """
    cloud = env.numeric_envelope(germ, window=window, resolution=resolution)
    pts = cloud.source
    if len(pts) == 0:
        return ()
    step = (window[1] - window[0]) / resolution
    lab = _labels(pts, 2.5 * step)
    half = min(window[1] - window[0], window[3] - window[2]) / 2
    cx, cy = (window[0] + window[1]) / 2, (window[2] + window[3]) / 2
    rel = pts - np.array([cx, cy])
    rim = np.max(np.abs(rel), axis=1) > 0.9 * half
    out = []
    for comp in np.unique(lab):
        sel = (lab == comp) & rim
        if not sel.any():
            continue
        ang = np.degrees(np.arctan2(rel[sel, 1], rel[sel, 0])) % 360
        arms = sorted({ARMS[int(((a + 45) % 360) // 90)] for a in ang}, key=ARMS.index)
        out.append(tuple(arms))
    return tuple(sorted(out))


def grid_sweep(delta=1, lam_values: Sequence | None = None, mu_values: Sequence | None = None,
               window=(-0.3, 0.3, -0.3, 0.3), resolution: int = 120) -> Tuple[Dict, List[BifurcationEvent]]:
    """Critical-set arm pairings over a (lam, mu) grid.

    Neighbouring samples with ``lam*mu != 0`` whose pairings differ straddle
    a stratum.  Crossings of ``mu = 0`` are the tangential (second-order
    self-tangency) strata of the lam-axis; every other change is reported as
    a beaks candidate with low confidence.
    """
    fam = miniversal_family(delta)
    lam_values = [Fraction(v) for v in (lam_values or sample_values(count=8))]
    mu_values = [Fraction(v) for v in (mu_values or sample_values(count=8))]
    sig = {}
    for l in lam_values:
        for m in mu_values:
            sig[(l, m)] = arm_pairing(specialize(fam, {LAM: l, MU: m, NU: 0}), window, resolution)
    crossings: Dict[Tuple[str, str], List[Fraction]] = {}
    for i in range(len(lam_values)):
        for j in range(len(mu_values)):
            for di, dj in ((1, 0), (0, 1)):
                if i + di >= len(lam_values) or j + dj >= len(mu_values):
                    continue
                p, q = (lam_values[i], mu_values[j]), (lam_values[i + di], mu_values[j + dj])
                if 0 in p or 0 in q or sig[p] == sig[q]:
                    continue
                if p[1] * q[1] < 0:
                    crossings.setdefault((SELF_TANGENCY, f"{MU} = 0"), []).append(p[0])
                elif p[0] * q[0] < 0:
                    crossings.setdefault((BEAKS, f"{LAM} = 0"), []).append(p[1])
                else:
                    crossings.setdefault((BEAKS, "off-axis"), []).append(p[0])
    events = []
    for (kind, stratum), along in sorted(crossings.items()):
        lo, hi = float(min(along)), float(max(along))
        other = LAM if stratum.startswith(MU) else MU
        events.append(BifurcationEvent(kind, f"{stratum}, {other} in [{lo:.4g}, {hi:.4g}] ({len(along)} crossings)",
                                       "critical set", stratum, confidence="high" if kind == SELF_TANGENCY else "low"))
    return sig, events


def _pt(p) -> str:
    return f"({float(p[0]):.4g}, {float(p[1]):.4g})"


@dataclass
class DiagramData:
    delta: Fraction
    strata: List[str]
    quadrants: Dict[str, Dict]
    events: List[BifurcationEvent]

    def as_dict(self) -> dict:
        return {"delta": str(self.delta), "strata": list(self.strata),
                "quadrants": {k: {"lam": str(v["lam"]), "mu": str(v["mu"]), "points": len(v["cloud"])}
                              for k, v in self.quadrants.items()},
                "events": [e.as_dict() for e in self.events]}


def diagram_data(delta=1, radius=Fraction(1, 20), window=(-0.3, 0.3, -0.3, 0.3),
                 resolution: int = 200, count: int = 11) -> DiagramData:
    """Strata lam = 0 and mu = 0, one envelope per open quadrant, and the axis events."""
    fam = miniversal_family(delta)
    r = Fraction(radius)
    quads = {}
    for name, (sl, sm) in {"++": (1, 1), "-+": (-1, 1), "--": (-1, -1), "+-": (1, -1)}.items():
        germ = specialize(fam, {LAM: sl * r, MU: sm * r, NU: 0})
        cloud = env.numeric_envelope(germ, window=window, resolution=resolution)
        quads[name] = {"lam": sl * r, "mu": sm * r, "cloud": cloud.image}
    events = []
    vals = sample_values(-r, r, count)
    for axis in (LAM, MU):
        events.extend(sweep(fam.restricted([axis]), axis, vals).events)
    return DiagramData(Fraction(delta), [f"{LAM} = 0", f"{MU} = 0"], quads, events)
