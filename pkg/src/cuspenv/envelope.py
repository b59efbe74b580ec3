"""Critical sets, envelopes and branch geometry of plane map germs.

Branches of ``J = det df = 0`` through the origin are found by the Newton
polygon method with exact arithmetic: monomial factors give the coordinate
axes, every compact edge gives a parameterisation ``x = e s^a``,
``y = s^b (c + z(s))`` (or the mirror form), and ``z`` is obtained by the
implicit function theorem when ``c`` is a simple rational root of the edge
polynomial.  Anything else is reported in the residual, never dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .jets import (CoordChangeJet, MapJet, TruncatedSeries, compose, invert_coordinate_change,
                   jacobian_determinant, solve_implicit)
from .paramring import ZERO, ParamPoly, factor_locus

REGULAR = "regular"
SEMICUBIC = "semicubic-cusp"
DEGENERATE = "degenerate-cusp"
UNRESOLVED = "unresolved"

MAX_DEPTH = 4


class JacobianVanishesError(ValueError):
    pass


@dataclass
class Branch:
    """A local curve branch: source parameterisation and (optionally) its image."""

    source: Optional[MapJet]  # 1-variable jets (x(s), y(s))
    image: Optional[MapJet] = None  # 1-variable jets (X(s), Y(s))
    tag: str = UNRESOLVED
    label: str = ""
    condition: str = ""  # parameter condition under which the tag holds, if any

    @property
    def order(self) -> int:
        jets = self.image if self.image is not None else self.source
        return jets.order if jets is not None else 0

    def as_dict(self) -> dict:
        out = {"label": self.label, "tag": self.tag, "order": self.order}
        if self.source is not None:
            out["source"] = [c.format(("s",)) for c in self.source]
        if self.image is not None:
            out["image"] = [c.format(("s",)) for c in self.image]
        if self.condition:
            out["condition"] = self.condition
        return out


@dataclass
class EnvelopeResult:
    branches: List[Branch]
    residual: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"branches": [b.as_dict() for b in self.branches], "residual": list(self.residual)}


def curve(xs: TruncatedSeries, ys: TruncatedSeries) -> MapJet:
    return MapJet([xs, ys])


def _to_univariate(series: TruncatedSeries, var: int = 0) -> TruncatedSeries:
    out = {}
    for e, c in series.items():
        if any(k for i, k in enumerate(e) if i != var):
            raise ValueError("series depends on more than one variable")
        out[(e[var],)] = c
    return TruncatedSeries(out, series.order, 1)


def _s(order: int) -> TruncatedSeries:
    return TruncatedSeries.var(0, order, 1)


# -- Newton polygon -----------------------------------------------------------------


def _lower_hull(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    pts = sorted(set(points))
    hull: List[Tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # keep the strictly decreasing part (compact edges of the Newton polygon)
    out = [hull[0]]
    for p in hull[1:]:
        if p[1] < out[-1][1]:
            out.append(p)
        else:
            break
    return out


def _rational_roots(coeffs: Dict[int, Fraction]):
    """Nonzero real roots of ``sum coeffs[k] c^k``: (rational roots with multiplicity, irrational count)."""
    import sympy

    c = sympy.Symbol("c")
    poly = sympy.Poly(sum(sympy.Rational(v.numerator, v.denominator) * c ** k for k, v in coeffs.items()), c)
    rational = []
    irrational = 0
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() == 1:
            a1, a0 = fac.all_coeffs()
            root = -a0 / a1
            if root != 0:
                rational.append((Fraction(int(root.p), int(root.q)), mult))
        else:
            irrational += sum(1 for r in fac.real_roots() if r != 0) * mult
    return rational, irrational


def _newton(G: TruncatedSeries, depth: int):
    """Branches of ``G(u, v) = 0`` through the origin, as pairs of 1-variable series."""
    branches: List[Tuple[TruncatedSeries, TruncatedSeries, str]] = []
    residual: List[str] = []
    if G.is_zero():
        residual.append(f"equation vanishes identically through order {G.order}")
        return branches, residual
    N = G.order
    ku = G.monomial_content(0)
    kv = G.monomial_content(1)
    if ku:
        branches.append((TruncatedSeries.zero(N, 1), _s(N), "x = 0" + (f" (multiplicity {ku})" if ku > 1 else "")))
        G = G.divide_by_monomial(0, ku)
    if kv:
        branches.append((_s(N), TruncatedSeries.zero(N, 1), "y = 0" + (f" (multiplicity {kv})" if kv > 1 else "")))
        G = G.divide_by_monomial(1, kv)
    if G.constant_term():
        return branches, residual
    if G.is_zero():
        residual.append("remaining factor vanishes through working order")
        return branches, residual
    # a smooth factor has exactly one branch; the implicit function theorem keeps the full order
    for var in (0, 1):
        lin = G.coeff((1, 0) if var == 0 else (0, 1))
        if lin and lin.is_constant():
            sol = _to_univariate(solve_implicit(G, var), 1 - var)
            t = _s(sol.order)
            pair = (sol, t) if var == 0 else (t, sol)
            branches.append((pair[0], pair[1], "smooth, " + ("x = x(y)" if var == 0 else "y = y(x)")))
            return branches, residual
    pts = [e for e, _ in G.items()]
    if not any(j == 0 for _, j in pts) or not any(i == 0 for i, _ in pts):
        residual.append(f"Newton polygon not closed at working order {G.order}: {G}")
        return branches, residual
    if depth > MAX_DEPTH:
        residual.append(f"branch separation needs more than {MAX_DEPTH} Newton steps: {G}")
        return branches, residual
    hull = _lower_hull(pts)
    for (i1, j1), (i2, j2) in zip(hull, hull[1:]):
        di, dj = i2 - i1, j1 - j2
        g = gcd(di, dj)
        a, b = dj // g, di // g  # weights of u and v: a*i + b*j constant on the edge
        w = a * i1 + b * j1
        edge = {(i, j): c for (i, j), c in G.items() if a * i + b * j == w}
        if any(not c.is_constant() for c in edge.values()):
            residual.append(f"edge with parametric coefficients: {TruncatedSeries(edge, G.order)}")
            continue
        for scheme in _schemes(a, b):
            sub, poly = scheme(edge)
            roots, n_irr = _rational_roots(poly)
            if n_irr:
                residual.append(f"edge polynomial with irrational roots on {TruncatedSeries(edge, G.order)}")
            for c, mult in roots:
                if not sub.keep(c):
                    continue
                res = _follow(G, a, b, w, sub, c, mult, depth)
                branches.extend(res[0])
                residual.extend(res[1])
    return branches, residual


class _Scheme:
    """Parameterisation ``u = eps s^a, v = s^b (c + z)`` or its mirror."""

    def __init__(self, a, b, eps, mirror, dedupe):
        self.a, self.b, self.eps, self.mirror, self.dedupe = a, b, eps, mirror, dedupe

    def keep(self, c: Fraction) -> bool:
        return c > 0 if self.dedupe else True

    def substitution(self, c: Fraction, order: int) -> MapJet:
        s = TruncatedSeries.var(0, order)
        z = TruncatedSeries.var(1, order)
        pure = (s ** (self.b if self.mirror else self.a)).scale(self.eps)
        mixed = (s ** (self.a if self.mirror else self.b)) * (z + c)
        return MapJet([mixed, pure] if self.mirror else [pure, mixed])

    def branch(self, s_of_t: TruncatedSeries, z_of_t: TruncatedSeries, c: Fraction):
        pure = (s_of_t ** (self.b if self.mirror else self.a)).scale(self.eps)
        mixed = (s_of_t ** (self.a if self.mirror else self.b)) * (z_of_t + c)
        return (mixed, pure) if self.mirror else (pure, mixed)


def _schemes(a: int, b: int):
    out = []

    def make(eps, mirror, dedupe):
        sch = _Scheme(a, b, eps, mirror, dedupe)

        def build(edge):
            poly: Dict[int, Fraction] = {}
            for (i, j), coeff in edge.items():
                k, p = (i, j) if mirror else (j, i)  # power of c, power of eps
                poly[k] = poly.get(k, Fraction(0)) + coeff.as_fraction() * (eps ** p)
            return sch, {k: v for k, v in poly.items() if v}

        return build

    if a == 1:
        out.append(make(1, False, False))  # u = s, v = s^b (c + z)
    elif b == 1:
        out.append(make(1, True, False))  # v = s, u = s^a (c + z)
    else:
        for eps in ((1, -1) if a % 2 == 0 else (1,)):
            out.append(make(eps, False, a % 2 == 0 and b % 2 == 1))
    return out


def _follow(G, a, b, w, sch: _Scheme, c: Fraction, mult: int, depth: int):
    sub = sch.substitution(c, G.order)
    H = compose(G, sub)
    if H.monomial_content(0) < w:
        raise ArithmeticError("edge weight does not divide the substituted equation")
    H = H.divide_by_monomial(0, w)
    if H.order < 1:
        return [], [f"working order exhausted following root c = {c}"]
    label = f"edge {a}:{b}, c = {c}" + ("" if sch.eps == 1 else ", reflected")
    if mult == 1:
        z = _to_univariate(solve_implicit(H, 1).truncate(H.order))
        t = _s(z.order)
        u, v = sch.branch(t, z, c)
        return [(u, v, label)], []
    # multiple root: resolve H(s, z) = 0 for branches with z(0) = 0
    sub_branches, residual = _newton(H, depth + 1)
    out = []
    for s_t, z_t, lab in sub_branches:
        if s_t.is_zero():
            continue  # s = 0 is the origin itself, not a branch
        if s_t.valuation() > 1 and not _s_positive(s_t):
            pass
        u, v = sch.branch(s_t, z_t, c)
        out.append((u, v, f"{label} / {lab}"))
    return out, residual


def _s_positive(s_t: TruncatedSeries) -> bool:
    lead = min(s_t.items(), key=lambda ec: ec[0][0])[1]
    return lead.constant_term() > 0


def critical_branches(f: MapJet) -> Tuple[List[Branch], List[str]]:
    """Source branches of ``det df = 0`` through the origin, plus the unresolved residual."""
    J = jacobian_determinant(f)
    if J.is_zero():
        raise JacobianVanishesError(f"Jacobian vanishes identically through order {J.order}")
    if J.constant_term():
        return [], []
    found, residual = _newton(J, 0)
    out = []
    for u, v, label in found:
        out.append(Branch(MapJet([u, v]), label=label))
    return out, residual


def envelope_of(f: MapJet) -> EnvelopeResult:
    """Images of the critical branches under ``f``, each classified."""
    branches, residual = critical_branches(f)
    out = []
    for b in branches:
        image = compose(f, b.source)
        nb = Branch(b.source, image, label=b.label)
        nb.tag, nb.condition = _classify(image)
        out.append(nb)
    return EnvelopeResult(out, residual)


def _classify(image: MapJet) -> Tuple[str, str]:
    X, Y = image
    if image.order < 3:
        return UNRESOLVED, ""
    v = (X.coeff((1,)), Y.coeff((1,)))
    if v[0] or v[1]:
        cond = _nonzero_condition(v[0], v[1])
        return REGULAR, cond
    det = X.coeff((2,)) * Y.coeff((3,)) - X.coeff((3,)) * Y.coeff((2,))
    if det:
        cond = "" if det.is_constant() else ", ".join(s.replace("= 0", "≠ 0") for s in factor_locus(det))
        return SEMICUBIC, cond
    return DEGENERATE, ""


def _nonzero_condition(p: ParamPoly, q: ParamPoly) -> str:
    if (p and p.is_constant()) or (q and q.is_constant()):
        return ""
    nz = p if p else q
    return ", ".join(s.replace("= 0", "≠ 0") for s in factor_locus(nz))


def classify_branch(b) -> str:
    """Tag of a branch (or of a bare image jet)."""
    image = b.image if isinstance(b, Branch) else b
    if image is None:
        return UNRESOLVED
    return _classify(image)[0]


def image_branch(xs, ys, label: str = "") -> Branch:
    """Wrap explicit image series ``s -> (X(s), Y(s))`` as a classified branch."""
    img = MapJet([xs, ys])
    tag, cond = _classify(img)
    return Branch(None, img, tag, label, cond)


# -- tangency -----------------------------------------------------------------------


def _graph_form(b: MapJet):
    """Express a regular branch as a graph over the axis it is transverse to."""
    X, Y = b
    if X.coeff((1,)) and X.coeff((1,)).is_constant():
        inv = invert_coordinate_change(CoordChangeJet([X]))
        return 0, compose(Y, inv)
    if Y.coeff((1,)) and Y.coeff((1,)).is_constant():
        inv = invert_coordinate_change(CoordChangeJet([Y]))
        return 1, compose(X, inv)
    return None


def tangency_order(b1, b2):
    """Contact order ``k`` (0 transversal, 1 ordinary tangency, 2 second order, ...).

    One branch must be regular with a rational nonzero velocity component.
    Returns ``">= N"`` when the transverse coordinate vanishes through order ``N``.
    """
    i1 = b1.image if isinstance(b1, Branch) else b1
    i2 = b2.image if isinstance(b2, Branch) else b2
    graph = _graph_form(i1)
    if graph is None:
        graph = _graph_form(i2)
        if graph is None:
            raise ValueError("tangency order undefined: neither branch is regular at the point")
        i1, i2 = i2, i1
    axis, g = graph
    Xo, Yo = i2
    if axis == 0:
        T = Yo - compose(g, MapJet([Xo]))
    else:
        T = Xo - compose(g, MapJet([Yo]))
    if T.is_zero():
        return f">= {T.order}"
    return T.valuation() - 1


# -- self-intersection ---------------------------------------------------------------


@dataclass
class SelfIntersection:
    exists: object  # bool for numeric parameters, or a condition string when symbolic
    w: Optional[TruncatedSeries]  # w(lambda) = sigma^2 at the double point (numerator)
    denominator: ParamPoly
    point: Tuple[Optional[TruncatedSeries], Optional[TruncatedSeries]]
    parameter_pair: Optional[Tuple[object, object]] = None
    value: Optional[Fraction] = None
    cusp: bool = False

    def as_dict(self) -> dict:
        def show(v):
            if v is None:
                return None
            if isinstance(v, TruncatedSeries):
                return v.format((self._pname,))
            return str(v)

        out = {"exists": self.exists if isinstance(self.exists, bool) else str(self.exists),
               "cuspAtOrigin": self.cusp}
        out["w"] = show(self.w)
        if self.denominator != 1:
            out["denominator"] = str(self.denominator)
        out["point"] = [show(p) for p in self.point]
        if self.parameter_pair is not None:
            out["parameterPair"] = [str(p) for p in self.parameter_pair]
        return out

    _pname = "l"


def _split_even_odd(F: TruncatedSeries):
    """``F(sigma, l) = E(sigma^2, l) + sigma * O(sigma^2, l)`` with E, O in (w, l)."""
    ev, od = {}, {}
    for (i, j), c in F.items():
        if i % 2 == 0:
            ev[(i // 2, j)] = c
        else:
            od[((i - 1) // 2, j)] = c
    return TruncatedSeries(ev, F.order), TruncatedSeries(od, F.order)


def _promote(branch_image: MapJet, param: str) -> MapJet:
    comps = []
    for c in branch_image:
        if c.nvars == 1:
            c = c.promote_param(param)
        comps.append(c)
    return MapJet(comps)


def self_intersection(b, param: str = "l", value=None) -> SelfIntersection:
    """Double points of a branch family ``s -> (X(s, l), Y(s, l))`` near the origin.

    One image coordinate with a nonzero rational ``s^2`` coefficient is brought
    to ``c sigma^2 + const(l)`` by the parametric Morse lemma; two parameter
    values with equal images then satisfy ``sigma_2 = -sigma_1`` and the odd
    part ``sigma m(sigma^2, l)`` of the other coordinate must vanish, so the
    double point sits at ``w = sigma^2`` solving ``m(w, l) = 0``, and exists
    for real parameters iff ``w > 0``.
    """
    image = b.image if isinstance(b, Branch) else b
    fam = _promote(image, param) if image[0].nvars == 1 else image
    N = fam.order
    s = TruncatedSeries.var(0, N)
    l = TruncatedSeries.var(1, N)
    pick = None
    for k in (1, 0):
        c2 = fam[k].coeff((2, 0))
        if c2 and c2.is_constant():
            pick = k
            break
    if pick is None:
        raise ValueError("no image coordinate has a rational s^2 coefficient; inconclusive")
    G, F = fam[pick], fam[1 - pick]
    from .jets import differentiate

    c2 = G.coeff((2, 0)).as_fraction()
    s0 = solve_implicit(differentiate(G, 0), 0)  # centre s0(l)
    shift = MapJet([(s0 + s).truncate(N - 1), l.truncate(N - 1)])
    Gs = compose(G, shift)
    base = Gs.restrict(0, 0)
    U = (Gs - base).divide_by_monomial(0, 2)
    sigma = s.truncate(U.order) * U.scale(1 / c2).sqrt()
    inv = invert_coordinate_change(CoordChangeJet([sigma, l.truncate(sigma.order)]))
    s_of = compose(s0.truncate(inv.order) + TruncatedSeries.var(0, inv.order), inv)
    Fs = compose(F, MapJet([s_of, TruncatedSeries.var(1, s_of.order)]))
    E, O = _split_even_odd(Fs)
    m = O  # m(w, l)
    if m.is_zero():
        return SelfIntersection(f">= order {m.order}: odd part vanishes", None, ParamPoly.const(1), (None, None))
    m1 = m.coeff((1, 0))
    linear = all(e[0] <= 1 for e, _ in m.items())
    if m1 and m1.is_constant():
        w = solve_implicit(m, 0)  # w(l), a series in slot 1
        denom = ParamPoly.const(1)
    elif m1 and linear and all(m.coeff((1, j)) == 0 for j in range(1, m.order)):
        # m = m0(l) + m1 w with a parametric constant m1: w = -m0(l) / m1 exactly
        w = m.restrict(0, 0).scale(-1)
        denom = m1
    else:
        raise ValueError("double-point equation not solvable by the implicit function theorem; inconclusive")
    w = TruncatedSeries({(0, j): c for (i, j), c in w.items()}, w.order)
    w1 = _to_univariate(w, 1)
    # point: G = base(l) + c2 * w, F = E(w, l)
    if denom == 1:
        Wmap = MapJet([w.with_order(E.order) if w.order < E.order else w.truncate(E.order),
                       TruncatedSeries.var(1, E.order)])
        F_pt = _to_univariate(compose(E, Wmap), 1) if not w.is_zero() else _to_univariate(E.restrict(0, 0), 1)
        G_pt = _to_univariate(base + w.scale(c2), 1)
    else:
        F_pt, G_pt = None, None
        if all(e[0] <= 1 for e, _ in E.items()) and E.coeff((1, 0)).is_constant():
            # point coordinates in the fraction field: keep numerators over the denominator
            F_pt = _to_univariate(E.restrict(0, 0).scale(denom) + w.scale(E.coeff((1, 0))), 1)
            G_pt = _to_univariate(base.scale(denom) + w.scale(c2), 1)
    point = (F_pt, G_pt) if pick == 1 else (G_pt, F_pt)

    if value is None:
        cond = _positivity_condition(w1, denom, param)
        res = SelfIntersection(cond, w1, denom, point, cusp=False)
        res._pname = param
        return res
    val = ParamPoly.coerce(value)
    wv = w1.evaluate_exact([val]) if False else _eval_univariate(w1, val)
    dv = denom
    if not dv.is_constant():
        raise ValueError("give numeric values for every parameter in the denominator")
    wv = wv / dv.as_fraction()
    if not wv.is_constant():
        raise ValueError(f"parameters remain after substitution: {wv}")
    wq = wv.as_fraction()
    exists = wq > 0
    pt = tuple(None if p is None else _eval_univariate(p, val) / dv.as_fraction() for p in point)
    pair = None
    if exists:
        r = _maybe_sqrt(wq)
        pair = (r, -r) if isinstance(r, Fraction) else (float(r), -float(r))
        pair = tuple(_s_from_sigma(s_of, p, val) for p in pair)
    res = SelfIntersection(exists, w1, denom, pt if exists else (None, None), pair, wq, cusp=wq == 0)
    res._pname = param
    return res


def _s_from_sigma(s_of: TruncatedSeries, sigma, lam: ParamPoly):
    """Branch parameter for a sigma value (exact if the change is the identity)."""
    if s_of.agrees_with(TruncatedSeries.var(0, s_of.order)):
        return sigma
    return float(s_of.evaluate([float(sigma), float(lam.as_fraction())]))


def _eval_univariate(p: TruncatedSeries, val: ParamPoly) -> ParamPoly:
    total = ZERO
    for e, c in p.items():
        total = total + c * val ** e[0]
    return total


def _maybe_sqrt(q: Fraction):
    from math import isqrt

    n, d = q.numerator, q.denominator
    if isqrt(n) ** 2 == n and isqrt(d) ** 2 == d:
        return Fraction(isqrt(n), isqrt(d))
    return q ** 0.5


def _positivity_condition(w: TruncatedSeries, denom: ParamPoly, param: str) -> str:
    """Condition on small ``param`` for ``w(param)/denom > 0`` from the leading term."""
    if w.is_zero():
        return f"never (w vanishes through order {w.order})"
    k = w.valuation()
    lead = w.coeff((k,))
    if not lead.is_constant():
        return f"({lead})*{param}^{k}/({denom}) > 0"
    q = lead.as_fraction()
    rel = ">" if q > 0 else "<"
    pw = param if k == 1 else f"{param}^{k}"
    if denom == 1:
        if k % 2 == 0:
            return "always (param ≠ 0)" if q > 0 else "never"
        return f"{pw} {rel} 0"
    return f"{pw}/({denom}) {rel} 0" if k % 2 == 1 else f"({denom}) {rel} 0"


# -- numeric envelope ----------------------------------------------------------------


@dataclass
class PointCloud:
    source: np.ndarray  # (n, 2) critical points
    image: np.ndarray  # (n, 2) critical values

    def __len__(self):
        return len(self.image)


def numeric_envelope(f: MapJet, params: Dict[str, float] | None = None,
                     window=(-1.0, 1.0, -1.0, 1.0), resolution=512) -> PointCloud:
    """Zero crossings of the Jacobian on grid edges (linear interpolation), mapped through ``f``.

    ``resolution`` is the number of cells per axis (an int or a pair); nodes sit
    at cell centres, so the spacing halves exactly when the resolution doubles
    and, for even counts on symmetric windows, no node lies on an axis.
    """
    params = params or {}
    nx, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    x0, x1, y0, y1 = window
    xs = x0 + (np.arange(int(nx)) + 0.5) * (x1 - x0) / int(nx)
    ys = y0 + (np.arange(int(ny)) + 0.5) * (y1 - y0) / int(ny)
    X, Y = np.meshgrid(xs, ys)  # rows follow y
    J = jacobian_determinant(f).evaluate([X, Y], params)
    J = np.broadcast_to(np.asarray(J, dtype=float), X.shape)
    pts = []
    # horizontal edges
    a, b = J[:, :-1], J[:, 1:]
    mask = np.signbit(a) != np.signbit(b)
    mask &= (a != 0) | (b != 0)
    r, c = np.nonzero(mask)
    t = a[r, c] / (a[r, c] - b[r, c])
    pts.append(np.column_stack([xs[c] + t * (xs[c + 1] - xs[c]), ys[r]]))
    # vertical edges
    a, b = J[:-1, :], J[1:, :]
    mask = np.signbit(a) != np.signbit(b)
    mask &= (a != 0) | (b != 0)
    r, c = np.nonzero(mask)
    t = a[r, c] / (a[r, c] - b[r, c])
    pts.append(np.column_stack([xs[c], ys[r] + t * (ys[r + 1] - ys[r])]))
    src = np.vstack(pts) if pts else np.zeros((0, 2))
    if len(src) == 0:
        return PointCloud(np.zeros((0, 2)), np.zeros((0, 2)))
    img = np.column_stack([np.asarray(comp.evaluate([src[:, 0], src[:, 1]], params), dtype=float)
                           * np.ones(len(src)) for comp in f])
    return PointCloud(src, img)


def sample_branch(b, params: Dict[str, float] | None = None, s_range=(-0.5, 0.5), count: int = 400) -> np.ndarray:
    """Numeric samples of a branch image (for plots and distance checks)."""
    image = b.image if isinstance(b, Branch) else b
    s = np.linspace(s_range[0], s_range[1], count)
    return np.column_stack([np.asarray(c.evaluate([s], params), dtype=float) * np.ones(count) for c in image])


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two point sets (scipy's directed distance)."""
    from scipy.spatial.distance import directed_hausdorff

    if len(a) == 0 or len(b) == 0:
        return float("inf")
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])
