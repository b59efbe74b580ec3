"""Cusped tangential families given by their Taylor data.

A family is ``phi(xi, t) = Gamma(xi) + alpha(xi) V(xi) t + (A, B) t^2 + (C, D) t^3 + rem``
with support ``Gamma(xi) = (xi^2, xi^3)`` and tangent field ``V(xi) = (2, 3 xi)``.
Source variables ``(xi, t)`` occupy the jet slots ``(x, y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .jets import (DEFAULT_ORDER, CoordChangeJet, MapJet, NonInvertibleError, TruncatedSeries,
                   compose, invert_coordinate_change, monomials, solve_implicit)
from .paramring import ONE, ZERO, ParamPoly

REGULAR_TANGENT = "regular-tangent"
CUSP_TRANSVERSAL = "semicubic-cusp-transversal"
DEGENERATE = "degenerate"


class GenericityError(ValueError):
    """The family violates flatness or the star condition where the computation needs it."""


def _coeffs(values) -> Tuple[ParamPoly, ...]:
    if isinstance(values, (int, Fraction, ParamPoly, str)):
        values = [values]
    out = [ParamPoly.coerce(v) for v in values]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _get(coeffs: Tuple[ParamPoly, ...], i: int) -> ParamPoly:
    return coeffs[i] if i < len(coeffs) else ZERO


@dataclass(frozen=True)
class SupportCurve:
    """The semicubic support ``xi -> (xi^2, xi^3)`` and its smooth tangent field."""

    order: int = DEFAULT_ORDER

    def parameterization(self) -> MapJet:
        xi = TruncatedSeries.var(0, self.order, 1)
        return MapJet([xi * xi, xi * xi * xi])

    def tangent_field(self) -> MapJet:
        xi = TruncatedSeries.var(0, self.order, 1)
        return MapJet([TruncatedSeries.const(2, self.order, 1), xi.scale(3)])

    def check(self) -> bool:
        """``xi * V(xi) == dGamma/dxi``."""
        from .jets import differentiate

        xi = TruncatedSeries.var(0, self.order, 1)
        g = self.parameterization()
        v = self.tangent_field()
        return all((xi * vc).agrees_with(differentiate(gc, 0)) for vc, gc in zip(v, g))


@dataclass(frozen=True)
class CTFData:
    """Taylor data of a family: coefficient tuples in ``xi`` and an optional remainder.

    ``remainder`` is a pair of series in ``(xi, t)`` whose terms all have
    ``t``-degree at least 4.
    """

    alpha: Tuple[ParamPoly, ...]
    A: Tuple[ParamPoly, ...]
    B: Tuple[ParamPoly, ...]
    C: Tuple[ParamPoly, ...]
    D: Tuple[ParamPoly, ...]
    remainder: Optional[MapJet] = None
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        for name in ("alpha", "A", "B", "C", "D"):
            object.__setattr__(self, name, _coeffs(getattr(self, name)))
        if self.remainder is not None:
            for comp in self.remainder:
                for e, _ in comp.items():
                    if e[1] < 4:
                        raise ValueError("remainder must have t-order >= 4")

    @classmethod
    def make(cls, alpha, A, B, C, D, remainder=None, order=DEFAULT_ORDER) -> "CTFData":
        return cls(alpha, A, B, C, D, remainder, order)

    @property
    def A0(self):
        return _get(self.A, 0)

    @property
    def B0(self):
        return _get(self.B, 0)

    @property
    def C0(self):
        return _get(self.C, 0)

    @property
    def D0(self):
        return _get(self.D, 0)

    def params(self) -> set:
        out = set()
        for name in ("alpha", "A", "B", "C", "D"):
            for c in getattr(self, name):
                out |= c.params()
        if self.remainder is not None:
            out |= self.remainder.params()
        return out

    def scaled(self, c) -> "CTFData":
        """Multiply every coefficient function (and the remainder) by ``c``."""
        c = ParamPoly.coerce(c)
        rem = None if self.remainder is None else self.remainder.scale(c)
        return CTFData(*(tuple(v * c for v in getattr(self, n)) for n in ("alpha", "A", "B", "C", "D")),
                       remainder=rem, order=self.order)


def _xi_series(coeffs, order) -> TruncatedSeries:
    return TruncatedSeries.from_coefficients(list(coeffs), order, 2, var=0)


def build_family(data: CTFData, order: int | None = None) -> MapJet:
    """The jet of ``phi(xi, t)`` in the slots ``(x, y) = (xi, t)``."""
    N = data.order if order is None else order
    xi = TruncatedSeries.var(0, N)
    t = TruncatedSeries.var(1, N)
    alpha = _xi_series(data.alpha, N)
    A, B, C, D = (_xi_series(getattr(data, n), N) for n in "ABCD")
    t2, t3 = t * t, t * t * t
    f1 = xi * xi + (alpha * t).scale(2) + A * t2 + C * t3
    f2 = xi * xi * xi + (xi * alpha * t).scale(3) + B * t2 + D * t3
    if data.remainder is not None:
        f1 = f1 + data.remainder[0].with_order(N)
        f2 = f2 + data.remainder[1].with_order(N)
    return MapJet([f1.truncate(N), f2.truncate(N)])


def graph_map(data: CTFData, order: int | None = None) -> MapJet:
    """``Phi(xi, t) = (phi_1, phi_2, xi)``."""
    f = build_family(data, order)
    return MapJet([f[0], f[1], TruncatedSeries.var(0, f.order)])


@dataclass
class GenericityReport:
    flatness: Optional[int]  # None when alpha vanishes through the working order
    working_order: int
    star_generic: bool
    witnesses: Dict[str, ParamPoly]

    @property
    def flatness_label(self) -> str:
        return f">= {self.working_order}" if self.flatness is None else str(self.flatness)

    @property
    def is_flat(self) -> bool:
        return self.flatness is None or self.flatness >= 1

    def as_dict(self) -> dict:
        return {
            "flatnessOrder": self.flatness if self.flatness is not None else self.flatness_label,
            "starGeneric": self.star_generic,
            "witnesses": {k: str(v) for k, v in self.witnesses.items()},
        }


def star_coefficient(data: CTFData) -> ParamPoly:
    """``B0 (A0 D0 - B0 C0)``; the star condition holds for flat families iff it is nonzero."""
    return data.B0 * (data.A0 * data.D0 - data.B0 * data.C0)


def genericity(data: CTFData) -> GenericityReport:
    n = next((i for i, c in enumerate(data.alpha) if c and i <= data.order), None)
    star = n != 0 and bool(star_coefficient(data))
    wit = {"A0": data.A0, "B0": data.B0, "C0": data.C0, "D0": data.D0}
    if n is not None:
        wit[f"alpha_{n}"] = data.alpha[n]
    return GenericityReport(n, data.order, star, wit)


def special_curve(data: CTFData, order: int | None = None) -> Tuple[MapJet, str]:
    """The curve ``t -> phi(0, t)`` and its diagnosis."""
    N = data.order if order is None else order
    fam = build_family(data, N)
    curve = MapJet([_restrict_xi0(c) for c in fam])
    a0 = _get(data.alpha, 0)
    if a0:
        return curve, REGULAR_TANGENT
    cusp = bool(data.A0 * data.D0 - data.B0 * data.C0)
    transversal = bool(data.B0)
    return curve, CUSP_TRANSVERSAL if cusp and transversal else DEGENERATE


def _restrict_xi0(c: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries({(e[1],): v for e, v in c.items() if e[0] == 0}, c.order, 1)


# -- reduction of 1-flat families to psi_delta ------------------------------------


def psi(delta=1, order: int = DEFAULT_ORDER) -> MapJet:
    """``psi_delta = (x^2 + y^2 + delta y^3, y^2 + x^3)``."""
    x = TruncatedSeries.var(0, order)
    y = TruncatedSeries.var(1, order)
    return MapJet([x * x + y * y + (y * y * y).scale(delta), y * y + x * x * x])


@dataclass
class NormalFormReduction:
    delta: ParamPoly
    source_change: CoordChangeJet  # h with  k o f o h^-1 = psi_delta (mod degree 4)
    target_change: CoordChangeJet  # k
    substitution: MapJet  # h^-1, kept to avoid re-inverting
    raw_delta: ParamPoly
    sign_flip: bool

    def as_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "signFlipApplied": self.sign_flip,
            "sourceChange": str(self.source_change),
            "targetChange": str(self.target_change),
        }


def _quad_coeffs(c: TruncatedSeries):
    return c.coeff((2, 0)), c.coeff((1, 1)), c.coeff((0, 2))


def _const(p: ParamPoly, what: str) -> Fraction:
    if not p.is_constant():
        raise NonInvertibleError(f"{what} depends on parameters ({p}); give numeric data")
    return p.as_fraction()


def _square_root_of_rank_one(p, q, r):
    """Write the rank-one form ``p x^2 + q xy + r y^2`` as ``c * L^2``; returns (c, (l1, l2))."""
    if p:
        return p, (Fraction(1), q / (2 * p))
    return r, (Fraction(0), Fraction(1))


def _degenerate_members(q1, q2):
    """Pencil members ``a q1 + b q2`` of rank one, as (a, b) pairs; raises if not two rational ones."""
    import sympy

    p1, m1, r1 = q1
    p2, m2, r2 = q2
    a, b = sympy.symbols("a b")
    P = a * sympy.Rational(p1) + b * sympy.Rational(p2)
    M = a * sympy.Rational(m1) + b * sympy.Rational(m2)
    R = a * sympy.Rational(r1) + b * sympy.Rational(r2)
    disc = sympy.expand(M ** 2 - 4 * P * R)
    if disc == 0:
        raise GenericityError("every member of the quadratic pencil is degenerate")
    out = []
    # homogeneous quadratic in (a, b): the point (1 : 0) is a root iff the a^2 coefficient vanishes
    if disc.subs({a: 1, b: 0}) == 0:
        out.append((Fraction(1), Fraction(0)))
    poly = sympy.Poly(disc.subs(b, 1), a)
    for rt in (poly.all_roots() if poly.degree() > 0 else []):
        if not rt.is_rational:
            raise GenericityError("quadratic pencil squares are not rational; not supported")
        pair = (Fraction(int(rt.p), int(rt.q)), Fraction(1))
        if pair not in out:
            out.append(pair)
    if len(out) != 2:
        raise GenericityError("quadratic part is not a pencil with two distinct squares")
    return out


def reduce_to_normal_form(data, order: int = 3) -> NormalFormReduction:
    """Bring the 3-jet of a 1-flat star-generic family (or any germ with the same
    structure) to ``psi_delta`` and return exact witnesses.

    ``data`` may be :class:`CTFData` or a plane germ jet.
    """
    if isinstance(data, CTFData):
        rep = genericity(data)
        if rep.flatness != 1 or not rep.star_generic:
            raise GenericityError("reduction needs a 1-flat star-generic family")
        f = build_family(data, max(order, 3))
    else:
        f = MapJet(list(data))
    f = f.truncate(3)
    if f.order < 3:
        raise ValueError("need the 3-jet of the germ")
    N = 3
    x = TruncatedSeries.var(0, N)
    y = TruncatedSeries.var(1, N)

    # stage 2: quadratic part -> (x^2, y^2)
    q1 = tuple(_const(v, "quadratic coefficient") for v in _quad_coeffs(f[0]))
    q2 = tuple(_const(v, "quadratic coefficient") for v in _quad_coeffs(f[1]))
    members = _degenerate_members(q1, q2)
    # keep a component that is already a square in its own slot (psi_d -> d, CTF -> B0 t^2)
    if members[0] == (Fraction(0), Fraction(1)):
        members = [members[1], members[0]]
    if members[1] == (Fraction(1), Fraction(0)):
        members = [members[1], members[0]]
    squares = []
    for a, b in members:
        form = tuple(a * u + b * v for u, v in zip(q1, q2))
        c, L = _square_root_of_rank_one(*form)
        squares.append((a, b, c, L))
    # target: comp_i -> (a_i f1 + b_i f2) / c_i ; source substitution: inverse of (L1, L2)
    lin = [[ParamPoly.const(s[0] / s[2]), ParamPoly.const(s[1] / s[2])] for s in squares]
    k_lin = MapJet([_linear(row, N) for row in lin])
    Lmat = [[ParamPoly.const(s[3][0]), ParamPoly.const(s[3][1])] for s in squares]
    g = invert_coordinate_change(CoordChangeJet([_linear(row, N) for row in Lmat]))
    cur = compose(k_lin, compose(f, g, cap=N), cap=N)
    target_steps = [k_lin]

    # stage 3: source quadratic change kills cubic terms except (y^3, 0) and (0, x^3)
    c1 = cur[0].homogeneous_part(3)
    c2 = cur[1].homogeneous_part(3)
    a_coef = cur[0].coeff((0, 3))
    b_coef = cur[1].coeff((3, 0))
    u = (c1 - (y * y * y).scale(a_coef)).divide_by_monomial(0, 1).scale(Fraction(-1, 2)).with_order(N)
    v = (c2 - (x * x * x).scale(b_coef)).divide_by_monomial(1, 1).scale(Fraction(-1, 2)).with_order(N)
    step = MapJet([x + u, y + v])
    g = compose(g, step, cap=N)
    cur = compose(cur, step, cap=N)
    a_coef = _const(cur[0].coeff((0, 3)), "cubic coefficient")
    b_coef = _const(cur[1].coeff((3, 0)), "cubic coefficient")

    if b_coef == 0:
        if a_coef == 0:
            raise GenericityError("both cubic invariants vanish; the germ is not of psi type")
        swap = MapJet([y, x])
        g = compose(g, swap, cap=N)
        cur = compose(MapJet([TruncatedSeries.var(1, N), TruncatedSeries.var(0, N)]), compose(cur, swap, cap=N), cap=N)
        target_steps.append(MapJet([TruncatedSeries.var(1, N), TruncatedSeries.var(0, N)]))
        a_coef, b_coef = Fraction(0), a_coef

    # to psi form: comp1 += comp2, x -> x - (b/2) x^2, uniform scaling by 1/b
    add = MapJet([x + y, y])
    cur = compose(add, cur, cap=N)
    target_steps.append(add)
    shift = MapJet([x - (x * x).scale(b_coef / 2), y])
    g = compose(g, shift, cap=N)
    cur = compose(cur, shift, cap=N)
    s = 1 / b_coef
    scale = MapJet([x.scale(s), y.scale(s)])
    g = compose(g, scale, cap=N)
    cur = compose(cur, scale, cap=N)
    unscale = MapJet([x.scale(1 / (s * s)), y.scale(1 / (s * s))])
    cur = compose(unscale, cur, cap=N)
    target_steps.append(unscale)
    raw = Fraction(a_coef) / b_coef
    flip = raw < 0
    if flip:
        fl = MapJet([x, -y])
        g = compose(g, fl, cap=N)
        cur = compose(cur, fl, cap=N)
    delta = abs(raw)

    k = target_steps[0]
    for stepk in target_steps[1:]:
        k = compose(stepk, k, cap=N)
    expected = psi(delta, N)
    check = compose(k, compose(f, g, cap=N), cap=N)
    if not check.agrees_with(expected, 3):
        raise ArithmeticError(f"normal-form witnesses do not recompose: {check} vs {expected}")
    h = invert_coordinate_change(CoordChangeJet(list(g)))
    return NormalFormReduction(ParamPoly.const(delta), h, CoordChangeJet(list(k)), g,
                               ParamPoly.const(raw), flip)


def _linear(row, N) -> TruncatedSeries:
    return TruncatedSeries({(1, 0): row[0], (0, 1): row[1]}, N)


# -- graph singularities A_n^{+-} --------------------------------------------------


def perestroika_label(n: int, sign: Optional[int]) -> str:
    if n % 2 == 1:
        return "γ→U"
    return "γ→γ" if sign < 0 else "U→U"


@dataclass
class SingularityClass:
    index: int
    sign: Optional[int]  # reported only for even n
    label: str
    witnesses: Dict[str, object] = field(default_factory=dict)
    family: str = "A"

    @property
    def name(self) -> str:
        if self.sign is None:
            return f"A_{self.index}"
        return f"A_{self.index}^{'+' if self.sign > 0 else '-'}"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "index": self.index,
            "sign": None if self.sign is None else ("+" if self.sign > 0 else "-"),
            "name": self.name,
            "perestroika": self.label,
            "witnesses": {k: str(v) for k, v in self.witnesses.items()},
        }


def stated_sign_rule(data: CTFData, n: int) -> int:
    """``sign(alpha_n (B0 C0 - A0 D0))`` as stated with the A_n classification (without the sign(B0) factor)."""
    v = _const(data.alpha[n] * (data.B0 * data.C0 - data.A0 * data.D0), "sign witness")
    return (v > 0) - (v < 0)


def corrected_sign_rule(data: CTFData, n: int) -> int:
    """``sign(alpha_n B0 (B0 C0 - A0 D0))``, the sign the normalisation actually produces."""
    v = _const(data.alpha[n] * data.B0 * (data.B0 * data.C0 - data.A0 * data.D0), "sign witness")
    return (v > 0) - (v < 0)


def _split_y(series: TruncatedSeries) -> Dict[int, TruncatedSeries]:
    """Coefficients of powers of the second variable, as series in the first (kept 2-variable)."""
    out: Dict[int, Dict] = {}
    for e, c in series.items():
        out.setdefault(e[1], {})[(e[0], 0)] = c
    return {k: TruncatedSeries(v, series.order) for k, v in out.items()}


def classify_graph(data: CTFData) -> SingularityClass:
    """Classify the graph germ ``(phi, xi)`` as ``A_n^{+-}`` by the explicit normalisation.

    Steps, working modulo degree ``n + 2``: shear the target so the ``t^2``
    term leaves the first component; bring the second component to ``v^2``
    (parametric Morse lemma in ``t`` with ``xi`` as parameter); remove the part
    of the first component that is even in ``v``; divide it by a unit in
    ``(Z, Y)`` to reach ``b v^3 + a u^n v``.  The final rescaling to
    ``v^3 +- u^n v`` only changes that one coefficient, so it is recorded
    rather than performed (it may need ``|a/b|^(1/n)``).
    """
    rep = genericity(data)
    if rep.flatness is None:
        raise GenericityError(f"alpha vanishes through order {data.order}; flatness undetermined")
    n = rep.flatness
    if n < 1:
        raise GenericityError("the family is not flat")
    if not data.B0:
        raise GenericityError("B0 = 0: special curve not transversal (the star condition fails)")
    if not (data.A0 * data.D0 - data.B0 * data.C0):
        raise GenericityError("A0 D0 = B0 C0: special curve has no semicubic cusp (the star condition fails)")
    if n > data.order - 1:
        raise GenericityError("working order too small for this flatness")
    N = data.order
    top = n + 1  # jets compared through this degree
    phi = build_family(data, N)
    x = TruncatedSeries.var(0, N)
    y = TruncatedSeries.var(1, N)
    B0 = _const(data.B0, "B0")
    A0 = _const(data.A0, "A0")

    # 1. target shear X -> X - (A0/B0) Y
    Q = phi[0] - phi[1].scale(A0 / B0)
    # 2. Y -> (Y - Z^3 - v(Z)) / B0 with the critical value v from the Morse lemma
    P = phi[1] - x * x * x
    from .jets import differentiate

    s0 = solve_implicit(differentiate(P, 1), 1)  # critical point y = s0(x)
    M = P.order - 1
    shift_map = MapJet([x.truncate(M), (s0 + y).truncate(M)])
    G = compose(P, shift_map)  # P(x, s0 + u)
    vcrit = G.restrict(1, 0)  # P(x, s0(x)), a function of x only
    U = (G - vcrit).divide_by_monomial(1, 2)
    S = (y.truncate(U.order) * (U.scale(1 / B0)).sqrt())  # sigma(x, u)
    inv = invert_coordinate_change(CoordChangeJet([x.truncate(S.order), S]))
    # y(x, sigma) = s0(x) + u(x, sigma)
    y_of = compose(s0.truncate(inv.order) + TruncatedSeries.var(1, inv.order), inv)
    sub = MapJet([TruncatedSeries.var(0, y_of.order), y_of])
    Qs = compose(Q, sub)
    Ps = compose(phi[1], sub)
    Y1 = (Ps - (x * x * x).truncate(Ps.order) - vcrit.truncate(Ps.order)).scale(1 / B0)
    # 3. remove the even part of Q in sigma: a function of (Z, Y1) = (x, sigma^2)
    parts = _split_y(Qs)
    even_xw = {}
    for k, coeff in parts.items():
        if k % 2 == 0:
            for e, c in coeff.items():
                even_xw[(e[0], k // 2)] = c
    E = TruncatedSeries(even_xw, Qs.order)  # E(Z, W)
    Qodd = Qs - compose(E, MapJet([TruncatedSeries.var(0, Qs.order), Y1.truncate(Qs.order)]))
    # Qodd = sigma * m(x, sigma^2); its sigma^3 coefficient is the cubic invariant b
    b = Qodd.coeff((0, 3))
    if not b:
        raise GenericityError("cubic coefficient vanishes: the star condition fails")
    Qodd = Qodd.truncate(top)
    m = Qodd.divide_by_monomial(1, 1)  # exact through degree n
    a = m.coeff((n, 0))
    for j in range(n):
        if m.coeff((j, 0)):
            raise ArithmeticError("unexpected low-order pure-xi term in the odd part")
    if n == 1:
        # the 2-jet (Z, Y, X) = (x, sigma^2, a x sigma) is final up to scale
        Xfinal = Qodd.scale(1 / b.as_fraction())
    else:
        # R(x, w): m = a x^n + w R(x, w) + O(x^(n+1)).  A term x^i w^j of R only reaches
        # degree 3 + i + 2j of the output, and every such term with 3 + i + 2j <= n + 1
        # is known from m, so R may be treated as exact for the truncated product.
        Rterms = {}
        for e, coeff in m.items():
            if e[1] >= 2:
                Rterms[(e[0], (e[1] - 2) // 2)] = coeff
        R = TruncatedSeries(Rterms, N)
        # 4. X -> X / R(Z, Y) leaves sigma^3 + (a/b) x^n sigma modulo degree n+2
        Rinv = compose(R.reciprocal(), MapJet([TruncatedSeries.var(0, N), Y1.with_order(N)]))
        Xfinal = (Qodd.with_order(N) * Rinv).truncate(top)
    # verify the (n+1)-jet: (Z, Y, X) = (x, sigma^2, sigma^3 + c x^n sigma)
    c = a.as_fraction() / b.as_fraction()
    u_ = TruncatedSeries.var(0, top)
    v_ = TruncatedSeries.var(1, top)
    expected = MapJet([u_, v_ * v_, v_ * v_ * v_ + (u_ ** n * v_).scale(c)]).truncate(top)
    got = MapJet([TruncatedSeries.var(0, top), Y1.truncate(top), Xfinal])
    if not got.agrees_with(expected, top):
        raise ArithmeticError(f"normalised jet {got} differs from {expected}")
    sgn = 1 if c > 0 else -1
    sign = sgn if n % 2 == 0 else None
    final = MapJet([u_, v_ * v_, v_ * v_ * v_ + (u_ ** n * v_).scale(sgn if n % 2 == 0 else 1)]).truncate(top)
    wit = {
        "a": a, "b": b, "c": ParamPoly.const(c),
        "rescale": f"x -> {abs(c)}^(-1/{n}) * x" + ("" if n % 2 == 0 or c > 0 else ", then x -> -x"),
        "normalizedJet": final,
        "prenormalizedJet": got,
        "sourceSubstitution": sub,
    }
    return SingularityClass(n, sign, perestroika_label(n, sign), wit)
