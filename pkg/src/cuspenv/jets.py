"""Truncated power series and map-germ jets over ``Q[params]``.

A :class:`TruncatedSeries` stores the terms of total degree ``<= order`` of a
germ, and ``order`` is also the exactness degree: every stored coefficient is
exact, nothing beyond ``order`` is known.  Operations that lose information
(differentiation, division by monomials, composition with inputs of lower
order) lower ``order`` accordingly, so the contract "multiplication is exact
through N, derivatives and Jacobians through N-1" is carried by the data.

The arithmetic operators silently truncate to the coarser order of their
operands.  The module-level :func:`linear_combine`, :func:`multiply` and
:func:`compose` check that working orders match, as the public contract asks.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from .paramring import ONE, ZERO, ParamPoly

DEFAULT_ORDER = 8

Exps = Tuple[int, ...]


class OrderMismatchError(ValueError):
    pass


class NonInvertibleError(ValueError):
    pass


class NotAGermError(ValueError):
    pass


def default_names(nvars: int) -> Tuple[str, ...]:
    if nvars == 1:
        return ("s",)
    if nvars <= 3:
        return ("x", "y", "z")[:nvars]
    return tuple(f"x{i + 1}" for i in range(nvars))


def _coef(value) -> ParamPoly:
    return value if isinstance(value, ParamPoly) else ParamPoly.coerce(value)


def monomials(nvars: int, degree: int) -> List[Exps]:
    """Exponent tuples of the given total degree, highest power of the first variable first."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


class TruncatedSeries:
    """A jet ``sum c_e x^e`` with ``|e| <= order`` and exact ParamPoly coefficients."""

    __slots__ = ("_terms", "order", "nvars")

    def __init__(self, terms: Mapping[Exps, object] | None = None, order: int = DEFAULT_ORDER,
                 nvars: int = 2):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        self.nvars = nvars
        clean: Dict[Exps, ParamPoly] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            if sum(e) > order:
                continue
            c = _coef(c)
            if c:
                clean[e] = c
        self._terms = clean

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Exps, ParamPoly], order: int, nvars: int) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.order = order
        obj.nvars = nvars
        return obj

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER, nvars: int = 2) -> "TruncatedSeries":
        return cls._raw({}, order, nvars)

    @classmethod
    def const(cls, c, order: int = DEFAULT_ORDER, nvars: int = 2) -> "TruncatedSeries":
        return cls({(0,) * nvars: c}, order, nvars)

    @classmethod
    def var(cls, k: int, order: int = DEFAULT_ORDER, nvars: int = 2) -> "TruncatedSeries":
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): 1}, order, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls({tuple(exps): coeff}, order, len(exps))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, order: int = DEFAULT_ORDER, nvars: int = 2,
                          var: int = 0) -> "TruncatedSeries":
        """Univariate series ``sum coeffs[i] * v^i`` in variable ``var``."""
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[var] = i
            terms[tuple(e)] = c
        return cls(terms, order, nvars)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Exps, ParamPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exps: Sequence[int]) -> ParamPoly:
        exps = tuple(exps)
        if sum(exps) > self.order:
            raise ValueError(f"coefficient of degree {sum(exps)} is beyond order {self.order}")
        return self._terms.get(exps, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def valuation(self) -> int:
        """Lowest degree with a nonzero coefficient; ``order + 1`` for the zero jet."""
        return min((sum(e) for e in self._terms), default=self.order + 1)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def constant_term(self) -> ParamPoly:
        return self._terms.get((0,) * self.nvars, ZERO)

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries._raw({e: c for e, c in self._terms.items() if sum(e) == d},
                                    self.order, self.nvars)

    def truncate(self, order: int) -> "TruncatedSeries":
        order = min(order, self.order)
        return TruncatedSeries._raw({e: c for e, c in self._terms.items() if sum(e) <= order},
                                    order, self.nvars)

    def with_order(self, order: int) -> "TruncatedSeries":
        """Reinterpret an exact polynomial at a larger order (caller vouches for exactness)."""
        return TruncatedSeries._raw({e: c for e, c in self._terms.items() if sum(e) <= order},
                                    order, self.nvars)

    def params(self) -> set:
        out = set()
        for c in self._terms.values():
            out |= c.params()
        return out

    def agrees_with(self, other: "TruncatedSeries", order: int | None = None) -> bool:
        k = min(self.order, other.order) if order is None else order
        if k > min(self.order, other.order):
            raise ValueError("comparison beyond the exactness of an operand")
        return self.truncate(k)._terms == other.truncate(k)._terms

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars:
            raise ValueError("series in different numbers of variables")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.const(other, self.order, self.nvars)
        self._check(other)
        order = min(self.order, other.order)
        out = {e: c for e, c in self._terms.items() if sum(e) <= order}
        for e, c in other._terms.items():
            if sum(e) > order:
                continue
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(out, order, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw({e: -c for e, c in self._terms.items()}, self.order, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.const(other, self.order, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = _coef(c)
        if not c:
            return TruncatedSeries.zero(self.order, self.nvars)
        return TruncatedSeries._raw({e: v * c for e, v in self._terms.items()}, self.order, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction, ParamPoly)):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        # exact through min(Na + vb, Nb + va), never stored beyond the finer order
        order = min(self.order + other.valuation(), other.order + self.valuation(),
                    max(self.order, other.order))
        return TruncatedSeries._raw(_mul_terms(self._terms, other._terms, order), order, self.nvars)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        c = _coef(other)
        if not c.is_constant():
            raise NonInvertibleError(f"cannot divide a jet by the parameter polynomial {c}")
        return self.scale(ParamPoly.const(1 / c.as_fraction()))

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.const(1, self.order, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> "TruncatedSeries":
        """``1/f`` for ``f`` with a nonzero rational constant term."""
        c0 = self.constant_term()
        if not c0 or not c0.is_constant():
            raise NonInvertibleError("reciprocal needs a nonzero rational constant term")
        inv0 = 1 / c0.as_fraction()
        g = (self.scale(inv0) - 1)  # f = c0 (1 + g), g in M
        out = TruncatedSeries.const(1, self.order, self.nvars)
        power = TruncatedSeries.const(1, self.order, self.nvars)
        for _ in range(self.order):
            power = -(power * g)
            if power.is_zero():
                break
            out = out + power
        return out.scale(inv0)

    def sqrt(self) -> "TruncatedSeries":
        """Square root with positive constant term; the constant must be a rational square."""
        c0 = self.constant_term()
        if not c0 or not c0.is_constant() or c0.as_fraction() < 0:
            raise NonInvertibleError("sqrt needs a positive rational constant term")
        q = c0.as_fraction()
        r = _rational_sqrt(q)
        g = self.scale(1 / q) - 1
        out = TruncatedSeries.const(1, self.order, self.nvars)
        power = TruncatedSeries.const(1, self.order, self.nvars)
        binom = Fraction(1)
        for k in range(1, self.order + 1):
            binom = binom * (Fraction(1, 2) - (k - 1)) / k
            power = power * g
            if power.is_zero():
                break
            out = out + power.scale(binom)
        return out.scale(r)

    def divide_by_monomial(self, var: int, k: int = 1) -> "TruncatedSeries":
        """Exact division by ``v^k``; every stored term must be divisible."""
        if k == 0:
            return self
        out = {}
        for e, c in self._terms.items():
            if e[var] < k:
                raise ArithmeticError(f"term with exponent {e} is not divisible by variable {var}^{k}")
            e2 = list(e)
            e2[var] -= k
            out[tuple(e2)] = c
        return TruncatedSeries._raw(out, self.order - k, self.nvars)

    def monomial_content(self, var: int) -> int:
        """Largest ``k`` with ``v^k`` dividing every stored term."""
        return min((e[var] for e in self._terms), default=self.order + 1)

    # -- substitution / evaluation ---------------------------------------
    def subs_params(self, values: Mapping[str, object]) -> "TruncatedSeries":
        out = {}
        for e, c in self._terms.items():
            v = c.subs(values)
            if v:
                out[e] = v
        return TruncatedSeries._raw(out, self.order, self.nvars)

    def promote_param(self, name: str, order: int | None = None) -> "TruncatedSeries":
        """Turn parameter ``name`` into a new last germ variable (total degree counted)."""
        order = self.order if order is None else order
        out: Dict[Exps, ParamPoly] = {}
        for e, c in self._terms.items():
            for m, q in c.items():
                k = dict(m).pop(name, 0)
                rest = tuple((n, p) for n, p in m if n != name)
                e2 = e + (k,)
                if sum(e2) > order:
                    continue
                out[e2] = out.get(e2, ZERO) + ParamPoly({rest: q})
        return TruncatedSeries({e: c for e, c in out.items() if c}, order, self.nvars + 1)

    def restrict(self, var: int, value) -> "TruncatedSeries":
        """Substitute a constant for a germ variable, keeping the same variable count.

        Only exact for ``value == 0`` or for series that are polynomials in ``var``;
        callers use it on exact polynomial families.
        """
        value = _coef(value)
        out: Dict[Exps, ParamPoly] = {}
        for e, c in self._terms.items():
            k = e[var]
            e2 = list(e)
            e2[var] = 0
            e2 = tuple(e2)
            if k and not value:
                continue
            out[e2] = out.get(e2, ZERO) + c * value ** k
        return TruncatedSeries({e: c for e, c in out.items() if c}, self.order, self.nvars)

    def evaluate(self, point: Sequence, params: Mapping[str, float] | None = None):
        """Numeric evaluation; ``point`` entries may be numpy arrays."""
        params = params or {}
        total = 0.0
        for e, c in self._terms.items():
            term = c.evaluate(params)
            for v, k in zip(point, e):
                if k:
                    term = term * np.asarray(v, dtype=float) ** k
            total = total + term
        return total

    def evaluate_exact(self, point: Sequence) -> ParamPoly:
        total = ZERO
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * _coef(v) ** k
            total = total + term
        return total

    # -- comparison / printing -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.order, self.nvars, frozenset(self._terms.items())))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), tuple(-k for k in ec[0])))

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.nvars)
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(_format_coef_term(c, mono))
        out = ""
        for i, (sign, body) in enumerate(parts):
            if i == 0:
                out = body if sign == "+" else "-" + body
            else:
                out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TruncatedSeries({self.format()!r}, order={self.order})"


def _format_coef_term(c: ParamPoly, mono: str):
    items = c.sorted_terms()
    if len(items) == 1:
        m, q = items[0]
        sign = "-" if q < 0 else "+"
        pmono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in m)
        a = abs(q)
        factors = [] if a == 1 and (pmono or mono) else [str(a)]
        factors += [f for f in (pmono, mono) if f]
        return sign, "*".join(factors)
    body = f"({c})"
    return "+", body + (f"*{mono}" if mono else "")


def _rational_sqrt(q: Fraction) -> Fraction:
    from math import isqrt

    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NonInvertibleError(f"{q} is not the square of a rational")
    return Fraction(rn, rd)


def _mul_terms(a: Dict[Exps, ParamPoly], b: Dict[Exps, ParamPoly], order: int) -> Dict[Exps, ParamPoly]:
    if not a or not b:
        return {}
    bl = [(e, sum(e), c) for e, c in b.items()]
    out: Dict[Exps, ParamPoly] = {}
    for e1, c1 in a.items():
        d1 = sum(e1)
        if d1 > order:
            continue
        for e2, d2, c2 in bl:
            if d1 + d2 > order:
                continue
            e = tuple(i + j for i, j in zip(e1, e2))
            v = out.get(e)
            out[e] = c1 * c2 if v is None else v + c1 * c2
    return {e: c for e, c in out.items() if c}


def _match_orders(jets: Iterable[TruncatedSeries]):
    orders = {j.order for j in jets}
    if len(orders) > 1:
        raise OrderMismatchError(f"mismatched working orders {sorted(orders)}")


def linear_combine(coeffs: Sequence, jets: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Exact linear combination of series sharing one working order."""
    if len(coeffs) != len(jets) or not jets:
        raise ValueError("need matching, non-empty coefficient and series lists")
    _match_orders(jets)
    out = TruncatedSeries.zero(jets[0].order, jets[0].nvars)
    for c, j in zip(coeffs, jets):
        out = out + j.scale(c)
    return out


def multiply(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product truncated at the shared working order."""
    _match_orders([a, b])
    return (a * b).truncate(a.order)


def differentiate(f: TruncatedSeries, var: int) -> TruncatedSeries:
    """Formal partial derivative; exact through ``order - 1`` (the result's order)."""
    out = {}
    for e, c in f.items():
        k = e[var]
        if k:
            e2 = list(e)
            e2[var] -= 1
            out[tuple(e2)] = c * k
    return TruncatedSeries._raw(out, max(f.order - 1, 0), f.nvars)


class MapJet:
    """A tuple of series in the same variables: a map germ ``(R^nvars, 0) -> (R^ncomp, ...)``."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[TruncatedSeries]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a map jet needs at least one component")
        nv = {c.nvars for c in comps}
        if len(nv) != 1:
            raise ValueError("components live in different numbers of variables")
        self.components = comps

    @classmethod
    def identity(cls, n: int = 2, order: int = DEFAULT_ORDER) -> "MapJet":
        return cls([TruncatedSeries.var(k, order, n) for k in range(n)])

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def order(self) -> int:
        return min(c.order for c in self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def is_germ(self) -> bool:
        return all(not c.constant_term() for c in self.components)

    def truncate(self, order: int) -> "MapJet":
        return MapJet([c.truncate(order) for c in self.components])

    def with_order(self, order: int) -> "MapJet":
        return MapJet([c.with_order(order) for c in self.components])

    def subs_params(self, values) -> "MapJet":
        return MapJet([c.subs_params(values) for c in self.components])

    def params(self) -> set:
        out = set()
        for c in self.components:
            out |= c.params()
        return out

    def __add__(self, other: "MapJet") -> "MapJet":
        if len(other) != len(self):
            raise ValueError("component counts differ")
        return MapJet([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "MapJet") -> "MapJet":
        return self + other.scale(-1)

    def scale(self, c) -> "MapJet":
        return MapJet([a.scale(c) for a in self.components])

    def linear_part(self) -> List[List[ParamPoly]]:
        n = self.nvars
        rows = []
        for c in self.components:
            row = []
            for k in range(n):
                e = [0] * n
                e[k] = 1
                row.append(c._terms.get(tuple(e), ZERO))
            rows.append(row)
        return rows

    def jacobian_matrix(self) -> List[List[TruncatedSeries]]:
        return [[differentiate(c, k) for k in range(self.nvars)] for c in self.components]

    def agrees_with(self, other: "MapJet", order: int | None = None) -> bool:
        return len(self) == len(other) and all(a.agrees_with(b, order) for a, b in zip(self, other))

    def __eq__(self, other):
        if not isinstance(other, MapJet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def format(self, names=None) -> str:
        return "(" + ", ".join(c.format(names) for c in self.components) + ")"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MapJet({self.format()!r}, order={self.order})"


PlaneGermJet = MapJet
SpaceGermJet = MapJet


def plane_jet(f1, f2) -> MapJet:
    jet = MapJet([f1, f2])
    if not jet.is_germ():
        raise NotAGermError("plane germ components must vanish at the origin")
    return jet


def _compose_series(outer: TruncatedSeries, inner: Sequence[TruncatedSeries], cap: int | None):
    nv = inner[0].nvars
    vals = [c.valuation() for c in inner]
    vmin = min(vals)
    if vmin < 1:
        raise NotAGermError("inner map must have zero constant terms")
    bound = (outer.order + 1) * vmin - 1
    for k, c in enumerate(inner):
        degs = [sum(e) for e in outer._terms if e[k]]
        if degs:
            bound = min(bound, c.order + (min(degs) - 1) * vmin)
    if cap is None:
        cap = max([outer.order] + [c.order for c in inner])
    order = max(min(bound, cap), 0)

    powers: Dict[Tuple[int, int], Dict[Exps, ParamPoly]] = {}

    def power(k: int, p: int) -> Dict[Exps, ParamPoly]:
        if p == 0:
            return {(0,) * nv: ONE}
        key = (k, p)
        if key not in powers:
            base = {e: c for e, c in inner[k]._terms.items() if sum(e) <= order}
            powers[key] = base if p == 1 else _mul_terms(power(k, p - 1), base, order)
        return powers[key]

    out: Dict[Exps, ParamPoly] = {}
    for e, c in outer._terms.items():
        if sum(e) * vmin > order:
            continue
        acc = {(0,) * nv: c}
        for k, p in enumerate(e):
            if p:
                acc = _mul_terms(acc, power(k, p), order)
                if not acc:
                    break
        for m, v in acc.items():
            w = out.get(m)
            out[m] = v if w is None else w + v
    return TruncatedSeries._raw({m: v for m, v in out.items() if v}, order, nv)


def compose(outer, inner: MapJet, cap: int | None = None, strict: bool = False):
    """Substitute ``inner`` into ``outer`` (a series, or a map jet whose variables match ``inner``).

    The result is exact through the order this module can certify (see the
    module docstring); ``cap`` bounds it from above.  With ``strict=True``
    the working orders must coincide, per the public contract.
    """
    if not isinstance(inner, MapJet):
        inner = MapJet(inner)
    if not inner.is_germ():
        raise NotAGermError("inner map has a nonzero constant term")
    single = isinstance(outer, TruncatedSeries)
    outs = [outer] if single else list(outer)
    for o in outs:
        if o.nvars != len(inner):
            raise ValueError(f"outer series has {o.nvars} variables, inner map {len(inner)} components")
    if strict:
        _match_orders(outs + list(inner))
    res = [_compose_series(o, list(inner), cap) for o in outs]
    return res[0] if single else MapJet(res)


def jacobian_determinant(f: MapJet) -> TruncatedSeries:
    """``d1 f1 * d2 f2 - d2 f1 * d1 f2``; exact through ``order - 1``."""
    if len(f) != 2 or f.nvars != 2:
        raise ValueError("jacobian_determinant needs a plane-to-plane jet")
    (a, b), (c, d) = f.jacobian_matrix()
    out = a * d - b * c
    return out.truncate(f.order - 1)


def matrix_det(m: List[List[ParamPoly]]) -> ParamPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * matrix_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def matrix_inverse(m: List[List[ParamPoly]]) -> List[List[ParamPoly]]:
    """Inverse over ``Q[params]``; the determinant must be a nonzero rational."""
    det = matrix_det(m)
    if not det:
        raise NonInvertibleError("linear part is singular")
    if not det.is_constant():
        raise NonInvertibleError(f"linear-part determinant {det} is not a unit of the parameter ring")
    n = len(m)
    inv_det = 1 / det.as_fraction()
    if n == 1:
        return [[ParamPoly.const(inv_det)]]
    adj = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = matrix_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return [[adj[i][j] * inv_det for j in range(n)] for i in range(n)]


def linear_map(mat: List[List[ParamPoly]], order: int = DEFAULT_ORDER) -> MapJet:
    n = len(mat[0])
    comps = []
    for row in mat:
        terms = {}
        for k, c in enumerate(row):
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = c
        comps.append(TruncatedSeries(terms, order, n))
    return MapJet(comps)


def apply_matrix(mat: List[List[ParamPoly]], jet: MapJet) -> MapJet:
    comps = []
    for row in mat:
        acc = TruncatedSeries.zero(jet.order, jet.nvars)
        for c, comp in zip(row, jet):
            if c:
                acc = acc + comp.scale(c)
        comps.append(acc)
    return MapJet(comps)


class CoordChangeJet(MapJet):
    """A diffeomorphism jet ``(R^n, 0) -> (R^n, 0)`` with invertible linear part.

    ``strict=True`` additionally demands that the linear-part determinant has a
    nonzero constant term, i.e. invertibility for all small parameter values.
    """

    __slots__ = ()

    def __init__(self, components: Sequence[TruncatedSeries], strict: bool = False):
        super().__init__(components)
        if len(self) != self.nvars:
            raise ValueError("a coordinate change must map R^n to R^n")
        if not self.is_germ():
            raise NotAGermError("coordinate change must fix the origin")
        det = matrix_det(self.linear_part())
        if not det:
            raise NonInvertibleError("linear part is singular")
        if strict and not det.constant_term():
            raise NonInvertibleError(f"determinant {det} vanishes at zero parameters")

    @classmethod
    def identity(cls, n: int = 2, order: int = DEFAULT_ORDER) -> "CoordChangeJet":
        return cls([TruncatedSeries.var(k, order, n) for k in range(n)])


def invert_coordinate_change(h: MapJet) -> CoordChangeJet:
    """Two-sided inverse of a coordinate-change jet modulo degree ``order + 1``."""
    if not isinstance(h, CoordChangeJet):
        h = CoordChangeJet(list(h))
    n, order = len(h), h.order
    linv = matrix_inverse(h.linear_part())
    ident = MapJet.identity(n, order)
    g = linear_map(linv, order)
    for _ in range(order):
        resid = compose(h, g, cap=order) - ident
        if all(c.is_zero() for c in resid):
            break
        g = g - apply_matrix(linv, resid)
    return CoordChangeJet(list(g))


def solve_implicit(G: TruncatedSeries, var: int) -> TruncatedSeries:
    """Solve ``G(..., v, ...) = 0`` for ``v`` (slot ``var``) as a series in the other variables.

    Needs ``G(0) = 0`` and a nonzero rational ``dG/dv(0)``.  The returned series
    lives in the same variables but does not involve slot ``var``.
    """
    if G.constant_term():
        raise ValueError("implicit equation does not pass through the origin")
    e = [0] * G.nvars
    e[var] = 1
    lin = G.coeff(tuple(e))
    if not lin or not lin.is_constant():
        raise NonInvertibleError("implicit-function derivative is not a nonzero rational")
    inv = 1 / lin.as_fraction()
    order = G.order
    v = TruncatedSeries.zero(order, G.nvars)
    comps = [TruncatedSeries.var(k, order, G.nvars) for k in range(G.nvars)]
    for _ in range(order + 1):
        comps[var] = v
        resid = _compose_general(G, comps, order)
        if resid.is_zero():
            break
        v = v - resid.scale(inv)
    return v


def _compose_general(outer: TruncatedSeries, inner: List[TruncatedSeries], order: int) -> TruncatedSeries:
    """Substitution allowing zero inner components (used by the implicit solver)."""
    nv = inner[0].nvars
    out: Dict[Exps, ParamPoly] = {}
    cache: Dict[Tuple[int, int], Dict[Exps, ParamPoly]] = {}

    def power(k, p):
        if p == 0:
            return {(0,) * nv: ONE}
        if (k, p) not in cache:
            base = dict(inner[k]._terms)
            cache[(k, p)] = base if p == 1 else _mul_terms(power(k, p - 1), base, order)
        return cache[(k, p)]

    for e, c in outer._terms.items():
        acc = {(0,) * nv: c}
        for k, p in enumerate(e):
            if p:
                acc = _mul_terms(acc, power(k, p), order)
                if not acc:
                    break
        for m, v in acc.items():
            w = out.get(m)
            out[m] = v if w is None else w + v
    return TruncatedSeries._raw({m: v for m, v in out.items() if v}, order, nv)


def series_from_function(fn, order: int = DEFAULT_ORDER, nvars: int = 2) -> TruncatedSeries:
    """Build a polynomial jet from a callable on monomial exponents (small helper for tests)."""
    terms = {}
    for d in range(order + 1):
        for e in monomials(nvars, d):
            c = fn(e)
            if c:
                terms[e] = c
    return TruncatedSeries(terms, order, nvars)


def all_monomials(nvars: int, lo: int, hi: int) -> List[Exps]:
    """Monomials with ``lo <= degree < hi`` in the package's fixed order."""
    return [e for d in range(lo, hi) for e in monomials(nvars, d)]


__all__ = [
    "DEFAULT_ORDER", "TruncatedSeries", "MapJet", "PlaneGermJet", "SpaceGermJet",
    "CoordChangeJet", "OrderMismatchError", "NonInvertibleError", "NotAGermError",
    "linear_combine", "multiply", "compose", "differentiate", "jacobian_determinant",
    "invert_coordinate_change", "solve_implicit", "monomials", "all_monomials",
    "plane_jet", "matrix_det", "matrix_inverse", "linear_map", "apply_matrix",
]

# silence unused-import linters for helpers re-exported to tests
_ = product
