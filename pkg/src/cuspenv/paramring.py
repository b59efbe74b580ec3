"""Exact polynomials in formal parameters with rational coefficients.

Coefficients of every jet in the package live in this ring: ``Q[d, l, m, ...]``.
A monomial is stored as a sorted tuple of ``(name, exponent)`` pairs, the
constant monomial being ``()``.  Zero coefficients are never stored.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

Mono = Tuple[Tuple[str, int], ...]

ONE_MONO: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, e in b:
        out[name] = out.get(name, 0) + e
    return tuple(sorted(out.items()))


def _mono_div(a: Mono, b: Mono):
    """Return a/b when b divides a, else None."""
    out = dict(a)
    for name, e in b:
        have = out.get(name, 0)
        if have < e:
            return None
        if have == e:
            del out[name]
        else:
            out[name] = have - e
    return tuple(sorted(out.items()))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Mono):
    # graded lex: total degree first, then exponents in name order
    return (mono_degree(m), tuple((name, e) for name, e in m))


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    raise TypeError(f"not an exact rational: {q!r}")


class ParamPoly:
    """Element of ``Q[params]``; immutable and hashable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        clean: Dict[Mono, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, q) -> "ParamPoly":
        return cls({ONE_MONO: _as_fraction(q)})

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, str):
            return cls.symbol(value)
        return cls.const(value)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Mono, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.constant_term()

    def params(self) -> set:
        return {name for m in self._terms for name, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def leading(self) -> Tuple[Mono, Fraction]:
        m = max(self._terms, key=_grlex_key)
        return m, self._terms[m]

    def sign(self) -> int:
        q = self.as_fraction()
        return (q > 0) - (q < 0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if other.is_constant():
            c = other.constant_term()
            return ParamPoly({m: v * c for m, v in self._terms.items()})
        if self.is_constant():
            c = self.constant_term()
            return ParamPoly({m: v * c for m, v in other._terms.items()})
        out: Dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational constant only; see :meth:`exquo`."""
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other.is_constant():
            return self.exquo(other)
        c = other.constant_term()
        if c == 0:
            raise ZeroDivisionError("division by zero in ParamPoly")
        return ParamPoly({m: v / c for m, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("ParamPoly powers must be non-negative integers")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exquo(self, other: "ParamPoly") -> "ParamPoly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        other = ParamPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("exact division by zero")
        if other.is_constant():
            return self / other.constant_term()
        lm, lc = other.leading()
        rem = dict(self._terms)
        quot: Dict[Mono, Fraction] = {}
        while rem:
            m = max(rem, key=_grlex_key)
            q = _mono_div(m, lm)
            if q is None:
                raise ArithmeticError(f"{other} does not divide {self}")
            c = rem[m] / lc
            quot[q] = quot.get(q, 0) + c
            for m2, c2 in other._terms.items():
                mm = _mono_mul(q, m2)
                v = rem.get(mm, 0) - c * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return ParamPoly(quot)

    # -- evaluation ---------------------------------------------------
    def subs(self, values: Mapping[str, object]) -> "ParamPoly":
        """Substitute parameters by rationals or other ParamPolys."""
        if not values or not self.params() & set(values):
            return self
        out = ZERO
        for m, c in self._terms.items():
            term = ParamPoly.const(c)
            for name, e in m:
                if name in values:
                    term = term * ParamPoly.coerce(values[name]) ** e
                else:
                    term = term * ParamPoly({((name, e),): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, float] | None = None) -> float:
        values = values or {}
        total = 0.0
        for m, c in self._terms.items():
            v = float(c)
            for name, e in m:
                if name not in values:
                    raise KeyError(f"parameter {name!r} has no numeric value")
                v *= float(values[name]) ** e
            total += v
        return total

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return float(self.as_fraction())

    # -- printing -----------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: _grlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)
            parts.append(_format_term(c, mono))
        return _join_terms(parts)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"


def _format_term(c: Fraction, mono: str) -> str:
    """Signed text for ``c*mono``; the leading sign is handled by :func:`_join_terms`."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return sign + body


def _join_terms(parts: Iterable[str]) -> str:
    out = ""
    for i, p in enumerate(parts):
        sign, body = p[0], p[1:]
        if i == 0:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out


def _coerce_or_none(value):
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, (int, Fraction, Rational)):
        return ParamPoly.const(value)
    return None


ZERO = ParamPoly()
ONE = ParamPoly.const(1)


def factor_locus(p: ParamPoly) -> list:
    """Irreducible non-constant factors of ``p`` as strings (used for vanishing loci).

    Factorisation is delegated to sympy; the ring itself never needs it.
    """
    import sympy

    if p.is_zero():
        return ["0 = 0"]
    names = sorted(p.params())
    if not names:
        return []
    syms = sympy.symbols(names)
    table = dict(zip(names, syms))
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for name, e in m:
            term *= table[name] ** e
        expr += term
    _, factors = sympy.factor_list(expr)
    out = []
    for f, _ in factors:
        if f.free_symbols:
            out.append(f"{sympy.sstr(f).replace('**', '^')} = 0")
    return sorted(set(out))
