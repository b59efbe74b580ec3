"""Parser for germ, CTF and family expressions.

Grammar (whitespace-insensitive)::

    text     := clause* body
    clause   := ("param" | "deform") NAME ("," NAME)* ";"
    body     := expr (";" expr)*                      germ components
              | KEY ":" expr (";" KEY ":" expr)*      CTF series in xi, KEY in alpha A B C D
                [";" "rem" ":" expr "," expr]         remainder pair in (xi, t), t-order >= 4
    expr     := ["-"] term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := atom ["^" INT]
    atom     := INT | NAME | "(" expr ")" | "-" factor

Variables are ``x`` and ``y`` (``xi`` and ``t`` are accepted as aliases).
Division is only by rational constants, so ``1/2*x`` is a rational
coefficient.  ``param`` names become formal coefficients; ``deform`` names
become the parameters of a deformation family and must enter linearly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..bifurcate import DeformationFamily
from ..ctf import CTFData
from ..jets import DEFAULT_ORDER, MapJet, TruncatedSeries
from ..paramring import ParamPoly

VARIABLES = {"x": 0, "y": 1, "xi": 0, "t": 1}
CTF_KEYS = ("alpha", "A", "B", "C", "D", "rem")
KEYWORDS = ("param", "deform")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1):
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^();:,":
                raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3), text)
            out.append(Token("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


@dataclass
class GermExpression:
    source: str
    components: List[TruncatedSeries]
    params: List[str] = field(default_factory=list)
    deform: List[str] = field(default_factory=list)
    keys: Optional[List[str]] = None  # CTF series names, in input order
    order: int = DEFAULT_ORDER

    @property
    def is_ctf(self) -> bool:
        return self.keys is not None


class _Parser:
    def __init__(self, text: str, order: int, nvars: int = 2):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.order = order
        self.nvars = nvars
        self.params: List[str] = []
        self.deform: List[str] = []
        self.allowed_vars = dict(VARIABLES)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        raise ParseError(msg, (tok or self.tok).pos, self.text)

    def eat(self, kind: str, value: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            got = t.value or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        self.i += 1
        return t

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def clauses(self):
        while self.at("name") and self.tok.value in KEYWORDS:
            which = self.eat("name").value
            names = [self._new_name()]
            while self.at("op", ","):
                self.eat("op", ",")
                names.append(self._new_name())
            self.eat("op", ";")
            (self.params if which == "param" else self.deform).extend(names)

    def _new_name(self) -> str:
        t = self.eat("name")
        if t.value in VARIABLES or t.value in KEYWORDS:
            self.error(f"{t.value!r} cannot be declared as a parameter", t)
        if t.value in self.params or t.value in self.deform:
            self.error(f"parameter {t.value!r} declared twice", t)
        return t.value

    # expressions evaluate straight to truncated series
    def expr(self) -> TruncatedSeries:
        if self.at("op", "-"):
            self.eat("op")
            acc = -self.term()
        else:
            acc = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.eat("op").value
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> TruncatedSeries:
        acc = self.factor()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.eat("op")
            rhs = self.factor()
            if op.value == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero", op)
                if set(rhs.terms) != {(0,) * self.nvars} or not rhs.constant_term().is_constant():
                    self.error("division is only allowed by rational constants", op)
                acc = acc.scale(1 / rhs.constant_term().as_fraction())
        return acc

    def factor(self) -> TruncatedSeries:
        base = self.atom()
        if self.at("op", "^"):
            self.eat("op")
            t = self.eat("int")
            base = base ** int(t.value)
        return base

    def atom(self) -> TruncatedSeries:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return TruncatedSeries.const(int(t.value), self.order, self.nvars)
        if t.kind == "name":
            self.i += 1
            if t.value in self.allowed_vars:
                return TruncatedSeries.var(self.allowed_vars[t.value], self.order, self.nvars)
            if t.value in self.params or t.value in self.deform:
                return TruncatedSeries.const(ParamPoly.symbol(t.value), self.order, self.nvars)
            self.error(f"undeclared symbol {t.value!r}", t)
        if self.at("op", "("):
            self.eat("op")
            inner = self.expr()
            self.eat("op", ")")
            return inner
        if self.at("op", "-"):
            self.eat("op")
            return -self.factor()
        self.error(f"unexpected {t.value or 'end of input'!r}")


def _is_ctf(text: str) -> bool:
    return re.search(r"(^|;)\s*(alpha|A|B|C|D|rem)\s*:", text) is not None


def parse_expression(text: str, order: int = DEFAULT_ORDER) -> GermExpression:
    """Parse the text into exact series without interpreting them further."""
    if _is_ctf(text):
        return _parse_ctf_text(text, order)
    p = _Parser(text, order)
    p.clauses()
    comps = [p.expr()]
    while p.at("op", ";"):
        p.eat("op")
        if p.at("end"):
            break
        comps.append(p.expr())
    p.eat("end")
    return GermExpression(text, comps, p.params, p.deform, None, order)


def _parse_ctf_text(text: str, order: int) -> GermExpression:
    p = _Parser(text, order, nvars=2)
    p.allowed_vars = {"t": 1, "y": 1, "xi": 0, "x": 0}
    p.clauses()
    keys, comps = [], []
    while True:
        k = p.eat("name")
        if k.value not in CTF_KEYS:
            p.error(f"unknown CTF series {k.value!r} (expected one of {', '.join(CTF_KEYS)})", k)
        if k.value in keys:
            p.error(f"series {k.value!r} given twice", k)
        p.eat("op", ":")
        keys.append(k.value)
        comps.append(p.expr())
        if k.value == "rem":
            p.eat("op", ",")
            keys.append("rem2")
            comps.append(p.expr())
        if not p.at("op", ";"):
            break
        p.eat("op")
        if p.at("end"):
            break
    p.eat("end")
    missing = [k for k in CTF_KEYS[:5] if k not in keys]
    if missing:
        raise ParseError(f"missing CTF series: {', '.join(missing)}", len(text), text)
    return GermExpression(text, comps, p.params, p.deform, keys, order)


def parse_germ(text: str, order: int = DEFAULT_ORDER):
    """Parse to a ``MapJet`` (germ), ``CTFData`` or ``DeformationFamily``."""
    g = parse_expression(text, order)
    if g.is_ctf:
        return _to_ctf(g)
    for k, c in enumerate(g.components):
        const = c.constant_term()
        if const and not any(p in g.deform for p in const.params()):
            raise ParseError(f"component {k + 1} has a nonzero constant term {const}", 0, text)
    if not g.deform:
        return MapJet(g.components)
    return _to_family(g)


def _to_ctf(g: GermExpression) -> CTFData:
    series = dict(zip(g.keys, g.components))
    rem = None
    if "rem" in series:
        rem = MapJet([series["rem"], series["rem2"]])

    def xi_coeffs(key):
        s = series[key]
        if any(e[1] for e, _ in s.items()):
            raise ParseError(f"series {key} must depend on xi only", 0, g.source)
        top = max((e[0] for e, _ in s.items()), default=0)
        return [s.coeff((k, 0)) for k in range(top + 1)]

    coeffs = [xi_coeffs(k) for k in CTF_KEYS[:5]]
    try:
        return CTFData.make(*coeffs, remainder=rem, order=g.order)
    except ValueError as exc:
        raise ParseError(str(exc), 0, g.source) from None


def _to_family(g: GermExpression) -> DeformationFamily:
    base, terms = [], {p: [] for p in g.deform}
    for c in g.components:
        b = c.subs_params({p: 0 for p in g.deform})
        base.append(b)
        for p in g.deform:
            lin = (c.subs_params({q: 0 for q in g.deform if q != p}) - b)
            coeff = _coefficient_of(lin, p)
            if (lin - coeff.scale(ParamPoly.symbol(p))).terms:
                raise ParseError(f"deformation parameter {p!r} must enter linearly", 0, g.source)
            terms[p].append(coeff)
    mixed = []
    for c, b in zip(g.components, base):
        rebuilt = b
        for p in g.deform:
            rebuilt = rebuilt + terms[p][len(mixed)].scale(ParamPoly.symbol(p))
        mixed.append(rebuilt == c)
    if not all(mixed):
        raise ParseError("products of deformation parameters are not supported", 0, g.source)
    for k, b in enumerate(base):
        if b.constant_term():
            raise ParseError(f"component {k + 1} has a nonzero constant term {b.constant_term()}", 0, g.source)
    return DeformationFamily(MapJet(base), {p: MapJet(v) for p, v in terms.items()}, "custom")


def _coefficient_of(series: TruncatedSeries, name: str) -> TruncatedSeries:
    """Coefficient of ``name`` (degree one) in a series with parametric coefficients."""
    out = {}
    for e, c in series.items():
        part = {}
        for m, q in c.items():
            k = dict(m).get(name, 0)
            if k == 1:
                part[tuple((n, p) for n, p in m if n != name)] = q
        if part:
            out[e] = ParamPoly(part)
    return TruncatedSeries(out, series.order, series.nvars)


# -- printing ---------------------------------------------------------------------------


def format_germ(f, params: Sequence[str] | None = None) -> str:
    """Canonical text for a germ (or family / CTF data); parses back to the same object."""
    if isinstance(f, CTFData):
        return format_ctf(f)
    if isinstance(f, DeformationFamily):
        return format_family(f)
    names = sorted(set(params or []) | set(f.params()))
    head = f"param {', '.join(names)}; " if names else ""
    return head + " ; ".join(c.format(("x", "y")) for c in f)


def format_family(fam: DeformationFamily) -> str:
    jet = fam.jet()
    names = sorted(jet.params() - set(fam.terms))
    head = f"param {', '.join(names)}; " if names else ""
    head += f"deform {', '.join(fam.terms)}; "
    return head + " ; ".join(c.format(("x", "y")) for c in jet)


def format_ctf(d: CTFData) -> str:
    t = lambda coeffs: TruncatedSeries({(k, 0): c for k, c in enumerate(coeffs) if c}, d.order).format(("xi", "t"))
    parts = [f"alpha: {t(d.alpha)}", f"A: {t(d.A)}", f"B: {t(d.B)}", f"C: {t(d.C)}", f"D: {t(d.D)}"]
    if d.remainder is not None and not all(c.is_zero() for c in d.remainder):
        parts.append("rem: " + " , ".join(c.format(("xi", "t")) for c in d.remainder))
    names = sorted(d.params())
    head = f"param {', '.join(names)}; " if names else ""
    return head + "; ".join(parts)


def parse_directions(texts: Sequence[str], params: Sequence[str] = (), order: int = DEFAULT_ORDER) -> List[MapJet]:
    """Deformation directions such as ``"y ; 0"``; constant terms are allowed here."""
    head = f"param {', '.join(params)}; " if params else ""
    return [MapJet(parse_expression(head + t, order).components) for t in texts]
