"""Tangent spaces to A-orbits, jet quotients and determinacy certificates.

All spaces are modelled inside ``E^2 / M^b`` with the basis of vector
monomials ``(x^i y^j, 0)`` and ``(0, x^i y^j)``.  Two kinds of projection are
offered: :func:`project` keeps only generators lying in ``M^a`` (the square
matrices whose determinants are quoted as certificates), while the inclusion
checks use the complete test ``M^a E^2 \\subseteq span(G) + M^b E^2``, which
also accounts for combinations of low-order generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .jets import MapJet, TruncatedSeries, differentiate, monomials
from .linalg import Matrix, bareiss, rank, specialize, vanishing_locus
from .paramring import ONE, ZERO, ParamPoly

TA = "TA"
TEA = "TeA"
DUPLESSIS_LHS = "DUPLESSIS_LHS"
KINDS = (TA, TEA, DUPLESSIS_LHS)

VectorMonomial = Tuple[int, Tuple[int, int]]  # (component, exponents)


class ExactnessError(ValueError):
    """A request needs jet coefficients beyond what the input determines."""


@dataclass(frozen=True)
class QuotientSpace:
    low: int
    high: int
    basis: Tuple[VectorMonomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self) -> Dict[VectorMonomial, int]:
        return {b: i for i, b in enumerate(self.basis)}


def quotient_basis(a: int, b: int, nvars: int = 2) -> QuotientSpace:
    """Basis of ``M^a E^2 / M^b E^2``: by degree, then ``e1`` before ``e2``, then monomial order."""
    if a < 0 or a > b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")
    basis = []
    for d in range(a, b):
        for comp in (0, 1):
            basis.extend((comp, m) for m in monomials(nvars, d))
    return QuotientSpace(a, b, tuple(basis))


def format_vector_monomial(v: VectorMonomial, names=("x", "y")) -> str:
    comp, e = v
    mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k) or "1"
    return f"({mono}, 0)" if comp == 0 else f"(0, {mono})"


@dataclass(frozen=True)
class Generator:
    label: str
    vector: MapJet

    def valuation(self) -> int:
        return min(c.valuation() for c in self.vector)


@dataclass
class GeneratorSet:
    kind: str
    germ: MapJet
    max_degree: int
    generators: List[Generator]

    def __len__(self):
        return len(self.generators)

    def labels(self) -> List[str]:
        return [g.label for g in self.generators]


def _mono_label(e) -> str:
    return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip("xy", e) if k) or "1"


def tangent_generators(f: MapJet, kind: str, max_degree: int) -> GeneratorSet:
    """Generators spanning the ``kind`` module of ``f`` modulo ``M^(max_degree+1)``.

    Order: multiples of ``f_x`` and ``f_y`` by monomials of increasing degree,
    then target terms (pullback monomials for TA/TeA, component products for
    the du Plessis module).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if len(f) != 2 or f.nvars != 2:
        raise ValueError("tangent generators are implemented for plane-to-plane germs")
    if not f.is_germ():
        raise ValueError("germ has a nonzero constant term")
    if max_degree > f.order - 1:
        raise ExactnessError(f"derivatives are exact only through degree {f.order - 1}, "
                             f"max_degree={max_degree} requested")
    order = max_degree
    f = f.truncate(max_degree + 1)
    fx = MapJet([differentiate(c, 0).truncate(order) for c in f])
    fy = MapJet([differentiate(c, 1).truncate(order) for c in f])
    lo = 1 if kind == TA else 0
    gens: List[Generator] = []
    for d in range(lo, max_degree + 1):
        for e in monomials(2, d):
            m = TruncatedSeries.monomial(e, 1, order)
            lab = _mono_label(e)
            pre = "" if lab == "1" else lab + "*"
            gens.append(Generator(f"{pre}f_x", MapJet([m * c for c in fx])))
            gens.append(Generator(f"{pre}f_y", MapJet([m * c for c in fy])))
    zero = TruncatedSeries.zero(order)
    f1, f2 = (c.truncate(order) for c in f)
    if kind == DUPLESSIS_LHS:
        for i, fi in enumerate((f1, f2)):
            for d in range(0, max_degree + 1):
                for e in monomials(2, d):
                    m = TruncatedSeries.monomial(e, 1, order)
                    v = m * fi
                    if v.is_zero():
                        continue
                    lab = _mono_label(e)
                    pre = "" if lab == "1" else lab + "*"
                    gens.append(Generator(f"{pre}f{i + 1}*e1", MapJet([v, zero])))
                    gens.append(Generator(f"{pre}f{i + 1}*e2", MapJet([zero, v])))
        gens = _reference_order_lhs(gens)
    else:
        start = 1 if kind == TA else 0
        for a, b in _pullback_exponents(f1, f2, start, max_degree):
            v = (f1 ** a) * (f2 ** b) if a + b else TruncatedSeries.const(1, order)
            v = v.truncate(order)
            if v.is_zero():
                continue
            lab = "*".join(s for s in (_pow("f1", a), _pow("f2", b)) if s) or "1"
            gens.append(Generator(f"{lab}*e1", MapJet([v, zero])))
            gens.append(Generator(f"{lab}*e2", MapJet([zero, v])))
    return GeneratorSet(kind, f, max_degree, gens)


def _pow(name, k):
    return "" if k == 0 else (name if k == 1 else f"{name}^{k}")


def _pullback_exponents(f1, f2, start, max_degree):
    v1 = f1.valuation() if not f1.is_zero() else max_degree + 1
    v2 = f2.valuation() if not f2.is_zero() else max_degree + 1
    out = []
    for total in range(start, max_degree + 1):
        for a in range(total, -1, -1):
            b = total - a
            if a * v1 + b * v2 <= max_degree:
                out.append((a, b))
    return out


def _reference_order_lhs(gens: List[Generator]) -> List[Generator]:
    # put (f1,0), (f2,0), (0,f1), (0,f2) in the order used for the 8-vector check
    order = {"f1*e1": 0, "f2*e1": 1, "f1*e2": 2, "f2*e2": 3}
    head = [g for g in gens if not g.label.endswith("e1") and not g.label.endswith("e2")]
    tail = [g for g in gens if g not in head]
    tail.sort(key=lambda g: (order.get(g.label, 4)))
    return head + tail


@dataclass
class QuotientProjection:
    space: QuotientSpace
    matrix: Matrix  # rows: basis, columns: generators
    labels: List[str]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.matrix), len(self.labels))

    def specialize(self, values) -> "QuotientProjection":
        return QuotientProjection(self.space, specialize(self.matrix, values), list(self.labels))


def _coords(vec: MapJet, index: Dict[VectorMonomial, int], lo: int, hi: int) -> List[Tuple[int, ParamPoly]]:
    out = []
    for comp, c in enumerate(vec):
        for e, v in c.items():
            if lo <= sum(e) < hi:
                out.append((index[(comp, e)], v))
    return out


def project(gens: GeneratorSet, q: QuotientSpace) -> QuotientProjection:
    """Coordinates of the generators lying in ``M^a`` and nonzero modulo ``M^b``."""
    if gens.max_degree < q.high - 1:
        raise ExactnessError("generators were built below the quotient's top degree")
    index = q.index()
    cols, labels = [], []
    for g in gens.generators:
        if g.valuation() < q.low or g.valuation() >= q.high:
            continue
        coords = _coords(g.vector, index, q.low, q.high)
        col = [ZERO] * q.dimension
        for i, v in coords:
            col[i] = v
        cols.append(col)
        labels.append(g.label)
    matrix = [[col[i] for col in cols] for i in range(q.dimension)]
    return QuotientProjection(q, matrix, labels)


@dataclass
class Certificate:
    full_rank: bool
    rank: int
    determinant: Optional[ParamPoly]
    vanishing_locus: List[str]
    shape: Tuple[int, int] = (0, 0)

    def as_dict(self) -> dict:
        return {
            "fullRank": self.full_rank,
            "rank": self.rank,
            "shape": list(self.shape),
            "determinant": None if self.determinant is None else str(self.determinant),
            "vanishingLocus": list(self.vanishing_locus),
        }


def certificate(p: QuotientProjection) -> Certificate:
    """Exact rank (generic in the parameters), determinant when square, and rank-drop locus."""
    nrows, ncols = p.shape
    if nrows == 0 or ncols == 0:
        return Certificate(nrows == 0, 0, None if nrows != ncols else ONE, [], (nrows, ncols))
    el = bareiss(p.matrix)
    det = None
    if nrows == ncols:
        det = ZERO if el.rank < nrows else (-el.last if el.swaps % 2 else el.last)
    full = el.rank == nrows
    locus = vanishing_locus(p.matrix) if full else []
    return Certificate(full, el.rank, det, locus, (nrows, ncols))


@dataclass
class InclusionCertificate:
    holds: bool
    low: int
    high: int
    kind: str
    rank_generators: int
    rank_with_target: int
    projection: QuotientProjection
    square: Certificate
    vanishing_locus: List[str]

    def __bool__(self):
        return self.holds

    @property
    def determinant(self) -> Optional[ParamPoly]:
        return self.square.determinant

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "quotient": [self.low, self.high],
            "module": self.kind,
            "rankGenerators": self.rank_generators,
            "rankWithTarget": self.rank_with_target,
            "projection": self.square.as_dict(),
            "vanishingLocus": list(self.vanishing_locus),
        }


def _full_matrix(vectors: Sequence[MapJet], b: int) -> Matrix:
    q = quotient_basis(0, b)
    index = q.index()
    cols = []
    for v in vectors:
        col = [ZERO] * q.dimension
        for i, c in _coords(v, index, 0, b):
            col[i] = c
        cols.append(col)
    return [[col[i] for col in cols] for i in range(q.dimension)]


def _unit_vectors(a: int, b: int, order: int) -> List[MapJet]:
    zero = TruncatedSeries.zero(order)
    out = []
    for comp, e in quotient_basis(a, b).basis:
        m = TruncatedSeries.monomial(e, 1, order)
        out.append(MapJet([m, zero] if comp == 0 else [zero, m]))
    return out


def span_contains_power(vectors: Sequence[MapJet], a: int, b: int) -> Tuple[bool, int, int, Matrix]:
    """Whether ``M^a E^2 ⊆ span(vectors) + M^b E^2``, generically in the parameters."""
    order = max(b - 1, 0)
    gens = _full_matrix(vectors, b)
    both = _full_matrix(list(vectors) + _unit_vectors(a, b, order), b)
    r1 = rank(gens) if vectors else 0
    r2 = rank(both)
    return r1 == r2, r1, r2, gens


def _locus_of_inclusion(vectors, a, b, square: Certificate) -> List[str]:
    """Conditions where the inclusion fails, confirmed by specialisation."""
    cands = [c for c in square.vanishing_locus if not c.endswith("?")]
    out = []
    for cond in cands:
        from .linalg import _linear_root

        value = _linear_root(cond)
        if value is None:
            out.append(cond + " ?")
            continue
        spec = [MapJet([c.subs_params(value) for c in v]) for v in vectors]
        if not span_contains_power(spec, a, b)[0]:
            out.append(cond)
    return out


def _inclusion(f: MapJet, kind: str, a: int, b: int) -> InclusionCertificate:
    gens = tangent_generators(f, kind, b - 1)
    vectors = [g.vector for g in gens.generators]
    holds, r1, r2, _ = span_contains_power(vectors, a, b)
    proj = project(gens, quotient_basis(a, b))
    square = certificate(proj)
    locus = _locus_of_inclusion(vectors, a, b, square) if holds and f.params() else []
    return InclusionCertificate(holds, a, b, kind, r1, r2, proj, square, locus)


def check_inclusion_4(f: MapJet, l: int) -> InclusionCertificate:
    """``M^l E^2 ⊆ E<f_x, f_y> + I_f E^2 + M^(l+1) E^2``."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return _inclusion(f, DUPLESSIS_LHS, l, l + 1)


def check_inclusion_5(f: MapJet, k: int, l: int) -> InclusionCertificate:
    """``M^k E^2 ⊆ TeA(f) + M^(k+l) E^2``."""
    if k < 1 or l < 1:
        raise ValueError("need k >= 1 and l >= 1")
    return _inclusion(f, TEA, k, k + l)


@dataclass
class DeterminacyCertificate:
    certified: bool
    order: int
    inclusion4: InclusionCertificate
    inclusion5: InclusionCertificate

    def __bool__(self):
        return self.certified

    def as_dict(self) -> dict:
        return {
            "certified": self.certified,
            "order": self.order,
            "inclusion4": self.inclusion4.as_dict(),
            "inclusion5": self.inclusion5.as_dict(),
        }


def du_plessis_determinacy(f: MapJet, k: int, l: int) -> DeterminacyCertificate:
    """Sufficient test for ``(k+l)``-determinacy; a negative answer proves nothing."""
    inc4 = check_inclusion_4(f, l)
    inc5 = check_inclusion_5(f, k, l)
    return DeterminacyCertificate(bool(inc4) and bool(inc5), k + l, inc4, inc5)


def order_reduction_check(f: MapJet, r: int, unipotent: bool = False) -> bool:
    """``M^r E^2 ⊆ TA(f) + M^(r+1) E^2``: degree-r terms can be removed by the group action.

    With ``unipotent=True`` the tangent space of changes with identity 1-jet
    is used instead (``M^2<f_x, f_y> + f*(M^2)<e1, e2>``); only that version
    keeps the (r-1)-jet fixed and so justifies lowering a determinacy degree.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    gens = tangent_generators(f, TA, r)
    vectors = [g.vector for g in gens.generators]
    if unipotent:
        vectors = [g.vector for g in gens.generators if not _is_first_order(g.label)]
    return span_contains_power(vectors, r, r + 1)[0]


def _is_first_order(label: str) -> bool:
    return label in {"x*f_x", "x*f_y", "y*f_x", "y*f_y", "f1*e1", "f1*e2", "f2*e1", "f2*e2"}


def determinacy_degree(f: MapJet, max_order: int) -> Optional[int]:
    """Smallest certified determinacy degree ``<= max_order``.

    First the least ``k + l`` passing the du Plessis test, then lowered while
    the unipotent reduction check holds.
    """
    best = None
    for total in range(2, max_order + 1):
        if any(du_plessis_determinacy(f, k, total - k).certified for k in range(1, total)):
            best = total
            break
    if best is None:
        return None
    while best > 1 and order_reduction_check(f, best, unipotent=True):
        best -= 1
    return best


@dataclass
class CodimResult:
    codim: int
    complement: List[VectorMonomial]
    cap: int
    determinacy: Optional[int]
    lower_bound: bool

    def as_dict(self) -> dict:
        return {
            "codim": self.codim,
            "complementBasis": [format_vector_monomial(v) for v in self.complement],
            "capDegree": self.cap,
            "determinacyOrder": self.determinacy,
            "status": "lower bound at capDegree" if self.lower_bound else "exact",
        }


def _tea_vectors(f: MapJet, cap: int) -> List[MapJet]:
    return [g.vector for g in tangent_generators(f, TEA, cap - 1).generators]


def extended_codimension(f: MapJet, cap: int | None = None, require_certificate: bool = True) -> CodimResult:
    """``dim E^2 / TeA(f)`` computed modulo ``M^cap`` with a greedy monomial complement.

    The count is exact when ``f`` is certified ``r``-determined with
    ``r + 1 <= cap``; otherwise it is flagged as a lower bound.
    """
    cap = f.order if cap is None else cap
    if cap > f.order:
        raise ExactnessError(f"cap {cap} exceeds the working order {f.order}")
    det = determinacy_degree(f, cap - 1)
    lower = det is None or det + 1 > cap
    if lower and require_certificate:
        raise ExactnessError(f"germ not certified determined within cap degree {cap}; "
                             "result would only be a lower bound")
    vectors = _tea_vectors(f, cap)
    full = _full_matrix(vectors, cap)
    r = rank(full) if vectors else 0
    q = quotient_basis(0, cap)
    complement: List[VectorMonomial] = []
    current = [row[:] for row in full]
    cur_rank = r
    units = _unit_vectors(0, cap, cap - 1)
    for basis_vec, unit in zip(q.basis, units):
        if cur_rank == q.dimension:
            break
        col = _full_matrix([unit], cap)
        trial = [row + c for row, c in zip(current, col)]
        tr = rank(trial)
        if tr > cur_rank:
            complement.append(basis_vec)
            current, cur_rank = trial, tr
    return CodimResult(q.dimension - r, complement, cap, det, lower)


def is_miniversal(f: MapJet, directions: Sequence[MapJet], cap: int | None = None) -> bool:
    """TeA(f) + span(directions) fills ``E^2`` (mod ``M^cap``) with the minimal number of directions."""
    res = extended_codimension(f, cap)
    vectors = _tea_vectors(f, res.cap) + [MapJet([c.truncate(res.cap - 1) for c in d]) for d in directions]
    filled = rank(_full_matrix(vectors, res.cap)) == quotient_basis(0, res.cap).dimension
    return filled and len(directions) == res.codim


__all__ = [
    "TA", "TEA", "DUPLESSIS_LHS", "QuotientSpace", "Generator", "GeneratorSet", "QuotientProjection",
    "Certificate", "InclusionCertificate", "DeterminacyCertificate", "CodimResult", "ExactnessError",
    "quotient_basis", "tangent_generators", "project", "certificate", "check_inclusion_4",
    "check_inclusion_5", "du_plessis_determinacy", "order_reduction_check", "determinacy_degree",
    "extended_codimension", "is_miniversal", "format_vector_monomial", "span_contains_power",
]

_ = product
