"""Fraction-free (Bareiss) elimination over ``Q[params]``.

Ranks are ranks over the fraction field of the parameter ring, i.e. for
generic parameter values.  The pivots that were divided through are kept so
the caller can tell where the rank may drop.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from .paramring import ONE, ZERO, ParamPoly, factor_locus

Matrix = List[List[ParamPoly]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[ParamPoly.coerce(v) for v in row] for row in rows]


def _pivot_key(p: ParamPoly):
    # constant pivots first, then pivots with a nonzero constant term, then by size
    return (not p.is_constant(), p.constant_term() == 0, p.degree(), len(p.terms))


@dataclass
class Elimination:
    rank: int
    pivots: List[ParamPoly] = field(default_factory=list)
    pivot_columns: List[int] = field(default_factory=list)
    swaps: int = 0
    last: ParamPoly = ONE  # the final Bareiss pivot: a maximal nonvanishing minor


def bareiss(rows: Sequence[Sequence[ParamPoly]]) -> Elimination:
    """Fraction-free row echelon form; returns rank and pivot data."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = ONE
    r = 0
    out = Elimination(0)
    for c in range(ncols):
        if r == nrows:
            break
        cands = [i for i in range(r, nrows) if a[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _pivot_key(a[i][c]))
        if p != r:
            a[r], a[p] = a[p], a[r]
            out.swaps += 1
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                v = piv * row_i[j]
                if aic and row_r[j]:
                    v = v - aic * row_r[j]
                if v and prev != ONE:
                    v = v.exquo(prev) if not prev.is_constant() else v / prev.constant_term()
                row_i[j] = v
            row_i[c] = ZERO
        # rows above r are untouched; entries left of c are already zero
        out.pivots.append(piv)
        out.pivot_columns.append(c)
        prev = piv
        r += 1
    out.rank = r
    out.last = prev
    return out


def rank(rows: Sequence[Sequence[ParamPoly]]) -> int:
    return bareiss(rows).rank if rows else 0


def determinant(rows: Sequence[Sequence[ParamPoly]]) -> ParamPoly:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return ONE
    el = bareiss(rows)
    if el.rank < n:
        return ZERO
    return -el.last if el.swaps % 2 else el.last


def specialize(rows: Sequence[Sequence[ParamPoly]], values) -> Matrix:
    return [[v.subs(values) for v in row] for row in rows]


def transpose(rows: Sequence[Sequence]) -> list:
    return [list(c) for c in zip(*rows)] if rows else []


def vanishing_locus(rows: Sequence[Sequence[ParamPoly]]) -> List[str]:
    """Parameter conditions (as strings) under which the generic rank drops.

    Candidates are the irreducible factors of the last Bareiss pivot, a
    nonvanishing maximal minor.  For square matrices that minor is the
    determinant and the list is exact; otherwise each single-parameter linear
    factor is confirmed by specialising, and the rest are reported as
    candidates with a trailing ``?``.
    """
    el = bareiss(rows)
    if el.rank == 0 or el.last.is_constant():
        return []
    square = len(rows) == len(rows[0]) == el.rank
    out = []
    for cond in factor_locus(el.last):
        if square:
            out.append(cond)
            continue
        value = _linear_root(cond)
        if value is None:
            out.append(cond + " ?")
        elif rank(specialize(rows, value)) < el.rank:
            out.append(cond)
    return out


def _linear_root(cond: str):
    """Parse ``'a*p + b = 0'`` style single-parameter linear conditions via sympy."""
    import sympy

    expr = sympy.sympify(cond.split("=")[0].replace("^", "**"))
    syms = list(expr.free_symbols)
    if len(syms) != 1 or sympy.degree(expr, syms[0]) != 1:
        return None
    root = sympy.solve(expr, syms[0])[0]
    return {str(syms[0]): Fraction(int(root.p), int(root.q))}
