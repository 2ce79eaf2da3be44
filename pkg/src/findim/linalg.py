"""Exact row reduction over Q with ``Fraction`` rows.

Matrices are lists of rows; every function here returns fresh lists and keeps
rows as tuples so they can be stored in frozen containers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Row = Tuple[Fraction, ...]


def pivot(row: Sequence[Fraction]) -> Optional[int]:
    for k, x in enumerate(row):
        if x != 0:
            return k
    return None


def rref(rows: Sequence[Sequence[Fraction]]) -> List[Row]:
    """Reduced row echelon form with zero rows dropped."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out: List[List[Fraction]] = []
    for col in range(ncols):
        src = next((k for k in range(len(m)) if m[k][col] != 0), None)
        if src is None:
            continue
        r = m.pop(src)
        inv = 1 / r[col]
        r = [x * inv for x in r]
        for other in out:
            f = other[col]
            if f:
                for k in range(col, ncols):
                    other[k] -= f * r[k]
        for other in m:
            f = other[col]
            if f:
                for k in range(col, ncols):
                    other[k] -= f * r[k]
        out.append(r)
    return [tuple(r) for r in out]


def reduce_against(basis: Sequence[Row], v: Sequence[Fraction]) -> Row:
    """Residual of ``v`` modulo the row space of an RREF ``basis``."""
    v = [Fraction(x) for x in v]
    for r in basis:
        p = pivot(r)
        f = v[p]
        if f:
            for k in range(p, len(v)):
                v[k] -= f * r[k]
    return tuple(v)


def insert_row(basis: Sequence[Row], v: Sequence[Fraction]) -> Optional[List[Row]]:
    """New RREF basis spanning ``basis`` and ``v``, or None if ``v`` is already in the span."""
    res = reduce_against(basis, v)
    p = pivot(res)
    if p is None:
        return None
    inv = 1 / res[p]
    res = tuple(x * inv for x in res)
    out = []
    for r in basis:
        f = r[p]
        out.append(tuple(a - f * b for a, b in zip(r, res)) if f else r)
    out.append(res)
    out.sort(key=pivot)
    return out


def coordinates(basis: Sequence[Row], v: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Coefficients of ``v`` in the rows of an RREF ``basis`` (None if not in the span)."""
    coords = [Fraction(v[pivot(r)]) for r in basis]
    residual = list(v)
    for c, r in zip(coords, basis):
        if c:
            for k in range(len(residual)):
                residual[k] -= c * r[k]
    if any(residual):
        return None
    return coords


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows))
