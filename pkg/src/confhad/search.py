"""Exhaustive search for circulant and bordered-circulant conference matrices.

Candidates are first rows over m-th roots of unity (log form, ``None`` for the
fixed leading zero); each candidate matrix goes through the exact conference
predicate.  Plain enumeration, no cleverness: the spaces of interest are tiny
and the point is auditability.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence

from .matrices import ButsonMatrix
from .verify import check_conference

CoreRow = tuple[Optional[int], ...]


def _circulant_logs(first_row: Sequence[Optional[int]]) -> list[list[Optional[int]]]:
    n = len(first_row)
    return [[first_row[(j - i) % n] for j in range(n)] for i in range(n)]


def _bordered_logs(core_row: Sequence[Optional[int]]) -> list[list[Optional[int]]]:
    core = _circulant_logs(core_row)
    k = len(core_row)
    rows: list[list[Optional[int]]] = [[None] + [0] * k]
    for i in range(k):
        rows.append([0, *core[i]])
    return rows


def search_circulant(n: int, m: int) -> list[CoreRow]:
    """All first rows (0, c1..c_{n-1}), ci in m-th roots, giving a conference
    circulant; exhaustive over m^(n-1) candidates, sorted."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    found: list[CoreRow] = []
    for tail in product(range(m), repeat=n - 1):
        row: CoreRow = (None, *tail)
        if check_conference(ButsonMatrix(m, _circulant_logs(row))):
            found.append(row)
    return found


def search_bordered_circulant(n: int, m: int) -> list[CoreRow]:
    """All core rows (0, c1..c_{n-2}) whose bordered circulant is an n-by-n
    conference matrix; exhaustive over m^(n-2) candidates, sorted."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    found: list[CoreRow] = []
    for tail in product(range(m), repeat=n - 2):
        row: CoreRow = (None, *tail)
        if check_conference(ButsonMatrix(m, _bordered_logs(row))):
            found.append(row)
    return found


def bordered_matrix(core_row: Sequence[Optional[int]], m: int) -> ButsonMatrix:
    """The bordered-circulant matrix a search row describes."""
    return ButsonMatrix(m, _bordered_logs(core_row))


def circulant_matrix(first_row: Sequence[Optional[int]], m: int) -> ButsonMatrix:
    return ButsonMatrix(m, _circulant_logs(first_row))


def _scaled(row: CoreRow, t: int, m: int) -> CoreRow:
    return tuple(None if c is None else (c + t) % m for c in row)


def _reversed_row(row: CoreRow) -> CoreRow:
    k = len(row)
    return tuple(row[(-i) % k] for i in range(k))


def symmetry_reduce(rows: Iterable[CoreRow], m: int) -> list[CoreRow]:
    """One representative per orbit under global unit scaling and reversal.

    Both generators preserve the conference property of the (bordered)
    circulant; the representative is the orbit's lexicographic minimum (None
    sorting first).
    """

    def key(row: CoreRow):
        return tuple(-1 if c is None else c for c in row)

    seen: set[CoreRow] = set()
    reps: list[CoreRow] = []
    for row in rows:
        if row in seen:
            continue
        orbit = set()
        for base in (row, _reversed_row(row)):
            for t in range(m):
                orbit.add(_scaled(base, t, m))
        seen |= orbit
        reps.append(min(orbit, key=key))
    return sorted(reps, key=key)
