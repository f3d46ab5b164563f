"""Monomial equivalence of exact root-of-unity matrices.

Two matrices are monomially equivalent when B = D1 P1 A P2 D2 for permutation
matrices P and unit diagonal matrices D.  The quadruple-product multiset
(``fingerprint``) is invariant under that action and separates most pairs
cheaply; the rest go to a backtracking search that either produces a verified
witness or exhausts the space.  Diagonals range over the matrices' own root
order, so "inequivalent by exhausted search" is relative to that notion.

Zero-diagonal (conference) inputs are supported: zeros must map onto zeros,
which forces the column permutation to equal the row permutation and shrinks
the search to single-permutation space.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence

from .matrices import ButsonMatrix, SymbolicMatrix, dephase, eval_exact
from .verify import check_hadamard, check_inverse_orthogonal

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, slots=True)
class Fingerprint:
    """Multiset of quadruple products M[i][j]M[k][l]/(M[i][l]M[k][j]).

    Computed over ordered row/column pairs so that it is exactly invariant
    under row/column permutations and unit diagonal scalings; values are logs
    base zeta_m with m the matrix's minimal root order.  ``zeros`` records how
    many quadruples were skipped for touching a zero cell (conference mode).
    """

    n: int
    m: int
    counts: tuple[tuple[int, int], ...]
    zeros: int = 0

    def lines(self) -> list[str]:
        out = [f"n={self.n} order={self.m} skipped={self.zeros}"]
        out += [f"zeta{self.m}^{k}:{c}" for k, c in self.counts]
        return out


def _quadruple_counts(M: ButsonMatrix, skip_zeros: bool) -> tuple[dict[int, int], int]:
    n, m, logs = M.n, M.m, M.logs
    counts: Counter[int] = Counter()
    skipped = 0
    for i in range(n):
        row_i = logs[i]
        for k in range(n):
            if k == i:
                continue
            row_k = logs[k]
            for j in range(n):
                aij = row_i[j]
                akj = row_k[j]
                for l in range(n):
                    if l == j:
                        continue
                    ail = row_i[l]
                    akl = row_k[l]
                    if aij is None or akl is None or ail is None or akj is None:
                        if not skip_zeros:
                            raise ValueError("zero cell in Hadamard fingerprint")
                        skipped += 1
                        continue
                    counts[(aij + akl - ail - akj) % m] += 1
    return dict(counts), skipped


def fingerprint(M: ButsonMatrix) -> Fingerprint:
    """Equivalence invariant for zero-free exact matrices."""
    M = M.reduce_order()
    counts, _ = _quadruple_counts(M, skip_zeros=False)
    return Fingerprint(M.n, M.m, tuple(sorted(counts.items())), 0)


def conference_fingerprint(M: ButsonMatrix) -> Fingerprint:
    """Fingerprint variant that skips quadruples touching zero cells."""
    M = M.reduce_order()
    counts, skipped = _quadruple_counts(M, skip_zeros=True)
    return Fingerprint(M.n, M.m, tuple(sorted(counts.items())), skipped)


@dataclass(frozen=True, slots=True)
class MonomialTransform:
    """B[i][j] = zeta^row_logs[i] * A[row_perm[i]][col_perm[j]] * zeta^col_logs[j]."""

    m: int
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    row_logs: tuple[int, ...]
    col_logs: tuple[int, ...]

    def apply(self, A: ButsonMatrix) -> ButsonMatrix:
        if A.m != self.m:
            A = A.lift(lcm(A.m, self.m))
        step = A.m // self.m
        logs = []
        for i in range(A.n):
            src = A.logs[self.row_perm[i]]
            ri = self.row_logs[i] * step
            logs.append(
                [
                    None
                    if src[self.col_perm[j]] is None
                    else (ri + src[self.col_perm[j]] + self.col_logs[j] * step) % A.m
                    for j in range(A.n)
                ]
            )
        return ButsonMatrix(A.m, logs)

    def maps(self, A: ButsonMatrix, B: ButsonMatrix) -> bool:
        big = lcm(A.m, B.m, self.m)
        return self.apply(A.lift(big)).logs == B.lift(big).logs


@dataclass(frozen=True, slots=True)
class EquivalenceVerdict:
    status: str  # "equivalent" | "inequivalent" | "unknown"
    witness: Optional[MonomialTransform] = None
    reason: str = ""
    nodes: int = 0

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    @property
    def inequivalent(self) -> bool:
        return self.status == "inequivalent"


class _Budget:
    __slots__ = ("left", "used")

    def __init__(self, limit: int) -> None:
        self.left = limit
        self.used = 0

    def spend(self) -> bool:
        if self.left <= 0:
            return False
        self.left -= 1
        self.used += 1
        return True


class _OutOfBudget(Exception):
    pass


def _row_signature(row: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(row).items()))


def _sdr(cands: list[frozenset[int]]) -> Optional[list[int]]:
    """System of distinct representatives by smallest-candidate-first search."""
    order = sorted(range(len(cands)), key=lambda j: len(cands[j]))
    pick: dict[int, int] = {}

    def go(t: int) -> bool:
        if t == len(order):
            return True
        j = order[t]
        for v in sorted(cands[j]):
            if v not in pick.values():
                pick[j] = v
                if go(t + 1):
                    return True
                del pick[j]
        return False

    if not go(0):
        return None
    return [pick[j] for j in range(len(cands))]


def _witness_from_maps(
    A: ButsonMatrix, B: ButsonMatrix, sigma: Sequence[int], tau: Sequence[int]
) -> Optional[MonomialTransform]:
    """Solve the diagonals for B[i][j] = rd[i]+A[sigma i][tau j]+cd[j], verify."""
    n, m = A.n, A.m
    la, lb = A.logs, B.logs
    for i in range(n):
        for j in range(n):
            if (lb[i][j] is None) != (la[sigma[i]][tau[j]] is None):
                return None
    # propagate rd/cd over the nonzero cells from the gauge rd[0] = 0
    rd: list[Optional[int]] = [None] * n
    cd: list[Optional[int]] = [None] * n
    rd[0] = 0
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                x = lb[i][j]
                if x is None:
                    continue
                d = (x - la[sigma[i]][tau[j]]) % m
                if rd[i] is not None and cd[j] is None:
                    cd[j] = (d - rd[i]) % m
                    changed = True
                elif cd[j] is not None and rd[i] is None:
                    rd[i] = (d - cd[j]) % m
                    changed = True
    if any(v is None for v in rd) or any(v is None for v in cd):
        return None
    cand = MonomialTransform(m, tuple(sigma), tuple(tau), tuple(rd), tuple(cd))
    return cand if cand.maps(A, B) else None


def _search_hadamard(A: ButsonMatrix, B: ButsonMatrix, budget: _Budget) -> Optional[MonomialTransform]:
    n, m = A.n, A.m
    la = A.logs
    Bd = dephase(B)
    lb = Bd.logs
    b_sigs = [_row_signature(row) for row in lb]

    for r in range(n):
        for c in range(n):
            # A dephased about row r / column c
            anchor = la[r][c]
            G = [
                [(la[u][v] + anchor - la[u][c] - la[r][v]) % m for v in range(n)]
                for u in range(n)
            ]
            g_sigs = [_row_signature(row) for row in G]
            positions = [
                {}
                for _ in range(n)
            ]  # per G-row: value -> frozenset of columns
            for u in range(n):
                by_val: dict[int, set[int]] = {}
                for v, val in enumerate(G[u]):
                    by_val.setdefault(val, set()).add(v)
                positions[u] = {val: frozenset(vs) for val, vs in by_val.items()}

            all_cols = frozenset(range(n))
            init_cands = [frozenset([c])] + [all_cols - {c}] * (n - 1)
            used = [False] * n
            used[r] = True
            sigma = [r] + [-1] * (n - 1)

            def extend(i: int, cands: list[frozenset[int]]) -> Optional[list[int]]:
                if i == n:
                    tau = _sdr(cands)
                    return tau
                target = b_sigs[i]
                row_b = lb[i]
                for u in range(n):
                    if used[u] or g_sigs[u] != target:
                        continue
                    if not budget.spend():
                        raise _OutOfBudget
                    new_cands = []
                    ok = True
                    pos_u = positions[u]
                    for j in range(n):
                        allowed = pos_u.get(row_b[j])
                        if allowed is None:
                            ok = False
                            break
                        nc = cands[j] & allowed
                        if not nc:
                            ok = False
                            break
                        new_cands.append(nc)
                    if not ok:
                        continue
                    used[u] = True
                    sigma[i] = u
                    tau = extend(i + 1, new_cands)
                    if tau is not None:
                        return tau
                    used[u] = False
                    sigma[i] = -1
                return None

            tau = extend(1, init_cands)
            if tau is not None:
                witness = _witness_from_maps(A, B, sigma, tau)
                if witness is not None:
                    return witness
    return None


def _search_conference(A: ButsonMatrix, B: ButsonMatrix, budget: _Budget) -> Optional[MonomialTransform]:
    """Search with col perm == row perm (forced by the zero diagonal)."""
    n, m = A.n, A.m
    la, lb = A.logs, B.logs
    sigma = [-1] * n
    used = [False] * n
    e = [None] * n  # column logs, gauge rd[0] = 0
    p = [None] * n  # p[i] = rd[i] + e[0]
    state = {"e0": None}

    def equations(t: int) -> Optional[list]:
        """Derive/check all cells touching index t; return undo list or None."""
        undo: list = []

        def set_e(j: int, val: int) -> bool:
            if e[j] is None:
                e[j] = val
                undo.append(("e", j))
                return True
            return e[j] == val

        def set_p(i: int, val: int) -> bool:
            if p[i] is None:
                p[i] = val
                undo.append(("p", i))
                return True
            return p[i] == val

        def set_e0(val: int) -> bool:
            if state["e0"] is None:
                state["e0"] = val
                undo.append(("e0", None))
                return True
            return state["e0"] == val

        def fail() -> None:
            for kind, idx in reversed(undo):
                if kind == "e":
                    e[idx] = None
                elif kind == "p":
                    p[idx] = None
                else:
                    state["e0"] = None

        if t > 0:
            if not set_e(t, (lb[0][t] - la[sigma[0]][sigma[t]]) % m):
                fail()
                return None
            if not set_p(t, (lb[t][0] - la[sigma[t]][sigma[0]]) % m):
                fail()
                return None
        for s in range(1, t):
            for i, j in ((s, t), (t, s)):
                if i == j or i == 0 or j == 0:
                    continue
                delta = (lb[i][j] - la[sigma[i]][sigma[j]]) % m
                want_e0 = (p[i] + e[j] - delta) % m
                if not set_e0(want_e0):
                    fail()
                    return None
        return undo

    def undo_all(undo: list) -> None:
        for kind, idx in reversed(undo):
            if kind == "e":
                e[idx] = None
            elif kind == "p":
                p[idx] = None
            else:
                state["e0"] = None

    def extend(t: int) -> bool:
        if t == n:
            return True
        for u in range(n):
            if used[u]:
                continue
            if not budget.spend():
                raise _OutOfBudget
            sigma[t] = u
            used[u] = True
            undo = equations(t)
            if undo is not None:
                if extend(t + 1):
                    return True
                undo_all(undo)
            used[u] = False
            sigma[t] = -1
        return False

    if extend(0):
        witness = _witness_from_maps(A, B, sigma, list(sigma))
        if witness is not None:
            return witness
    return None


def are_equivalent(
    a: ButsonMatrix, b: ButsonMatrix, budget: int = DEFAULT_BUDGET
) -> EquivalenceVerdict:
    """Decide monomial equivalence of two exact matrices.

    Sound both ways: "equivalent" always carries a verified witness, and
    "inequivalent" means either a fingerprint mismatch or a completed
    exhaustive search.  A spent node budget yields "unknown".
    """
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    a0, b0 = a.reduce_order(), b.reduce_order()
    m = lcm(a0.m, b0.m)
    A, B = a0.lift(m), b0.lift(m)

    za, zb = A.zero_positions(), B.zero_positions()
    if len(za) != len(zb):
        return EquivalenceVerdict("inequivalent", None, "zero cell counts differ", 0)
    conference_mode = bool(za)
    if conference_mode:
        diag = {(i, i) for i in range(A.n)}
        if za != diag or zb != diag:
            raise ValueError("zero cells must form the diagonal")
        fa, fb = conference_fingerprint(A), conference_fingerprint(B)
    else:
        fa, fb = fingerprint(A), fingerprint(B)
    if fa != fb:
        return EquivalenceVerdict("inequivalent", None, "fingerprint mismatch", 0)

    tracker = _Budget(budget)
    try:
        if conference_mode:
            witness = _search_conference(A, B, tracker)
        else:
            witness = _search_hadamard(A, B, tracker)
    except _OutOfBudget:
        return EquivalenceVerdict("unknown", None, "budget exhausted", tracker.used)
    if witness is not None:
        if not witness.maps(a, b):
            raise AssertionError("witness failed re-verification")
        return EquivalenceVerdict("equivalent", witness, "witness found", tracker.used)
    return EquivalenceVerdict("inequivalent", None, "exhausted search", tracker.used)


@dataclass(slots=True)
class EquivalenceClass:
    representative: ButsonMatrix
    assignments: list[Mapping[str, int]] = field(default_factory=list)
    undecided: bool = False

    @property
    def size(self) -> int:
        return len(self.assignments)


def specialize_and_classify(
    matrix: SymbolicMatrix,
    assignments: Iterable[Mapping[str, int]],
    order: int,
    budget: int = DEFAULT_BUDGET,
) -> list[EquivalenceClass]:
    """Evaluate at unit assignments, keep exact Hadamard results, classify.

    Assignments give root-of-unity logs base zeta_order per symbol.  Matrices
    are bucketed by fingerprint, then refined by the equivalence search; an
    exhausted budget opens a fresh class flagged ``undecided``.
    """
    result = check_inverse_orthogonal(matrix)
    if not result:
        raise ValueError(f"matrix is not inverse orthogonal: {result.describe()}")
    classes: list[EquivalenceClass] = []
    fingerprints: list[Fingerprint] = []
    for asg in assignments:
        M = eval_exact(matrix, asg, order)
        if not check_hadamard(M):
            continue
        fp = fingerprint(M)
        placed = False
        hit_budget = False
        for cls, cls_fp in zip(classes, fingerprints):
            if cls_fp != fp:
                continue
            verdict = are_equivalent(M, cls.representative, budget)
            if verdict.equivalent:
                cls.assignments.append(dict(asg))
                placed = True
                break
            if verdict.status == "unknown":
                hit_budget = True
        if not placed:
            classes.append(EquivalenceClass(M, [dict(asg)], undecided=hit_budget))
            fingerprints.append(fp)
    return classes
