"""Matrix containers and constructions.

Three containers cover the artifact: :class:`SymbolicMatrix` (cells are unit
monomials or zero), :class:`ExponentMatrix` (cells are affine phase
expressions, with a distinguished bullet cell for "phase zero as printed"),
and exact/float numeric matrices (:class:`ButsonMatrix`, :class:`ComplexMatrix`).

Constructions: circulant and bordered-circulant builders, the reciprocal
transpose, the conference inverse, the two size-doubling block formulas,
row/column scaling, dephasing and exponent-form evaluation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .cyclotomic import CycValue, minimal_root_order
from .symbolic import Entry, Monomial, ONE, entry_str, parse_entry


class SymbolicMatrix:
    """Square grid of unit-monomial cells (None marks a zero cell)."""

    __slots__ = ("n", "rows", "label")

    def __init__(self, rows: Iterable[Iterable[Entry]], label: str | None = None) -> None:
        grid = tuple(tuple(row) for row in rows)
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise ValueError("matrix must be square and nonempty")
        for row in grid:
            for cell in row:
                if cell is not None and not isinstance(cell, Monomial):
                    raise TypeError(f"bad cell {cell!r}")
        self.n = n
        self.rows = grid
        self.label = label

    @classmethod
    def from_strings(cls, rows: Iterable[Iterable[str]], label: str | None = None) -> "SymbolicMatrix":
        return cls([[parse_entry(c) for c in row] for row in rows], label)

    def __getitem__(self, i: int) -> tuple[Entry, ...]:
        return self.rows[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def symbols(self) -> set[str]:
        syms: set[str] = set()
        for row in self.rows:
            for cell in row:
                if cell is not None:
                    syms |= cell.symbols()
        return syms

    @property
    def is_constant(self) -> bool:
        return not self.symbols()

    def has_zero(self) -> bool:
        return any(cell is None for row in self.rows for cell in row)

    def relabel(self, label: str | None) -> "SymbolicMatrix":
        return SymbolicMatrix(self.rows, label)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<SymbolicMatrix{tag} {self.n}x{self.n}>"

    def __str__(self) -> str:
        cells = [[entry_str(c) for c in row] for row in self.rows]
        widths = [max(len(cells[i][j]) for i in range(self.n)) for j in range(self.n)]
        return "\n".join(
            " ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells
        )


@dataclass(frozen=True, slots=True)
class AffinePhase:
    """Integer-affine phase expression c0 + sum(coef * symbol)."""

    const: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[str, int] = {}
        for sym, c in self.terms:
            merged[sym] = merged.get(sym, 0) + c
        object.__setattr__(
            self, "terms", tuple(sorted((s, c) for s, c in merged.items() if c))
        )

    def __call__(self, phases: Mapping[str, float]) -> float:
        value = float(self.const)
        for sym, c in self.terms:
            if sym not in phases:
                raise KeyError(f"unassigned phase symbol {sym!r}")
            value += c * phases[sym]
        return value

    def symbols(self) -> set[str]:
        return {s for s, _ in self.terms}

    def __str__(self) -> str:
        parts: list[str] = []
        if self.const or not self.terms:
            parts.append(str(self.const))
        for sym, c in self.terms:
            if c == 1:
                parts.append(f"+{sym}" if parts else sym)
            elif c == -1:
                parts.append(f"-{sym}")
            else:
                sign = "+" if c > 0 else "-"
                parts.append(f"{sign}{abs(c)}{sym}" if parts else f"{c}{sym}")
        return "".join(parts)


# a bullet cell prints as "." and evaluates to phase 0
PhaseCell = Optional[AffinePhase]


def parse_phase_cell(text: str) -> PhaseCell:
    s = text.strip()
    if s == ".":
        return None
    const = 0
    terms: list[tuple[str, int]] = []
    i = 0
    sign = 1
    started = False
    while i < len(s):
        ch = s[i]
        if ch == "+":
            sign = 1
            i += 1
        elif ch == "-":
            sign = -1
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            value = int(s[i:j])
            if j < len(s) and s[j].isalpha():
                terms.append((s[j], sign * value))
                j += 1
            else:
                const += sign * value
            sign = 1
            i = j
            started = True
        elif ch.isalpha() and ch.islower() and ch != "i":
            terms.append((ch, sign))
            sign = 1
            i += 1
            started = True
        else:
            raise ValueError(f"bad phase cell {text!r}")
    if not started:
        raise ValueError(f"bad phase cell {text!r}")
    return AffinePhase(const, tuple(terms))


class ExponentMatrix:
    """Square grid of affine phase cells; None cells are printed bullets."""

    __slots__ = ("n", "cells", "label")

    def __init__(self, cells: Iterable[Iterable[PhaseCell]], label: str | None = None) -> None:
        grid = tuple(tuple(row) for row in cells)
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise ValueError("matrix must be square and nonempty")
        self.n = n
        self.cells = grid
        self.label = label

    def __getitem__(self, i: int) -> tuple[PhaseCell, ...]:
        return self.cells[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExponentMatrix) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def symbols(self) -> set[str]:
        syms: set[str] = set()
        for row in self.cells:
            for cell in row:
                if cell is not None:
                    syms |= cell.symbols()
        return syms

    def phase(self, i: int, j: int, phases: Mapping[str, float]) -> float:
        cell = self.cells[i][j]
        return 0.0 if cell is None else cell(phases)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<ExponentMatrix{tag} {self.n}x{self.n}>"


class ButsonMatrix:
    """Exact matrix over m-th roots of unity; cells are logs, None is zero."""

    __slots__ = ("n", "m", "logs", "label")

    def __init__(
        self,
        m: int,
        logs: Iterable[Iterable[Optional[int]]],
        label: str | None = None,
    ) -> None:
        if m < 1:
            raise ValueError("root order must be positive")
        grid = tuple(
            tuple(None if c is None else c % m for c in row) for row in logs
        )
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise ValueError("matrix must be square and nonempty")
        self.n = n
        self.m = m
        self.logs = grid
        self.label = label

    def __getitem__(self, i: int) -> tuple[Optional[int], ...]:
        return self.logs[i]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ButsonMatrix)
            and self.m == other.m
            and self.logs == other.logs
        )

    def __hash__(self) -> int:
        return hash((self.m, self.logs))

    def value(self, i: int, j: int) -> CycValue:
        k = self.logs[i][j]
        return CycValue.zero(self.m) if k is None else CycValue.root(self.m, k)

    def has_zero(self) -> bool:
        return any(c is None for row in self.logs for c in row)

    def zero_positions(self) -> set[tuple[int, int]]:
        return {
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if self.logs[i][j] is None
        }

    def lift(self, big: int) -> "ButsonMatrix":
        if big == self.m:
            return self
        if big % self.m:
            raise ValueError(f"{big} is not a multiple of {self.m}")
        step = big // self.m
        return ButsonMatrix(
            big,
            [[None if c is None else c * step for c in row] for row in self.logs],
            self.label,
        )

    def reduce_order(self) -> "ButsonMatrix":
        """Rewrite over the smallest root order containing every cell."""
        logs = [c for row in self.logs for c in row if c is not None]
        small = minimal_root_order(logs, self.m)
        if small == self.m:
            return self
        step = self.m // small
        return ButsonMatrix(
            small,
            [[None if c is None else c // step for c in row] for row in self.logs],
            self.label,
        )

    def to_complex(self) -> "ComplexMatrix":
        z = cmath.exp(2j * cmath.pi / self.m)
        arr = np.array(
            [[0 if c is None else z**c for c in row] for row in self.logs],
            dtype=complex,
        )
        return ComplexMatrix(arr, self.label)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<ButsonMatrix{tag} {self.n}x{self.n} order {self.m}>"


class ComplexMatrix:
    """Floating-point complex matrix (thin wrapper over an ndarray)."""

    __slots__ = ("array", "label")

    def __init__(self, array: np.ndarray | Sequence[Sequence[complex]], label: str | None = None) -> None:
        arr = np.array(array, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("matrix must be square and nonempty")
        arr.flags.writeable = False  # instances are shared and cached
        self.array = arr
        self.label = label

    @property
    def n(self) -> int:
        return self.array.shape[0]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.array[i]

    def allclose(self, other: "ComplexMatrix", tol: float = 1e-12) -> bool:
        return self.n == other.n and bool(
            np.max(np.abs(self.array - other.array)) <= tol
        )

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<ComplexMatrix{tag} {self.n}x{self.n}>"


NumericMatrix = Union[ButsonMatrix, ComplexMatrix]
AnyMatrix = Union[SymbolicMatrix, ExponentMatrix, ButsonMatrix, ComplexMatrix]


# ---------------------------------------------------------------------------
# constructions


def circulant(first_row: Sequence[Entry], label: str | None = None) -> SymbolicMatrix:
    """Square matrix whose every row is the right cyclic shift of the last."""
    n = len(first_row)
    if n == 0:
        raise ValueError("first row must be nonempty")
    return SymbolicMatrix(
        [[first_row[(j - i) % n] for j in range(n)] for i in range(n)], label
    )


def bordered_circulant(core_row: Sequence[Entry], label: str | None = None) -> SymbolicMatrix:
    """Circulant core framed by all-ones first row/column and a corner zero."""
    if not core_row:
        raise ValueError("core row must be nonempty")
    if core_row[0] is not None:
        raise ValueError("core row must start with the zero cell")
    core = circulant(core_row)
    k = core.n
    rows: list[list[Entry]] = [[None] + [ONE] * k]
    for i in range(k):
        rows.append([ONE, *core.rows[i]])
    return SymbolicMatrix(rows, label)


def transpose(matrix: SymbolicMatrix) -> SymbolicMatrix:
    return SymbolicMatrix(
        [[matrix.rows[j][i] for j in range(matrix.n)] for i in range(matrix.n)],
        matrix.label,
    )


def reciprocal_transpose(matrix: SymbolicMatrix) -> SymbolicMatrix:
    """Entrywise reciprocal of the transpose: the inverse convention
    A^{-1}[i][j] = 1/A[j][i] that the doubling constructions rely on."""
    out: list[list[Entry]] = []
    for i in range(matrix.n):
        row: list[Entry] = []
        for j in range(matrix.n):
            cell = matrix.rows[j][i]
            if cell is None:
                raise ValueError(f"zero cell at ({j},{i}) has no reciprocal")
            row.append(cell.reciprocal())
        out.append(row)
    return SymbolicMatrix(out)


def conference_inverse(matrix: SymbolicMatrix) -> SymbolicMatrix:
    """Reciprocal transpose off the diagonal, zero diagonal.

    Requires a conference-shaped input: zero diagonal, nonzero elsewhere.
    """
    n = matrix.n
    out: list[list[Entry]] = []
    for i in range(n):
        row: list[Entry] = []
        for j in range(n):
            cell = matrix.rows[j][i]
            if i == j:
                if cell is not None:
                    raise ValueError(f"nonzero diagonal cell at ({i},{i})")
                row.append(None)
            else:
                if cell is None:
                    raise ValueError(f"zero off-diagonal cell at ({j},{i})")
                row.append(cell.reciprocal())
        out.append(row)
    return SymbolicMatrix(out)


def _doubled_blocks(C: SymbolicMatrix, Cinv: SymbolicMatrix, label: str | None) -> SymbolicMatrix:
    """[[C+I, Cinv-I], [C-I, -Cinv-I]] for zero-diagonal C and Cinv."""
    n = C.n
    rows: list[list[Entry]] = []
    for i in range(n):
        top: list[Entry] = []
        for j in range(n):
            top.append(ONE if i == j else C.rows[i][j])
        for j in range(n):
            top.append(-ONE if i == j else Cinv.rows[i][j])
        rows.append(top)
    for i in range(n):
        bottom: list[Entry] = []
        for j in range(n):
            bottom.append(-ONE if i == j else C.rows[i][j])
        for j in range(n):
            cell = Cinv.rows[i][j]
            bottom.append(-ONE if i == j else -cell)
        rows.append(bottom)
    return SymbolicMatrix(rows, label)


def double_orthogonal(C: SymbolicMatrix, label: str | None = None) -> SymbolicMatrix:
    """Size-doubling block construction from a conference-shaped matrix.

    The off-diagonal blocks use the conference inverse, so free parameters
    are allowed.
    """
    return _doubled_blocks(C, conference_inverse(C), label)


def double_hadamard(C: SymbolicMatrix, label: str | None = None) -> SymbolicMatrix:
    """Size-doubling for constant unimodular conference matrices.

    For constant cells the Hermitian conjugate equals the conference inverse,
    so this coincides with :func:`double_orthogonal`; free symbols are
    rejected to keep the conjugate entrywise-computable.
    """
    if not C.is_constant:
        raise ValueError("free symbols present; use double_orthogonal")
    return _doubled_blocks(C, conference_inverse(C), label)


def scale_columns(matrix: SymbolicMatrix, diag: Sequence[Entry]) -> SymbolicMatrix:
    if len(diag) != matrix.n:
        raise ValueError("diagonal length mismatch")
    if any(d is None for d in diag):
        raise ValueError("zero scale factor")
    return SymbolicMatrix(
        [
            [None if cell is None else cell * diag[j] for j, cell in enumerate(row)]
            for row in matrix.rows
        ],
        matrix.label,
    )


def scale_rows(matrix: SymbolicMatrix, diag: Sequence[Entry]) -> SymbolicMatrix:
    if len(diag) != matrix.n:
        raise ValueError("diagonal length mismatch")
    if any(d is None for d in diag):
        raise ValueError("zero scale factor")
    return SymbolicMatrix(
        [
            [None if cell is None else diag[i] * cell for cell in row]
            for i, row in enumerate(matrix.rows)
        ],
        matrix.label,
    )


def substitute(matrix: SymbolicMatrix, mapping: Mapping[str, Monomial | str]) -> SymbolicMatrix:
    """Substitute unit monomials for symbols in every cell."""
    parsed: dict[str, Monomial] = {}
    for sym, val in mapping.items():
        mono = parse_entry(val) if isinstance(val, str) else val
        if mono is None:
            raise ValueError(f"cannot substitute zero for {sym!r}")
        parsed[sym] = mono
    return SymbolicMatrix(
        [
            [None if cell is None else cell.substitute(parsed) for cell in row]
            for row in matrix.rows
        ],
        matrix.label,
    )


def dephase(matrix: AnyMatrix) -> AnyMatrix:
    """Normalize the first row and column to ones.

    out[i][j] = M[i][j] * M[0][0] / (M[i][0] * M[0][j]); requires a zero-free
    matrix.  Works on symbolic, exact Butson and float matrices.
    """
    if isinstance(matrix, SymbolicMatrix):
        if matrix.has_zero():
            raise ValueError("cannot dephase a matrix with zero cells")
        corner = matrix.rows[0][0]
        col_fix = [
            (corner * matrix.rows[0][j].reciprocal()) for j in range(matrix.n)
        ]
        out = []
        for i in range(matrix.n):
            head_inv = matrix.rows[i][0].reciprocal()
            out.append(
                [matrix.rows[i][j] * head_inv * col_fix[j] for j in range(matrix.n)]
            )
        return SymbolicMatrix(out, matrix.label)
    if isinstance(matrix, ButsonMatrix):
        if matrix.has_zero():
            raise ValueError("cannot dephase a matrix with zero cells")
        logs = matrix.logs
        corner = logs[0][0]
        out_logs = [
            [
                (logs[i][j] + corner - logs[i][0] - logs[0][j]) % matrix.m
                for j in range(matrix.n)
            ]
            for i in range(matrix.n)
        ]
        return ButsonMatrix(matrix.m, out_logs, matrix.label)
    if isinstance(matrix, ComplexMatrix):
        arr = matrix.array
        if np.min(np.abs(arr)) == 0:
            raise ValueError("cannot dephase a matrix with zero cells")
        out = arr * arr[0, 0] / np.outer(arr[:, 0], arr[0, :])
        return ComplexMatrix(out, matrix.label)
    raise TypeError(f"cannot dephase {type(matrix).__name__}")


def eval_exponent_form(
    base: SymbolicMatrix,
    exponents: ExponentMatrix,
    phases: Mapping[str, float],
    label: str | None = None,
) -> ComplexMatrix:
    """Entrywise base[i][j] * exp(i * exponents[i][j](phases)).

    The base matrix must be constant; bullet cells contribute phase zero.
    """
    if base.n != exponents.n:
        raise ValueError("dimension mismatch")
    if not base.is_constant:
        raise ValueError("base matrix must be constant")
    arr = np.empty((base.n, base.n), dtype=complex)
    for i in range(base.n):
        for j in range(base.n):
            cell = base.rows[i][j]
            if cell is None:
                arr[i, j] = 0
                continue
            unit = 1j**cell.ipow
            arr[i, j] = unit * cmath.exp(1j * exponents.phase(i, j, phases))
    return ComplexMatrix(arr, label)


def to_butson(matrix: SymbolicMatrix, label: str | None = None) -> ButsonMatrix:
    """Exact numeric form of a constant matrix (4th roots), order-reduced."""
    if not matrix.is_constant:
        raise ValueError("matrix has free symbols")
    logs = [
        [None if cell is None else cell.ipow for cell in row] for row in matrix.rows
    ]
    return ButsonMatrix(4, logs, label or matrix.label).reduce_order()


def eval_exact(
    matrix: SymbolicMatrix,
    assignment: Mapping[str, int],
    order: int,
    label: str | None = None,
) -> ButsonMatrix:
    """Evaluate at root-of-unity parameter values given as logs base zeta_order."""
    big = order
    for row in matrix.rows:
        for cell in row:
            if cell is not None and cell.ipow:
                big = lcm(big, 2 if cell.ipow == 2 else 4)
    logs: list[list[Optional[int]]] = []
    for row in matrix.rows:
        out_row: list[Optional[int]] = []
        for cell in row:
            if cell is None:
                out_row.append(None)
            else:
                k, sub = cell.eval_root_log(assignment, order)
                out_row.append(k * (big // sub))
        logs.append(out_row)
    return ButsonMatrix(big, logs, label or matrix.label).reduce_order()


def eval_complex(
    matrix: SymbolicMatrix,
    assignment: Mapping[str, complex],
    label: str | None = None,
) -> ComplexMatrix:
    arr = np.array(
        [
            [0 if cell is None else cell.eval_complex(assignment) for cell in row]
            for row in matrix.rows
        ],
        dtype=complex,
    )
    return ComplexMatrix(arr, label or matrix.label)
