"""Text formats for the four matrix kinds.

SYM n  -- symbolic cells in the monomial grammar (`0`, `1`, `-i*c*a^-1`, ...)
EXP n  -- affine phase cells (`.` for a bullet, `0`, `b-a`, `e+g-a`, ...)
BH n m -- Butson log form: integer k for zeta_m^k, `z` for a zero cell
NUM n  -- complex floats as `re,im` pairs, 17 significant digits

Parsing is whitespace-insensitive inside rows; emit(parse(text)) is the
identity up to whitespace and parse(emit(M)) == M structurally.
"""

from __future__ import annotations

import numpy as np

from .matrices import (
    AnyMatrix,
    ButsonMatrix,
    ComplexMatrix,
    ExponentMatrix,
    SymbolicMatrix,
    parse_phase_cell,
)
from .symbolic import entry_str, parse_entry


class FormatError(ValueError):
    """Malformed matrix text; carries the 1-based line of the problem."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _split_rows(text: str, kind: str, extra_header: int = 0):
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise FormatError("empty input")
    header = lines[0].split()
    if not header or header[0] != kind:
        raise FormatError(f"expected {kind!r} header, got {lines[0]!r}", 1)
    if len(header) != 2 + extra_header:
        raise FormatError(f"malformed {kind} header {lines[0]!r}", 1)
    try:
        n = int(header[1])
    except ValueError:
        raise FormatError(f"bad dimension {header[1]!r}", 1) from None
    if n <= 0:
        raise FormatError(f"bad dimension {n}", 1)
    rows = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        cells = raw.split()
        if len(cells) != n:
            raise FormatError(f"row has {len(cells)} cells, expected {n}", lineno)
        rows.append((lineno, cells))
    if len(rows) != n:
        raise FormatError(f"found {len(rows)} rows, expected {n}")
    return n, header, rows


def parse_symbolic(text: str, label: str | None = None) -> SymbolicMatrix:
    _, _, rows = _split_rows(text, "SYM")
    grid = []
    for lineno, cells in rows:
        try:
            grid.append([parse_entry(c) for c in cells])
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    return SymbolicMatrix(grid, label)


def emit_symbolic(matrix: SymbolicMatrix) -> str:
    cells = [[entry_str(c) for c in row] for row in matrix.rows]
    widths = [max(len(cells[i][j]) for i in range(matrix.n)) for j in range(matrix.n)]
    body = "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells
    )
    return f"SYM {matrix.n}\n{body}\n"


def parse_exponent(text: str, label: str | None = None) -> ExponentMatrix:
    _, _, rows = _split_rows(text, "EXP")
    grid = []
    for lineno, cells in rows:
        try:
            grid.append([parse_phase_cell(c) for c in cells])
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    return ExponentMatrix(grid, label)


def emit_exponent(matrix: ExponentMatrix) -> str:
    cells = [
        ["." if c is None else str(c) for c in row] for row in matrix.cells
    ]
    widths = [max(len(cells[i][j]) for i in range(matrix.n)) for j in range(matrix.n)]
    body = "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells
    )
    return f"EXP {matrix.n}\n{body}\n"


def parse_butson(text: str, label: str | None = None) -> ButsonMatrix:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input")
    header = lines[0].split()
    if not header or header[0] != "BH" or len(header) != 3:
        raise FormatError(f"expected 'BH n m' header, got {lines[0]!r}", 1)
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError:
        raise FormatError(f"bad BH header {lines[0]!r}", 1) from None
    if n <= 0 or m <= 0:
        raise FormatError("dimension and order must be positive", 1)
    grid = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        cells = raw.split()
        if len(cells) != n:
            raise FormatError(f"row has {len(cells)} cells, expected {n}", lineno)
        row = []
        for c in cells:
            if c == "z":
                row.append(None)
                continue
            try:
                k = int(c)
            except ValueError:
                raise FormatError(f"bad log entry {c!r}", lineno) from None
            if not 0 <= k < m:
                raise FormatError(f"log {k} outside [0, {m})", lineno)
            row.append(k)
        grid.append(row)
    if len(grid) != n:
        raise FormatError(f"found {len(grid)} rows, expected {n}")
    return ButsonMatrix(m, grid, label)


def emit_butson(matrix: ButsonMatrix) -> str:
    width = len(str(matrix.m - 1))
    body = "\n".join(
        " ".join(("z" if c is None else str(c)).rjust(width) for c in row)
        for row in matrix.logs
    )
    return f"BH {matrix.n} {matrix.m}\n{body}\n"


def parse_numeric(text: str, label: str | None = None) -> ComplexMatrix:
    _, _, rows = _split_rows(text, "NUM")
    grid = []
    for lineno, cells in rows:
        row = []
        for c in cells:
            re_txt, sep, im_txt = c.partition(",")
            if not sep:
                raise FormatError(f"expected re,im pair, got {c!r}", lineno)
            try:
                row.append(complex(float(re_txt), float(im_txt)))
            except ValueError:
                raise FormatError(f"bad complex pair {c!r}", lineno) from None
        grid.append(row)
    return ComplexMatrix(np.array(grid, dtype=complex), label)


def emit_numeric(matrix: ComplexMatrix) -> str:
    rows = []
    for i in range(matrix.n):
        rows.append(
            " ".join(
                f"{z.real!r},{z.imag!r}" for z in (complex(v) for v in matrix.array[i])
            )
        )
    return f"NUM {matrix.n}\n" + "\n".join(rows) + "\n"


def parse_matrix(text: str, label: str | None = None) -> AnyMatrix:
    """Dispatch on the header keyword."""
    head = text.split(None, 1)[0] if text.split() else ""
    if head == "SYM":
        return parse_symbolic(text, label)
    if head == "EXP":
        return parse_exponent(text, label)
    if head == "BH":
        return parse_butson(text, label)
    if head == "NUM":
        return parse_numeric(text, label)
    raise FormatError(f"unknown matrix header {head!r}", 1)


def emit_matrix(matrix: AnyMatrix) -> str:
    if isinstance(matrix, SymbolicMatrix):
        return emit_symbolic(matrix)
    if isinstance(matrix, ExponentMatrix):
        return emit_exponent(matrix)
    if isinstance(matrix, ButsonMatrix):
        return emit_butson(matrix)
    if isinstance(matrix, ComplexMatrix):
        return emit_numeric(matrix)
    raise TypeError(f"cannot emit {type(matrix).__name__}")
