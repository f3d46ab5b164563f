"""Exact and numeric verification predicates.

The symbolic checks accumulate inner products as Laurent polynomials and
demand they equal n (diagonal) or vanish (off-diagonal) identically in the
free parameters.  The exact numeric checks reduce sums of roots of unity
modulo the cyclotomic polynomial.  Floating checks are smoke tests only; a
symbolic failure is authoritative even if sampled floats look fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .cyclotomic import root_sum_is_zero
from .matrices import ButsonMatrix, ComplexMatrix, SymbolicMatrix
from .symbolic import Gaussian, GAUSSIAN_UNITS, LaurentPoly

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, slots=True)
class VerificationResult:
    """Outcome of a predicate; carries a witness exactly when it failed."""

    passed: bool
    witness: Optional[tuple[int, int, object]] = None
    message: str = ""

    def __post_init__(self) -> None:
        if self.passed and self.witness is not None:
            raise ValueError("witness present on a passing result")
        if not self.passed and self.witness is None:
            raise ValueError("failing result needs a witness")

    def __bool__(self) -> bool:
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return "pass"
        i, j, detail = self.witness
        text = f"fail at ({i},{j}): {detail}"
        return f"{text} [{self.message}]" if self.message else text


def _ok() -> VerificationResult:
    return VerificationResult(True)


def _fail(i: int, j: int, detail: object, message: str = "") -> VerificationResult:
    return VerificationResult(False, (i, j, detail), message)


def _poly_from_acc(acc: dict) -> LaurentPoly:
    return LaurentPoly({k: Gaussian(re, im) for k, (re, im) in acc.items()})


def _row_product_sum(row_i, recip_row_j, skip: set[int]) -> dict:
    """Accumulate sum_k row_i[k]*recip_row_j[k] as {exps: [re, im]}."""
    acc: dict = {}
    for k, (x, r) in enumerate(zip(row_i, recip_row_j)):
        if k in skip:
            continue
        prod = x * r
        g = GAUSSIAN_UNITS[prod.ipow]
        cur = acc.get(prod.exps)
        if cur is None:
            acc[prod.exps] = (g.re, g.im)
        else:
            acc[prod.exps] = (cur[0] + g.re, cur[1] + g.im)
    return {k: v for k, v in acc.items() if v != (0, 0)}


def check_inverse_orthogonal(matrix: SymbolicMatrix) -> VerificationResult:
    """A * (1/a_ji) == n*I identically in the free parameters."""
    n = matrix.n
    for i in range(n):
        for j, cell in enumerate(matrix.rows[i]):
            if cell is None:
                raise ValueError(f"zero cell at ({i},{j})")
    recips = [[cell.reciprocal() for cell in row] for row in matrix.rows]
    for i in range(n):
        row = matrix.rows[i]
        for j in range(n):
            acc = _row_product_sum(row, recips[j], skip=set())
            if i == j:
                if acc != {(): (n, 0)}:
                    return _fail(i, j, _poly_from_acc(acc), f"diagonal sum != {n}")
            elif acc:
                return _fail(i, j, _poly_from_acc(acc), "off-diagonal sum != 0")
    return _ok()


def _check_conference_symbolic(matrix: SymbolicMatrix) -> VerificationResult:
    n = matrix.n
    for i in range(n):
        for j, cell in enumerate(matrix.rows[i]):
            if i == j and cell is not None:
                return _fail(i, j, "nonzero diagonal cell", "structure")
            if i != j and cell is None:
                return _fail(i, j, "zero off-diagonal cell", "structure")
    recips = [
        [None if cell is None else cell.reciprocal() for cell in row]
        for row in matrix.rows
    ]
    target = n - 1
    for i in range(n):
        row = matrix.rows[i]
        for j in range(n):
            rrow = recips[j]
            acc: dict = {}
            for k in range(n):
                if k == i or k == j:
                    continue
                prod = row[k] * rrow[k]
                g = GAUSSIAN_UNITS[prod.ipow]
                cur = acc.get(prod.exps)
                if cur is None:
                    acc[prod.exps] = (g.re, g.im)
                else:
                    acc[prod.exps] = (cur[0] + g.re, cur[1] + g.im)
            acc = {k: v for k, v in acc.items() if v != (0, 0)}
            if i == j:
                if acc != {(): (target, 0)}:
                    return _fail(i, j, _poly_from_acc(acc), f"diagonal sum != {target}")
            elif acc:
                return _fail(i, j, _poly_from_acc(acc), "off-diagonal sum != 0")
    return _ok()


def _check_conference_butson(matrix: ButsonMatrix) -> VerificationResult:
    n, m = matrix.n, matrix.m
    logs = matrix.logs
    for i in range(n):
        for j in range(n):
            if i == j and logs[i][j] is not None:
                return _fail(i, j, "nonzero diagonal cell", "structure")
            if i != j and logs[i][j] is None:
                return _fail(i, j, "zero off-diagonal cell", "structure")
    for i in range(n):
        for j in range(i + 1, n):
            counts = [0] * m
            for k in range(n):
                if k == i or k == j:
                    continue
                counts[(logs[i][k] - logs[j][k]) % m] += 1
            if not root_sum_is_zero(counts, m):
                return _fail(i, j, counts, "off-diagonal root sum != 0")
    return _ok()


def check_conference(matrix: Union[SymbolicMatrix, ButsonMatrix]) -> VerificationResult:
    """Zero diagonal, unimodular elsewhere, C * C^H == (n-1)*I exactly."""
    if isinstance(matrix, SymbolicMatrix):
        return _check_conference_symbolic(matrix)
    if isinstance(matrix, ButsonMatrix):
        return _check_conference_butson(matrix)
    raise TypeError(f"cannot conference-check {type(matrix).__name__}")


def _check_hadamard_butson(matrix: ButsonMatrix) -> VerificationResult:
    n, m = matrix.n, matrix.m
    logs = matrix.logs
    for i in range(n):
        for j in range(n):
            if logs[i][j] is None:
                return _fail(i, j, "zero cell", "not unimodular")
    for i in range(n):
        for j in range(i + 1, n):
            counts = [0] * m
            for k in range(n):
                counts[(logs[i][k] - logs[j][k]) % m] += 1
            if not root_sum_is_zero(counts, m):
                return _fail(i, j, counts, "off-diagonal root sum != 0")
    return _ok()


def _check_hadamard_complex(matrix: ComplexMatrix, tol: float) -> VerificationResult:
    arr = matrix.array
    n = matrix.n
    mods = np.abs(np.abs(arr) - 1.0)
    worst = np.unravel_index(int(np.argmax(mods)), mods.shape)
    if mods[worst] > tol:
        return _fail(int(worst[0]), int(worst[1]), float(mods[worst]), "not unimodular")
    gram = arr @ arr.conj().T
    resid = np.abs(gram - n * np.eye(n))
    worst = np.unravel_index(int(np.argmax(resid)), resid.shape)
    if resid[worst] > tol:
        return _fail(int(worst[0]), int(worst[1]), float(resid[worst]), "gram residual")
    return _ok()


def check_hadamard(
    matrix: Union[ButsonMatrix, ComplexMatrix], tol: float = DEFAULT_TOL
) -> VerificationResult:
    """All cells unimodular and M * M^H == n*I (exact for Butson input)."""
    if isinstance(matrix, ButsonMatrix):
        return _check_hadamard_butson(matrix)
    if isinstance(matrix, ComplexMatrix):
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        return _check_hadamard_complex(matrix, tol)
    raise TypeError(f"cannot hadamard-check {type(matrix).__name__}")


def max_gram_residual(matrix: ComplexMatrix) -> float:
    """max |(M M^H - n I)_{ij}|, a convenience for reporting."""
    arr = matrix.array
    gram = arr @ arr.conj().T
    return float(np.max(np.abs(gram - matrix.n * np.eye(matrix.n))))
