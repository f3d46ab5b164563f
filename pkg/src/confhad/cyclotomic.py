"""Exact arithmetic in cyclotomic integer rings Z[zeta_m].

Values are integer coordinate vectors in the power basis 1, z, ..., z^(phi-1)
reduced modulo the m-th cyclotomic polynomial, so equality of vectors is
equality of values and a sum of roots of unity is zero exactly when its
reduced vector vanishes.  This is what makes conference/Hadamard checks exact
rather than floating-point.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd, lcm, tau
from typing import Iterable, Sequence


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials, denominator monic."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for j, y in enumerate(den):
                num[k + j] -= c * y
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Ascending coefficients of the m-th cyclotomic polynomial (monic)."""
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _tables(m: int):
    """Reduction data for Z[zeta_m]: power rows, conjugation rows, root logs."""
    phi_poly = cyclotomic_polynomial(m)
    phi = len(phi_poly) - 1
    # x^phi == -(phi_poly without its leading 1)
    top = [-c for c in phi_poly[:phi]]
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    limit = max(m, 2 * phi - 1)
    for _ in range(limit):
        rows.append(tuple(cur))
        lead = cur[phi - 1]
        nxt = [0] * phi
        for j in range(phi - 1):
            nxt[j + 1] = cur[j]
        if lead:
            for j in range(phi):
                nxt[j] += lead * top[j]
        cur = nxt
    conj_rows = tuple(rows[(m - j) % m] for j in range(phi))
    root_log = {rows[k]: k for k in range(m)}
    return phi, tuple(rows), conj_rows, root_log


def euler_phi(m: int) -> int:
    return _tables(m)[0]


class CycValue:
    """An element of Z[zeta_m] in canonical reduced coordinates."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[int]) -> None:
        phi = _tables(m)[0]
        cs = tuple(coeffs)
        if len(cs) != phi:
            raise ValueError(f"expected {phi} coordinates for order {m}, got {len(cs)}")
        self.m = m
        self.coeffs = cs

    @classmethod
    def zero(cls, m: int) -> "CycValue":
        return cls(m, (0,) * _tables(m)[0])

    @classmethod
    def one(cls, m: int) -> "CycValue":
        return cls.root(m, 0)

    @classmethod
    def root(cls, m: int, k: int) -> "CycValue":
        """zeta_m^k."""
        _, rows, _, _ = _tables(m)
        return cls(m, rows[k % m])

    @classmethod
    def from_int(cls, m: int, value: int) -> "CycValue":
        phi = _tables(m)[0]
        return cls(m, (value,) + (0,) * (phi - 1))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _require_same_order(self, other: "CycValue") -> None:
        if self.m != other.m:
            raise ValueError(f"order mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "CycValue") -> "CycValue":
        self._require_same_order(other)
        return CycValue(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycValue") -> "CycValue":
        self._require_same_order(other)
        return CycValue(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycValue":
        return CycValue(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycValue") -> "CycValue":
        self._require_same_order(other)
        phi, rows, _, _ = _tables(self.m)
        acc = [0] * phi
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if not y:
                    continue
                row = rows[i + j]
                xy = x * y
                for t in range(phi):
                    acc[t] += xy * row[t]
        return CycValue(self.m, acc)

    def conj(self) -> "CycValue":
        """Complex conjugation, zeta^k -> zeta^(-k)."""
        phi, _, conj_rows, _ = _tables(self.m)
        acc = [0] * phi
        for j, x in enumerate(self.coeffs):
            if not x:
                continue
            row = conj_rows[j]
            for t in range(phi):
                acc[t] += x * row[t]
        return CycValue(self.m, acc)

    def lift(self, big: int) -> "CycValue":
        """Reinterpret in Z[zeta_big] for m | big."""
        if big == self.m:
            return self
        if big % self.m:
            raise ValueError(f"{big} is not a multiple of {self.m}")
        step = big // self.m
        phi, rows, _, _ = _tables(big)
        acc = [0] * phi
        for j, x in enumerate(self.coeffs):
            if not x:
                continue
            row = rows[(j * step) % big]
            for t in range(phi):
                acc[t] += x * row[t]
        return CycValue(big, acc)

    def root_log(self) -> int | None:
        """k such that self == zeta_m^k, or None if self is not a root."""
        return _tables(self.m)[3].get(self.coeffs)

    def to_complex(self) -> complex:
        z = cmath.exp(1j * tau / self.m)
        return sum(c * z**j for j, c in enumerate(self.coeffs) if c)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CycValue)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def __repr__(self) -> str:
        k = self.root_log()
        if k is not None:
            return f"CycValue(zeta{self.m}^{k})"
        return f"CycValue(m={self.m}, {list(self.coeffs)})"


def common_order(*values: CycValue) -> tuple[CycValue, ...]:
    """Lift values into the smallest shared ring."""
    big = 1
    for v in values:
        big = lcm(big, v.m)
    return tuple(v.lift(big) for v in values)


def root_sum_is_zero(counts: Sequence[int], m: int) -> bool:
    """Exact test for sum_k counts[k] * zeta_m^k == 0."""
    phi, rows, _, _ = _tables(m)
    acc = [0] * phi
    for k, c in enumerate(counts):
        if not c:
            continue
        row = rows[k]
        for t in range(phi):
            acc[t] += c * row[t]
    return not any(acc)


def minimal_root_order(logs: Iterable[int], m: int) -> int:
    """Smallest m' | m with every zeta_m^k, k in logs, a power of zeta_m'."""
    g = m
    for k in logs:
        g = gcd(g, k % m)
        if g == 1:
            return m
    return m // g
