"""Exact integer polynomials, ascending-coefficient order.

Text format (used by the CLI and fixtures): comma-separated ascending
integer coefficients, e.g. "1,2,1,1" = 1 + 2z + z^2 + z^3.
"""

from __future__ import annotations

from dataclasses import dataclass


def _trim(coeffs):
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple  # ascending; empty tuple is the zero polynomial

    def __post_init__(self):
        for c in self.coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient required, got {c!r}")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("highest-degree coefficient must be nonzero")

    @staticmethod
    def from_list(coeffs) -> "IntPoly":
        return IntPoly(_trim(int(c) for c in coeffs))

    @staticmethod
    def parse(text: str) -> "IntPoly":
        parts = [p.strip() for p in text.split(",") if p.strip() != ""]
        if not parts:
            return IntPoly(())
        return IntPoly.from_list(int(p) for p in parts)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(str(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(_trim(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return IntPoly(_trim(out))

    def valuation(self) -> int:
        """Order of vanishing at z = 0 (0 for nonzero constant term)."""
        if self.is_zero:
            raise ValueError("zero polynomial has no valuation")
        v = 0
        while self.coeffs[v] == 0:
            v += 1
        return v

    def shifted_down(self, v: int) -> "IntPoly":
        """Divide by z^v (requires the low coefficients to vanish)."""
        if any(self.coeffs[i] != 0 for i in range(min(v, len(self.coeffs)))):
            raise ValueError(f"not divisible by z^{v}")
        return IntPoly(self.coeffs[v:])

    def divexact(self, divisor: "IntPoly") -> "IntPoly":
        """Exact division over Z; raises if the remainder is nonzero."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dlead = divisor.coeffs[-1]
        dn = len(divisor.coeffs)
        quo = [0] * max(len(rem) - dn + 1, 0)
        for k in range(len(rem) - dn, -1, -1):
            head = rem[k + dn - 1]
            if head % dlead != 0:
                raise ValueError("not exactly divisible over the integers")
            q = head // dlead
            quo[k] = q
            if q:
                for j, dj in enumerate(divisor.coeffs):
                    rem[k + j] -= q * dj
        if any(rem):
            raise ValueError("not exactly divisible over the integers")
        return IntPoly(_trim(quo))
