"""Formal polynomials in a deformation parameter with complex coefficients."""

from __future__ import annotations

from numbers import Number
from typing import Iterable, Sequence

ZERO_TOL = 1e-12


class DeformSeries:
    """c0 + c1 h + c2 h^2 + ... with finitely many complex coefficients.

    The parameter is anonymous; it plays the role of q or theta by context.
    Comparisons are coefficient-wise at ZERO_TOL.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "DeformSeries":
        if isinstance(c, DeformSeries):
            return c
        return cls([c])

    @classmethod
    def param(cls) -> "DeformSeries":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        return all(abs(c) <= tol for c in self.coeffs)

    def trimmed(self, tol: float = ZERO_TOL) -> "DeformSeries":
        return DeformSeries([0 if abs(c) <= tol else c for c in self.coeffs])

    def effective_degree(self, tol: float = ZERO_TOL) -> int:
        return self.trimmed(tol).degree

    def __call__(self, h) -> complex:
        total = 0j
        for c in reversed(self.coeffs):
            total = total * h + c
        return total

    def _lift(self, other) -> "DeformSeries":
        if isinstance(other, DeformSeries):
            return other
        if isinstance(other, Number):
            return DeformSeries([other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return DeformSeries([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DeformSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return DeformSeries()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return DeformSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = DeformSeries([1])
        for _ in range(int(k)):
            out = out * self
        return out

    def conjugate(self) -> "DeformSeries":
        """Complex conjugation with a real parameter."""
        return DeformSeries([c.conjugate() for c in self.coeffs])

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(round(c.real, 9) + 1j * round(c.imag, 9) for c in self.trimmed().coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
            parts.append(cs if k == 0 else f"{cs}*h" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts) or "0"


def as_series(c) -> DeformSeries:
    return DeformSeries.const(c)
