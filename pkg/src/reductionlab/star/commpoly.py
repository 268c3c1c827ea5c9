"""Commutative polynomials over DeformSeries in named variables."""

from __future__ import annotations

import random
from numbers import Number
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError
from .series import DeformSeries, as_series

Exps = Tuple[int, ...]


class CommPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exps, object]] = None):
        self.variables = tuple(variables)
        out: Dict[Exps, DeformSeries] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(self.variables):
                raise DomainError("exponent length does not match variables")
            c = as_series(c)
            out[e] = out[e] + c if e in out else c
        self.terms = {e: c for e, c in out.items() if not c.is_zero()}

    # -- constructors
    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "CommPoly":
        e = [0] * len(variables)
        e[list(variables).index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def const(cls, variables: Sequence[str], c=1) -> "CommPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def gens(cls, variables: Sequence[str]):
        return tuple(cls.var(variables, v) for v in variables)

    # -- arithmetic
    def _lift(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.variables != self.variables:
                raise DomainError("variable mismatch")
            return other
        if isinstance(other, (Number, DeformSeries)):
            return CommPoly.const(self.variables, other)
        raise TypeError(f"cannot combine CommPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return CommPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (Number, DeformSeries)):
            c = as_series(other)
            return CommPoly(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        terms: Dict[Exps, DeformSeries] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = tuple(i + j for i, j in zip(a, b))
                terms[e] = terms[e] + c * d if e in terms else c * d
        return CommPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CommPoly.const(self.variables)
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (Number, DeformSeries)):
            other = CommPoly.const(self.variables, other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs(self) -> float:
        return max((abs(c) for s in self.terms.values() for c in s.coeffs), default=0.0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- calculus and structure
    def derive(self, name) -> "CommPoly":
        j = name if isinstance(name, int) else self.variables.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                terms[tuple(f)] = c * e[j]
        return CommPoly(self.variables, terms)

    def derive_multi(self, sigma: Sequence[int]) -> "CommPoly":
        out = self
        for j, k in enumerate(sigma):
            for _ in range(k):
                out = out.derive(j)
                if out.is_zero():
                    return out
        return out

    def param_coefficient(self, k: int) -> "CommPoly":
        return CommPoly(self.variables, {e: c.coeff(k) for e, c in self.terms.items()})

    def max_param_degree(self) -> int:
        return max((c.effective_degree() for c in self.terms.values()), default=-1)

    def real(self) -> "CommPoly":
        return CommPoly(self.variables, {e: DeformSeries([z.real for z in c.coeffs]) for e, c in self.terms.items()})

    def imag(self) -> "CommPoly":
        return CommPoly(self.variables, {e: DeformSeries([z.imag for z in c.coeffs]) for e, c in self.terms.items()})

    def conjugate(self) -> "CommPoly":
        return CommPoly(self.variables, {e: c.conjugate() for e, c in self.terms.items()})

    def substitute(self, images: Mapping[str, "CommPoly"]) -> "CommPoly":
        """Compose with polynomials given for every variable (common target ring)."""
        target = next(iter(images.values()))
        out = CommPoly(target.variables)
        powers: Dict[Tuple[int, int], CommPoly] = {}
        for e, c in self.terms.items():
            term = CommPoly.const(target.variables, c)
            for j, k in enumerate(e):
                if k:
                    key = (j, k)
                    if key not in powers:
                        powers[key] = images[self.variables[j]] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def evaluate(self, point: Sequence[float], h: float = 0.0) -> complex:
        point = np.asarray(point, dtype=float)
        total = 0j
        for e, c in self.terms.items():
            total += c(h) * float(np.prod(point ** np.array(e)))
        return total

    def reduce_power(self, name: str, replacement: "CommPoly") -> "CommPoly":
        """Rewrite name^2 -> replacement repeatedly (replacement must not contain name^2)."""
        j = self.variables.index(name)
        out = CommPoly(self.variables)
        stack = list(self.terms.items())
        while stack:
            e, c = stack.pop()
            if e[j] < 2:
                out = out + CommPoly(self.variables, {e: c})
                continue
            f = list(e)
            f[j] -= 2
            rest = CommPoly(self.variables, {tuple(f): c}) * replacement
            stack.extend(rest.terms.items())
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def random_commpoly(variables: Sequence[str], rng: random.Random, degree: int = 3,
                    n_terms: int = 4, complex_coeffs: bool = False) -> CommPoly:
    terms = {}
    n = len(variables)
    for _ in range(n_terms):
        d = rng.randint(0, degree)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        c = rng.randint(-3, 3) or 1
        if complex_coeffs:
            c = complex(c, rng.randint(-2, 2))
        terms[tuple(e)] = c
    return CommPoly(variables, terms)
