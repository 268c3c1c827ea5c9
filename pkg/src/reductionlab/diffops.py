"""Exact calculus on polynomial x radial-power functions.

A RadialPoly on R^n is a finite sum of c * x^alpha * r^s with r = |x| and
integer s. The canonical form writes f = r^(-2m) (A(x) + r B(x)) with m >= 0
minimal, so equality of normalized objects is equality of functions on R^n_0.
Coefficients are Fractions; floats are converted exactly.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError

Monomial = Tuple[int, ...]
Key = Tuple[Monomial, int]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, (float, np.floating)):
        return Fraction(float(c))
    raise TypeError(f"unsupported coefficient {c!r}")


# ----------------------------------------------------------------------------
# plain polynomial helpers: dict monomial -> Fraction


def _padd(acc: dict, poly: dict, scale=Fraction(1)):
    for a, c in poly.items():
        v = acc.get(a, 0) + scale * c
        if v:
            acc[a] = v
        else:
            acc.pop(a, None)


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, c in p.items():
        for b, d in q.items():
            m = tuple(i + j for i, j in zip(a, b))
            v = out.get(m, 0) + c * d
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


@lru_cache(maxsize=None)
def _rho(n: int) -> Tuple[Tuple[Monomial, Fraction], ...]:
    return tuple((tuple(2 if i == j else 0 for i in range(n)), Fraction(1)) for j in range(n))


def _rho_power(n: int, j: int) -> dict:
    return dict(_rho_power_cached(n, j))


@lru_cache(maxsize=None)
def _rho_power_cached(n: int, j: int):
    if j == 0:
        return ((tuple([0] * n), Fraction(1)),)
    prev = dict(_rho_power_cached(n, j - 1))
    return tuple(_pmul(prev, dict(_rho(n))).items())


def _divide_by_rho(p: dict, n: int) -> Optional[dict]:
    """Exact quotient p / (x1^2 + ... + xn^2), or None if not divisible."""
    rem = dict(p)
    quo: dict = {}
    while True:
        lead = [a for a in rem if a[0] >= 2]
        if not lead:
            break
        a = max(lead)
        c = rem[a]
        b = (a[0] - 2,) + a[1:]
        quo[b] = quo.get(b, 0) + c
        for j in range(n):
            m = list(b)
            m[j] += 2
            m = tuple(m)
            v = rem.get(m, 0) - c
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    if rem:
        return None
    return {a: c for a, c in quo.items() if c}


# ----------------------------------------------------------------------------


class RadialPoly:
    """Finite sum of c x^alpha r^s on R^n_0, kept in canonical form."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Key, Number]] = None, normalized: bool = False):
        self.n = int(n)
        raw = {}
        for (alpha, s), c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n:
                raise DomainError("monomial length does not match dimension")
            if any(a < 0 for a in alpha):
                raise DomainError("negative monomial exponent")
            c = _frac(c)
            if c:
                key = (alpha, int(s))
                raw[key] = raw.get(key, 0) + c
        self.terms = raw if normalized else self._canonical(raw)

    # -- construction helpers
    @classmethod
    def const(cls, n: int, c=1) -> "RadialPoly":
        return cls(n, {((0,) * n, 0): c})

    @classmethod
    def coord(cls, n: int, j: int) -> "RadialPoly":
        alpha = [0] * n
        alpha[j] = 1
        return cls(n, {(tuple(alpha), 0): 1})

    @classmethod
    def r_power(cls, n: int, s: int, c=1) -> "RadialPoly":
        return cls(n, {((0,) * n, s): c})

    @classmethod
    def monomial(cls, alpha: Sequence[int], s: int = 0, c=1) -> "RadialPoly":
        return cls(len(alpha), {(tuple(alpha), s): c})

    # -- canonical form
    def _canonical(self, raw: dict) -> dict:
        n = self.n
        if not raw:
            return {}
        m = max(0, max(-(s // 2) for (_, s) in raw))
        A: dict = {}
        B: dict = {}
        for (alpha, s), c in raw.items():
            if not c:
                continue
            j = s // 2 + m  # s = 2*(j - m) + parity
            target = B if s % 2 else A
            _padd(target, _pmul({alpha: c}, _rho_power(n, j)))
        while m > 0:
            qa = _divide_by_rho(A, n)
            if qa is None:
                break
            qb = _divide_by_rho(B, n)
            if qb is None:
                break
            A, B, m = qa, qb, m - 1
        out = {}
        for a, c in A.items():
            out[(a, -2 * m)] = c
        for a, c in B.items():
            out[(a, 1 - 2 * m)] = c
        return out

    def normalize(self) -> "RadialPoly":
        return RadialPoly(self.n, dict(self.terms))

    # -- arithmetic
    def _check(self, other: "RadialPoly"):
        if not isinstance(other, RadialPoly) or other.n != self.n:
            raise DomainError("dimension mismatch")

    def _lift(self, other) -> "RadialPoly":
        if isinstance(other, RadialPoly):
            self._check(other)
            return other
        return RadialPoly.const(self.n, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return RadialPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return RadialPoly(self.n, {k: -c for k, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RadialPoly):
            c = _frac(other)
            if not c:
                return RadialPoly(self.n)
            return RadialPoly(self.n, {k: c * v for k, v in self.terms.items()}, normalized=True)
        self._check(other)
        terms: dict = {}
        for (a, s), c in self.terms.items():
            for (b, t), d in other.terms.items():
                key = (tuple(i + j for i, j in zip(a, b)), s + t)
                terms[key] = terms.get(key, 0) + c * d
        return RadialPoly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RadialPoly.const(self.n)
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Number):
            other = RadialPoly.const(self.n, other)
        if not isinstance(other, RadialPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def min_radial_exponent(self) -> int:
        return min((s for (_, s) in self.terms), default=0)

    def degree(self) -> int:
        return max((sum(a) for (a, _) in self.terms), default=0)

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        r = math.sqrt(float(x @ x))
        total = 0.0
        for (a, s), c in self.terms.items():
            total += float(c) * float(np.prod(x ** np.array(a))) * r**s
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, s), c in sorted(self.terms.items()):
            mono = "*".join(f"x{j + 1}^{e}" if e > 1 else f"x{j + 1}" for j, e in enumerate(a) if e)
            rad = f"r^{s}" if s else ""
            body = "*".join(p for p in (mono, rad) if p)
            parts.append(f"{c}" + (f"*{body}" if body else ""))
        return " + ".join(parts)


def rp_derive(f: RadialPoly, j: int) -> RadialPoly:
    """d/dx_j (x^a r^s) = a_j x^(a - e_j) r^s + s x^(a + e_j) r^(s - 2)."""
    terms: dict = {}
    for (a, s), c in f.terms.items():
        if a[j]:
            b = list(a)
            b[j] -= 1
            key = (tuple(b), s)
            terms[key] = terms.get(key, 0) + c * a[j]
        if s:
            b = list(a)
            b[j] += 1
            key = (tuple(b), s - 2)
            terms[key] = terms.get(key, 0) + c * s
    return RadialPoly(f.n, terms)


def rp_derive_multi(f: RadialPoly, sigma: Sequence[int]) -> RadialPoly:
    for j, k in enumerate(sigma):
        for _ in range(k):
            f = rp_derive(f, j)
    return f


# ----------------------------------------------------------------------------
# linear differential operators


class LinDiffOp:
    """Sum over multi-indices sigma of g_sigma(x) d^sigma with RadialPoly g."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Tuple[int, ...], RadialPoly]] = None):
        self.n = int(n)
        self.terms: Dict[Tuple[int, ...], RadialPoly] = {}
        for sigma, g in (terms or {}).items():
            sigma = tuple(int(s) for s in sigma)
            if len(sigma) != self.n:
                raise DomainError("multi-index length does not match dimension")
            if not isinstance(g, RadialPoly):
                g = RadialPoly.const(self.n, g)
            if g.n != self.n:
                raise DomainError("coefficient dimension mismatch")
            if sigma in self.terms:
                g = self.terms[sigma] + g
            if g.is_zero():
                self.terms.pop(sigma, None)
            else:
                self.terms[sigma] = g

    @classmethod
    def identity(cls, n: int) -> "LinDiffOp":
        return cls(n, {(0,) * n: RadialPoly.const(n)})

    @classmethod
    def multiplication(cls, f: RadialPoly) -> "LinDiffOp":
        return cls(f.n, {(0,) * f.n: f})

    @classmethod
    def partial(cls, n: int, j: int) -> "LinDiffOp":
        sigma = [0] * n
        sigma[j] = 1
        return cls(n, {tuple(sigma): RadialPoly.const(n)})

    @property
    def order(self) -> int:
        return max((sum(s) for s in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if other.n != self.n:
            raise DomainError("dimension mismatch")

    def apply(self, f: RadialPoly) -> RadialPoly:
        self._check(f)
        out = RadialPoly(self.n)
        for sigma, g in self.terms.items():
            out = out + g * rp_derive_multi(f, sigma)
        return out

    __call__ = apply

    def __add__(self, other: "LinDiffOp") -> "LinDiffOp":
        self._check(other)
        terms = dict(self.terms)
        for sigma, g in other.terms.items():
            terms[sigma] = terms[sigma] + g if sigma in terms else g
        return LinDiffOp(self.n, terms)

    def __neg__(self):
        return LinDiffOp(self.n, {s: -g for s, g in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinDiffOp":
        if isinstance(c, RadialPoly):
            return LinDiffOp(self.n, {s: c * g for s, g in self.terms.items()})
        return LinDiffOp(self.n, {s: g * c for s, g in self.terms.items()})

    def compose(self, other: "LinDiffOp") -> "LinDiffOp":
        """(self o other) expanded with the multi-index Leibniz rule."""
        self._check(other)
        acc: Dict[Tuple[int, ...], RadialPoly] = {}
        for sigma, g in self.terms.items():
            for tau, h in other.terms.items():
                for rho in itertools.product(*(range(k + 1) for k in sigma)):
                    binom = 1
                    for k, r in zip(sigma, rho):
                        binom *= math.comb(k, r)
                    dh = rp_derive_multi(h, rho)
                    if dh.is_zero():
                        continue
                    key = tuple(s - r + t for s, r, t in zip(sigma, rho, tau))
                    term = g * dh * binom
                    acc[key] = acc[key] + term if key in acc else term
        return LinDiffOp(self.n, acc)

    def __matmul__(self, other):
        return self.compose(other)

    def commutator(self, other: "LinDiffOp") -> "LinDiffOp":
        return self.compose(other) - other.compose(self)

    def __eq__(self, other):
        if not isinstance(other, LinDiffOp):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({g})*d{list(s)}" for s, g in sorted(self.terms.items()))


def op_apply(D: LinDiffOp, f: RadialPoly) -> RadialPoly:
    return D.apply(f)


def op_compose(D1: LinDiffOp, D2: LinDiffOp) -> LinDiffOp:
    return D1.compose(D2)


def op_commutator(D1: LinDiffOp, D2: LinDiffOp) -> LinDiffOp:
    return D1.commutator(D2)


def nested_commutator(D: LinDiffOp, fs: Sequence[RadialPoly]) -> LinDiffOp:
    C = D
    for f in fs:
        C = C.commutator(LinDiffOp.multiplication(f))
    return C


def order_detect(D: LinDiffOp, k: int, probes: Optional[Sequence[RadialPoly]] = None) -> bool:
    """True iff every (k+1)-fold nested commutator [..[D, f0], ..., fk] vanishes.

    The f_i range over all multisets of size k+1 drawn from ``probes``
    (default: the coordinate functions). Vanishing is tested exactly at the
    operator level.
    """
    if k < 0:
        return D.is_zero()
    if probes is None:
        probes = [RadialPoly.coord(D.n, j) for j in range(D.n)]
    for combo in itertools.combinations_with_replacement(range(len(probes)), k + 1):
        if not nested_commutator(D, [probes[i] for i in combo]).is_zero():
            return False
    return True


def laplacian(n: int) -> LinDiffOp:
    terms = {}
    for j in range(n):
        sigma = [0] * n
        sigma[j] = 2
        terms[tuple(sigma)] = RadialPoly.const(n)
    return LinDiffOp(n, terms)


def hydrogen_op(k) -> LinDiffOp:
    """-Delta_3 / 2 - k / r."""
    return laplacian(3).scale(Fraction(-1, 2)) + LinDiffOp.multiplication(RadialPoly.r_power(3, -1, -_frac(k)))


def conformal_kepler_op(k) -> LinDiffOp:
    """-(1/8) R^-2 Delta_4 - k R^-2."""
    Rm2 = RadialPoly.r_power(4, -2)
    return laplacian(4).scale(Rm2 * Fraction(-1, 8)) + LinDiffOp.multiplication(Rm2 * (-_frac(k)))


# ----------------------------------------------------------------------------
# Kustaanheimo-Stiefel fibration R^4_0 -> R^3_0, coordinates y = (y0, y1, y2, y3)


def _y(j: int) -> RadialPoly:
    return RadialPoly.coord(4, j)


class PolyMap:
    """Polynomial map R^m -> R^n; radial powers pull back via r o pi = R^w."""

    def __init__(self, components: Sequence[RadialPoly], radial_weight: int):
        self.components = list(components)
        self.source_dim = self.components[0].n
        self.target_dim = len(self.components)
        self.radial_weight = int(radial_weight)
        for c in self.components:
            if c.min_radial_exponent() < 0:
                raise DomainError("map components must be polynomial")
        self._power_cache: Dict[Tuple[int, int], RadialPoly] = {}

    def _power(self, i: int, e: int) -> RadialPoly:
        key = (i, e)
        if key not in self._power_cache:
            self._power_cache[key] = self.components[i] ** e
        return self._power_cache[key]

    def evaluate(self, y) -> np.ndarray:
        return np.array([c.evaluate(y) for c in self.components])

    def pullback(self, f: RadialPoly) -> RadialPoly:
        if f.n != self.target_dim:
            raise DomainError("pullback input has wrong dimension")
        out = RadialPoly(self.source_dim)
        for (alpha, s), c in f.terms.items():
            term = RadialPoly.r_power(self.source_dim, self.radial_weight * s, c)
            for i, e in enumerate(alpha):
                if e:
                    term = term * self._power(i, e)
            out = out + term
        return out


def ks_map() -> PolyMap:
    y0, y1, y2, y3 = (_y(j) for j in range(4))
    return PolyMap(
        [
            2 * (y1 * y3 + y2 * y0),
            2 * (y2 * y3 - y1 * y0),
            y1 * y1 + y2 * y2 - y3 * y3 - y0 * y0,
        ],
        radial_weight=2,
    )


_KS = None


def _ks() -> PolyMap:
    global _KS
    if _KS is None:
        _KS = ks_map()
    return _KS


def ks_point_map(y) -> np.ndarray:
    y0, y1, y2, y3 = np.asarray(y, dtype=float)
    return np.array([
        2 * (y1 * y3 + y2 * y0),
        2 * (y2 * y3 - y1 * y0),
        y1**2 + y2**2 - y3**2 - y0**2,
    ])


def ks_pullback(f: RadialPoly) -> RadialPoly:
    return _ks().pullback(f)


def ks_fiber_generator() -> LinDiffOp:
    """U(1) generator along the KS fibers: y3 d0 - y0 d3 + y1 d2 - y2 d1."""
    y0, y1, y2, y3 = (_y(j) for j in range(4))
    e = lambda j: tuple(1 if i == j else 0 for i in range(4))
    return LinDiffOp(4, {e(0): y3, e(3): -y0, e(2): y1, e(1): -y2})


def x3_annihilation_check(f: RadialPoly, pulled_back: bool = True) -> bool:
    """True iff the fiber generator kills pi^*f (or f itself if already on R^4)."""
    g = ks_pullback(f) if pulled_back else f
    return ks_fiber_generator().apply(g).is_zero()


def radial_monomial_basis(n: int, degree: int, radial_exponents=(0, -1)) -> List[RadialPoly]:
    basis = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            alpha = [0] * n
            for j in combo:
                alpha[j] += 1
            for s in radial_exponents:
                basis.append(RadialPoly.monomial(alpha, s))
    return basis


def projectability_check(D_up: LinDiffOp, D_down: LinDiffOp, pi: Optional[PolyMap] = None,
                         basis_degree: int = 4) -> Fraction:
    """Largest coefficient of D_up(pi^* f) - pi^*(D_down f) over the basis."""
    pi = pi or _ks()
    worst = Fraction(0)
    for f in radial_monomial_basis(pi.target_dim, basis_degree):
        diff = D_up.apply(pi.pullback(f)) - pi.pullback(D_down.apply(f))
        worst = max(worst, diff.max_abs_coeff())
    return worst


# ----------------------------------------------------------------------------
# one-variable functions with half-integer powers, for the radial sector


class HalfPowerPoly:
    """Finite sum of c Q^s with s in (1/2)Z, Q > 0."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict] = None):
        out = {}
        for s, c in (terms or {}).items():
            s = Fraction(s)
            if s.denominator not in (1, 2):
                raise DomainError("exponent must be a half-integer")
            c = _frac(c)
            out[s] = out.get(s, 0) + c
        self.terms = {s: c for s, c in out.items() if c}

    @classmethod
    def power(cls, s, c=1) -> "HalfPowerPoly":
        return cls({Fraction(s): c})

    def __add__(self, other):
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t.get(s, 0) + c
        return HalfPowerPoly(t)

    def __neg__(self):
        return HalfPowerPoly({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HalfPowerPoly):
            t: dict = {}
            for s, c in self.terms.items():
                for u, d in other.terms.items():
                    t[s + u] = t.get(s + u, 0) + c * d
            return HalfPowerPoly(t)
        c = _frac(other)
        return HalfPowerPoly({s: c * v for s, v in self.terms.items()})

    __rmul__ = __mul__

    def derive(self) -> "HalfPowerPoly":
        return HalfPowerPoly({s - 1: c * s for s, c in self.terms.items() if s != 0})

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def __eq__(self, other):
        return isinstance(other, HalfPowerPoly) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{c}*Q^{s}" for s, c in sorted(self.terms.items())) or "0"


def sector_hamiltonian(m: int, f: HalfPowerPoly) -> HalfPowerPoly:
    """H_m f = -(1/2)(f'' + Q^-1 f' - m^2 Q^-2 f), the m-th angular sector in 2D."""
    d1 = f.derive()
    d2 = d1.derive()
    inv = HalfPowerPoly.power(-1)
    inv2 = HalfPowerPoly.power(-2)
    return (d2 + inv * d1 - inv2 * f * (m * m)) * Fraction(-1, 2)


def conjugated_sector_hamiltonian(m: int, f: HalfPowerPoly) -> HalfPowerPoly:
    """H'_m f = -(1/2)(f'' - g^2 Q^-2 f) with g^2 = m^2 - 1/4."""
    g2 = Fraction(m * m) - Fraction(1, 4)
    return (f.derive().derive() - HalfPowerPoly.power(-2) * f * g2) * Fraction(-1, 2)


def radial_sector_check(m: int, test: HalfPowerPoly) -> Fraction:
    """Residual of Q^(1/2) H_m Q^(-1/2) - H'_m applied to ``test``."""
    half = HalfPowerPoly.power(Fraction(1, 2))
    mhalf = HalfPowerPoly.power(Fraction(-1, 2))
    lhs = half * sector_hamiltonian(m, mhalf * test)
    return (lhs - conjugated_sector_hamiltonian(m, test)).max_abs_coeff()


# ----------------------------------------------------------------------------
# spectra


def oscillator_frequency(E: float) -> float:
    """omega(E) = sqrt(-8E) for the conformal Kepler to oscillator map."""
    if E >= 0:
        raise DomainError("oscillator frequency needs E < 0")
    return math.sqrt(-8.0 * E)


def hydrogen_level(k: float, m: int) -> float:
    if m < 0 or int(m) != m:
        raise DomainError("m must be a non-negative integer")
    return -k * k / (2.0 * (m + 1) ** 2)


def _sturm_count(diag: np.ndarray, off2: np.ndarray, lam: float) -> int:
    """Number of eigenvalues below lam of the symmetric tridiagonal matrix."""
    count = 0
    d = diag[0] - lam
    if d < 0:
        count += 1
    tiny = 1e-300
    for i in range(1, len(diag)):
        if d == 0:
            d = tiny
        d = diag[i] - lam - off2[i - 1] / d
        if d < 0:
            count += 1
    return count


def tridiagonal_eigenvalues(diag, off, count: int) -> List[float]:
    """Lowest ``count`` eigenvalues by Sturm-sequence bisection."""
    diag = [float(v) for v in diag]
    off2 = [float(v) ** 2 for v in off]
    off_abs = [abs(float(v)) for v in off] + [0.0]
    lo = min(diag[i] - off_abs[i] - (off_abs[i - 1] if i else 0.0) for i in range(len(diag)))
    hi = max(diag[i] + off_abs[i] + (off_abs[i - 1] if i else 0.0) for i in range(len(diag)))
    out = []
    for j in range(count):
        a, b = lo, hi
        # bisect for the (j+1)-th eigenvalue: smallest lam with count(lam) > j
        for _ in range(200):
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if _sturm_count(diag, off2, mid) > j:
                b = mid
            else:
                a = mid
            if b - a <= 1e-14 * max(1.0, abs(mid)):
                break
        out.append(0.5 * (a + b))
    return out


def hydrogen_radial_matrix(k: float, r_max: float, n: int):
    """Diagonal and off-diagonal of the s-wave finite-difference Hamiltonian."""
    h = r_max / (n + 1)
    r = h * np.arange(1, n + 1)
    diag = 1.0 / h**2 - k / r
    off = np.full(n - 1, -0.5 / h**2)
    return diag, off


def hydrogen_radial_solve(k: float, r_max: float, n: int, count: int) -> List[float]:
    """Lowest eigenvalues of -u''/2 - (k/r) u on (0, r_max), u = 0 at both ends."""
    if count < 1 or n < 4 * count:
        raise DomainError("grid too small for the requested number of levels")
    diag, off = hydrogen_radial_matrix(k, r_max, n)
    return tridiagonal_eigenvalues(diag, off, count)
