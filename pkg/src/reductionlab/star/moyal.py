"""Moyal product on R^4 and the induced star product on su(2)*.

Coordinates (q1, q2, p1, p2) with {q_i, p_j} = delta_ij. The deformation
parameter theta is the DeformSeries parameter, so every product is an exact
polynomial in theta.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .commpoly import CommPoly
from .series import DeformSeries

MOYAL_VARS = ("q1", "q2", "p1", "p2")
SU2_VARS = ("x", "y", "w")
_PAIRS = (("q1", "p1"), ("q2", "p2"))

THETA = DeformSeries.param()

# candidate scale factors between the Moyal theta and the reduced-formula theta
CALIBRATION_CANDIDATES = (1.0, -1.0, 0.5, -0.5, 2.0, -2.0)


def _derive_by(f: CommPoly, counts: Dict[str, int]) -> CommPoly:
    for name, k in counts.items():
        for _ in range(k):
            f = f.derive(name)
            if f.is_zero():
                return f
    return f


def poisson_power(f: CommPoly, g: CommPoly, n: int) -> CommPoly:
    """Pi^n(f, g) for Pi = sum_i (d_qi x d_pi - d_pi x d_qi)."""
    out = CommPoly(f.variables)
    for a1, b1, a2 in itertools.product(range(n + 1), repeat=3):
        b2 = n - a1 - b1 - a2
        if b2 < 0:
            continue
        coeff = math.factorial(n) / (
            math.factorial(a1) * math.factorial(b1) * math.factorial(a2) * math.factorial(b2))
        sign = -1 if (b1 + b2) % 2 else 1
        df = _derive_by(f, {"q1": a1, "p1": b1, "q2": a2, "p2": b2})
        if df.is_zero():
            continue
        dg = _derive_by(g, {"p1": a1, "q1": b1, "p2": a2, "q2": b2})
        if dg.is_zero():
            continue
        out = out + df * dg * (sign * coeff)
    return out


def canonical_bracket(f: CommPoly, g: CommPoly) -> CommPoly:
    return poisson_power(f, g, 1)


def moyal_product(f: CommPoly, g: CommPoly) -> CommPoly:
    """f * g = sum_n (i theta / 2)^n / n! Pi^n(f, g); terminates on polynomials."""
    out = CommPoly(f.variables)
    n_max = min(f.degree(), g.degree())
    for n in range(n_max + 1):
        term = poisson_power(f, g, n)
        if term.is_zero():
            continue
        out = out + term * ((THETA * 0.5j) ** n * (1.0 / math.factorial(n)))
    return out


def moyal_commutator(f: CommPoly, g: CommPoly) -> CommPoly:
    return moyal_product(f, g) - moyal_product(g, f)


# ----------------------------------------------------------------------------
# reduction to su(2)*


def su2_images() -> Dict[str, CommPoly]:
    q1, q2, p1, p2 = CommPoly.gens(MOYAL_VARS)
    return {
        "x": (q1 * q2 + p1 * p2) * 0.5,
        "y": (q1 * p2 - q2 * p1) * 0.5,
        "w": (q1 * q1 + p1 * p1 - q2 * q2 - p2 * p2) * 0.25,
    }


def su2_pullback(F: CommPoly) -> CommPoly:
    return F.substitute(su2_images())


def f_H() -> CommPoly:
    q1, q2, p1, p2 = CommPoly.gens(MOYAL_VARS)
    return q1 * q1 + q2 * q2 + p1 * p1 + p2 * p2


def commutant_closure_check() -> Dict[Tuple[str, str], CommPoly]:
    """{f_H, pi*x_i * pi*x_j} for every unordered generator pair (zero when closed)."""
    images = su2_images()
    h = f_H()
    out = {}
    for a, b in itertools.combinations_with_replacement(SU2_VARS, 2):
        out[(a, b)] = canonical_bracket(h, moyal_product(images[a], images[b]))
    return out


def _levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def reduced_star_formula(j: int, F: CommPoly) -> CommPoly:
    """x_j * F = x_j F - (i theta/2) eps_jlm x_l d_m F
    - (theta^2/8) [(1 + x_k d_k) d_j F - (1/2) x_j Laplacian F],  j in 1..3.
    """
    if j not in (1, 2, 3):
        raise ValueError("j must be 1, 2 or 3")
    xs = CommPoly.gens(SU2_VARS)
    jj = j - 1
    first = CommPoly(SU2_VARS)
    for l in range(3):
        for m in range(3):
            e = _levi_civita(jj, l, m)
            if e:
                first = first + xs[l] * F.derive(m) * e
    dj = F.derive(jj)
    euler_dj = dj + sum((xs[k] * dj.derive(k) for k in range(3)), CommPoly(SU2_VARS))
    lap = sum((F.derive(k).derive(k) for k in range(3)), CommPoly(SU2_VARS))
    second = euler_dj - xs[jj] * lap * 0.5
    return xs[jj] * F + first * (THETA * -0.5j) + second * (THETA * THETA * (-1.0 / 8.0))


def rescale_parameter(p: CommPoly, c: float) -> CommPoly:
    """Substitute theta -> c theta in every coefficient."""
    return CommPoly(p.variables, {
        e: DeformSeries([a * c ** k for k, a in enumerate(s.coeffs)]) for e, s in p.terms.items()
    })


def reduced_star_verify(j: int, F: CommPoly, calibration: float = 1.0) -> CommPoly:
    """pi*(x_j * F) with theta -> calibration * theta, minus pi*x_j (Moyal) pi*F."""
    lhs = su2_pullback(rescale_parameter(reduced_star_formula(j, F), calibration))
    images = su2_images()
    rhs = moyal_product(images[SU2_VARS[j - 1]], su2_pullback(F))
    return lhs - rhs


def default_su2_basis() -> Tuple[CommPoly, ...]:
    x, y, w = CommPoly.gens(SU2_VARS)
    return (CommPoly.const(SU2_VARS), x, y, w, x * y, x * x, w * w, x * y * w, y ** 3)


def calibrate_reduced_star(basis: Optional[Iterable[CommPoly]] = None,
                           candidates: Sequence[float] = CALIBRATION_CANDIDATES) -> float:
    """The unique candidate scale for which every theta^1 residual vanishes."""
    basis = tuple(basis) if basis is not None else default_su2_basis()
    good = []
    for c in candidates:
        if all(reduced_star_verify(j, F, c).param_coefficient(1).is_zero()
               for j in (1, 2, 3) for F in basis):
            good.append(c)
    if len(good) != 1:
        raise ValueError(f"calibration not unique: {good}")
    return good[0]
