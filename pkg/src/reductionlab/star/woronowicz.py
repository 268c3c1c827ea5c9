"""Quantum SU(2): rewrite system, quantum sphere relations, classical limits.

Generators alpha, alpha*, nu, nu* with mu = 1 - q. Relations:

    nu alpha - alpha nu = q nu alpha        nu* alpha - alpha nu* = q nu* alpha
    alpha alpha* - alpha* alpha = (2q - q^2) nu* nu
    nu* nu = nu nu*                          alpha* alpha + nu* nu = 1

together with the *-images of the first two (alpha* nu - nu alpha* = q alpha* nu
and alpha* nu* - nu* alpha* = q alpha* nu*). Rules are oriented along the
symbol order alpha* < nu < nu* < alpha, which makes every coefficient a
polynomial in q. Normal words are alpha*^d (nu^a or nu*^b) alpha^c.
"""

from __future__ import annotations

import math
from typing import Dict, Sequence, Tuple

import numpy as np

from ..errors import DomainError
from .commpoly import CommPoly
from .ncpoly import NCPoly, RewriteSystem, nc_commutator
from .series import DeformSeries

AL, ALS, NU, NUS = "alpha", "alpha*", "nu", "nu*"
WOR_ORDER = (ALS, NU, NUS, AL)
STAR = {AL: ALS, ALS: AL, NU: NUS, NUS: NU}

Q = DeformSeries.param()
MU = 1 - Q
# q^2 - 2q, the rate appearing in the quantum equations of motion
RATE = Q * Q - 2 * Q

S3_VARS = ("q1", "q2", "p1", "p2")

# Classical bracket = CLASSICAL_SCALE * (coefficient of q in the commutator),
# mapped to commuting variables. Fixed once by the generator brackets.
CLASSICAL_SCALE = 1j


def W(*letters, coeff=1) -> NCPoly:
    return NCPoly.word(WOR_ORDER, *letters, coeff=coeff)


ONE = NCPoly.const(WOR_ORDER)


def woronowicz_system() -> RewriteSystem:
    rules = [
        ((AL, NU), W(NU, AL) * MU),
        ((AL, NUS), W(NUS, AL) * MU),
        ((NU, ALS), W(ALS, NU) * MU),
        ((NUS, ALS), W(ALS, NUS) * MU),
        ((NU, NUS), ONE - W(ALS, AL)),
        ((NUS, NU), ONE - W(ALS, AL)),
        ((AL, ALS), ONE * (1 - MU * MU) + W(ALS, AL) * (MU * MU)),
    ]
    return RewriteSystem(WOR_ORDER, rules)


def defining_relations() -> Dict[str, NCPoly]:
    """Each relation written as an element that must vanish in the quotient."""
    return {
        "alpha alpha* - alpha* alpha - (2q-q^2) nu* nu": W(AL, ALS) - W(ALS, AL) - W(NUS, NU) * (2 * Q - Q * Q),
        "nu* nu - nu nu*": W(NUS, NU) - W(NU, NUS),
        "nu alpha - alpha nu - q nu alpha": W(NU, AL) - W(AL, NU) - W(NU, AL) * Q,
        "nu* alpha - alpha nu* - q nu* alpha": W(NUS, AL) - W(AL, NUS) - W(NUS, AL) * Q,
        "alpha* alpha + nu* nu - 1": W(ALS, AL) + W(NUS, NU) - ONE,
        "alpha* nu - nu alpha* - q alpha* nu": W(ALS, NU) - W(NU, ALS) - W(ALS, NU) * Q,
        "alpha* nu* - nu* alpha* - q alpha* nu*": W(ALS, NUS) - W(NUS, ALS) - W(ALS, NUS) * Q,
    }


def su2q_elements() -> Tuple[NCPoly, NCPoly, NCPoly]:
    """u = 1 - 2 nu* nu, w = 2 nu* alpha, w* = 2 alpha* nu."""
    return ONE - W(NUS, NU) * 2, W(NUS, AL) * 2, W(ALS, NU) * 2


def hamiltonian() -> NCPoly:
    u, _, _ = su2q_elements()
    return u * 0.5


def _comm(a, b):
    return nc_commutator(a, b)


def printed_relations() -> Dict[str, NCPoly]:
    """Relations among u, w, w* and the equations of motion, in their printed form."""
    u, w, ws = su2q_elements()
    H = hamiltonian()
    one_u = ONE - u
    return {
        "u two forms": u - (W(ALS, AL) - W(NUS, NU)),
        "u u* + w* w = 1": u * u + ws * w - ONE,
        "[w,u] = (q^2-2q)(1-u)w": _comm(w, u) - one_u * w * RATE,
        "[w*,u] = -(q^2-2q)(1-u)w*": _comm(ws, u) + one_u * ws * RATE,
        "[w,w*] = -(2q^2-2q)(1-u) + (4q-6q^2+4q^3-q^4)(1-u)^2":
            _comm(w, ws) - one_u * (-(2 * Q * Q - 2 * Q)) - one_u * one_u * (4 * Q - 6 * Q**2 + 4 * Q**3 - Q**4),
        "[H,nu] = 0": _comm(H, W(NU)),
        "[H,nu*] = 0": _comm(H, W(NUS)),
        "[H,alpha] = (q^2-2q) nu* nu alpha": _comm(H, W(AL)) - W(NUS, NU, AL) * RATE,
        "[H,alpha*] = -(q^2-2q) nu* nu alpha*": _comm(H, W(ALS)) + W(NUS, NU, ALS) * RATE,
        "[H,w] = -(1/2)(q^2-2q)(1-u)w": _comm(H, w) + one_u * w * (RATE * 0.5),
        "[H,w*] = -(1/2)(q^2-2q)(1-u)w*": _comm(H, ws) + one_u * ws * (RATE * 0.5),
    }


def derived_relations() -> Dict[str, NCPoly]:
    """The same relations in the form that holds in the quotient."""
    u, w, ws = su2q_elements()
    H = hamiltonian()
    one_u = ONE - u
    return {
        "u two forms": u - (W(ALS, AL) - W(NUS, NU)),
        "u^2 + (1-q)^2 w* w = 1": u * u + ws * w * (MU * MU) - ONE,
        "[w,u] = -(q^2-2q)(1-u)w": _comm(w, u) + one_u * w * RATE,
        "[w*,u] = (q^2-2q)w*(1-u)": _comm(ws, u) - ws * one_u * RATE,
        "[w,w*] = 2(1-(1-q)^2)(1-u) + ((1-q)^4-1)w* w":
            _comm(w, ws) - one_u * (2 * (1 - MU * MU)) - ws * w * (MU**4 - 1),
        "[H,nu] = 0": _comm(H, W(NU)),
        "[H,nu*] = 0": _comm(H, W(NUS)),
        "[H,alpha] = (q^2-2q) nu* nu alpha": _comm(H, W(AL)) - W(NUS, NU, AL) * RATE,
        "[H,alpha*] = -(q^2-2q) alpha* nu* nu": _comm(H, W(ALS)) + W(ALS, NUS, NU) * RATE,
        "[H,w] = (1/2)(q^2-2q)(1-u)w": _comm(H, w) - one_u * w * (RATE * 0.5),
        "[H,w*] = -(1/2)(q^2-2q)w*(1-u)": _comm(H, ws) + ws * one_u * (RATE * 0.5),
    }


def su2q_relation_checks(which: str = "printed", R: RewriteSystem = None) -> Dict[str, NCPoly]:
    """Normal forms of LHS - RHS; an empty NCPoly means the relation holds exactly in q."""
    R = R or woronowicz_system()
    rels = printed_relations() if which == "printed" else derived_relations()
    return {name: R.normal_form(p) for name, p in rels.items()}


# ----------------------------------------------------------------------------
# classical limit


def _s3():
    return CommPoly.gens(S3_VARS)


def generator_images() -> Dict[str, CommPoly]:
    """alpha -> q2 + i p2 and nu -> q1 + i p1 (and conjugates)."""
    q1, q2, p1, p2 = _s3()
    return {AL: q2 + p2 * 1j, ALS: q2 - p2 * 1j, NU: q1 + p1 * 1j, NUS: q1 - p1 * 1j}


def real_coordinates() -> Dict[str, NCPoly]:
    """q1, p1, q2, p2 as elements of the algebra."""
    return {
        "q1": (W(NU) + W(NUS)) * 0.5,
        "p1": (W(NU) - W(NUS)) * (-0.5j),
        "q2": (W(AL) + W(ALS)) * 0.5,
        "p2": (W(AL) - W(ALS)) * (-0.5j),
    }


def word_to_commpoly(p: NCPoly, images=None) -> CommPoly:
    images = images or generator_images()
    out = CommPoly(S3_VARS)
    for word, c in p.terms.items():
        term = CommPoly.const(S3_VARS, c)
        for x in word:
            term = term * images[x]
        out = out + term
    return out


def classical_limit(c: NCPoly, R: RewriteSystem = None, images=None) -> CommPoly:
    """Poisson bracket from the first-order part of a commutator.

    The normal form must have no q^0 part. The q^1 coefficient is mapped to
    commuting variables and multiplied by CLASSICAL_SCALE, so real
    coordinates get real brackets.
    """
    R = R or woronowicz_system()
    nf = R.normal_form(c)
    zeroth = nf.q_coefficient(0)
    if not zeroth.is_zero():
        raise DomainError("not a commutator: nonzero q^0 part")
    return word_to_commpoly(nf.q_coefficient(1), images) * CLASSICAL_SCALE


def casimir_s3() -> CommPoly:
    q1, q2, p1, p2 = _s3()
    return q1 * q1 + q2 * q2 + p1 * p1 + p2 * p2


def reduce_on_sphere(f: CommPoly) -> CommPoly:
    """Canonical representative modulo q1^2 + q2^2 + p1^2 + p2^2 - 1."""
    q1, q2, p1, p2 = _s3()
    return f.reduce_power("p2", 1 - q1 * q1 - q2 * q2 - p1 * p1)


def equal_on_sphere(f: CommPoly, g: CommPoly) -> bool:
    return reduce_on_sphere(f - g).is_zero()


def derived_s3_table(on_sphere: bool = True) -> Dict[Tuple[str, str], CommPoly]:
    """Brackets of the real coordinates obtained from classical_limit.

    The raw limits are only defined modulo the sphere relation; with
    ``on_sphere`` each entry is replaced by its homogeneous quadratic
    representative, for which the Casimir is exact.
    """
    R = woronowicz_system()
    coords = real_coordinates()
    table = {}
    for i, a in enumerate(S3_VARS):
        for b in S3_VARS[i + 1:]:
            entry = classical_limit(nc_commutator(coords[a], coords[b]), R).real()
            table[(a, b)] = reduce_on_sphere(entry) if on_sphere else entry
    return table


def printed_s3_table() -> Dict[Tuple[str, str], CommPoly]:
    """The quadratic table as printed, with the repeated {p1,q1} entry read as {p1,q2}."""
    q1, q2, p1, p2 = _s3()
    return {
        ("p1", "q1"): CommPoly(S3_VARS),
        ("p1", "p2"): q1 * q2,
        ("p1", "q2"): -(p1 * p2),
        ("q1", "p2"): q1 * q2,
        ("q1", "q2"): -(q1 * p2),
        ("p2", "q2"): q1 * q1 + p1 * p1,
    }


def table_bracket(table, a: str, b: str) -> CommPoly:
    if a == b:
        return CommPoly(S3_VARS)
    if (a, b) in table:
        return table[(a, b)]
    return -table[(b, a)]


_TABLE_CACHE = {}


def s3_poisson(f: CommPoly, g: CommPoly, table=None) -> CommPoly:
    """Leibniz extension of a bracket table on the coordinates (default: derived table)."""
    if table is None:
        if "derived" not in _TABLE_CACHE:
            _TABLE_CACHE["derived"] = derived_s3_table()
        table = _TABLE_CACHE["derived"]
    out = CommPoly(S3_VARS)
    df = {a: f.derive(a) for a in S3_VARS}
    dg = {b: g.derive(b) for b in S3_VARS}
    for a in S3_VARS:
        if df[a].is_zero():
            continue
        for b in S3_VARS:
            if a == b or dg[b].is_zero():
                continue
            out = out + df[a] * dg[b] * table_bracket(table, a, b)
    return out


def s2_functions() -> Tuple[CommPoly, CommPoly, CommPoly]:
    """u = q2^2 + p2^2 - q1^2 - p1^2, v = 2(p1 p2 + q1 q2), z = 2(p1 q2 - q1 p2)."""
    q1, q2, p1, p2 = _s3()
    u = q2 * q2 + p2 * p2 - q1 * q1 - p1 * p1
    v = (p1 * p2 + q1 * q2) * 2
    z = (p1 * q2 - q1 * p2) * 2
    return u, v, z


# ----------------------------------------------------------------------------
# flows


def ad_power(H: NCPoly, A: NCPoly, k: int, R: RewriteSystem) -> NCPoly:
    out = A
    for _ in range(k):
        out = R.normal_form(nc_commutator(H, out))
    return out


def flow_consistency_check(order: int = 4, R: RewriteSystem = None) -> Dict[str, NCPoly]:
    """Compare ad_H^k(X) with the k-th Taylor term of closed-form flows.

    For each closed form X(t) = sum_k (it)^k/k! T_k the returned value is the
    sum over k <= order of normal_form(ad_H^k(X) - T_k); it vanishes exactly
    when the closed form agrees with exp(it ad_H) to that order. Phases
    multiply from the side indicated in the key.
    """
    R = R or woronowicz_system()
    H = hamiltonian()
    N = W(NUS, NU)
    u, w, ws = su2q_elements()
    one_u = ONE - u
    zero = NCPoly.zero(WOR_ORDER)
    closed = {
        "nu: constant": (W(NU), lambda k: W(NU) if k == 0 else zero),
        "nu*: constant": (W(NUS), lambda k: W(NUS) if k == 0 else zero),
        "alpha: exp(it(q^2-2q)N) alpha": (W(AL), lambda k: (N * RATE) ** k * W(AL)),
        "alpha*: exp(-it(q^2-2q)N) alpha*": (W(ALS), lambda k: (N * (-RATE)) ** k * W(ALS)),
        "alpha*: alpha* exp(-it(q^2-2q)N)": (W(ALS), lambda k: W(ALS) * (N * (-RATE)) ** k),
        "w: exp(-it(q^2-2q)(1-u)/2) w": (w, lambda k: (one_u * (RATE * -0.5)) ** k * w),
        "w: exp(it(q^2-2q)(1-u)/2) w": (w, lambda k: (one_u * (RATE * 0.5)) ** k * w),
        "w*: exp(it(q^2-2q)(1-u)/2) w*": (ws, lambda k: (one_u * (RATE * 0.5)) ** k * ws),
        "w*: w* exp(-it(q^2-2q)(1-u)/2)": (ws, lambda k: ws * (one_u * (RATE * -0.5)) ** k),
    }
    out = {}
    for name, (X, term) in closed.items():
        total = zero
        for k in range(order + 1):
            total = total + R.normal_form(ad_power(H, X, k, R) - term(k))
        out[name] = total
    return out


# closed forms as printed versus the ones that hold in the quotient
PRINTED_FLOWS = (
    "nu: constant",
    "nu*: constant",
    "alpha: exp(it(q^2-2q)N) alpha",
    "alpha*: exp(-it(q^2-2q)N) alpha*",
    "w: exp(-it(q^2-2q)(1-u)/2) w",
    "w*: exp(it(q^2-2q)(1-u)/2) w*",
)
DERIVED_FLOWS = (
    "nu: constant",
    "nu*: constant",
    "alpha: exp(it(q^2-2q)N) alpha",
    "alpha*: alpha* exp(-it(q^2-2q)N)",
    "w: exp(it(q^2-2q)(1-u)/2) w",
    "w*: w* exp(-it(q^2-2q)(1-u)/2)",
)


class WoronowiczFlow:
    """exp(it ad_H) on generators for numeric q, with symbolic central phases.

    alpha maps to phase(t * rate * N) alpha and alpha* to alpha* phase(-t * rate * N),
    with N = nu* nu; ``taylor`` expands the phase to a given order as an NCPoly.
    """

    def __init__(self, t: float, q: float):
        self.t = float(t)
        self.q = float(q)
        self.rate = self.q**2 - 2 * self.q

    def taylor(self, generator: str, order: int = 6) -> NCPoly:
        N = W(NUS, NU)
        sign = {AL: 1.0, ALS: -1.0, NU: 0.0, NUS: 0.0}[generator]
        out = NCPoly.zero(WOR_ORDER)
        for k in range(order + 1):
            c = (1j * self.t * self.rate * sign) ** k / math.factorial(k)
            if c == 0:
                continue
            term = W(generator) * (N ** k) if generator == ALS else (N ** k) * W(generator)
            out = out + term * c
        return out


def s3_classical_flow(state, t: float) -> np.ndarray:
    """Closed-form flow of 2(q1^2+p1^2)(q2 d/dp2 - p2 d/dq2); state = (q1, q2, p1, p2)."""
    q1, q2, p1, p2 = np.asarray(state, dtype=float)
    om = 2.0 * (q1 * q1 + p1 * p1) * t
    c, s = math.cos(om), math.sin(om)
    return np.array([q1, -s * p2 + c * q2, p1, c * p2 + s * q2])


def s2_map(state) -> np.ndarray:
    q1, q2, p1, p2 = np.asarray(state, dtype=float)
    return np.array([q2**2 + p2**2 - q1**2 - p1**2, 2 * (p1 * p2 + q1 * q2), 2 * (p1 * q2 - q1 * p2)])


def s2_reduced_flow(uvz, t: float) -> np.ndarray:
    """Flow of (1-u)(z d/dv - v d/dz): u fixed, (v, z) rotate at rate 1-u."""
    u, v, z = np.asarray(uvz, dtype=float)
    a = (1.0 - u) * t
    c, s = math.cos(a), math.sin(a)
    return np.array([u, c * v + s * z, -s * v + c * z])


def stereographic_project(u: float, v: float, z: float) -> np.ndarray:
    if abs(1.0 - u) < 1e-14:
        raise DomainError("north pole has no stereographic image")
    return np.array([v, z]) / (1.0 - u)


def reduced_field_s2(uvz) -> np.ndarray:
    u, v, z = np.asarray(uvz, dtype=float)
    return np.array([0.0, (1.0 - u) * z, -(1.0 - u) * v])


def stereographic_pushforward(uvz) -> np.ndarray:
    """Chain rule image of the reduced S^2 field under stereographic projection."""
    u, v, z = np.asarray(uvz, dtype=float)
    du, dv, dz = reduced_field_s2(uvz)
    d = 1.0 - u
    return np.array([dv / d + v * du / d**2, dz / d + z * du / d**2])


def gamma_printed(x: float, y: float) -> np.ndarray:
    """2/(x^2+y^2+1) (x d/dy - y d/dx) as printed."""
    f = 2.0 / (x * x + y * y + 1.0)
    return np.array([-f * y, f * x])


def gamma_derived(x: float, y: float) -> np.ndarray:
    """2/(x^2+y^2+1) (y d/dx - x d/dy), the actual image of the reduced field."""
    return -gamma_printed(x, y)
