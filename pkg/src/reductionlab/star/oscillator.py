"""Deformed oscillator algebras as quotients by the ideal of a+ a - q a a+ + r."""

from __future__ import annotations

from .ncpoly import Derivation, NCPoly, RewriteSystem

A, AD = "a", "a+"
OSC_ALPHABET = (A, AD)


def osc(*letters, coeff=1) -> NCPoly:
    return NCPoly.word(OSC_ALPHABET, *letters, coeff=coeff)


def oscillator_relation(q, r) -> NCPoly:
    """The ideal generator a+ a - q a a+ + r."""
    return osc(AD, A) - osc(A, AD) * q + NCPoly.const(OSC_ALPHABET, r)


def oscillator_system(q, r) -> RewriteSystem:
    """Rule a+ a -> q a a+ - r; normal words put every a before every a+."""
    rhs = osc(A, AD) * q - NCPoly.const(OSC_ALPHABET, r)
    return RewriteSystem(OSC_ALPHABET, [((AD, A), rhs)])


def oscillator_derivation(omega: float) -> Derivation:
    """d a = -i omega a, d a+ = i omega a+, extended by Leibniz."""
    return Derivation(OSC_ALPHABET, {A: osc(A) * (-1j * omega), AD: osc(AD) * (1j * omega)})
