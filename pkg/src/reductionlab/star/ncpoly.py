"""Noncommutative polynomials and length-two rewrite systems."""

from __future__ import annotations

import random
from numbers import Number
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import ConfigError, DomainError, RewriteBudgetExceeded
from .series import DeformSeries, as_series

Word = Tuple[str, ...]


class NCPoly:
    """Finite sum of DeformSeries coefficients times words in an alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Sequence[str], terms: Optional[Mapping[Word, object]] = None):
        self.alphabet = tuple(alphabet)
        allowed = set(self.alphabet)
        out: Dict[Word, DeformSeries] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if not set(word) <= allowed:
                raise DomainError(f"word {word} uses letters outside {self.alphabet}")
            c = as_series(c)
            out[word] = out[word] + c if word in out else c
        self.terms = {w: c for w, c in out.items() if not c.is_zero()}

    # -- constructors
    @classmethod
    def word(cls, alphabet, *letters, coeff=1) -> "NCPoly":
        return cls(alphabet, {tuple(letters): coeff})

    @classmethod
    def const(cls, alphabet, c=1) -> "NCPoly":
        return cls(alphabet, {(): c})

    @classmethod
    def zero(cls, alphabet) -> "NCPoly":
        return cls(alphabet)

    # -- arithmetic
    def _lift(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.alphabet != self.alphabet:
                raise DomainError("alphabet mismatch")
            return other
        if isinstance(other, (Number, DeformSeries)):
            return NCPoly.const(self.alphabet, other)
        raise TypeError(f"cannot combine NCPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return NCPoly(self.alphabet, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (Number, DeformSeries)):
            c = as_series(other)
            return NCPoly(self.alphabet, {w: v * c for w, v in self.terms.items()})
        other = self._lift(other)
        terms: Dict[Word, DeformSeries] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                w = a + b
                terms[w] = terms[w] + c * d if w in terms else c * d
        return NCPoly(self.alphabet, terms)

    def __rmul__(self, other):
        if isinstance(other, (Number, DeformSeries)):
            return self * other
        return self._lift(other) * self

    def __pow__(self, k: int):
        out = NCPoly.const(self.alphabet)
        for _ in range(int(k)):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (Number, DeformSeries)):
            other = NCPoly.const(self.alphabet, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def coeff(self, word: Sequence[str]) -> DeformSeries:
        return self.terms.get(tuple(word), DeformSeries())

    def q_coefficient(self, k: int) -> "NCPoly":
        """Coefficient polynomial of h^k (a plain NCPoly with constant coefficients)."""
        return NCPoly(self.alphabet, {w: c.coeff(k) for w, c in self.terms.items()})

    def max_degree_in_param(self) -> int:
        return max((c.effective_degree() for c in self.terms.values()), default=-1)

    def specialize(self, h) -> "NCPoly":
        """Evaluate every coefficient at the numeric parameter value h."""
        return NCPoly(self.alphabet, {w: c(h) for w, c in self.terms.items()})

    def adjoint(self, star: Mapping[str, str]) -> "NCPoly":
        """Antilinear anti-automorphism letter -> star[letter] with a real parameter."""
        return NCPoly(
            self.alphabet,
            {tuple(star[x] for x in reversed(w)): c.conjugate() for w, c in self.terms.items()},
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            parts.append(f"({c})" + ("*" + "·".join(w) if w else ""))
        return " + ".join(parts)


def nc_multiply(p: NCPoly, r: NCPoly) -> NCPoly:
    return p * r


def nc_commutator(p: NCPoly, r: NCPoly) -> NCPoly:
    return p * r - r * p


class RewriteSystem:
    """Rules (x, y) -> NCPoly, terminating for the degree-lex order on ``order``.

    Every rule must strictly decrease that order; this is checked on
    construction. Several rules may share a left-hand side (the first one is
    used by normal_form, any of them by random strategies).
    """

    def __init__(self, order: Sequence[str], rules: Iterable[Tuple[Sequence[str], NCPoly]],
                 budget: int = 2_000_000):
        self.order = tuple(order)
        self.rank = {s: i for i, s in enumerate(self.order)}
        self.rules: List[Tuple[Word, NCPoly]] = []
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            if len(lhs) != 2:
                raise ConfigError("rules must have length-2 left-hand sides")
            if rhs.alphabet != self.order:
                raise ConfigError("rule alphabet differs from the system order")
            for w in rhs.terms:
                if not self._less(w, lhs):
                    raise ConfigError(f"rule {lhs} -> {w} does not decrease the order")
            self.rules.append((lhs, rhs))
        self.lookup: Dict[Word, List[NCPoly]] = {}
        for lhs, rhs in self.rules:
            self.lookup.setdefault(lhs, []).append(rhs)
        self.budget = budget
        self._memo: Dict[Word, Dict[Word, DeformSeries]] = {}

    @property
    def alphabet(self):
        return self.order

    def _key(self, w: Word):
        return (len(w), [self.rank[x] for x in w])

    def _less(self, a: Word, b: Word) -> bool:
        return self._key(a) < self._key(b)

    def matches(self, w: Word) -> List[int]:
        return [i for i in range(len(w) - 1) if w[i:i + 2] in self.lookup]

    def is_normal(self, w: Word) -> bool:
        return not self.matches(w)

    def _nf_word(self, w: Word, counter: List[int]) -> Dict[Word, DeformSeries]:
        cached = self._memo.get(w)
        if cached is not None:
            return cached
        pos = next((i for i in range(len(w) - 1) if w[i:i + 2] in self.lookup), None)
        if pos is None:
            result = {w: DeformSeries([1])}
        else:
            counter[0] += 1
            if counter[0] > self.budget:
                raise RewriteBudgetExceeded(f"more than {self.budget} rewrite steps")
            rhs = self.lookup[w[pos:pos + 2]][0]
            result: Dict[Word, DeformSeries] = {}
            for rw, rc in rhs.terms.items():
                sub = self._nf_word(w[:pos] + rw + w[pos + 2:], counter)
                for nw, nc in sub.items():
                    v = rc * nc
                    result[nw] = result[nw] + v if nw in result else v
            result = {k: v for k, v in result.items() if not v.is_zero()}
        self._memo[w] = result
        return result

    def normal_form(self, p: NCPoly) -> NCPoly:
        if p.alphabet != self.order:
            raise DomainError("alphabet mismatch")
        counter = [0]
        terms: Dict[Word, DeformSeries] = {}
        for w, c in p.terms.items():
            for nw, nc in self._nf_word(w, counter).items():
                v = c * nc
                terms[nw] = terms[nw] + v if nw in terms else v
        return NCPoly(self.order, terms)

    def random_reduce(self, p: NCPoly, rng: random.Random) -> NCPoly:
        """Reduce by rewriting a randomly chosen redex with a random rule."""
        current = dict(p.terms)
        steps = 0
        while True:
            reducible = [w for w in current if self.matches(w)]
            if not reducible:
                return NCPoly(self.order, current)
            steps += 1
            if steps > self.budget:
                raise RewriteBudgetExceeded(f"more than {self.budget} rewrite steps")
            w = rng.choice(sorted(reducible, key=self._key))
            i = rng.choice(self.matches(w))
            rhs = rng.choice(self.lookup[w[i:i + 2]])
            c = current.pop(w)
            for rw, rc in rhs.terms.items():
                nw = w[:i] + rw + w[i + 2:]
                v = c * rc
                current[nw] = current[nw] + v if nw in current else v
            current = {k: v for k, v in current.items() if not v.is_zero()}


def normal_form(p: NCPoly, R: RewriteSystem) -> NCPoly:
    return R.normal_form(p)


def random_word(alphabet: Sequence[str], rng: random.Random, max_len: int) -> Word:
    n = rng.randint(1, max_len)
    return tuple(rng.choice(alphabet) for _ in range(n))


def random_ncpoly(alphabet: Sequence[str], rng: random.Random, max_len: int = 4,
                  n_terms: int = 3) -> NCPoly:
    terms = {}
    for _ in range(n_terms):
        terms[random_word(alphabet, rng, max_len)] = rng.randint(-3, 3) or 1
    return NCPoly(alphabet, terms)


def confluence_probe(R: RewriteSystem, trials: int = 200, max_len: int = 6, seed: int = 0) -> bool:
    """Reduce random words by two independent random strategies and compare."""
    rng = random.Random(seed)
    for _ in range(trials):
        w = random_word(R.order, rng, max_len)
        p = NCPoly(R.order, {w: 1})
        a = R.random_reduce(p, rng)
        b = R.random_reduce(p, rng)
        if a != b:
            return False
    return True


class Derivation:
    """Linear map extended from letter images by the Leibniz rule."""

    def __init__(self, alphabet: Sequence[str], images: Mapping[str, NCPoly]):
        self.alphabet = tuple(alphabet)
        self.images = {s: images.get(s, NCPoly.zero(self.alphabet)) for s in self.alphabet}

    def __call__(self, p: NCPoly) -> NCPoly:
        out = NCPoly.zero(self.alphabet)
        for w, c in p.terms.items():
            for i, x in enumerate(w):
                left = NCPoly(self.alphabet, {w[:i]: c})
                right = NCPoly(self.alphabet, {w[i + 1:]: 1})
                out = out + left * self.images[x] * right
        return out
