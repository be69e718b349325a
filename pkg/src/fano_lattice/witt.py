"""Truncated Witt vectors over small finite fields.

Ring operations are computed from the universal Witt polynomials: the ghost
components w_n(X) = sum p^i X_i^(p^(n-i)) determine integral polynomials
S_n, P_n, N_n for sum, product and negation, which are derived once per
(p, length) with exact integer arithmetic, reduced mod p, and then evaluated
in the coefficient field.  Frobenius raises components to the p-th power,
Verschiebung shifts them right, and FV = VF = multiplication by p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .semilinear import Element, FiniteField

#: Universal polynomials grow quickly with the length; the structural
#: relations only ever need short rings.
MAX_LENGTH = 6

Term = tuple[int, tuple[tuple[int, int], ...]]  # (coefficient, ((var, exp), ...))


def _as_terms(expr, variables, p: int) -> tuple[Term, ...]:
    import sympy

    poly = sympy.Poly(expr, *variables, domain="QQ")
    terms = []
    for monom, coeff in poly.terms():
        q = sympy.Rational(coeff)
        if q.q != 1:
            raise AssertionError("universal Witt polynomial is not integral")
        c = int(q) % p
        if c == 0:
            continue
        exps = tuple((i, e) for i, e in enumerate(monom) if e)
        terms.append((c, exps))
    return tuple(terms)


@lru_cache(maxsize=None)
def _universal_polynomials(p: int, length: int):
    """Sum, product and negation polynomials for W_length in char p.

    Variables are ordered x0..x_(m-1), y0..y_(m-1); each polynomial is a
    tuple of (coefficient mod p, sparse exponent vector) terms.
    """
    import sympy

    m = length
    xs = sympy.symbols(f"x0:{m}")
    ys = sympy.symbols(f"y0:{m}")
    variables = tuple(xs) + tuple(ys)

    def ghost(vs, n):
        return sum(p**i * vs[i] ** (p ** (n - i)) for i in range(n + 1))

    sums, prods, negs = [], [], []
    for n in range(m):
        s = ghost(xs, n) + ghost(ys, n) - sum(
            p**i * sums[i] ** (p ** (n - i)) for i in range(n)
        )
        sums.append(sympy.expand(sympy.expand(s) / p**n))
        pr = ghost(xs, n) * ghost(ys, n) - sum(
            p**i * prods[i] ** (p ** (n - i)) for i in range(n)
        )
        prods.append(sympy.expand(sympy.expand(pr) / p**n))
        ng = -ghost(xs, n) - sum(p**i * negs[i] ** (p ** (n - i)) for i in range(n))
        negs.append(sympy.expand(sympy.expand(ng) / p**n))

    return (
        tuple(_as_terms(s, variables, p) for s in sums),
        tuple(_as_terms(s, variables, p) for s in prods),
        tuple(_as_terms(s, variables, p) for s in negs),
    )


WittVector = tuple[Element, ...]


@dataclass(frozen=True)
class WittRing:
    """The ring W_m(k) of length-m Witt vectors over a finite field k."""

    field: FiniteField
    length: int

    def __post_init__(self):
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(f"Witt length must be between 1 and {MAX_LENGTH}")

    @property
    def order(self) -> int:
        return self.field.order**self.length

    def vector(self, components: Sequence) -> WittVector:
        comps = tuple(self.field.element(c) for c in components)
        if len(comps) != self.length:
            raise ValueError(
                f"expected {self.length} components, got {len(comps)}"
            )
        return comps

    @property
    def zero(self) -> WittVector:
        return (self.field.zero,) * self.length

    @property
    def one(self) -> WittVector:
        return (self.field.one,) + (self.field.zero,) * (self.length - 1)

    def elements(self) -> Iterable[WittVector]:
        return product(self.field.elements(), repeat=self.length)

    # -- universal-polynomial evaluation ----------------------------------

    def _embed_int(self, c: int) -> Element:
        out = self.field.zero
        for _ in range(c % self.field.p):
            out = self.field.add(out, self.field.one)
        return out

    def _eval(self, terms: tuple[Term, ...], values: Sequence[Element]) -> Element:
        k = self.field
        acc = k.zero
        for c, exps in terms:
            term = self._embed_int(c)
            for var, e in exps:
                term = k.mul(term, k.pow(values[var], e))
            acc = k.add(acc, term)
        return acc

    def _binary(self, kind: int, a: WittVector, b: WittVector) -> WittVector:
        polys = _universal_polynomials(self.field.p, self.length)[kind]
        values = tuple(a) + tuple(b)
        return tuple(self._eval(polys[n], values) for n in range(self.length))

    def add(self, a: WittVector, b: WittVector) -> WittVector:
        return self._binary(0, self.vector(a), self.vector(b))

    def mul(self, a: WittVector, b: WittVector) -> WittVector:
        return self._binary(1, self.vector(a), self.vector(b))

    def neg(self, a: WittVector) -> WittVector:
        polys = _universal_polynomials(self.field.p, self.length)[2]
        values = tuple(self.vector(a)) + (self.field.zero,) * self.length
        return tuple(self._eval(polys[n], values) for n in range(self.length))

    def sub(self, a: WittVector, b: WittVector) -> WittVector:
        return self.add(a, self.neg(b))

    def scalar(self, n: int) -> WittVector:
        """Image of the integer n under Z -> W_m(k)."""
        out = self.zero
        step = self.one if n >= 0 else self.neg(self.one)
        for _ in range(abs(n)):
            out = self.add(out, step)
        return out

    # -- Frobenius, Verschiebung, truncation ------------------------------

    def frobenius(self, a: WittVector) -> WittVector:
        return tuple(self.field.frobenius(c) for c in self.vector(a))

    def verschiebung(self, a: WittVector) -> WittVector:
        a = self.vector(a)
        return (self.field.zero,) + a[: self.length - 1]

    def truncated(self, length: int) -> "WittRing":
        if not 1 <= length <= self.length:
            raise ValueError("truncation length out of range")
        return WittRing(self.field, length)

    def project(self, a: WittVector, length: int) -> WittVector:
        """Canonical ring projection onto the first ``length`` components."""
        self.truncated(length)
        return self.vector(a)[:length]
