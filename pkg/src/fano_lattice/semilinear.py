"""Frobenius-semilinear algebra over small finite fields.

A p-linear map f on a k-vector space satisfies f(c v) = c^p f(v); with a
basis it is represented by an ordinary matrix A, and a change of basis S
turns A into S A Frob(S^-1).  The rank of A is therefore basis independent,
and its determinant is well defined in the monoid k / k^x(p-1).

Field elements are coefficient tuples over the prime field, with the
modulus chosen as the lexicographically least monic irreducible polynomial
of the requested degree, so field construction and serialization are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

Element = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _poly_trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    a = list(_poly_trim(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        q = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - q * c) % p
        a = list(_poly_trim(a))
    return tuple(a)


def _irreducible(modulus: Sequence[int], p: int) -> bool:
    deg = len(modulus) - 1
    if deg < 1:
        return False
    # trial division by every monic polynomial of degree up to deg // 2
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            candidate = tuple(tail) + (1,)
            if not _poly_mod(modulus, candidate, p):
                return False
    return True


@lru_cache(maxsize=None)
def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        tail = []
        c = code
        for _ in range(e):
            tail.append(c % p)
            c //= p
        candidate = tuple(tail) + (1,)
        if _irreducible(candidate, p):
            return candidate
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """Arithmetic in GF(p^e) with a deterministic modulus.

    Elements are length-e tuples of integers in [0, p); the modulus is the
    lexicographically least monic irreducible polynomial of degree e over
    GF(p), where polynomials are ordered by their integer encoding
    sum(a_i p^i).
    """

    def __init__(self, p: int, e: int = 1):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be at least 1")
        self.p = p
        self.e = e
        self.modulus = _least_irreducible(p, e)
        self.zero: Element = (0,) * e
        self.one: Element = tuple(int(i == 0) for i in range(e))

    @property
    def order(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, e={self.e})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.e == other.e
        )

    def __hash__(self):
        return hash((self.p, self.e))

    # -- element plumbing -------------------------------------------------

    def element(self, value) -> Element:
        """Coerce an int (constant) or coefficient sequence to an element."""
        if isinstance(value, int):
            return ((value % self.p),) + (0,) * (self.e - 1)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.e:
            raise ValueError("coefficient vector longer than extension degree")
        return coeffs + (0,) * (self.e - len(coeffs))

    def elements(self) -> list[Element]:
        """All field elements in integer-encoding order."""
        return [tuple(reversed(t)) for t in product(range(self.p), repeat=self.e)]

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        prod_ = _poly_mul(a, b, self.p)
        red = _poly_mod(prod_, self.modulus, self.p)
        return tuple(red) + (0,) * (self.e - len(red))

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: Element) -> Element:
        return self.pow(a, self.p)

    def is_zero(self, a: Element) -> bool:
        return a == self.zero

    # -- canonical enumeration 0, 1, g, g^2, ... --------------------------

    def generator(self) -> Element:
        """Least element (integer encoding) generating the unit group."""
        target = self.order - 1
        for a in self.elements():
            if a == self.zero:
                continue
            n, x = 1, a
            while x != self.one:
                x = self.mul(x, a)
                n += 1
            if n == target:
                return a
        raise AssertionError("no generator found")

    def enumeration(self) -> list[Element]:
        """Fixed element order: zero, then successive powers of a generator."""
        g = self.generator()
        out = [self.zero, self.one]
        x = g
        while x != self.one:
            out.append(x)
            x = self.mul(x, g)
        return out

    def enum_index(self, a: Element) -> int:
        return self.enumeration().index(a)


Matrix = tuple[tuple[Element, ...], ...]


@dataclass(frozen=True)
class PLinearMap:
    """p-linear endomorphism, represented by a square matrix in some basis."""

    field: FiniteField
    matrix: Matrix

    def __post_init__(self):
        rows = tuple(tuple(self.field.element(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix of a p-linear map must be square")

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence) -> tuple[Element, ...]:
        """Evaluate the map: v maps to A . Frob(v)."""
        k = self.field
        fv = [k.frobenius(k.element(x)) for x in v]
        out = []
        for row in self.matrix:
            acc = k.zero
            for a, x in zip(row, fv):
                acc = k.add(acc, k.mul(a, x))
            out.append(acc)
        return tuple(out)


def _matrix_rank(field: FiniteField, matrix: Matrix) -> int:
    rows = [list(row) for row in matrix]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    rank = 0
    for c in range(nc):
        pivot = next(
            (i for i in range(rank, nr) if not field.is_zero(rows[i][c])), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(nr):
            if i != rank and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == nr:
            break
    return rank


def _matrix_inverse(field: FiniteField, matrix: Matrix) -> Matrix:
    n = len(matrix)
    rows = [
        list(row) + [field.one if i == j else field.zero for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for c in range(n):
        pivot = next((i for i in range(c, n) if not field.is_zero(rows[i][c])), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = field.inv(rows[c][c])
        rows[c] = [field.mul(inv, x) for x in rows[c]]
        for i in range(n):
            if i != c and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])
                ]
    return tuple(tuple(row[n:]) for row in rows)


def _matrix_mul(field: FiniteField, a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in bt:
            acc = field.zero
            for x, y in zip(row, col):
                acc = field.add(acc, field.mul(x, y))
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def _det(field: FiniteField, matrix: Matrix) -> Element:
    rows = [list(row) for row in matrix]
    n = len(rows)
    det = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not field.is_zero(rows[i][c])), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = field.neg(det)
        det = field.mul(det, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(rows[i][c]):
                f = field.mul(rows[i][c], inv)
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])
                ]
    return det


def hw_rank(f: PLinearMap) -> int:
    """Rank of the representing matrix; invariant under semilinear base change."""
    return _matrix_rank(f.field, f.matrix)


def has_max_rank(f: PLinearMap) -> bool:
    """True exactly when the representing matrix is invertible.

    Over a finite field this is equivalent to bijectivity of the map
    v -> A Frob(v), because Frobenius is a field automorphism.
    """
    return hw_rank(f) == f.dimension


def semilinear_conjugate(f: PLinearMap, s: Sequence[Sequence]) -> PLinearMap:
    """Base change: A becomes S A Frob(S^-1), Frobenius acting entrywise."""
    k = f.field
    smat = tuple(tuple(k.element(x) for x in row) for row in s)
    if len(smat) != f.dimension or any(len(r) != f.dimension for r in smat):
        raise ValueError("base-change matrix has the wrong shape")
    sinv = _matrix_inverse(k, smat)
    sinv_frob = tuple(tuple(k.frobenius(x) for x in row) for row in sinv)
    return PLinearMap(k, _matrix_mul(k, _matrix_mul(k, smat, f.matrix), sinv_frob))


@dataclass(frozen=True)
class DeterminantClass:
    """Determinant class in the monoid k / k^x(p-1).

    The representative is the orbit element that appears first in the fixed
    field enumeration 0, 1, g, g^2, ...; the zero map gives the zero class.
    """

    field: FiniteField
    representative: Element

    def __str__(self) -> str:
        if self.representative == self.field.zero:
            return "0"
        if self.representative == self.field.one:
            return "1"
        if self.field.e == 1:
            return str(self.representative[0])
        return str(list(self.representative))


def hw_det_class(f: PLinearMap) -> DeterminantClass:
    """det(A) modulo (p-1)-th powers of units, canonically represented."""
    k = f.field
    det = _det(k, f.matrix)
    if det == k.zero:
        return DeterminantClass(k, k.zero)
    orbit = set()
    for x in k.elements():
        if x != k.zero:
            orbit.add(k.mul(det, k.pow(x, k.p - 1)))
    enum = k.enumeration()
    best = min(orbit, key=enum.index)
    return DeterminantClass(k, best)


@dataclass(frozen=True)
class RankSequenceReport:
    """Ranks of a p-linear map restricted to an invariant subspace.

    ``lemma_holds`` records the instance of the exactness lemma: if both the
    restriction and the induced quotient map have maximal rank, so does the
    total map.
    """

    sub_rank: int
    sub_dim: int
    quotient_rank: int
    quotient_dim: int
    total_rank: int
    total_dim: int

    @property
    def sub_max(self) -> bool:
        return self.sub_rank == self.sub_dim

    @property
    def quotient_max(self) -> bool:
        return self.quotient_rank == self.quotient_dim

    @property
    def total_max(self) -> bool:
        return self.total_rank == self.total_dim

    @property
    def lemma_holds(self) -> bool:
        return not (self.sub_max and self.quotient_max) or self.total_max


def _solve_in_span(field: FiniteField, basis: Sequence[Sequence[Element]], target):
    """Coordinates of target in the span of basis vectors, or None."""
    if not basis:
        return () if all(field.is_zero(x) for x in target) else None
    cols = list(basis)
    n = len(target)
    rows = [[cols[j][i] for j in range(len(cols))] + [target[i]] for i in range(n)]
    rank = 0
    pivots = []
    for c in range(len(cols)):
        pivot = next((i for i in range(rank, n) if not field.is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][c])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(n):
            if i != rank and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[rank])
                ]
        pivots.append(c)
        rank += 1
    for i in range(rank, n):
        if not field.is_zero(rows[i][-1]):
            return None
    out = [field.zero] * len(cols)
    for k_, c in enumerate(pivots):
        out[c] = rows[k_][-1]
    return tuple(out)


def rank_sequence_check(f: PLinearMap, subspace: Sequence[Sequence]) -> RankSequenceReport:
    """Restriction and quotient ranks of f along an invariant subspace.

    The subspace is given by linearly independent spanning vectors; it must
    be invariant under v -> A Frob(v), otherwise this raises.
    """
    k = f.field
    n = f.dimension
    basis = [tuple(k.element(x) for x in v) for v in subspace]
    if _matrix_rank(k, tuple(zip(*basis)) if basis else ()) != len(basis) and basis:
        raise ValueError("subspace vectors are linearly dependent")
    # extend to a full basis with standard vectors
    full = list(basis)
    for i in range(n):
        e = tuple(k.one if j == i else k.zero for j in range(n))
        trial = full + [e]
        cols = tuple(zip(*trial))
        if _matrix_rank(k, cols) == len(trial):
            full.append(e)
        if len(full) == n:
            break
    m = tuple(zip(*full))  # basis vectors as columns
    for v in basis:
        if _solve_in_span(k, basis, f.apply(v)) is None:
            raise ValueError("subspace is not invariant under the map")
    minv = _matrix_inverse(k, m)
    mfrob = tuple(tuple(k.frobenius(x) for x in row) for row in m)
    b = _matrix_mul(k, _matrix_mul(k, minv, f.matrix), mfrob)
    r = len(basis)
    sub = tuple(tuple(b[i][j] for j in range(r)) for i in range(r))
    quot = tuple(tuple(b[i][j] for j in range(r, n)) for i in range(r, n))
    return RankSequenceReport(
        sub_rank=_matrix_rank(k, sub) if r else 0,
        sub_dim=r,
        quotient_rank=_matrix_rank(k, quot) if n - r else 0,
        quotient_dim=n - r,
        total_rank=hw_rank(f),
        total_dim=n,
    )


def parse_field_spec(spec: str) -> FiniteField:
    """Parse a field description like ``"p=2,e=2"`` (e defaults to 1)."""
    parts = dict(
        item.split("=", 1) for item in spec.replace(" ", "").split(",") if item
    )
    unknown = set(parts) - {"p", "e"}
    if unknown:
        raise ValueError(f"unknown field parameters {sorted(unknown)}")
    if "p" not in parts:
        raise ValueError("field spec needs p=<prime>")
    return FiniteField(int(parts["p"]), int(parts.get("e", 1)))
