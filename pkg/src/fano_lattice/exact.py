"""Exact integer and rational linear algebra.

Everything here works with arbitrary-precision integers and
:class:`fractions.Fraction`; there is no floating point anywhere in the
package.  The operations are deterministic, so identical inputs always
produce identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

Rational = Fraction

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
RatVector = tuple[Fraction, ...]
RatMatrix = tuple[RatVector, ...]


def rat(x: object) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    return rat(text)


def format_rational(x: Fraction) -> str:
    """Canonical string form, ``"n"`` for integers and ``"p/q"`` otherwise."""
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_vector(entries: Iterable[object]) -> RatVector:
    return tuple(rat(x) for x in entries)


def rat_matrix(rows: Iterable[Iterable[object]]) -> RatMatrix:
    m = tuple(rat_vector(row) for row in rows)
    if len({len(row) for row in m}) > 1:
        raise ValueError("ragged matrix")
    return m


def int_vector(entries: Iterable[object]) -> IntVector:
    out = []
    for x in entries:
        f = rat(x)
        if f.denominator != 1:
            raise ValueError(f"entry {x!r} is not an integer")
        out.append(f.numerator)
    return tuple(out)


def int_matrix(rows: Iterable[Iterable[object]]) -> IntMatrix:
    m = tuple(int_vector(row) for row in rows)
    if len({len(row) for row in m}) > 1:
        raise ValueError("ragged matrix")
    return m


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch in matrix-vector product")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(v: Sequence, w: Sequence) -> Fraction:
    if len(v) != len(w):
        raise ValueError("dimension mismatch in inner product")
    return sum((x * y for x, y in zip(v, w)), Fraction(0))


def is_square_matrix(m: Sequence[Sequence]) -> bool:
    return all(len(row) == len(m) for row in m)


def det_exact(m: Sequence[Sequence[object]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    For integer input every intermediate value stays integral, which keeps
    coefficient swell polynomial; rational input is handled by the same
    exact divisions.
    """
    a = [list(map(rat, row)) for row in m]
    n = len(a)
    if not is_square_matrix(a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_exact(a: Sequence[Sequence[object]], b: Sequence[object]) -> RatVector | None:
    """One exact solution of ``a @ x = b``, or None if inconsistent.

    Works for rectangular systems; free variables are set to zero, so for a
    square nonsingular matrix the unique solution is returned.
    """
    nr = len(a)
    if len(b) != nr:
        raise ValueError("right-hand side length does not match row count")
    nc = len(a[0]) if nr else 0
    rows = [[rat(x) for x in row] + [rat(bi)] for row, bi in zip(a, b)]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    if any(rows[i][nc] != 0 for i in range(r, nr)):
        return None
    x = [Fraction(0)] * nc
    for k, c in enumerate(pivots):
        x[c] = rows[k][nc]
    return tuple(x)


def invert_rational(m: Sequence[Sequence[object]]) -> RatMatrix:
    a = [list(map(rat, row)) for row in m]
    n = len(a)
    if not is_square_matrix(a):
        raise ValueError("inverse of a non-square matrix")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pr is None:
            raise ValueError("matrix is singular")
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def invert_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = invert_rational(m)
    return int_matrix(inv)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``d = u @ m @ v`` with unimodular u, v.

    The diagonal entries are nonnegative and satisfy the divisibility chain
    d1 | d2 | ... .  Pivots are chosen by smallest nonzero absolute value,
    which makes the reduction deterministic.
    """
    a = [list(row) for row in int_matrix(m)]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [list(row) for row in identity_matrix(nr)]
    v = [list(row) for row in identity_matrix(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, q):
        # col_i += q * col_j
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        # remainder is strictly smaller, promote it to pivot
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1
    for i in range(min(nr, nc)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return (
        tuple(tuple(row) for row in a),
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


def _sign_normalized(vec: IntVector) -> IntVector:
    lead = next((x for x in vec if x != 0), 0)
    return tuple(-x for x in vec) if lead < 0 else vec


def int_kernel_basis(m: Sequence[Sequence[int]]) -> tuple[IntVector, ...]:
    """Basis of the saturated integer kernel ``{x : m @ x = 0}``.

    The basis comes from the unimodular column transform of the Smith form,
    so it generates the full kernel lattice, not a finite-index sublattice.
    """
    mm = int_matrix(m)
    nr = len(mm)
    nc = len(mm[0]) if nr else 0
    if nr == 0:
        return tuple(identity_matrix(nc))
    d, _, v = smith_normal_form(mm)
    rank = sum(1 for i in range(min(nr, nc)) if d[i][i] != 0)
    basis = []
    for j in range(rank, nc):
        basis.append(_sign_normalized(tuple(v[i][j] for i in range(nc))))
    return tuple(basis)


def row_lattice_basis(m: Sequence[Sequence[int]]) -> tuple[IntVector, ...]:
    """Z-basis of the lattice generated by the rows of an integer matrix."""
    mm = int_matrix(m)
    nr = len(mm)
    nc = len(mm[0]) if nr else 0
    if nr == 0 or nc == 0:
        return ()
    d, _, v = smith_normal_form(mm)
    vinv = invert_unimodular(v)
    basis = []
    for i in range(min(nr, nc)):
        di = d[i][i]
        if di == 0:
            break
        basis.append(tuple(di * x for x in vinv[i]))
    return tuple(basis)


def symmetric_signature(gram: Sequence[Sequence[object]]) -> tuple[int, int, int]:
    """Exact signature (positive, negative, null) of a symmetric matrix.

    Computed by congruence diagonalization over the rationals, so the result
    is rigorous: no eigenvalue approximations are involved.
    """
    a = [list(map(rat, row)) for row in gram]
    n = len(a)
    if not is_square_matrix(a):
        raise ValueError("signature of a non-square matrix")
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ValueError("signature of a non-symmetric matrix")
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                # all remaining diagonal entries vanish, so a transvection
                # row_k += row_j makes a[k][k] = 2*a[k][j] without cancelation
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is not None:
                    a[k] = [x + y for x, y in zip(a[k], a[j])]
                    for row in a:
                        row[k] += row[j]
        if a[k][k] == 0:
            continue
        if a[k][k] > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] -= f * row[k]
    return pos, neg, n - pos - neg


def exact_sqrt(n: int) -> int:
    """Integer square root, raising if n is not a perfect square."""
    if n < 0:
        raise ValueError("square root of a negative integer")
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Normalize a list of cyclic orders into the divisibility chain form."""
    buckets: dict[int, list[int]] = {}
    for n in orders:
        if n < 1:
            raise ValueError("cyclic order must be positive")
        for p, e in _factorize(n).items():
            buckets.setdefault(p, []).append(e)
    if not buckets:
        return ()
    width = max(len(v) for v in buckets.values())
    factors = []
    for slot in range(width):
        d = 1
        for p, exps in buckets.items():
            exps = sorted(exps, reverse=True)
            if slot < len(exps):
                d *= p ** exps[slot]
        factors.append(d)
    return tuple(sorted(factors))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form d1 | d2 | ... | dk."""

    cyclic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        object.__setattr__(self, "cyclic_orders", orders)
        for d in orders:
            if d < 2:
                raise ValueError("cyclic orders must be at least 2")
        for a, b in zip(orders, orders[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain violated: {a} does not divide {b}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        return cls(invariant_factors(orders))

    @property
    def order(self) -> int:
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.cyclic_orders

    def p_primary(self, p: int) -> "FiniteAbelianGroup":
        """Quotient by the subgroup generated by the l-Sylow parts, l != p."""
        parts = []
        for d in self.cyclic_orders:
            q = 1
            while d % p == 0:
                q *= p
                d //= p
            if q > 1:
                parts.append(q)
        return FiniteAbelianGroup(tuple(parts))

    def direct_sum(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup.from_orders(self.cyclic_orders + other.cyclic_orders)

    def elements(self) -> Iterable[tuple[int, ...]]:
        return product(*(range(d) for d in self.cyclic_orders))

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.cyclic_orders)
