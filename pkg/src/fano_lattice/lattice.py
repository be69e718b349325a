"""Integral lattices with symmetric bilinear form.

Lattices are built from dual graphs of curve configurations (vertices carry
self-intersection numbers, edges carry intersection multiplicities) or from
the standard ADE / hyperbolic constructions.  On top of that sit the exact
classification of definiteness, discriminant groups with their torsion
quadratic forms, overlattice enumeration, orthogonal complements and
sublattice indices.

Sign convention: ADE root lattices are negative definite (diagonal -2),
matching intersection matrices of (-2)-curves.  The positive-definite Cartan
matrix is the negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .exact import (
    FiniteAbelianGroup,
    IntMatrix,
    IntVector,
    RatVector,
    det_exact,
    dot,
    int_kernel_basis,
    int_matrix,
    int_vector,
    invert_rational,
    invert_unimodular,
    identity_matrix,
    mat_mul,
    mat_vec,
    rat,
    rat_vector,
    row_lattice_basis,
    exact_sqrt,
    smith_normal_form,
    symmetric_signature,
    transpose,
)

#: Definiteness kinds returned by :func:`definiteness`.
NEG_DEFINITE = "negative-definite"
NEG_SEMIDEFINITE = "negative-semidefinite"
INDEFINITE = "indefinite"
OTHER = "other"

#: Discriminant groups larger than this are rejected by the subgroup
#: enumeration; the configurations of interest have order at most 16.
SUBGROUP_ENUMERATION_CAP = 10_000


class DiscriminantTooLarge(ValueError):
    """Raised when a discriminant group exceeds the enumeration cap."""


@dataclass(frozen=True)
class DualGraph:
    """Dual graph of a curve configuration.

    Vertices are (label, self-intersection) pairs; edges are
    (label, label, multiplicity) triples.  Simple normal crossings give
    multiplicity one.
    """

    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str, int], ...]

    def __post_init__(self):
        vertices = tuple((str(l), int(s)) for l, s in self.vertices)
        edges = tuple((str(a), str(b), int(m)) for a, b, m in self.edges)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        labels = [l for l, _ in vertices]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex labels in dual graph")
        known = set(labels)
        for a, b, m in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) uses an unknown vertex")
            if m < 1:
                raise ValueError("edge multiplicity must be at least 1")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.vertices)

    @classmethod
    def from_json(cls, data: dict) -> "DualGraph":
        vertices = tuple((v["label"], v["self"]) for v in data["vertices"])
        edges = []
        for e in data["edges"]:
            if len(e) == 2:
                a, b = e
                m = 1
            else:
                a, b, m = e
            edges.append((a, b, m))
        return cls(vertices, tuple(edges))

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": l, "self": s} for l, s in self.vertices],
            "edges": [[a, b, m] for a, b, m in self.edges],
        }


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with an integral symmetric Gram matrix."""

    gram: IntMatrix
    labels: tuple[str, ...]

    def __post_init__(self):
        gram = int_matrix(self.gram)
        labels = tuple(str(l) for l in self.labels)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "labels", labels)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        if len(labels) != n:
            raise ValueError("label count must match Gram dimension")
        if len(set(labels)) != n:
            raise ValueError("duplicate basis labels")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def determinant(self) -> int:
        d = det_exact(self.gram)
        return d.numerator

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis vector labeled {label!r}") from None

    def basis_vector(self, label: str) -> IntVector:
        i = self.index_of(label)
        return tuple(int(i == j) for j in range(self.rank))

    def inner(self, v: Sequence, w: Sequence) -> Fraction:
        return dot(rat_vector(v), mat_vec(self.gram, rat_vector(w)))

    def pairing_matrix(self, vectors: Sequence[Sequence]) -> tuple:
        return tuple(tuple(self.inner(v, w) for w in vectors) for v in vectors)

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        return cls(int_matrix(data["gram"]), tuple(data["labels"]))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "gram": [list(r) for r in self.gram]}


def gram_from_dual_graph(graph: DualGraph) -> Lattice:
    """Intersection lattice of a curve configuration, in vertex order."""
    labels = graph.labels
    index = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    gram = [[0] * n for _ in range(n)]
    for i, (_, self_int) in enumerate(graph.vertices):
        gram[i][i] = self_int
    for a, b, m in graph.edges:
        i, j = index[a], index[b]
        gram[i][j] += m
        gram[j][i] += m
    return Lattice(tuple(tuple(r) for r in gram), labels)


@dataclass(frozen=True)
class Definiteness:
    kind: str
    signature: tuple[int, int, int]  # (positive, negative, null)
    kernel: tuple[IntVector, ...] | None = None


def definiteness(lattice: Lattice) -> Definiteness:
    """Exact definiteness classification of the Gram matrix.

    Negative semidefinite results carry an integral basis of the kernel;
    indefinite ones carry the exact signature.
    """
    pos, neg, null = symmetric_signature(lattice.gram)
    kernel = int_kernel_basis(lattice.gram) if null > 0 else None
    if pos == 0 and null == 0:
        return Definiteness(NEG_DEFINITE, (pos, neg, null))
    if pos == 0:
        return Definiteness(NEG_SEMIDEFINITE, (pos, neg, null), kernel)
    if neg > 0:
        return Definiteness(INDEFINITE, (pos, neg, null), kernel)
    return Definiteness(OTHER, (pos, neg, null), kernel)


def _frac_mod(x: Fraction, modulus: int) -> Fraction:
    return x - modulus * (x / modulus).__floor__()


@dataclass(frozen=True)
class DiscriminantForm:
    """Discriminant group L*/L with its torsion quadratic and bilinear forms.

    Generators are stored as rational coordinate vectors in the basis of L,
    one generator per nontrivial invariant factor.  The quadratic form q
    takes values in Q/2Z for even lattices and in Q/Z otherwise; the pairing
    b always takes values in Q/Z.  Representatives are normalized to
    [0, 2) respectively [0, 1).
    """

    group: FiniteAbelianGroup
    generators: tuple[RatVector, ...]
    gram: IntMatrix
    even: bool

    @property
    def q_modulus(self) -> int:
        return 2 if self.even else 1

    def vector(self, element: Sequence[int]) -> RatVector:
        if len(element) != len(self.generators):
            raise ValueError("element length does not match generator count")
        n = len(self.gram)
        acc = [Fraction(0)] * n
        for a, g in zip(element, self.generators):
            for i in range(n):
                acc[i] += a * g[i]
        return tuple(acc)

    def q(self, element: Sequence[int]) -> Fraction:
        v = self.vector(element)
        return _frac_mod(dot(v, mat_vec(self.gram, v)), self.q_modulus)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        vx, vy = self.vector(x), self.vector(y)
        return _frac_mod(dot(vx, mat_vec(self.gram, vy)), 1)

    @property
    def q_values(self) -> tuple[Fraction, ...]:
        eye = identity_matrix(len(self.generators))
        return tuple(self.q(e) for e in eye)

    @property
    def b_values(self) -> tuple[tuple[Fraction, ...], ...]:
        eye = identity_matrix(len(self.generators))
        return tuple(tuple(self.b(e, f) for f in eye) for e in eye)

    def elements(self) -> Iterable[tuple[int, ...]]:
        return self.group.elements()


def discriminant_group(lattice: Lattice) -> DiscriminantForm:
    """Discriminant form of a nondegenerate lattice, via the Smith form.

    L*/L is computed as Z^n / (G Z^n); the class of w corresponds to U w in
    the diagonalized quotient, so the generators lift to the columns of
    U^-1 and their dual-basis coordinates are G^-1 U^-1 e_i.
    """
    g = lattice.gram
    n = lattice.rank
    if det_exact(g) == 0:
        raise ValueError("discriminant group of a degenerate lattice")
    d, u, _ = smith_normal_form(g)
    uinv = invert_unimodular(u)
    ginv = invert_rational(g)
    orders = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            orders.append(di)
            col = tuple(uinv[r][i] for r in range(n))
            gens.append(tuple(mat_vec(ginv, col)))
    group = FiniteAbelianGroup(tuple(orders))
    if group.order != abs(lattice.determinant()):
        raise AssertionError("discriminant group order mismatch")
    return DiscriminantForm(group, tuple(gens), g, lattice.is_even)


def _subgroup_closure(orders, seed):
    def add(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, orders))

    elems = set(seed)
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in tuple(elems):
            z = add(x, y)
            if z not in elems:
                elems.add(z)
                frontier.append(z)
    return frozenset(elems)


def _all_subgroups(group: FiniteAbelianGroup):
    if group.order > SUBGROUP_ENUMERATION_CAP:
        raise DiscriminantTooLarge(
            f"discriminant group of order {group.order} exceeds the "
            f"enumeration cap of {SUBGROUP_ENUMERATION_CAP}"
        )
    orders = group.cyclic_orders
    zero = tuple(0 for _ in orders)
    elements = list(product(*(range(d) for d in orders)))
    trivial = frozenset({zero})
    seen = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        for x in elements:
            if x not in h:
                h2 = _subgroup_closure(orders, h | {x})
                if h2 not in seen:
                    seen.add(h2)
                    queue.append(h2)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def isotropic_subgroups(form: DiscriminantForm) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All subgroups on which the discriminant form vanishes identically.

    For an even lattice this means q = 0 in Q/2Z (Nikulin's condition for
    even overlattices); for an odd lattice q = 0 in Q/Z together with a
    vanishing pairing, which characterizes integral overlattices.  The
    trivial subgroup is always included.
    """
    out = []
    for sub in _all_subgroups(form.group):
        members = sorted(sub)
        if any(form.q(x) != 0 for x in members):
            continue
        if any(form.b(x, y) != 0 for x in members for y in members):
            continue
        out.append(tuple(members))
    return tuple(out)


def overlattices(lattice: Lattice) -> tuple[Lattice, ...]:
    """Integral overlattices of L, one per nontrivial isotropic subgroup.

    The i-th result corresponds to the i-th nontrivial subgroup returned by
    :func:`isotropic_subgroups`; its Gram matrix is recomputed in a genuine
    Z-basis of the enlarged lattice.  Even input yields even output.
    """
    form = discriminant_group(lattice)
    n = lattice.rank
    out = []
    for sub in isotropic_subgroups(form)[1:]:
        vectors = [form.vector(a) for a in sub]
        denom = 1
        for v in vectors:
            for x in v:
                denom = denom * x.denominator // _gcd(denom, x.denominator)
        rows = [tuple(denom * x for x in row) for row in identity_matrix(n)]
        for v in vectors:
            rows.append(tuple(int(denom * x) for x in v))
        basis = row_lattice_basis(rows)
        bmat = tuple(tuple(Fraction(x, denom) for x in row) for row in basis)
        gram_rows = mat_mul(mat_mul(bmat, lattice.gram), transpose(bmat))
        gram = int_matrix(gram_rows)
        labels = tuple(f"v{i + 1}" for i in range(len(basis)))
        out.append(Lattice(gram, labels))
    return tuple(out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def orthogonal_complement(
    lattice: Lattice, vectors: Sequence[Sequence]
) -> tuple[Lattice, IntMatrix]:
    """Primitive orthogonal complement of a list of vectors.

    Returns the complement with its Gram matrix in a new basis, together
    with the embedding matrix whose rows express that basis in the ambient
    coordinates.  The result is saturated: any ambient vector orthogonal to
    the input lies in the span of the returned basis over Z.
    """
    n = lattice.rank
    rows = []
    for v in vectors:
        pair = mat_vec(lattice.gram, rat_vector(v))
        denom = 1
        for x in pair:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        rows.append(tuple(int(x * denom) for x in pair))
    basis = int_kernel_basis(rows) if rows else tuple(identity_matrix(n))
    gram = int_matrix(mat_mul(mat_mul(basis, lattice.gram), transpose(basis)))
    labels = tuple(f"f{i + 1}" for i in range(len(basis)))
    return Lattice(gram, labels), tuple(basis)


def sublattice_index(big: Lattice, embedding: Sequence[Sequence[int]]) -> int:
    """Index of a finite-index sublattice given by basis rows in big coordinates.

    Computed as the square root of the discriminant ratio; a non-square
    ratio or a non-full-rank embedding is an error.
    """
    b = int_matrix(embedding)
    if len(b) != big.rank or (b and len(b[0]) != big.rank):
        raise ValueError("embedding must be a square basis matrix of full rank")
    det_big = det_exact(big.gram)
    if det_big == 0:
        raise ValueError("ambient lattice is degenerate")
    small_gram = mat_mul(mat_mul(b, big.gram), transpose(b))
    det_small = det_exact(small_gram)
    if det_small == 0:
        raise ValueError("embedding is not of full rank")
    ratio = abs(det_small / det_big)
    if ratio.denominator != 1:
        raise ValueError("discriminant ratio is not an integer")
    return exact_sqrt(ratio.numerator)


def restrict(lattice: Lattice, labels: Sequence[str]) -> Lattice:
    """Sublattice spanned by a subset of the basis, in the given order."""
    idx = [lattice.index_of(l) for l in labels]
    gram = tuple(tuple(lattice.gram[i][j] for j in idx) for i in idx)
    return Lattice(gram, tuple(labels))


def direct_sum(*lattices: Lattice) -> Lattice:
    """Orthogonal direct sum; labels are prefixed to stay unique."""
    total = sum(l.rank for l in lattices)
    gram = [[0] * total for _ in range(total)]
    labels = []
    offset = 0
    for k, lat in enumerate(lattices):
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[offset + i][offset + j] = lat.gram[i][j]
        labels.extend(f"s{k + 1}.{l}" for l in lat.labels)
        offset += lat.rank
    return Lattice(tuple(tuple(r) for r in gram), tuple(labels))


def _chain_edges(labels: Sequence[str]) -> list[tuple[str, str, int]]:
    return [(a, b, 1) for a, b in zip(labels, labels[1:])]


def _ade_graph(family: str, n: int) -> DualGraph:
    labels = [f"v{i + 1}" for i in range(n)]
    verts = tuple((l, -2) for l in labels)
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return DualGraph(verts, tuple(_chain_edges(labels)))
    if family == "D":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        edges = _chain_edges(labels[: n - 2])
        edges += [(labels[n - 3], labels[n - 2], 1), (labels[n - 3], labels[n - 1], 1)]
        if n == 3:
            # degenerate fork: v1 is the branch point
            edges = [(labels[0], labels[1], 1), (labels[0], labels[2], 1)]
        return DualGraph(verts, tuple(edges))
    if family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        edges = _chain_edges(labels[: n - 1])
        edges.append((labels[2], labels[n - 1], 1))
        return DualGraph(verts, tuple(edges))
    raise ValueError(f"unknown family {family!r}")


def _affine_graph(family: str, n: int) -> DualGraph:
    base = None if family == "A" and n == 1 else _ade_graph(family, n)
    aff = f"v{n + 1}"
    if family == "A":
        if n == 1:
            verts = (("v1", -2), ("v2", -2))
            return DualGraph(verts, (("v1", "v2", 2),))
        labels = list(base.labels) + [aff]
        edges = list(base.edges) + [(labels[n - 1], aff, 1), (aff, labels[0], 1)]
        return DualGraph(tuple((l, -2) for l in labels), tuple(edges))
    if family == "D":
        if n < 4:
            raise ValueError("affine D_n needs n >= 4")
        labels = list(base.labels) + [aff]
        edges = list(base.edges) + [(base.labels[1], aff, 1)]
        return DualGraph(tuple((l, -2) for l in labels), tuple(edges))
    if family == "E":
        attach = {6: "v6", 7: "v1", 8: f"v{n - 1}"}[n]
        labels = list(base.labels) + [aff]
        edges = list(base.edges) + [(attach, aff, 1)]
        return DualGraph(tuple((l, -2) for l in labels), tuple(edges))
    raise ValueError(f"unknown family {family!r}")


_T237_ORDER = ("C1", "C3", "C4", "C2", "C5", "C6", "C7", "C8", "C0", "C9")
_T237_EDGES = (
    ("C1", "C3", 1),
    ("C3", "C4", 1),
    ("C4", "C2", 1),
    ("C4", "C5", 1),
    ("C5", "C6", 1),
    ("C6", "C7", 1),
    ("C7", "C8", 1),
    ("C8", "C0", 1),
    ("C0", "C9", 1),
)


def t237_graph() -> DualGraph:
    """The ten-curve star graph with terminal chain lengths 2, 3 and 7."""
    return DualGraph(tuple((l, -2) for l in _T237_ORDER), _T237_EDGES)


def _e10_graph() -> DualGraph:
    labels = [f"v{i + 1}" for i in range(10)]
    edges = _chain_edges(labels[:9]) + [("v3", "v10", 1)]
    return DualGraph(tuple((l, -2) for l in labels), tuple(edges))


_KIND_RE = re.compile(r"^([ADE])(\d+)(~?)$", re.IGNORECASE)


def named_graph(name: str) -> DualGraph:
    """Built-in named dual graphs: ADE kinds, affine variants, T237, E10, H."""
    key = name.strip()
    if key.upper() == "T237":
        return t237_graph()
    if key.upper() == "E10":
        return _e10_graph()
    if key.upper() == "H":
        return DualGraph((("h1", 0), ("h2", 0)), (("h1", "h2", 1),))
    m = _KIND_RE.match(key)
    if not m:
        raise ValueError(f"unknown graph name {name!r}")
    family, n, affine = m.group(1).upper(), int(m.group(2)), m.group(3)
    return _affine_graph(family, n) if affine else _ade_graph(family, n)


def root_lattice(kind: str) -> Lattice:
    """Named lattice in the negative-definite curve convention.

    Accepts ADE kinds like ``"A1"``, ``"D5"``, ``"E8"``, affine variants
    with a trailing tilde, the hyperbolic plane ``"H"``, and the rank-10
    graphs ``"T237"`` / ``"E10"``.
    """
    return gram_from_dual_graph(named_graph(kind))
