"""Surface-level intersection theory on numerical lattices.

A surface is modeled by its numerical lattice, the canonical class in that
basis and chi of the structure sheaf.  The operations cover Riemann-Roch
polynomials, adjunction, contraction of negative-definite configurations,
rational pullback corrections for resolutions, and the multiplier system of
a curve against a configuration.

Non-integral rational self-intersections are first-class values here and
are never rounded; callers read the ``integral`` flags to detect
contradictions such as a strict transform with non-integral square.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    IntMatrix,
    IntVector,
    RatVector,
    int_matrix,
    int_vector,
    mat_vec,
    rat,
    rat_vector,
    smith_normal_form,
    solve_exact,
)
from .lattice import (
    NEG_DEFINITE,
    Definiteness,
    Lattice,
    definiteness,
    orthogonal_complement,
)


@dataclass(frozen=True)
class Divisor:
    """Divisor class given by exact rational coefficients in a lattice basis."""

    coeffs: RatVector

    def __post_init__(self):
        object.__setattr__(self, "coeffs", rat_vector(self.coeffs))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @classmethod
    def from_json(cls, data) -> "Divisor":
        if isinstance(data, dict):
            data = data["coeffs"]
        return cls(rat_vector(data))

    def to_json(self) -> list:
        from .exact import format_rational

        return [format_rational(c) for c in self.coeffs]


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical lattice, canonical class and chi(O) of a proper surface."""

    num: Lattice
    canonical: IntVector
    chi: int

    def __post_init__(self):
        object.__setattr__(self, "canonical", int_vector(self.canonical))
        if len(self.canonical) != self.num.rank:
            raise ValueError("canonical class length does not match lattice rank")
        if self.num.determinant() == 0:
            raise ValueError("numerical lattice must be nondegenerate")

    def divisor(self, spec) -> Divisor:
        """Build a divisor from a coefficient sequence or a label mapping."""
        if isinstance(spec, Divisor):
            return spec
        if isinstance(spec, dict):
            coeffs = [Fraction(0)] * self.num.rank
            for label, c in spec.items():
                coeffs[self.num.index_of(label)] = rat(c)
            return Divisor(tuple(coeffs))
        return Divisor(rat_vector(spec))

    def curve(self, label: str) -> Divisor:
        return Divisor(rat_vector(self.num.basis_vector(label)))

    def inner(self, a: Divisor, b: Divisor) -> Fraction:
        return self.num.inner(a.coeffs, b.coeffs)

    def k_dot(self, d: Divisor) -> Fraction:
        return self.num.inner(self.canonical, d.coeffs)

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceModel":
        from .lattice import DualGraph, gram_from_dual_graph

        if "lattice" in data:
            lat = Lattice.from_json(data["lattice"])
        elif "graph" in data:
            lat = gram_from_dual_graph(DualGraph.from_json(data["graph"]))
        else:
            raise ValueError("surface JSON needs a 'lattice' or 'graph' entry")
        return cls(lat, int_vector(data["canonical"]), int(data["chi"]))

    def to_json(self) -> dict:
        return {
            "lattice": self.num.to_json(),
            "canonical": list(self.canonical),
            "chi": self.chi,
        }


@dataclass(frozen=True)
class ChiPolynomial:
    """Euler characteristic polynomial chi(L^t) = a2 t^2 + a1 t + a0."""

    a2: Fraction
    a1: Fraction
    a0: Fraction

    def at(self, t: int) -> Fraction:
        return self.a2 * t * t + self.a1 * t + self.a0

    @property
    def value(self) -> Fraction:
        return self.at(1)

    @property
    def always_integral(self) -> bool:
        # a2 and a1 are half-integers, so chi(t) is integral for every
        # integer t exactly when chi(0) and chi(1) are.
        return self.a0.denominator == 1 and self.at(1).denominator == 1


def chi_polynomial(surface: SurfaceModel, div: Divisor) -> ChiPolynomial:
    """Riemann-Roch polynomial of a divisor class.

    chi(L^t) = (L.L)/2 t^2 - (L.K)/2 t + chi(O).  The linear coefficient is
    half of an integer, so non-integral values of chi betray a class that
    cannot exist on an actual surface.
    """
    ll = surface.inner(div, div)
    lk = surface.k_dot(div)
    return ChiPolynomial(ll / 2, -lk / 2, Fraction(surface.chi))


def adjunction_degree(surface: SurfaceModel, div: Divisor) -> Fraction:
    """Degree of the dualizing sheaf of an embedded curve: (K + D).D."""
    return surface.k_dot(div) + surface.inner(div, div)


def curve_euler_characteristic(surface: SurfaceModel, div: Divisor) -> Fraction:
    """chi(O_D) of an effective divisor, which is -(D.D + K.D)/2."""
    return -adjunction_degree(surface, div) / 2


def _config_matrix(surface: SurfaceModel, config: Sequence[Divisor]) -> tuple:
    return tuple(
        tuple(surface.inner(a, b) for b in config) for a in config
    )


@dataclass(frozen=True)
class Contraction:
    """Result of contracting a negative-definite curve configuration.

    ``surface`` carries the primitive orthogonal complement as the new
    numerical lattice; ``embedding`` expresses its basis in the old
    coordinates.  chi is carried over unchanged, which assumes the contracted
    singularities are rational.
    """

    source: SurfaceModel
    surface: SurfaceModel
    config: tuple[Divisor, ...]
    embedding: IntMatrix

    def pushforward(self, div: Divisor) -> Divisor:
        """Image of a divisor orthogonal to the contracted curves."""
        residuals = [self.source.inner(div, e) for e in self.config]
        if any(r != 0 for r in residuals):
            raise ValueError("divisor is not orthogonal to the contracted curves")
        sol = solve_exact(
            tuple(zip(*self.embedding)), div.coeffs
        )
        if sol is None:
            raise ValueError("divisor does not lie in the contracted lattice")
        return Divisor(sol)

    def mumford_self(self, div: Divisor) -> Fraction:
        """Rational self-intersection of the image of an arbitrary divisor.

        Subtracts the unique rational correction supported on the contracted
        curves that restores orthogonality, then squares.
        """
        b = [self.source.inner(div, e) for e in self.config]
        if not self.config:
            return self.source.inner(div, div)
        gram = _config_matrix(self.source, self.config)
        lam = solve_exact(gram, b)
        if lam is None:
            raise AssertionError("negative-definite system must be solvable")
        corr = self.source.inner(div, div)
        for l, bi in zip(lam, b):
            corr -= l * bi
        return corr


def contract(surface: SurfaceModel, config: Sequence[Divisor]) -> Contraction:
    """Contract a negative-definite configuration of integral curves.

    The new numerical lattice is the primitive orthogonal complement of the
    configuration; the canonical class must be orthogonal to the contracted
    curves (the rational-double-point case), and chi is carried over.
    """
    config = tuple(surface.divisor(c) for c in config)
    for c in config:
        if not c.is_integral:
            raise ValueError("contracted curves must be integral divisors")
    if config:
        gram = _config_matrix(surface, config)
        check = definiteness(Lattice(int_matrix(gram), tuple(f"e{i}" for i in range(len(config)))))
        if check.kind != NEG_DEFINITE:
            raise ValueError("configuration is not negative-definite")
    if any(surface.num.inner(surface.canonical, c.coeffs) != 0 for c in config):
        raise ValueError(
            "canonical class meets the configuration; only crepant "
            "(rational double point) contractions are supported"
        )
    complement, embedding = orthogonal_complement(
        surface.num, [c.coeffs for c in config]
    )
    k_image = solve_exact(tuple(zip(*embedding)), rat_vector(surface.canonical))
    if k_image is None:
        raise AssertionError("canonical class must lie in the complement")
    new_surface = SurfaceModel(complement, int_vector(k_image), surface.chi)
    return Contraction(surface, new_surface, config, embedding)


@dataclass(frozen=True)
class ResolutionConfig:
    """Exceptional configuration of a resolution plus one strict transform.

    ``exceptional`` is the (negative-definite) intersection lattice of the
    exceptional curves, ``strict_meets`` lists their intersection numbers
    with the strict transform, and ``strict_self`` is the self-intersection
    of the strict transform on the resolution.
    """

    exceptional: Lattice
    strict_meets: IntVector
    strict_self: Fraction

    def __post_init__(self):
        object.__setattr__(self, "strict_meets", int_vector(self.strict_meets))
        object.__setattr__(self, "strict_self", rat(self.strict_self))
        if len(self.strict_meets) != self.exceptional.rank:
            raise ValueError("strict_meets length does not match configuration rank")
        if definiteness(self.exceptional).kind != NEG_DEFINITE:
            raise ValueError("exceptional configuration must be negative-definite")

    @classmethod
    def from_json(cls, data: dict) -> "ResolutionConfig":
        return cls(
            Lattice.from_json(data["exceptional"]),
            int_vector(data["strict_meets"]),
            rat(data["strict_self"]),
        )


def _pullback_coefficients(exceptional: Lattice, strict_meets: Sequence[int]) -> RatVector:
    rhs = [-rat(m) for m in strict_meets]
    sol = solve_exact(exceptional.gram, rhs)
    if sol is None:
        raise ValueError("degenerate exceptional configuration")
    return sol


@dataclass(frozen=True)
class MumfordPullback:
    """Rational pullback correction and the induced rational square."""

    coefficients: RatVector
    strict_self: Fraction
    rational_self: Fraction

    @property
    def integral(self) -> bool:
        return self.rational_self.denominator == 1


def mumford_pullback(config: ResolutionConfig) -> MumfordPullback:
    """Unique rational correction making the pullback orthogonal to the fibers.

    Solves sum_i c_i (E_i . E_j) = -(T . E_j) for all j, where T is the
    strict transform; the rational self-intersection downstairs is then
    T^2 + sum_i c_i (E_i . T).
    """
    lam = _pullback_coefficients(config.exceptional, config.strict_meets)
    rational_self = config.strict_self
    for l, m in zip(lam, config.strict_meets):
        rational_self += l * m
    return MumfordPullback(lam, config.strict_self, rational_self)


@dataclass(frozen=True)
class StrictTransformSelf:
    """Reverse direction: strict-transform square from the rational square."""

    coefficients: RatVector
    rational_self: Fraction
    strict_self: Fraction

    @property
    def integral(self) -> bool:
        return self.strict_self.denominator == 1


def strict_self_from_rational(
    exceptional: Lattice, strict_meets: Sequence[int], rational_self
) -> StrictTransformSelf:
    """Solve the same linear system, then invert the one scalar equation.

    On a regular surface the strict transform has an integral square, so a
    non-integral result here rules the configuration out.
    """
    meets = int_vector(strict_meets)
    lam = _pullback_coefficients(exceptional, meets)
    value = rat(rational_self)
    for l, m in zip(lam, meets):
        value -= l * m
    return StrictTransformSelf(lam, rat(rational_self), value)


@dataclass(frozen=True)
class RelativeCanonical:
    coefficients: RatVector

    @property
    def all_nonpositive(self) -> bool:
        return all(c <= 0 for c in self.coefficients)


def relative_canonical(exceptional: Lattice, k_dot_e: Sequence[int]) -> RelativeCanonical:
    """Unique rational class supported on the fibers with prescribed K-degrees.

    Solves sum_i c_i (E_i . E_j) = (K . E_j).  A minimal resolution has all
    (K . E_j) >= 0 and then every coefficient is nonpositive; a positive
    coefficient flags a non-minimal (for example (-1)-curve) configuration.
    """
    rhs = int_vector(k_dot_e)
    if len(rhs) != exceptional.rank:
        raise ValueError("k_dot_e length does not match configuration rank")
    if definiteness(exceptional).kind != NEG_DEFINITE:
        raise ValueError("exceptional configuration must be negative-definite")
    sol = solve_exact(exceptional.gram, rhs)
    if sol is None:
        raise ValueError("degenerate exceptional configuration")
    return RelativeCanonical(sol)


@dataclass(frozen=True)
class ConductrixMultipliers:
    values: RatVector

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def conductrix_multipliers(
    surface: SurfaceModel, curve: Divisor, config: Sequence[Divisor]
) -> ConductrixMultipliers | None:
    """Multipliers m with (C . E_j) = sum_i m_i (E_i . E_j), or None.

    Solvability of this system is the numerical criterion for the image of
    C to stay Cartier after contracting the configuration; integrality is
    reported separately via the ``integral`` flag.
    """
    config = tuple(surface.divisor(c) for c in config)
    gram = _config_matrix(surface, config)
    rhs = [surface.inner(curve, e) for e in config]
    sol = solve_exact(gram, rhs)
    if sol is None:
        return None
    return ConductrixMultipliers(sol)


@dataclass(frozen=True)
class PushforwardReport:
    """Orthogonality certificate for a divisor against a contraction."""

    pairings: RatVector
    self_intersection: Fraction
    mumford_self: Fraction

    @property
    def orthogonal(self) -> bool:
        return all(p == 0 for p in self.pairings)


def pushforward_check(
    surface: SurfaceModel, contraction: Contraction, div: Divisor
) -> PushforwardReport:
    """Pair a divisor against the contracted curves and square its image."""
    pairings = tuple(surface.inner(div, e) for e in contraction.config)
    return PushforwardReport(
        pairings,
        surface.inner(div, div),
        contraction.mumford_self(div),
    )


def is_primitive_embedding(embedding: Sequence[Sequence[int]]) -> bool:
    """Whether integer basis rows span a saturated sublattice of Z^n."""
    m = int_matrix(embedding)
    if not m:
        return True
    d, _, _ = smith_normal_form(m)
    k = min(len(m), len(m[0]))
    return all(d[i][i] == 1 for i in range(k))
