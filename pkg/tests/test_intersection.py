import random
from fractions import Fraction

import pytest

from fano_lattice.intersection import (
    Divisor,
    ResolutionConfig,
    SurfaceModel,
    adjunction_degree,
    chi_polynomial,
    conductrix_multipliers,
    contract,
    curve_euler_characteristic,
    is_primitive_embedding,
    mumford_pullback,
    pushforward_check,
    relative_canonical,
    strict_self_from_rational,
)
from fano_lattice.lattice import Lattice, root_lattice

T237_ORDER = ("C1", "C3", "C4", "C2", "C5", "C6", "C7", "C8", "C0", "C9")
CONTRACTED = ("C1", "C3", "C4", "C2", "C5", "C6", "C7", "C8", "C9")
CONDUCTRIX = {"C1": 2, "C3": 3, "C4": 5, "C2": 2, "C5": 4, "C6": 4, "C7": 3, "C8": 3, "C0": 2, "C9": 1}
COMBINATION = {"C1": 4, "C3": 8, "C4": 12, "C2": 6, "C5": 10, "C6": 8, "C7": 6, "C8": 4, "C0": 2, "C9": 1}


@pytest.fixture
def enriques():
    lat = root_lattice("T237")
    return SurfaceModel(lat, (0,) * 10, 1)


@pytest.fixture
def dp4():
    # degree-4 numerical shell with a hypothetical halving class A = -K/2
    return SurfaceModel(Lattice(((1,),), ("A",)), (-2,), 1)


def d5_resolution():
    gram = (
        (-2, 1, 0, 0, 0),
        (1, -2, 1, 0, 0),
        (0, 1, -2, 0, 0),
        (0, 0, 0, -2, 0),
        (0, 0, 0, 0, -2),
    )
    lat = Lattice(gram, ("E1", "E2", "E3", "E4", "E5"))
    return ResolutionConfig(lat, (0, 0, 1, 1, 1), Fraction(-3, 2))


# -- Riemann-Roch polynomial ----------------------------------------------------


def test_chi_polynomial_anticanonical_dp4(dp4):
    poly = chi_polynomial(dp4, dp4.divisor([2]))  # -K = 2A
    assert (poly.a2, poly.a1, poly.a0) == (2, 2, 1)
    assert poly.value == 5
    assert poly.always_integral


def test_chi_polynomial_halving_class(dp4):
    poly = chi_polynomial(dp4, dp4.divisor([1]))
    assert poly.value == Fraction(5, 2)
    assert not poly.always_integral


def test_chi_polynomial_zero_divisor(dp4):
    poly = chi_polynomial(dp4, dp4.divisor([0]))
    assert (poly.a2, poly.a1, poly.a0) == (0, 0, 1)
    assert poly.always_integral


def test_chi_even_odd_split(enriques):
    rng = random.Random(7)
    for _ in range(25):
        div = enriques.divisor([rng.randint(-3, 3) for _ in range(10)])
        poly = chi_polynomial(enriques, div)
        ll = enriques.inner(div, div)
        for t in range(-4, 5):
            assert poly.at(t) + poly.at(-t) == 2 * enriques.chi + ll * t * t


def test_chi_serre_symmetry(dp4, enriques):
    # chi(L) agrees with chi(K - L) on random integral divisors
    rng = random.Random(11)
    for surface in (dp4, enriques):
        n = surface.num.rank
        for _ in range(25):
            div = surface.divisor([rng.randint(-3, 3) for _ in range(n)])
            dual = surface.divisor(
                [k - c for k, c in zip(surface.canonical, div.coeffs)]
            )
            assert chi_polynomial(surface, div).value == chi_polynomial(surface, dual).value


# -- adjunction ----------------------------------------------------------------


def test_adjunction_trivial_canonical():
    z = SurfaceModel(Lattice(((2,),), ("D",)), (0,), 1)
    d = z.divisor([1])
    assert adjunction_degree(z, d) == 2
    assert curve_euler_characteristic(z, d) == -1


def test_adjunction_zero_divisor(enriques):
    assert adjunction_degree(enriques, enriques.divisor([0] * 10)) == 0


@pytest.mark.parametrize("l,b", [(2, -2), (1, -2), (3, 0), (4, 2)])
def test_adjunction_on_cone_section(l, b):
    # ruled lattice over a genus-g base: E^2 = -l, fiber F, K = -2E + (b - l)F
    lat = Lattice(((-l, 1), (1, 0)), ("E", "F"))
    p = SurfaceModel(lat, (-2, b - l), 1)
    e = p.divisor({"E": 1})
    assert adjunction_degree(p, e) == b


# -- contraction ---------------------------------------------------------------


def test_contract_t237(enriques):
    result = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    z = result.surface
    assert z.num.rank == 1
    assert z.num.gram == ((2,),)
    assert z.canonical == (0,)
    assert z.chi == 1
    assert is_primitive_embedding(result.embedding)


def test_contract_nothing(enriques):
    result = contract(enriques, [])
    assert result.surface.num.gram == enriques.num.gram


def test_contract_single_curve(enriques):
    result = contract(enriques, [enriques.curve("C9")])
    assert result.surface.num.rank == 9


def test_contract_rejects_indefinite(enriques):
    with pytest.raises(ValueError):
        contract(enriques, [enriques.divisor(COMBINATION)])  # square +2


def test_contract_rejects_non_crepant():
    s = SurfaceModel(Lattice(((-1,),), ("E",)), (1,), 1)
    with pytest.raises(ValueError):
        contract(s, [s.curve("E")])


def test_contract_rejects_fractional_curves(enriques):
    with pytest.raises(ValueError):
        contract(enriques, [enriques.divisor({"C9": Fraction(1, 2)})])


def test_pushforward_of_combination(enriques):
    result = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    image = result.pushforward(enriques.divisor(COMBINATION))
    assert image.coeffs == (1,)


def test_pushforward_requires_orthogonality(enriques):
    result = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    with pytest.raises(ValueError):
        result.pushforward(enriques.curve("C9"))


# -- rational pullback ----------------------------------------------------------


def test_mumford_pullback_d5_values():
    result = mumford_pullback(d5_resolution())
    assert result.coefficients == (
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
        Fraction(1, 2),
        Fraction(1, 2),
    )
    assert result.rational_self == Fraction(1, 4)
    assert not result.integral


def test_mumford_pullback_orthogonality():
    cfg = d5_resolution()
    result = mumford_pullback(cfg)
    gram = cfg.exceptional.gram
    for j in range(5):
        total = sum(
            c * gram[i][j] for i, c in enumerate(result.coefficients)
        )
        assert total + cfg.strict_meets[j] == 0


def test_mumford_pullback_a1():
    cfg = ResolutionConfig(root_lattice("A1"), (1,), Fraction(-1))
    result = mumford_pullback(cfg)
    assert result.coefficients == (Fraction(1, 2),)
    assert result.rational_self == Fraction(-1, 2)


def test_mumford_pullback_disjoint():
    cfg = ResolutionConfig(root_lattice("A1"), (0,), Fraction(-2))
    result = mumford_pullback(cfg)
    assert result.coefficients == (Fraction(0),)
    assert result.rational_self == -2
    assert result.integral


def test_reverse_direction_recovers_strict_square():
    cfg = d5_resolution()
    reverse = strict_self_from_rational(
        cfg.exceptional, cfg.strict_meets, Fraction(1, 4)
    )
    assert reverse.strict_self == Fraction(-3, 2)
    assert not reverse.integral
    # both directions agree
    forward = mumford_pullback(cfg)
    assert forward.rational_self == Fraction(1, 4)


def test_resolution_config_rejects_indefinite():
    with pytest.raises(ValueError):
        ResolutionConfig(root_lattice("H"), (0, 0), Fraction(-1))


def test_round_trip_orthogonal_divisor():
    # a strict transform already orthogonal to the configuration needs no correction
    cfg = ResolutionConfig(root_lattice("D4"), (0, 0, 0, 0), Fraction(-4))
    result = mumford_pullback(cfg)
    assert all(c == 0 for c in result.coefficients)
    assert result.rational_self == -4


# -- relative canonical ----------------------------------------------------------


def test_relative_canonical_crepant():
    result = relative_canonical(root_lattice("E8"), (0,) * 8)
    assert all(c == 0 for c in result.coefficients)
    assert result.all_nonpositive


def test_relative_canonical_minus_one_curve():
    result = relative_canonical(Lattice(((-1,),), ("E",)), (-1,))
    assert result.coefficients == (Fraction(1),)
    assert not result.all_nonpositive


def test_relative_canonical_minimal_resolution_sign():
    # nonnegative K-degrees (minimal resolution) force nonpositive coefficients
    rng = random.Random(3)
    e8 = root_lattice("E8")
    for _ in range(20):
        k_dot_e = [rng.randint(0, 3) for _ in range(8)]
        result = relative_canonical(e8, k_dot_e)
        assert result.all_nonpositive


# -- conductrix multipliers -------------------------------------------------------


def test_conductrix_multipliers_t237(enriques):
    curve = enriques.divisor(CONDUCTRIX)
    config = [enriques.curve(l) for l in CONTRACTED]
    sol = conductrix_multipliers(enriques, curve, config)
    assert sol is not None
    assert sol.integral
    # independent check by substitution into the defining system
    for j, e in enumerate(config):
        lhs = enriques.inner(curve, e)
        rhs = sum(
            m * enriques.inner(ei, e) for m, ei in zip(sol.values, config)
        )
        assert lhs == rhs


def test_conductrix_multipliers_zero(enriques):
    config = [enriques.curve(l) for l in CONTRACTED]
    sol = conductrix_multipliers(enriques, enriques.divisor([0] * 10), config)
    assert sol is not None
    assert all(v == 0 for v in sol.values)


def test_conductrix_multipliers_transverse_a1():
    lat = Lattice(((-2, 1), (1, -2)), ("E", "C"))
    s = SurfaceModel(lat, (0, 0), 1)
    sol = conductrix_multipliers(s, s.curve("C"), [s.curve("E")])
    assert sol is not None
    assert sol.values == (Fraction(-1, 2),)
    assert not sol.integral


# -- pushforward report ------------------------------------------------------------


def test_pushforward_check_combination(enriques):
    contraction = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    report = pushforward_check(enriques, contraction, enriques.divisor(COMBINATION))
    assert report.orthogonal
    assert report.self_intersection == 2
    assert report.mumford_self == 2


def test_pushforward_check_image_curve(enriques):
    contraction = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    report = pushforward_check(enriques, contraction, enriques.curve("C0"))
    assert not report.orthogonal
    assert report.mumford_self == Fraction(1, 2)


def test_pushforward_check_contracted_curve(enriques):
    contraction = contract(enriques, [enriques.curve(l) for l in CONTRACTED])
    report = pushforward_check(enriques, contraction, enriques.curve("C9"))
    assert not report.orthogonal
    assert report.mumford_self == 0  # contracted curves die


# -- surface model validation -------------------------------------------------------


def test_surface_model_rejects_degenerate_lattice():
    with pytest.raises(ValueError):
        SurfaceModel(root_lattice("E8~"), (0,) * 9, 1)


def test_surface_model_rejects_bad_canonical(enriques):
    with pytest.raises(ValueError):
        SurfaceModel(enriques.num, (0,) * 9, 1)


def test_divisor_json_round_trip(dp4):
    d = Divisor((Fraction(1, 2), ))
    assert Divisor.from_json(d.to_json()) == d
    assert Divisor.from_json({"coeffs": ["1/2"]}) == d


def test_surface_json_round_trip(enriques):
    again = SurfaceModel.from_json(enriques.to_json())
    assert again.num.gram == enriques.num.gram
    assert again.canonical == enriques.canonical
