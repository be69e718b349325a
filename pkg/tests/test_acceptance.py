"""Acceptance suite: every numeric check is exact (tolerance zero).

Each criterion prints one PASS/FAIL line; run with ``pytest -s`` to see
them.  A FAIL line always comes with a failing assertion.
"""

import itertools
import random
import subprocess
import sys
from fractions import Fraction

from fano_lattice.exact import FiniteAbelianGroup
from fano_lattice.fano import (
    FanoData,
    cone_invariants,
    denormalization_chi,
    pushout_anticanonical_cube,
    scenario_t237,
)
from fano_lattice.groupscheme import component_quotient, enriques_pic_tau, upsilon
from fano_lattice.intersection import (
    ResolutionConfig,
    SurfaceModel,
    adjunction_degree,
    chi_polynomial,
    contract,
    curve_euler_characteristic,
    mumford_pullback,
    pushforward_check,
    strict_self_from_rational,
)
from fano_lattice.lattice import (
    INDEFINITE,
    NEG_DEFINITE,
    NEG_SEMIDEFINITE,
    Lattice,
    definiteness,
    discriminant_group,
    isotropic_subgroups,
    restrict,
    root_lattice,
    sublattice_index,
)
from fano_lattice.semilinear import (
    FiniteField,
    PLinearMap,
    has_max_rank,
    hw_rank,
    rank_sequence_check,
    semilinear_conjugate,
)
from fano_lattice.witt import WittRing

T237_ORDER = ("C1", "C3", "C4", "C2", "C5", "C6", "C7", "C8", "C0", "C9")
CONTRACTED = ("C1", "C3", "C4", "C2", "C5", "C6", "C7", "C8", "C9")
COMBINATION = {"C1": 4, "C3": 8, "C4": 12, "C2": 6, "C5": 10, "C6": 8, "C7": 6, "C8": 4, "C0": 2, "C9": 1}


def report(number: int, ok: bool, description: str) -> None:
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {description}")
    assert ok, f"acceptance criterion {number} failed: {description}"


def enriques_surface() -> SurfaceModel:
    return SurfaceModel(root_lattice("T237"), (0,) * 10, 1)


def test_criterion_1_t237_lattice():
    lat = root_lattice("T237")
    info = definiteness(lat)
    ok = lat.rank == 10
    ok = ok and abs(lat.determinant()) == 1
    ok = ok and info.kind == INDEFINITE and info.signature == (1, 9, 0)
    e8 = definiteness(restrict(lat, T237_ORDER[:8]))
    ok = ok and e8.kind == NEG_DEFINITE
    aff = definiteness(restrict(lat, T237_ORDER[:9]))
    ok = ok and aff.kind == NEG_SEMIDEFINITE
    ok = ok and aff.kernel is not None and len(aff.kernel) == 1
    ok = ok and aff.kernel[0][T237_ORDER.index("C0")] == 1
    report(1, ok, "T237 lattice: rank 10, |det| 1, signature (1,9), subconfigurations")


def test_criterion_2_contraction():
    surface = enriques_surface()
    result = contract(surface, [surface.curve(l) for l in CONTRACTED])
    z = result.surface
    ok = z.num.rank == 1 and z.num.gram == ((2,),)
    combo = surface.divisor(COMBINATION)
    rep = pushforward_check(surface, result, combo)
    ok = ok and rep.orthogonal and rep.self_intersection == 2
    report(2, ok, "contraction: Num(Z) rank 1 with square-2 generator, combination orthogonal")


def test_criterion_3_mumford_pullback():
    surface = enriques_surface()
    result = contract(surface, [surface.curve(l) for l in CONTRACTED])
    d0 = pushforward_check(surface, result, surface.curve("C0"))
    ok = d0.mumford_self == Fraction(1, 2)
    gram = (
        (-2, 1, 0, 0, 0),
        (1, -2, 1, 0, 0),
        (0, 1, -2, 0, 0),
        (0, 0, 0, -2, 0),
        (0, 0, 0, 0, -2),
    )
    exceptional = Lattice(gram, ("E1", "E2", "E3", "E4", "E5"))
    forward = mumford_pullback(
        ResolutionConfig(exceptional, (0, 0, 1, 1, 1), Fraction(-3, 2))
    )
    ok = ok and forward.coefficients == (
        Fraction(1, 4), Fraction(2, 4), Fraction(3, 4), Fraction(2, 4), Fraction(2, 4),
    )
    ok = ok and forward.rational_self == Fraction(1, 4)
    reverse = strict_self_from_rational(exceptional, (0, 0, 1, 1, 1), Fraction(1, 4))
    ok = ok and reverse.strict_self == Fraction(-3, 2) and not reverse.integral
    report(3, ok, "Mumford pullback: D0^2 = 1/2, lambda = (1,2,3,2,2)/4, -3/2 flagged")


def test_criterion_4_discriminant_machinery():
    d5 = discriminant_group(root_lattice("D5"))
    ok = d5.group.cyclic_orders == (4,)
    ok = ok and len(isotropic_subgroups(d5)) == 1
    ok = ok and discriminant_group(root_lattice("E8")).group.is_trivial
    gram = tuple(
        tuple((1 if i == j == 0 else (-1 if i == j else 0)) for j in range(6))
        for i in range(6)
    )
    big = Lattice(gram, ("h", "e1", "e2", "e3", "e4", "e5"))
    rows = (
        (-3, 1, 1, 1, 1, 1),
        (1, -1, -1, -1, 0, 0),
        (0, 1, -1, 0, 0, 0),
        (0, 0, 1, -1, 0, 0),
        (0, 0, 0, 1, -1, 0),
        (0, 0, 0, 0, 1, -1),
    )
    small = Lattice(
        tuple(tuple(int(x) for x in row) for row in big.pairing_matrix(rows)),
        tuple(f"r{i}" for i in range(6)),
    )
    ok = ok and abs(big.determinant()) == 1 and abs(small.determinant()) == 16
    ok = ok and sublattice_index(big, rows) == 4
    report(4, ok, "discriminants: D5 -> Z/4 with no isotropic subgroups, E8 trivial, index 4")


def test_criterion_5_riemann_roch():
    dp4 = SurfaceModel(Lattice(((1,),), ("A",)), (-2,), 1)
    chi = chi_polynomial(dp4, dp4.divisor([1]))
    ok = chi.value == Fraction(5, 2) and not chi.always_integral
    surface = enriques_surface()
    result = contract(surface, [surface.curve(l) for l in CONTRACTED])
    z = result.surface
    d = result.pushforward(surface.divisor(COMBINATION))
    ok = ok and adjunction_degree(z, d) == 2
    ok = ok and curve_euler_characteristic(z, d) == -1
    report(5, ok, "Riemann-Roch: chi(A) = 5/2 flagged, deg omega_D = 2, chi(O_D) = -1")


def test_criterion_6_cone_and_pushout():
    cone = cone_invariants(FanoData(2, Fraction(4), 1, 1), 1).fano
    ok = (cone.dim, cone.degree, cone.index) == (3, Fraction(32), 2)
    ok = ok and denormalization_chi(1, 1, 1) == 1
    ok = ok and pushout_anticanonical_cube(4) == 4
    plane = cone_invariants(FanoData(2, Fraction(9), 3, 1), 3).fano
    ok = ok and plane.degree == 64
    report(6, ok, "cone: (3, 32, index 2), chi(O_Y) = 1, (-K_Y)^3 = 4, plane case 64")


def test_criterion_7_upsilon_trichotomy():
    ok = upsilon(enriques_pic_tau("ordinary")).is_trivial
    classical = upsilon(enriques_pic_tau("classical"))
    ok = ok and classical.etale_p_group.cyclic_orders == (2,) and not classical.local_pieces
    supersingular = upsilon(enriques_pic_tau("supersingular"))
    ok = ok and supersingular.local_pieces == (2,) and supersingular.etale_p_group.is_trivial
    from test_groupscheme import random_group_scheme

    rng = random.Random(2024)
    for _ in range(100):
        p = rng.choice([2, 3])
        g, h = random_group_scheme(rng, p), random_group_scheme(rng, p)
        if upsilon(g.times(h)) != upsilon(g).times(upsilon(h)):
            ok = False
            break
    ok = ok and component_quotient(
        FiniteAbelianGroup.from_orders([12]), 2
    ).cyclic_orders == (4,)
    report(7, ok, "upsilon: trichotomy, product law on 100 random pairs, Z/12 -> Z/4")


def _random_matrix(field, n, rng):
    elems = field.elements()
    return tuple(
        tuple(elems[rng.randrange(len(elems))] for _ in range(n)) for _ in range(n)
    )


def _random_invertible(field, n, rng):
    from fano_lattice.semilinear import _matrix_rank

    while True:
        m = _random_matrix(field, n, rng)
        if _matrix_rank(field, m) == n:
            return m


def test_criterion_8_semilinear_suite():
    ok = True
    for p, e in ((2, 1), (3, 1), (2, 2), (3, 2)):
        field = FiniteField(p, e)
        rng = random.Random(1000 * p + e)
        for _ in range(200):
            n = rng.randint(1, 3)
            f = PLinearMap(field, _random_matrix(field, n, rng))
            s = _random_invertible(field, n, rng)
            if hw_rank(semilinear_conjugate(f, s)) != hw_rank(f):
                ok = False
    for p, e in ((2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)):
        field = FiniteField(p, e)
        rng = random.Random(10 * p + e)
        for n in (1, 2, 3):
            zero = tuple(tuple(field.zero for _ in range(n)) for _ in range(n))
            eye = tuple(
                tuple(field.one if i == j else field.zero for j in range(n))
                for i in range(n)
            )
            samples = [zero, eye, _random_matrix(field, n, rng)]
            if field.order ** n <= 1024:
                samples.append(_random_matrix(field, n, rng))
            for m in samples:
                f = PLinearMap(field, m)
                images = {
                    f.apply(v)
                    for v in itertools.product(field.elements(), repeat=n)
                }
                if has_max_rank(f) != (len(images) == field.order**n):
                    ok = False
    for trial in range(100):
        rng = random.Random(3000 + trial)
        field = FiniteField(*rng.choice([(2, 1), (2, 2), (3, 1)]))
        r, q = rng.randint(1, 2), rng.randint(1, 2)
        n = r + q
        m = [[field.zero] * n for _ in range(n)]
        elems = field.elements()
        for i in range(n):
            for j in range(n):
                if not (i >= r and j < r):
                    m[i][j] = elems[rng.randrange(len(elems))]
        f = PLinearMap(field, tuple(tuple(row) for row in m))
        sub = [
            tuple(field.one if j == i else field.zero for j in range(n))
            for i in range(r)
        ]
        if not rank_sequence_check(f, sub).lemma_holds:
            ok = False
    report(8, ok, "semilinear: 200 conjugations x 4 fields, bijectivity <= 16, 100 lemma instances")


def test_criterion_9_witt_rings():
    ok = True
    for p in (2, 3):
        for m in (1, 2, 3):
            ring = WittRing(FiniteField(p), m)
            modulus = p**m
            table = {}
            x = ring.zero
            for n in range(modulus):
                table[n] = x
                x = ring.add(x, ring.one)
            if x != ring.zero or len(set(table.values())) != modulus:
                ok = False
                continue
            for a in range(modulus):
                for b in range(modulus):
                    if ring.add(table[a], table[b]) != table[(a + b) % modulus]:
                        ok = False
                    if ring.mul(table[a], table[b]) != table[(a * b) % modulus]:
                        ok = False
    f4 = FiniteField(2, 2)
    ring = WittRing(f4, 2)
    for a in ring.elements():
        if ring.frobenius(ring.verschiebung(a)) != ring.verschiebung(ring.frobenius(a)):
            ok = False
    big = WittRing(FiniteField(3), 3)
    target = WittRing(FiniteField(3), 2)
    elements = list(big.elements())
    rng = random.Random(9)
    for _ in range(150):
        a, b = rng.choice(elements), rng.choice(elements)
        if target.add(big.project(a, 2), big.project(b, 2)) != big.project(big.add(a, b), 2):
            ok = False
        if target.mul(big.project(a, 2), big.project(b, 2)) != big.project(big.mul(a, b), 2):
            ok = False
    report(9, ok, "Witt: W_m(F_p) = Z/p^m for p in {2,3}, m <= 3; FV = VF on W2(F4); projections")


def test_criterion_10_end_to_end():
    ok = scenario_t237().passed
    good = subprocess.run(
        [sys.executable, "-m", "fano_lattice", "scenario", "t237"],
        capture_output=True,
        text=True,
    )
    ok = ok and good.returncode == 0 and "FAIL" not in good.stdout
    bad = subprocess.run(
        [sys.executable, "-m", "fano_lattice", "scenario", "t237", "--perturb"],
        capture_output=True,
        text=True,
    )
    ok = ok and bad.returncode == 1 and "FAIL" in bad.stdout
    report(10, ok, "scenario t237 exits 0 all-PASS; perturbed negative control exits 1")
