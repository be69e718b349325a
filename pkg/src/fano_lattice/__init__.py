"""Exact-arithmetic toolkit for curve-configuration lattices, discriminant
forms, Frobenius-semilinear algebra, Witt vectors, group-scheme torsion
quotients and Fano cone invariants."""

from .exact import (
    FiniteAbelianGroup,
    Rational,
    det_exact,
    format_rational,
    parse_rational,
    smith_normal_form,
    solve_exact,
)
from .lattice import (
    Definiteness,
    DiscriminantForm,
    DualGraph,
    Lattice,
    definiteness,
    direct_sum,
    discriminant_group,
    gram_from_dual_graph,
    isotropic_subgroups,
    named_graph,
    orthogonal_complement,
    overlattices,
    restrict,
    root_lattice,
    sublattice_index,
)
from .intersection import (
    ChiPolynomial,
    Contraction,
    Divisor,
    ResolutionConfig,
    SurfaceModel,
    adjunction_degree,
    chi_polynomial,
    conductrix_multipliers,
    contract,
    curve_euler_characteristic,
    mumford_pullback,
    pushforward_check,
    relative_canonical,
    strict_self_from_rational,
)
from .semilinear import (
    FiniteField,
    PLinearMap,
    has_max_rank,
    hw_det_class,
    hw_rank,
    rank_sequence_check,
    semilinear_conjugate,
)
from .witt import WittRing
from .groupscheme import (
    FiniteUnipotentData,
    GroupSchemeData,
    component_quotient,
    enriques_pic_tau,
    rdp_class_group,
    upsilon,
)
from .fano import (
    FanoData,
    ScenarioReport,
    cone_invariants,
    degree_parity_gate,
    denormalization_chi,
    pushout_anticanonical_cube,
    scenario_t237,
)

__version__ = "0.1.0"
