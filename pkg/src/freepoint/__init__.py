"""Free points and irreducible hypersurfaces over finite fields.

The package decides, with exact arithmetic throughout, whether a point
of projective space over a finite-field extension lies on any degree-d
hypersurface defined over the base field; enumerates and classifies
whole spaces of hypersurfaces; certifies the combinatorial inequality
chains behind those existence results; and constructs maximal linear
systems whose members are all reducible, or all irreducible.

Module map:

    fields    nested extension towers F_p < ... < K with raw arithmetic
    forms     dense homogeneous forms, projective points, enumeration
    orbit     rank tests, freeness certificates, Galois orbits
    search    seeded free-point search and the recorded witness cases
    exactnum  exact sign/compare for sums of rational powers of q
    bounds    the inequality ledger: N_i/M_e, u/v majorants, claim chain
    factor    trial-division factorization, censuses, point-count bounds
    linsys    extremal linear systems and the reducible locus
    cli       one executable front end over all of the above
"""

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    DegreeTooSmall,
    DivisionByZero,
    Error,
    Exhausted,
    HypothesisViolated,
    ModulusNotIrreducible,
    NotADivisor,
    NotPrime,
    ParamMismatch,
    PointNotFree,
    RaggedInput,
    RangeError,
    SearchExhausted,
    TowerMismatch,
)
from .fields import (
    FieldElement,
    FieldTower,
    basis_over,
    coords_over,
    element_degree,
    embed,
    extended_tower,
    first_irreducible_modulus,
    frobenius,
    make_tower,
    reassemble,
)
from .forms import (
    Form,
    ParamSet,
    ProjectivePoint,
    enumerate_forms,
    enumerate_monomials,
    enumerate_projective_points,
    eval_form,
    form_at_index,
    form_count,
    monomial_index,
    multiply_forms,
    point_at_index,
    point_count,
)
from .orbit import (
    GreedyReport,
    IndependenceMatrix,
    OrbitCertificate,
    conditions_rank,
    determinant,
    galois_orbit,
    greedy_point_selection,
    is_free_point,
    kernel_basis,
    monomial_value_matrix,
    rref,
    solve_linear,
    stacked_condition_rows,
)
from .search import (
    SearchConfig,
    SearchReport,
    WitnessCase,
    find_free_point,
    fixture_digests,
    load_witness_cases,
    run_search,
    search_q2,
    splitmix64,
    verify_witness,
    witness_point,
)
from .exactnum import PowSum, QSqrt, mixed_sign, prime_power, qsqrt_sign, round_decimal
from .bounds import (
    BoundsReport,
    ClaimReport,
    ClaimStep,
    LemmaCheck,
    QdReport,
    check_claim_chain,
    check_lemma_chain,
    check_qd_case,
    decimal_of,
    exact_json,
    m_e,
    n_i,
    psi,
    psi_grid_max_at_3,
    theta,
    theta_nonincreasing_in_q,
    u1,
    u1_power_sum,
    u2,
    u2_power_sum,
    v1,
    v2,
)
from .factor import (
    CafureMateraReport,
    CensusReport,
    FactorizationReport,
    SerreReport,
    SpaceFillingReport,
    cafure_matera_holds,
    census,
    check_cafure_matera,
    check_serre,
    check_space_filling,
    count_points,
    divide_forms,
    is_geometrically_reducible,
    is_reducible_over,
    serre_bound,
)
from .linsys import (
    LinearSystem,
    MemberReport,
    ReducibleLocusReport,
    VanishingSpace,
    build_l_irr,
    build_l_red,
    intersection_dimension,
    intersection_member,
    random_system,
    reducible_locus_counts,
    vanishing_space,
    verify_members,
)

__all__ = [name for name in dir() if not name.startswith("_")]
