"""permdeg: exact minimal faithful permutation degrees of finite groups."""

from .errors import (
    DomainError,
    ExprSyntaxError,
    GroupFormatError,
    InternalInvariantError,
    InvalidActionError,
    PermdegError,
    PreconditionError,
    ResourceCapError,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    PrimaryDecomposition,
    Subgroup,
    SubgroupLattice,
    abelian_basis,
    center,
    core,
    direct_product,
    from_multiplication_table,
    inversion_action,
    load_table_file,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_generalized_quaternion,
    make_SL2,
    make_symmetric,
    minimal_normal_subgroups,
    primary_decomposition,
    quotient_group,
    semidirect_product,
    socle,
    subgroup_as_group,
    torsion_layer,
    trivial_action,
)
from .gfp import (
    MatrixGFp,
    SubspaceGFp,
    block_row_permutation,
    det,
    det_laplace,
    nullspace,
    recover_coordinate_basis,
    rref,
)
from .solver import (
    ORACLE_CAP,
    AdditivityRecord,
    DecompositionReport,
    IncompressibleVerdict,
    Representation,
    SemidirectBoundReport,
    SocleReport,
    SolveResult,
    abelian_witness,
    check_decomposition,
    classify_incompressible,
    compression_ratio,
    cr_monotonicity_check,
    degree,
    find_weak_decomposition,
    induced_representation,
    is_CS,
    is_CSE,
    is_faithful,
    kernel_bits,
    m_value,
    mu_abelian,
    mu_exact,
    mu_oracle,
    realize_action,
    reduce_to_meet_irreducible,
    representation,
    semidirect_bound_check,
    socle_induced_properties_check,
    verify_additivity,
    weak_decomposition_inequality_check,
)
from .catalog import (
    CatalogEntry,
    GroupExpr,
    build,
    catalog,
    declared_order,
    expr_to_string,
    load_semidirect,
    normalize_expr_string,
    parse_group_expr,
)

__version__ = "0.1.0"
