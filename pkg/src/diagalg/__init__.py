"""
diagalg: exact-arithmetic diagram algebras.

Ten families of set-partition diagram algebras with a loop parameter, their
cell and Specht modules as explicit matrices over exact rational polynomials,
the module spanned by the star-self-dual diagrams, and an exact linear
algebra harness that machine-checks the structural claims (module axioms,
dimension bookkeeping, multiplicity-freeness and completeness) at desk scale.
"""

from .diagrams import (
    ALL_TAGS,
    ComposeResult,
    Diagram,
    Family,
    Node,
    WALLED_TAGS,
    a_rank,
    compose,
    enumerate_diagrams,
    enumerate_filtered,
    family,
    format_diagram,
    is_member,
    is_planar,
    is_self_dual,
    parse,
    pi_of,
    rank,
    star,
)
from .scalars import DeltaPoly, Rational, parse_poly, parse_rational
from .symgroup import (
    IntPartition,
    Permutation,
    inv_stat,
    involutions,
    partitions,
    product_rep,
    specht_rep,
    standard_tableaux,
    sym_model_action,
    syt_count,
)
from .algebra import (
    AlgebraElement,
    GroupDescriptor,
    JClassId,
    algebra_dimension_identity,
    identity,
    j_class,
    left_class_of,
    left_equivalent,
    multiply,
    right_equivalent,
    spectrum,
)
from .specht import (
    CellModule,
    RepMatrices,
    SpechtModule,
    all_specht_modules,
    cell_module,
    rank_idempotent,
    right_G_action,
    specht_module,
)
from .model import ModelBasis, ModelVector, model_act, model_basis, model_matrices
from .verify import (
    Report,
    check_gelfand,
    check_module_axioms,
    commutant_dim,
    intertwiner_dim,
    nullspace,
    rref,
    sample_deltas,
    sym_model_commutant_dim,
)

__version__ = "0.1.0"
