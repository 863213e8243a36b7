"""Exact-arithmetic tests and constructions for shape-transitive
permutation sets, with the split basis of the class-sum algebra of the
symmetric group."""

from .characters import CharacterTable, character_table, class_size, mn_character
from .constructions import (
    BijectionAssignment,
    BlockDesign,
    FiniteField,
    agl_halved,
    classical_group,
    fano_design,
    load_design,
    nu_identities_check,
    product_construct,
    validate_design,
)
from .errors import CapExceeded, ParseError
from .partitions import (
    depth,
    dominates,
    format_partition,
    hook_degree,
    kostka,
    multinomial,
    parse_partition,
    partitions_of,
    refines,
    up_set,
)
from .perm import (
    Permutation,
    PermSet,
    closure,
    compose,
    cycle_type,
    dump_permset,
    identity,
    inverse,
    load_permset,
    parse_perm,
    read_permset,
)
from .scheme import (
    SchemeMatrix,
    class_matrix,
    coeffs_m,
    coeffs_n,
    idempotent,
    krein,
    split_matrix,
)
from .tabloids import (
    Tabloid,
    YoungCoset,
    act,
    fixed_tabloid_count,
    tabloids_of_shape,
    young_subgroup,
)
from .transitivity import (
    DistributionVector,
    DivisibilityResult,
    TransitivityVerdict,
    check,
    check_character,
    check_group_orbit,
    check_oracle,
    divisibility_check,
    dual_distribution,
    inner_distribution,
    orbit_count,
    pair_class_distribution,
    profile,
    transitivity_table,
)

__version__ = "0.1.0"
