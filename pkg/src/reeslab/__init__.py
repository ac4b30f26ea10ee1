"""Levi monoids, left Rees monoids and self-similar group actions over finite groups."""

from .bimodule import (
    Bimodule,
    GroupData,
    PointedBimodule,
    basis_transversal,
    classify,
    conjugate_group_data,
    extract_group_data,
    from_group_data,
    goursat_form,
)
from .groups import (
    FiniteGroup,
    FiniteOracle,
    IntegerOracle,
    PartialHom,
    Subgroup,
    cyclic_group,
    group_from_mul_table,
    group_from_permutations,
    left_cosets,
    partial_hom,
    subgroup_closure,
    symmetric_group,
)
from .selfsim import (
    ReesElement,
    ReesMonoid,
    SelfSimilarAction,
    act_word,
    from_covering_bimodule,
    from_endomorphism,
    from_group_data_action,
    make_action,
    rebase,
    rees_mul,
    res_word,
    validate_action,
)
from .tensor import TensorElement, TensorMonoid, extend_morphism

__version__ = "0.1.0"
