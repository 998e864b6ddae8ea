"""Finite groupoids: structure, subgroupoids, cosets, Lagrange and Sylow theory, classification."""

from .errors import GroupoidError
from .groups import (
    FiniteGroup,
    Subgroup,
    catalog_group,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    klein,
    power_automorphism,
    semidirect_product,
    symmetric,
)
from .groupoid import (
    Groupoid,
    GroupoidElement,
    RawGroupoid,
    coarse,
    disjoint_union,
    from_group,
    make_connected,
    make_groupoid,
    structure,
    validate_raw,
)
from .subgroupoids import (
    Subgroupoid,
    coset,
    enumerate_subgroupoids,
    index_bruteforce,
    index_formula,
    lagrange_identity_check,
    product_subgroupoid,
    subgroupoid_from_blocks,
    validate_subgroupoid,
)
from .sylow import (
    SylowProfile,
    enumerate_dp_sylow,
    enumerate_DP_sylow,
    first_sylow_construct,
    is_characteristic,
    is_normal,
)
from .classify import enumerate_groupoids, groupoid_count, partitions

__version__ = "0.1.0"
