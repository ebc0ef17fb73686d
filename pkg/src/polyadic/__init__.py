"""Finite polyadic (n-ary) groups.

Construction and validation of n-ary groups from binary groups, the
Hosszu-Gluskin decomposition, automorphisms, autotopies, homomorphisms and
matrix representations over prime fields, each with a brute-force oracle.
"""

from .config import LIMITS, Limits
from .errors import *  # noqa: F401,F403
from .group_core import (
    ElementMap,
    FiniteGroup,
    center,
    centralizer,
    commutator_of_autos,
    cyclic_group,
    direct_product,
    enumerate_automorphisms,
    find_isomorphism,
    inner_automorphism,
    inverse_of,
    is_automorphism,
    is_homomorphism,
    klein_four_group,
    multiplicative_group,
    product,
    symmetric_group,
    translation,
    trivial_group,
    validate_group,
)
from .kernels import BACKEND
from .linalg_fp import Matrix
from .morphisms import (
    Homotopy,
    aut_group_structure,
    autotopy_decompose,
    build_hom_abelian,
    build_hom_to_dern,
    compose_homotopies,
    conjugation_check,
    decompose_hom_abelian,
    decompose_hom_dern,
    decompose_hom_general,
    decompose_hom_to_dern,
    decompose_homotopy_dern,
    enumerate_automorphisms_brute,
    enumerate_automorphisms_structural,
    enumerate_autotopies,
    enumerate_autotopies_brute,
    enumerate_homomorphisms,
    is_homomorphism_nary,
    is_homotopy,
    isotopy_from_dern,
    isotopy_to_dern,
)
from .polyadic_core import (
    DerivedSpec,
    PolyadicGroup,
    PolyadicQuasigroup,
    check_dornte,
    check_skew_distribution,
    der_n,
    derive,
    derive_linear_quasigroup,
    evaluate,
    hg_decompose,
    idempotents,
    is_medial,
    is_semiabelian,
    retract,
    skew,
    validate_polyadic_group,
    validate_quasigroup,
    z_star,
)
from .representations import (
    FieldSpec,
    Representation,
    build_representation,
    character,
    decompose_representation,
    enumerate_degree1_reps,
    is_representation,
)

__version__ = "0.1.0"
