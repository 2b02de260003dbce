"""Universal and germ groupoids of finite inverse semigroups, their mirrors,
twisted convolution algebras and exhaustive chirality search."""

from .algebra import TwistedAlgebra, algebras_isomorphic, build_algebra, opposite_algebra, pullback_map
from .chirality import (
    DecoratedSemigroup,
    GroupoidIso,
    Isotopism,
    RepresentedSemigroup,
    WeightFunction,
    autotopism_group,
    chirality_index,
    enumerate_groupoid_isos,
    enumerate_isotopisms,
    enumerate_represented_isotopisms,
    mirror_set_groupoid,
    mirror_set_represented,
    mirror_set_semigroup,
    self_oppositeness_verdict,
    verify_transport,
)
from .corpus import builtin
from .groupoid import (
    FiniteGroupoid,
    build_germ_groupoid,
    build_universal_groupoid,
    canonical_universal_mirror,
    enumerate_characters,
    germ_mirror_square,
    germ_to_universal,
    opposite_groupoid,
)
from .reports import DomainError, FormatError, GuardrailError, ValidationReport, VerificationFailed
from .semigroup import (
    FiniteInverseSemigroup,
    PartialBijection,
    Representation,
    mirror_representation,
    mirror_semigroup,
    validate_inverse_semigroup,
    wagner_preston,
)
from .twists import CircleValue, TwistData, induce_cocycle, mirror_cocycle, mirror_twist, validate_twist_data, verify_universal_bridge

__version__ = "0.1.0"
