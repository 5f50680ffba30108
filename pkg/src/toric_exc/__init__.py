"""Exact computations on smooth complete toric varieties of Picard number three.

Fans and class groups, reduced homology of primitive-collection complexes,
line-bundle cohomology, Frobenius push-forward splittings, and verification
of strongly exceptional collections of line bundles.
"""
__version__ = "0.1.0"

from .batyrev import BatyrevParams, FamilyParams, build_batyrev, build_family
from .cohomology import cohomology_dims, h0, is_acyclic, is_acyclic_family
from .exceptional import build_col, build_diff, koszul_generation_check, verify_strongly_exceptional
from .fan import Fan, primitive_collections, validate_fan
from .frobenius import b_prime, bondal_image, bondal_split, thomsen_split
from .homology import PrimComplex, forbidden_sets, snf_homology
from .picard import class_group

__all__ = [
    "__version__",
    "BatyrevParams", "FamilyParams", "build_batyrev", "build_family",
    "cohomology_dims", "h0", "is_acyclic", "is_acyclic_family",
    "build_col", "build_diff", "koszul_generation_check", "verify_strongly_exceptional",
    "Fan", "primitive_collections", "validate_fan",
    "b_prime", "bondal_image", "bondal_split", "thomsen_split",
    "PrimComplex", "forbidden_sets", "snf_homology",
    "class_group",
]
