"""Combinatorics of finitely aligned k-graphs and exact checks of their
Cuntz-Krieger relations on finite matrix families."""

from .boundary import BoundaryPath, aperiodicity_report, boundary_paths, boundary_prefix
from .ck import (
    CheckReport, GeneratorFamily, OperatorFamily, boundary_representation, check_ck_family,
    check_classical_relations, check_generator_family, check_variant_relations,
    extend_generators, restrict, structural_suite,
)
from .core import f_n_report, gauge_expectation, pi_closure, t_extension_set, theta_support
from .extensions import is_exhaustive, lambda_min, mce, vee_closure
from .fixtures import fixture, omega
from .paths import KGraph, Path
from .skeleton import Edge, Skeleton, Square, product_skeleton, validate_skeleton

__all__ = [
    "BoundaryPath", "CheckReport", "Edge", "GeneratorFamily", "KGraph", "OperatorFamily", "Path",
    "Skeleton", "Square", "aperiodicity_report", "boundary_paths", "boundary_prefix",
    "boundary_representation", "check_ck_family", "check_classical_relations",
    "check_generator_family", "check_variant_relations", "extend_generators", "f_n_report",
    "fixture", "gauge_expectation", "is_exhaustive", "lambda_min", "mce", "omega", "pi_closure",
    "product_skeleton", "restrict", "structural_suite", "t_extension_set", "theta_support",
    "validate_skeleton", "vee_closure",
]
