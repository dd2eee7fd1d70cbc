"""Nilpotent injectors, Carter subgroups and subgroup-poset Möbius sums for
small finite groups."""

from .errors import DomainError, GroupError, ResourceLimitError
from .groups import FiniteGroup, Permutation, Subgroup, direct_product, group_from_generators, semidirect_product
from .lattice import SubgroupLattice, all_subgroups
from .posets import Poset
from .injectors import InjectorProfile, injector_poset, mann_injector
from .carter import CarterProfile, carter_subgroups
from .reports import VerificationReport, emit_report
from .spec import GroupSpec, build_group, parse_group_spec
from .suites import generated_family, run_suite

__all__ = [
    "DomainError", "GroupError", "ResourceLimitError", "FiniteGroup", "Permutation", "Subgroup",
    "direct_product", "group_from_generators", "semidirect_product", "SubgroupLattice", "all_subgroups",
    "Poset", "InjectorProfile", "injector_poset", "mann_injector", "CarterProfile", "carter_subgroups",
    "VerificationReport", "emit_report", "GroupSpec", "build_group", "parse_group_spec",
    "generated_family", "run_suite",
]
