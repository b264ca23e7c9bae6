"""Exact classification of braid-respecting sections of Weyl groups into torus normalizers."""
from .analysis import (ConjugacyInvariant, NoUniqueOptimum, OrderProfile, ProfileReport,
                       conjugacy_invariants, conjugate_section, enumerate_profiles,
                       find_conjugator, hasse_edges, lift_order, optimal_profile,
                       optimal_section, profile_order, profile_report, same_class,
                       section_profile)
from .extweyl import (ExtendedElement, Section, ext_mul, ext_pow, fset, section_eval,
                      tits_cocycle, tits_lift, tits_power_discrepancy, tits_section)
from .kottwitz import (LiftCheckReport, an_cycle_power, cn_adjoint_element, fw_set,
                       lift_check)
from .lattice import Isogeny, IsogenyLattice, all_isogenies, build_lattice, coroot_vector
from .rootsys import RootSystem, WeylWord, build_root_system, length, reduce_word
from .solver import (ConstraintSystem, SectionFamily, brute_force_sections, family_points,
                     generate_constraints, solve_constraints, solve_lattice, verify_family)
from .torus import DEFAULT_MODULUS, MonomialGroup, TorusElement

__version__ = "0.1.0"
