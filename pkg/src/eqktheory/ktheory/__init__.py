"""Symmetric monoidal G-categories, S^{-1}S, K_0 Mackey tables, cofinality and Morita checks."""

from .comparisons import (CofinalReport, CoreComparison, FixedSInvSReport, check_cofinal, core,
                          core_commutes_with_tilde, even_rank_sub, fixed_sinvs_comparison,
                          unit_only_sub)
from .grothendieck import (AbelianGroup, ClassMonoid, KrullSchmidtReport, formal_difference_classes,
                           grothendieck_group, krull_schmidt, presented_group)
from .mackey import (K0Error, K0Level, MackeyK0Table, MackeyReport, coset_representatives,
                     induce_cocycle, is_field_like, k0_gring, k0_level, mackey_check,
                     restrict_cocycle, transfer_functor, transfer_outputs_fixed)
from .morita import (MoritaReport, identity_morita, matrix_module_category,
                     matrix_morita_functor, scalar_inclusion, verify_equivariant_morita)
from .sinvs import (GroupCompletion, SInvS, SInvSError, iso_class_monoid, pi0_group_completion,
                    s_inverse_s, translation_violations)
from .symmon import (SymMonError, SymMonGCat, discrete_symmon, gl_symmon, hofix_symmon, inclusion,
                     standard_structure, trivial_symmon)
