"""Finite categories, G-categories, Cat(G~, C), fixed and homotopy fixed points."""

from .category import (CategoryError, EquivalenceReport, FinCat, Functor, Mor, check_equivalence,
                       connected_components, discrete_category, group_category, identity_functor,
                       iso_classes, product_category)
from .gcat import (GCategory, GFunctor, SurrogateReport, ValidationReport,
                   check_weak_g_equivalence_surrogate, discrete_gcategory, fixed_subcategory,
                   group_gcategory, make_chaotic, restrict, trivial_gcategory, validate_gcategory)
from .hofix import (HofixObject, cocycles_at, fixed_to_hofix, forget_hofix, hofix,
                    hofix_matches_fixed_points, hofix_to_fixed, restriction_to_subgroup)
from .tilde import CatTildeG, TildeGFunctor, act_on_tilde_object, cat_tilde_g, iota, postcompose
