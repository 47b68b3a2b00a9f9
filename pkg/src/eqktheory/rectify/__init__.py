"""Pseudo equivariant functors, strictification, skeleta and monoidal/zero/pushout rectification."""

from .monoidal import (MonoidalRectification, block_sum_pairing, pairing, product_gcategory,
                       rectify_monoidal, strict_pairing, twisted_pair_pairing, unit_functor)
from .pseudo import (PseudoEqFunctor, PseudoReport, conjugate_functor, corrupt,
                     pseudo_from_tables, validate_pseudo)
from .skeleton import Skeleton, SkeletonError, equivariant_skeleton, find_gammas, representatives
from .strictify import (InstanceResult, PseudoError, check_instance, equivariance_report,
                        induced_hofix_map, strictify)
from .waldhausen import (PushoutChoice, PushoutError, ZeroObjectError, find_pushout, rectify_pushouts,
                         rectify_zero, zero_objects)
