"""Finite groups, finite rings and fields, G-rings, matrices and semilinear structures."""

from .groups import (FiniteGroup, GroupAction, GroupError, cyclic_group, direct_product,
                     preset_group, symmetric_group)
from .matrices import MatrixGroupTower, gl_generators, general_linear
from .rings import (FiniteRing, GRing, ReducibleModulusError, RingError, integers_mod,
                    make_finite_field, make_galois_gring, product_ring, swap_gring,
                    trivial_gring)
from .semilinear import (SemilinearClasses, SemilinearModule, check_order_invertible,
                         enumerate_cocycles, enumerate_semilinear_structures)
from .twisted import ThetaMap, TwistedGroupRing, group_ring, theta_hom, twisted_group_ring
