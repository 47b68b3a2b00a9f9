"""Crossed homomorphisms, nonabelian H^1, Hilbert 90 and the iota criterion."""

from .criteria import (CrossedComparison, Hilbert90Report, IotaReport, TildeComparison,
                       crossed_matches_hofix, crossed_matches_tilde_fixed, crossed_to_tilde,
                       gl_action, iota_equivalence_check, verify_hilbert90)
from .crossed import (CrossedHom, H1Error, H1Set, conjugate_action, crossed_category,
                      crossed_violations, enumerate_crossed_homs, h1_set, is_crossed_morphism,
                      transport_action, twist)
