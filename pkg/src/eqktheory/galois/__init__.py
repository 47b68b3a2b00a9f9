"""Galois extensions of finite rings, descent, theta and the assembly map at K_0."""

from .descent import (AssemblyReport, DescentReport, K0GaloisReport, assembly_map_k0,
                      descent_check, descent_witness, k0_galois_check)
from .extension import (GaloisError, GaloisReport, RingExtension, ThetaIso, change_of_basis,
                        check_galois, diagonal_extension, galois_field_extension, gamma_table,
                        theta_matrix_iso, trivial_extension)
