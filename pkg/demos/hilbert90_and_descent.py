"""Hilbert 90 by enumeration, then Galois descent for the same extensions."""

from eqktheory.galois import check_galois, descent_check, galois_field_extension
from eqktheory.h1 import verify_hilbert90

for p, d, n in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)]:
    r = verify_hilbert90(p, d, 1, n)
    print(f"H^1({r.group_order}; GL_{n}({r.field})): {r.cocycle_count} cocycles, "
          f"{r.class_count} class; |GL| / |GL fixed| = {r.gl_order} / {r.fixed_order}")

for p in (2, 3):
    ext = galois_field_extension(p, 2, 1)
    g = check_galois(ext)
    rep = descent_check(ext, 3)
    print(f"{ext.name}: Galois {g.is_galois} ({g.tensor_size} = {g.product_size}); "
          f"semilinear classes per rank {[lv.semilinear_classes for lv in rep.levels]}")
