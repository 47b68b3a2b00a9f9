"""iota: Pi -> Cat(G~, Pi) is an equivalence on H-fixed points exactly when H^1(H; Pi) is trivial."""

from eqktheory.h1 import iota_equivalence_check
from eqktheory.h1.criteria import iota_battery

for name, A in iota_battery():
    r = iota_equivalence_check(A, name=name)
    cells = ", ".join(f"|H|={len(lv.H)}: H^1 {lv.h1_classes} / iota {'eq' if lv.equivalence else 'no'}"
                      for lv in r.levels)
    print(f"{name:>16}  {'agrees' if r.agrees else 'DISAGREES'}  {cells}")
