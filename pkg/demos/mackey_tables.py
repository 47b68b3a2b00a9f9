"""K_0 Mackey tables for a Galois action, a trivial action, and a trivial action in characteristic 2."""

from eqktheory.algebra import cyclic_group, make_finite_field, make_galois_gring, trivial_gring
from eqktheory.ktheory import k0_gring

C2 = cyclic_group(2)
for GR, N in [(make_galois_gring(2, 2, 1), 3), (trivial_gring(make_finite_field(3, 1), C2), 2),
              (trivial_gring(make_finite_field(2, 1), C2), 2)]:
    t = k0_gring(GR, N).as_dict()
    print(f"{GR.name}, ranks <= {N}")
    for s in t["subgroups"]:
        note = f"  ({'; '.join(s['notes'])})" if s["notes"] else ""
        print(f"  K_0 at {s['subgroup']}: {s['group']} on {s['generators']}{note}")
    for r in t["restriction"]:
        if r["from"] != r["to"]:
            print(f"  res {r['from']} -> {r['to']}: {r['matrix']}")
    for r in t["transfer"]:
        if r["from"] != r["to"]:
            print(f"  tr  {r['from']} -> {r['to']}: {r['matrix']}")
    print(f"  mackey formula holds: {t['mackey_check']}")
