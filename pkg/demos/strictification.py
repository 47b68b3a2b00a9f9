"""Random pseudo equivariant functors, strictified and checked on every fixed-point level."""

from collections import Counter

from eqktheory.rectify import check_instance
from eqktheory.rectify.models import random_pseudo_instance

tally = Counter()
for seed in range(40):
    P = random_pseudo_instance(seed)
    r = check_instance(P, f"seed {seed}")
    tally["instances"] += 1
    tally["equivariant"] += r.equivariant
    tally["equivalences"] += bool(r.is_equivalence)
    tally["hofix equivalences kept"] += bool(r.is_equivalence) and r.passes
for k, v in tally.items():
    print(f"{k:>24}: {v}")
