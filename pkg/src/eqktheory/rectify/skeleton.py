"""Equivariant skeleta: one object per iso class with the induced strict action.

Representatives are the first object of each iso class in the object order.
The retraction uses isomorphisms ``gamma_x: x -> rep(x)``; the action on the
skeleton is ``g.r = rep(gr)`` and ``g.f = gamma_{gr'} o gf o gamma_{gr}^{-1}``.
That action is strict and the retraction is equivariant exactly when

    gamma_{gx} = gamma_{g rep(x)} o g gamma_x      for all g, x,

which forces ``gamma_rep = id``.  A family satisfying this is found by
backtracking with propagation; when none exists a SkeletonError is raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from ..fincat.category import Functor, Mor, check_equivalence, iso_classes
from ..fincat.gcat import GCategory, GFunctor


class SkeletonError(ValueError):
    pass


def representatives(C):
    """``{x: rep(x)}`` with the first object of each iso class as representative."""
    rep = {}
    for block in iso_classes(C):
        for x in block:
            rep[x] = block[0]
    return rep


def gamma_violations(C, rep, gamma, limit=20):
    G = C.group
    out = []
    for x in C.objects:
        if x == rep[x] and gamma[x] != C.identity(x):
            out.append(f"gamma at representative {x!r} is not the identity")
        for g in G:
            lhs = gamma[C.act_obj(g, x)]
            rhs = C.compose(gamma[C.act_obj(g, rep[x])], C.act_mor(g, gamma[x]))
            if lhs != rhs:
                out.append(f"gamma condition fails at (g, x) = ({g}, {x!r})")
        if len(out) >= limit:
            break
    return out[:limit]


def find_gammas(C, rep=None, budget=DEFAULT_OBJECT_BUDGET):
    """A family ``gamma_x: x -> rep(x)`` satisfying the compatibility condition, or None."""
    G = C.group
    rep = rep if rep is not None else representatives(C)
    objs = list(C.objects)
    cands = {x: ([C.identity(x)] if x == rep[x] else list(C.isos(x, rep[x]))) for x in objs}
    nodes = [0]

    def propagate(gamma):
        gamma = dict(gamma)
        changed = True
        while changed:
            changed = False
            for x in list(gamma):
                for g in G:
                    gx, gr = C.act_obj(g, x), C.act_obj(g, rep[x])
                    if gr not in gamma:
                        continue
                    forced = C.compose(gamma[gr], C.act_mor(g, gamma[x]))
                    if gx in gamma:
                        if gamma[gx] != forced:
                            return None
                    else:
                        gamma[gx] = forced
                        changed = True
        return gamma

    def search(gamma):
        nodes[0] += 1
        check_budget("skeleton gamma search nodes", nodes[0], budget)
        gamma = propagate(gamma)
        if gamma is None:
            return None
        free = [x for x in objs if x not in gamma]
        if not free:
            return gamma if not gamma_violations(C, rep, gamma, limit=1) else None
        x = min(free, key=lambda y: (len(cands[y]), objs.index(y)))
        for f in cands[x]:
            found = search({**gamma, x: f})
            if found is not None:
                return found
        return None

    start = {x: C.identity(x) for x in objs if x == rep[x]}
    return search(start)


@dataclass
class Skeleton:
    sk: GCategory
    retraction: GFunctor
    inclusion: Functor
    gamma: dict
    rep: dict

    def report(self):
        """Equivariance and equivalence of the retraction, and gamma as an iso ``id => inclusion o retraction``."""
        C = self.retraction.source
        eqv = self.retraction.equivariance_violations()
        equiv = check_equivalence(self.retraction)
        natural = all(
            C.compose(self.gamma[f.tgt], f)
            == C.compose(self.inclusion.mor(self.retraction.mor(f)), self.gamma[f.src])
            for f in C.morphisms())
        return {"equivariant": not eqv, "equivalence": equiv.is_equivalence,
                "gamma_natural": natural, "objects": len(self.sk.objects),
                "violations": eqv + equiv.violations}


def equivariant_skeleton(C, gamma=None, budget=DEFAULT_OBJECT_BUDGET):
    """The skeleton sk C with its induced action and the equivariant retraction ``C -> sk C``.

    ``gamma`` may be given explicitly (a dict of morphisms ``x -> rep(x)``);
    it is then validated instead of searched for.
    """
    rep = representatives(C)
    if gamma is None:
        gamma = find_gammas(C, rep, budget=budget)
        if gamma is None:
            raise SkeletonError(f"no compatible choice of isomorphisms to representatives in {C.name}")
    else:
        bad = gamma_violations(C, rep, gamma)
        if bad:
            raise SkeletonError("; ".join(bad[:3]))
    reps = [x for x in C.objects if rep[x] == x]
    cat = C.cat.full_subcategory(reps, name=f"sk{C.name}")

    def act_obj(g, r):
        return rep[C.act_obj(g, r)]

    def act_mor(g, f):
        gf = C.act_mor(g, f)
        out = C.chain(gamma[gf.tgt], gf, C.inverse(gamma[gf.src]))
        return Mor(out.src, out.tgt, out.data)

    sk = GCategory(cat, C.group, act_obj, act_mor, name=f"sk{C.name}")

    def retract_mor(f):
        out = C.chain(gamma[f.tgt], f, C.inverse(gamma[f.src]))
        return Mor(out.src, out.tgt, out.data)

    retraction = GFunctor(C, sk, lambda x: rep[x], retract_mor, name="i^-1")
    inclusion = Functor(sk, C.cat, lambda r: r, lambda f: f, name="i")
    return Skeleton(sk, retraction, inclusion, gamma, rep)
