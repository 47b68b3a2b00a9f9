"""Homotopy fixed points as pairs (C, f) with a cocycle f(g): gC -> C."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from ..algebra.groups import subgroup_as_group
from .category import FinCat, Functor, Mor, check_equivalence
from .gcat import fixed_subcategory, restrict
from .tilde import TildeGFunctor, cat_tilde_g


@dataclass(frozen=True)
class HofixObject:
    """An object with a cocycle; ``f[i]`` is ``f(H[i]): H[i].obj -> obj``."""

    obj: object
    H: tuple
    f: tuple

    def at(self, h):
        return self.f[self.H.index(h)]

    def __repr__(self):
        return f"({self.obj!r}, f)"


def cocycles_at(C, H, c, budget=DEFAULT_OBJECT_BUDGET):
    """All cocycles on the object ``c``: f(e) = id and f(gh) = f(g) o g.f(h)."""
    G = C.group
    H = tuple(sorted(H))
    gens = G.generators(H)
    choices = [C.isos(C.act_obj(s, c), c) for s in gens]
    total = 1
    for ch in choices:
        total *= len(ch)
    check_budget(f"cocycle candidates at {c!r}", total, budget)
    out = []
    for vals in itertools.product(*choices):
        f = {G.identity: C.identity(c)}
        frontier, ok = [G.identity], True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, fs in zip(gens, vals):
                    y = G.mul(x, s)
                    v = C.compose(f[x], C.act_mor(x, fs))
                    if y in f:
                        if f[y] != v:
                            ok = False
                            break
                    else:
                        f[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and is_cocycle(C, H, f):
            out.append(HofixObject(c, H, tuple(f[h] for h in H)))
    return out


def is_cocycle(C, H, f):
    G = C.group
    if any(f[h].tgt != f[G.identity].tgt for h in H):
        return False
    return all(f[G.mul(g, h)] == C.compose(f[g], C.act_mor(g, f[h])) for g in H for h in H)


def is_hofix_morphism(C, x, y, alpha):
    return all(C.compose(alpha, x.f[i]) == C.compose(y.f[i], C.act_mor(h, alpha))
               for i, h in enumerate(x.H))


def hofix(C, H=None, budget=DEFAULT_OBJECT_BUDGET):
    """The category of objects with H-cocycles and cocycle-compatible maps."""
    H = tuple(sorted(H)) if H is not None else C.group.whole()
    objects = []
    for c in C.objects:
        objects.extend(cocycles_at(C, H, c, budget=budget))
        check_budget("homotopy fixed point objects", len(objects), budget)
    cat = FinCat(objects,
                 lambda x, y: (a for a in C.hom(x.obj, y.obj) if is_hofix_morphism(C, x, y, a)),
                 lambda b, a: C.compose(b.data, a.data),
                 lambda x: C.identity(x.obj),
                 name=f"{C.name}^h")
    cat.base = C
    cat.H = H
    return cat


def forget_hofix(HC):
    """(C, f) -> C."""
    C = HC.base
    return Functor(HC, C.cat, lambda x: x.obj, lambda a: a.data, name="forget")


@dataclass
class FixedPointComparison:
    isomorphism: bool
    objects: int
    morphisms: int
    counterexample: object = None
    restriction: object = None
    functor: object = None
    notes: list = field(default_factory=list)

    @property
    def passes(self):
        ok = self.isomorphism
        if self.restriction is not None:
            ok = ok and self.restriction.is_equivalence
        return ok


def hofix_to_fixed(C, H, HC=None, T=None, budget=DEFAULT_OBJECT_BUDGET):
    """(C, f) -> the G~-functor with ``psi_h = h.f(h^{-1})``, landing in Cat(H~, C)^H."""
    G = C.group
    K, emb = subgroup_as_group(G, H)
    HC = HC if HC is not None else hofix(C, H, budget=budget)
    T = T if T is not None else cat_tilde_g(restrict(C, H), budget=budget)
    fixed = fixed_subcategory(T, K.whole())

    def on_obj(x):
        objs = tuple(C.act_obj(h, x.obj) for h in emb)
        psi = tuple(C.act_mor(h, x.at(G.inv(h))) for h in emb)
        return TildeGFunctor(objs, psi)

    F = Functor(HC, fixed, on_obj, lambda a: Mor(on_obj(a.src), on_obj(a.tgt), a.data),
                name="f->fbar")
    return F, fixed


def fixed_to_hofix(C, H, F):
    """Inverse direction: ``f(h) = h.psi_{h^{-1}}``."""
    G = C.group
    H = tuple(sorted(H))
    pos = {h: i for i, h in enumerate(H)}
    return HofixObject(F.objects[pos[G.identity]], H,
                       tuple(C.act_mor(h, F.psi[pos[G.inv(h)]]) for h in H))


def hofix_matches_fixed_points(C, H=None, budget=DEFAULT_OBJECT_BUDGET, check_restriction=True):
    """Build the comparison functor and confirm it is an isomorphism of categories.

    For a proper subgroup H the comparison lands in Cat(H~, C)^H; the
    restriction Cat(G~, C)^H -> Cat(H~, C)^H is then checked to be an
    equivalence as well.
    """
    G = C.group
    H = tuple(sorted(H)) if H is not None else G.whole()
    HC = hofix(C, H, budget=budget)
    Phi, fixed = hofix_to_fixed(C, H, HC=HC, budget=budget)
    report = FixedPointComparison(False, len(HC.objects), HC.num_morphisms(), functor=Phi)
    bad = Phi.violations()
    if bad:
        report.counterexample = bad[0]
        return report
    images = [Phi.obj(x) for x in HC.objects]
    if len(set(images)) != len(images):
        report.counterexample = ("not injective on objects", images)
        return report
    missing = set(fixed.objects) - set(images)
    if missing:
        report.counterexample = ("object not hit", min(missing, key=repr))
        return report
    for x in HC.objects:
        if fixed_to_hofix(C, H, Phi.obj(x)) != x:
            report.counterexample = ("inverse formula fails", x)
            return report
    eq = check_equivalence(Phi, check_functor=False)
    if not (eq.full and eq.faithful):
        report.counterexample = ("not fully faithful", eq.witnesses)
        return report
    report.isomorphism = True
    if check_restriction and len(H) < G.order:
        report.restriction = check_equivalence(
            restriction_to_subgroup(C, H, budget=budget))
    return report


def restriction_to_subgroup(C, H, budget=DEFAULT_OBJECT_BUDGET):
    """Cat(G~, C)^H -> Cat(H~, C)^H, restricting functors along H~ in G~."""
    G = C.group
    K, emb = subgroup_as_group(G, H)
    big = fixed_subcategory(cat_tilde_g(C, budget=budget), H)
    small = fixed_subcategory(cat_tilde_g(restrict(C, H), budget=budget), K.whole())

    def on_obj(F):
        return TildeGFunctor(tuple(F.objects[h] for h in emb), tuple(F.psi[h] for h in emb))

    return Functor(big, small, on_obj, lambda a: Mor(on_obj(a.src), on_obj(a.tgt), a.data),
                   name="restrict")
