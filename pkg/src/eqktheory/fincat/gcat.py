"""Categories with a strict group action, fixed points and equivariant functors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from .category import (FinCat, Functor, Mor, check_equivalence, discrete_category,
                       group_category)


class GCategory:
    """A finite category with a strict action of a finite group.

    ``act_obj(g, a)`` and ``act_mor(g, f)`` give ``g.a`` and ``g.f``.  The
    category interface (``objects``, ``hom``, ``compose`` ...) is forwarded
    to ``cat``.
    """

    def __init__(self, cat, group, act_obj, act_mor, name=None):
        self.cat = cat
        self.group = group
        self._act_obj = act_obj
        self._act_mor = act_mor
        self.name = name or cat.name
        self._obj_cache = {}

    def __getattr__(self, attr):
        if attr == "cat":
            raise AttributeError(attr)
        return getattr(self.cat, attr)

    def __repr__(self):
        return f"GCategory({self.name}, group={self.group.name}, objects={len(self.cat.objects)})"

    def act_obj(self, g, a):
        key = (g, a)
        if key not in self._obj_cache:
            self._obj_cache[key] = self._act_obj(g, a)
        return self._obj_cache[key]

    def act_mor(self, g, f):
        return self._act_mor(g, f)


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_gcategory(C, budget=DEFAULT_OBJECT_BUDGET, limit=20):
    """Check that every ``g.`` is a functor and that the action is strict.

    Composition is checked on every composable pair.  The check is skipped
    (and reported as skipped) only when the pair count exceeds ``budget``.
    """
    G = C.group
    out, skipped = [], []
    objs = C.objects
    objset = set(objs)
    e = G.identity
    for a in objs:
        if C.act_obj(e, a) != a:
            out.append(f"e does not fix object {a!r}")
        for g in G:
            ga = C.act_obj(g, a)
            if ga not in objset:
                out.append(f"g={g} sends {a!r} outside the object set")
                continue
            for h in G:
                if C.act_obj(g, C.act_obj(h, a)) != C.act_obj(G.mul(g, h), a):
                    out.append(f"strictness fails on object {a!r} at (g, h) = ({g}, {h})")
            if C.act_mor(g, C.identity(a)) != C.identity(ga):
                out.append(f"g={g} does not preserve the identity of {a!r}")
        if len(out) >= limit:
            return ValidationReport(False, out[:limit])
    for f in C.morphisms():
        if C.act_mor(e, f) != f:
            out.append(f"e does not fix morphism {f}")
        for g in G:
            gf = C.act_mor(g, f)
            if gf.src != C.act_obj(g, f.src) or gf.tgt != C.act_obj(g, f.tgt):
                out.append(f"g={g} moves {f} to a morphism with the wrong ends")
                continue
            if gf not in C.hom(gf.src, gf.tgt):
                out.append(f"g={g} sends {f} outside the hom-set")
            for h in G:
                if C.act_mor(g, C.act_mor(h, f)) != C.act_mor(G.mul(g, h), f):
                    out.append(f"strictness fails on morphism {f} at (g, h) = ({g}, {h})")
        if len(out) >= limit:
            return ValidationReport(False, out[:limit])
    pairs = sum(len(C.hom(a, b)) * len(C.hom(b, c)) for a in objs for b in objs for c in objs)
    if pairs * G.order > (budget or float("inf")):
        skipped.append(f"composition preservation: {pairs * G.order} checks exceed budget {budget}")
    else:
        for a in objs:
            for b in objs:
                for f in C.hom(a, b):
                    for c in objs:
                        for k in C.hom(b, c):
                            kf = C.compose(k, f)
                            for g in G:
                                if C.act_mor(g, kf) != C.compose(C.act_mor(g, k), C.act_mor(g, f)):
                                    out.append(f"g={g} does not preserve the composite of {k} and {f}")
                    if len(out) >= limit:
                        return ValidationReport(False, out[:limit], skipped)
    return ValidationReport(not out, out, skipped)


def trivial_gcategory(cat, G, name=None):
    return GCategory(cat, G, lambda g, a: a, lambda g, f: f, name=name or f"{cat.name}(triv)")


def make_chaotic(G):
    """The category with objects the elements of G, one morphism between any two, translated by G."""
    cat = FinCat(G.whole(), lambda a, b: (None,), lambda g, f: None, lambda a: None,
                 name=f"~{G.name}")
    return GCategory(cat, G, lambda g, a: G.mul(g, a),
                     lambda g, f: Mor(G.mul(g, f.src), G.mul(g, f.tgt), None))


def group_gcategory(action, name=None):
    """A group with automorphism action, as a one-object G-category."""
    Pi = action.Pi
    cat = group_category(Pi, name=name)
    return GCategory(cat, action.G, lambda g, a: a,
                     lambda g, f: Mor(f.src, f.tgt, action.act(g, f.data)))


def discrete_gcategory(G, objects, act, name=None):
    cat = discrete_category(objects, name=name)
    return GCategory(cat, G, act, lambda g, f: Mor(act(g, f.src), act(g, f.tgt), None))


def fixed_subcategory(C, H=None):
    """Objects and morphisms fixed by every element of H."""
    H = tuple(H) if H is not None else C.group.whole()
    objs = [a for a in C.objects if all(C.act_obj(h, a) == a for h in H)]
    return C.cat.subcategory(objs, lambda f: all(C.act_mor(h, f) == f for h in H),
                             name=f"{C.name}^{_hname(C.group, H)}")


def _hname(G, H):
    return "G" if len(H) == G.order else ("e" if len(H) == 1 else "{" + ",".join(map(str, H)) + "}")


def restrict(C, H):
    """The same category with the action restricted to the subgroup H."""
    from ..algebra.groups import subgroup_as_group

    K, emb = subgroup_as_group(C.group, H)
    return GCategory(C.cat, K, lambda k, a: C.act_obj(emb[k], a),
                     lambda k, f: C.act_mor(emb[k], f), name=f"{C.name}|{K.name}")


class GFunctor(Functor):
    """A functor between G-categories, expected to commute with the action."""

    def equivariance_violations(self, limit=20):
        C, D = self.source, self.target
        G = C.group
        out = []
        for a in C.objects:
            for g in G:
                if self.obj(C.act_obj(g, a)) != D.act_obj(g, self.obj(a)):
                    out.append(f"F(g.{a!r}) != g.F({a!r}) for g={g}")
        for f in C.morphisms():
            for g in G:
                if self.mor(C.act_mor(g, f)) != D.act_mor(g, self.mor(f)):
                    out.append(f"F(g.f) != g.F(f) for f={f}, g={g}")
            if len(out) >= limit:
                break
        return out[:limit]

    def on_fixed(self, H):
        """The restriction to H-fixed subcategories."""
        src, tgt = fixed_subcategory(self.source, H), fixed_subcategory(self.target, H)
        return Functor(src, tgt, self.obj, self.mor, name=f"{self.name}^H")


@dataclass
class SurrogateReport:
    equivariant: bool
    per_subgroup: dict
    violations: list = field(default_factory=list)

    @property
    def passes(self):
        return self.equivariant and all(r.is_equivalence for r in self.per_subgroup.values())

    def as_dict(self):
        return {"equivariant": self.equivariant, "passes": self.passes,
                "per_subgroup": {str(H): r.as_dict() for H, r in self.per_subgroup.items()},
                "violations": self.violations}


def check_weak_g_equivalence_surrogate(F, subgroups=None):
    """Equivalence of categories on H-fixed points for every subgroup H."""
    G = F.source.group
    viol = F.equivariance_violations()
    if viol:
        return SurrogateReport(False, {}, viol)
    subgroups = subgroups if subgroups is not None else G.subgroups()
    per = {tuple(H): check_equivalence(F.on_fixed(H)) for H in subgroups}
    return SurrogateReport(True, per)


def ensure_object_budget(what, count, budget):
    check_budget(what, count, budget)
