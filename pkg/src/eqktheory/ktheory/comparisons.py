"""Cofinality, fixed points of S^{-1}S, and the core of Cat(G~, C)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET
from ..fincat.category import Mor
from ..fincat.gcat import GCategory
from ..fincat.tilde import cat_tilde_g
from .sinvs import SInvS


@dataclass
class CofinalReport:
    cofinal: bool
    aut_isomorphisms: bool
    missing: list = field(default_factory=list)  # objects t with no t + t' in the image
    aut_failures: list = field(default_factory=list)
    strict_monoidal: bool = True

    def as_dict(self):
        return {"cofinal": self.cofinal, "aut_isomorphisms": self.aut_isomorphisms,
                "strict_monoidal": self.strict_monoidal,
                "missing": [repr(t) for t in self.missing],
                "aut_failures": [repr(s) for s in self.aut_failures]}


def check_cofinal(F, S, T):
    """Whether every t has some t' and s with ``t + t' ~ F(s)`` (within the truncation of T).

    Also reports whether F is strictly monoidal on objects and whether it
    maps ``Aut_S(s)`` bijectively onto ``Aut_T(F s)`` for every s.
    """
    image = [F.obj(s) for s in S.objects]
    missing = []
    for t in T.objects:
        if not any(T.plus(t, t2) is not None and T.isomorphic(T.plus(t, t2), y)
                   for t2 in T.objects for y in image):
            missing.append(t)
    strict = all(F.obj(S.plus(a, b)) == T.plus(F.obj(a), F.obj(b))
                 for a in S.objects for b in S.objects if S.plus(a, b) is not None)
    aut_bad = []
    for s in S.objects:
        src = S.isos(s, s)
        imgs = {F.mor(a) for a in src}
        if len(imgs) != len(src) or len(imgs) != len(T.isos(F.obj(s), F.obj(s))):
            aut_bad.append(s)
    return CofinalReport(not missing, not aut_bad, missing, aut_bad, strict)


@dataclass
class FixedHomComparison:
    source: tuple
    target: tuple
    fixed_classes: int
    total_classes: int
    from_fixed: int
    injective: bool
    onto_fixed: bool

    @property
    def passes(self):
        return self.injective and self.onto_fixed


@dataclass
class FixedSInvSReport:
    objects_match: bool
    homs: list

    @property
    def passes(self):
        return self.objects_match and all(h.passes for h in self.homs)


def fixed_sinvs_comparison(S, H, pairs, budget=DEFAULT_OBJECT_BUDGET):
    """Compare ``(S^H)^{-1}(S^H)`` with the H-fixed part of ``S^{-1}S`` for a strict S.

    Objects are compared exactly.  For each ``(x, y)`` in ``pairs`` the
    classes of ``(S^H)^{-1}(S^H)`` are pushed into ``S^{-1}S``; the map must
    be injective with image exactly the H-fixed classes.
    """
    X = SInvS(S, budget=budget)
    XG = X.gcategory()
    SH = S.fixed(H)
    Y = SInvS(SH, budget=budget)
    fixed_objs = {x for x in X.objects if all(XG.act_obj(h, x) == x for h in H)}
    objects_match = fixed_objs == set(Y.objects)
    homs = []
    for x, y in pairs:
        full = X.hom(x, y)
        fixed = {f for f in full if all(XG.act_mor(h, f) == f for h in H)}
        m, n = x
        pushed = [X.canonical(m, n, f.data) for f in Y.hom(x, y)]
        images = {Mor(x, y, t) for t in pushed}
        homs.append(FixedHomComparison(x, y, len(fixed), len(full), len(pushed),
                                       len(images) == len(pushed), images == fixed))
    return FixedSInvSReport(objects_match, homs)


def core(C):
    """The subcategory of isomorphisms, with the same action."""
    sub = C.cat.subcategory(C.objects, C.is_iso, name=f"iso {C.name}")
    return GCategory(sub, C.group, C.act_obj, C.act_mor, name=sub.name)


@dataclass
class CoreComparison:
    objects_equal: bool
    morphisms_equal: bool
    action_equal: bool
    objects: int
    morphisms: int

    @property
    def passes(self):
        return self.objects_equal and self.morphisms_equal and self.action_equal


def core_commutes_with_tilde(C, budget=DEFAULT_OBJECT_BUDGET):
    """``iso Cat(G~, C)`` and ``Cat(G~, iso C)`` agree as G-categories (same objects and morphisms)."""
    T = cat_tilde_g(C, budget=budget)
    left = core(T)
    right = cat_tilde_g(core(C), budget=budget)
    lobj, robj = list(left.objects), list(right.objects)
    lm = {(f.src, f.tgt, f.data) for f in left.morphisms()}
    rm = {(f.src, f.tgt, f.data) for f in right.morphisms()}
    G = C.group
    action = all(left.act_obj(g, F) == right.act_obj(g, F) for g in G for F in lobj) and all(
        left.act_mor(g, f) == right.act_mor(g, f) for g in G for f in left.morphisms())
    return CoreComparison(set(lobj) == set(robj), lm == rm, action, len(lobj), len(lm))


def even_rank_sub(S):
    """The full symmetric monoidal subcategory of even-rank objects."""
    return S.full_sub([a for a in S.objects if S.rank(a) % 2 == 0], name=f"{S.name}|even")


def unit_only_sub(S):
    return S.full_sub([S.unit], name=f"{S.name}|unit")

