"""Zero objects and chosen pushouts in Cat(G~, C).

A zero object 0 of C gives the G-fixed zero object ``F_0(g) = g0`` of
Cat(G~, C), with the unique isomorphisms ``0 -> g0`` as structure maps.
Pushouts are chosen in C by brute force (cocones tested against the
universal property) and transported to Cat(G~, C) by

    P(g) = g (pushout of the span g^{-1}F_2(g) <- g^{-1}F_1(g) -> g^{-1}F_3(g)),

so that the chosen pushout of an H-fixed span is H-fixed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from ..fincat.category import Mor
from ..fincat.tilde import TildeGFunctor, cat_tilde_g


class ZeroObjectError(ValueError):
    pass


class PushoutError(ValueError):
    def __init__(self, span, reason="no pushout"):
        self.span = span
        super().__init__(f"{reason} for the span {span[0]} , {span[1]}")


def zero_objects(C):
    """Objects that are both initial and terminal."""
    objs = list(C.objects)
    return [z for z in objs
            if all(len(C.hom(z, a)) == 1 and len(C.hom(a, z)) == 1 for a in objs)]


@dataclass
class ZeroReport:
    zero: TildeGFunctor
    fixed: bool
    initial: bool
    terminal: bool

    @property
    def passes(self):
        return self.fixed and self.initial and self.terminal


def rectify_zero(C, T=None, budget=DEFAULT_OBJECT_BUDGET):
    """The functor ``g -> g0`` for the first zero object 0 of C, checked fixed, initial and terminal."""
    zs = zero_objects(C)
    if not zs:
        raise ZeroObjectError(f"{C.name} has no zero object")
    z = zs[0]
    G = C.group
    T = T if T is not None else cat_tilde_g(C, budget=budget)
    F0 = TildeGFunctor(tuple(C.act_obj(g, z) for g in G),
                       tuple(C.hom(z, C.act_obj(g, z))[0] for g in G))
    fixed = all(T.act_obj(g, F0) == F0 for g in G)
    initial = all(len(T.hom(F0, F)) == 1 for F in T.objects)
    terminal = all(len(T.hom(F, F0)) == 1 for F in T.objects)
    return ZeroReport(F0, fixed, initial, terminal)


# pushouts in C

@dataclass(frozen=True)
class Pushout:
    obj: object
    left: Mor   # b -> P
    right: Mor  # c -> P


def cocones(C, f, g):
    """All ``(P, u, v)`` with ``u o f = v o g`` for the span ``b <-f- a -g-> c``."""
    out = []
    for p in C.objects:
        for u in C.hom(f.tgt, p):
            uf = C.compose(u, f)
            for v in C.hom(g.tgt, p):
                if C.compose(v, g) == uf:
                    out.append(Pushout(p, u, v))
    return out


def find_pushout(C, f, g):
    """The first cocone (in enumeration order) with the universal property, or None."""
    cones = cocones(C, f, g)
    for cand in cones:
        ok = True
        for other in cones:
            hits = [h for h in C.hom(cand.obj, other.obj)
                    if C.compose(h, cand.left) == other.left and C.compose(h, cand.right) == other.right]
            if len(hits) != 1:
                ok = False
                break
        if ok:
            return cand
    return None


def is_pushout(C, f, g, cone):
    return any(c == cone for c in cocones(C, f, g)) and all(
        len([h for h in C.hom(cone.obj, o.obj)
             if C.compose(h, cone.left) == o.left and C.compose(h, cone.right) == o.right]) == 1
        for o in cocones(C, f, g))


@dataclass
class PushoutChoice:
    """Chosen pushouts along cofibrations in C and their transport to Cat(G~, C)."""

    base: object
    tilde: object
    choice: dict
    missing: list = field(default_factory=list)

    def in_base(self, f, g):
        return self.choice[(f, g)]

    def pushout(self, eta1, eta2):
        """Chosen pushout of ``F2 <-eta1- F1 -eta2-> F3`` in Cat(G~, C), with its legs."""
        C, T = self.base, self.tilde
        G = C.group
        e = G.identity
        objs, legs = [], []
        for g in G:
            gi = G.inv(g)
            f = C.act_mor(gi, T.component(eta1, g))
            h = C.act_mor(gi, T.component(eta2, g))
            Q = self.choice.get((f, h))
            if Q is None:
                raise PushoutError((f, h), reason="no chosen pushout")
            objs.append(C.act_obj(g, Q.obj))
            legs.append((C.act_mor(g, Q.left), C.act_mor(g, Q.right)))
        u_e, v_e = legs[e]
        psi = []
        for g in G:
            want_u = C.compose(legs[g][0], eta1.tgt.psi[g])
            want_v = C.compose(legs[g][1], eta2.tgt.psi[g])
            hits = [m for m in C.hom(objs[e], objs[g])
                    if C.compose(m, u_e) == want_u and C.compose(m, v_e) == want_v]
            if len(hits) != 1:
                raise PushoutError((eta1, eta2), reason="comparison map not unique")
            psi.append(hits[0])
        P = TildeGFunctor(tuple(objs), tuple(psi))
        return P, Mor(eta1.tgt, P, u_e), Mor(eta2.tgt, P, v_e)

    def fixed_spans(self, H, cofibration=None):
        """H-fixed spans ``(eta1, eta2)`` in Cat(G~, C) whose first leg is a cofibration at e."""
        T = self.tilde
        fixed = [m for m in T.morphisms() if all(T.act_mor(h, m) == m for h in H)]
        cof = cofibration or (lambda m: True)
        return [(a, b) for a in fixed for b in fixed
                if a.src == b.src and a != T.identity(a.src) and cof(a.data)]

    def check_fixed(self, H, cofibration=None, limit=None):
        """Every H-fixed span along a cofibration gets an H-fixed chosen pushout."""
        T = self.tilde
        spans = self.fixed_spans(H, cofibration)
        if limit is not None:
            spans = spans[:limit]
        bad, checked = [], 0
        for a, b in spans:
            try:
                P, _, _ = self.pushout(a, b)
            except PushoutError:
                continue
            checked += 1
            if any(T.act_obj(h, P) != P for h in H):
                bad.append((a, b))
        return {"spans": checked, "not_fixed": bad}


def rectify_pushouts(C, cofibration=None, T=None, require_all=True, budget=DEFAULT_OBJECT_BUDGET):
    """Choose a pushout in C for every span whose first leg satisfies ``cofibration``.

    With ``require_all`` a span without a pushout raises PushoutError naming
    it; otherwise such spans are collected in ``missing`` (useful for
    truncated categories where a pushout may fall outside the size bound).
    """
    cof = cofibration or (lambda f: True)
    mors = list(C.morphisms())
    spans = [(f, g) for f in mors for g in mors if f.src == g.src and cof(f)]
    check_budget("spans in C", len(spans), budget)
    choice, missing = {}, []
    for f, g in spans:
        Q = find_pushout(C, f, g)
        if Q is None:
            if require_all:
                raise PushoutError((f, g))
            missing.append((f, g))
        else:
            choice[(f, g)] = Q
    T = T if T is not None else cat_tilde_g(C, budget=budget)
    return PushoutChoice(C, T, choice, missing)


def span_orbit_closed(C, choice):
    """Spans with chosen pushouts are closed under the action (needed for the transport formula)."""
    return all((C.act_mor(g, f), C.act_mor(g, h)) in choice
               for (f, h) in choice for g in C.group)

