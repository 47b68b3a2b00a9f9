"""The functor category Cat(G~, C) with its conjugation action."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from .category import FinCat, Mor
from .gcat import GCategory, GFunctor


@dataclass(frozen=True)
class TildeGFunctor:
    """A functor G~ -> C: objects ``C_g`` and isomorphisms ``psi_g: C_e -> C_g``.

    The unique morphism ``g -> g'`` of G~ goes to ``psi_{g'} o psi_g^{-1}``.
    """

    objects: tuple
    psi: tuple

    def __repr__(self):
        return f"F{self.objects}"


class CatTildeG(GCategory):
    """Cat(G~, C).  A natural transformation is stored as its e-component."""

    def __init__(self, C, budget=DEFAULT_OBJECT_BUDGET):
        self.base = C
        G = C.group
        self.e = G.identity
        others = [g for g in G if g != self.e]
        isos_from = {a: [f for b in C.objects for f in C.isos(a, b)] for a in C.objects}
        count = sum(len(isos_from[a]) ** len(others) for a in C.objects)
        check_budget(f"objects of Cat(~{G.name}, {C.name})", count, budget)
        objects = []
        for a in C.objects:
            for choice in itertools.product(isos_from[a], repeat=len(others)):
                psi = [None] * G.order
                psi[self.e] = C.identity(a)
                for g, f in zip(others, choice):
                    psi[g] = f
                objects.append(TildeGFunctor(tuple(f.tgt for f in psi), tuple(psi)))
        cat = FinCat(objects,
                     lambda F, F2: C.hom(F.objects[self.e], F2.objects[self.e]),
                     lambda b, a: C.compose(b.data, a.data),
                     lambda F: C.identity(F.objects[self.e]),
                     name=f"Cat(~{G.name},{C.name})")
        super().__init__(cat, G, self._act_object, self._act_morphism)

    def edge(self, F, g2, g1):
        """``F`` applied to the unique morphism ``g1 -> g2``."""
        C = self.base
        return C.compose(F.psi[g2], C.inverse(F.psi[g1]))

    def component(self, eta, g):
        """The g-component ``F(g) -> F'(g)`` of a transformation with e-component ``eta.data``."""
        C = self.base
        F, F2 = eta.src, eta.tgt
        return C.chain(F2.psi[g], eta.data, C.inverse(F.psi[g]))

    def _act_object(self, h, F):
        return act_on_tilde_object(self.base, h, F)

    def _act_morphism(self, h, eta):
        C, G = self.base, self.group
        hi = G.inv(h)
        src, tgt = self.act_obj(h, eta.src), self.act_obj(h, eta.tgt)
        return Mor(src, tgt, C.act_mor(h, self.component(eta, hi)))

    def iota(self):
        """The equivariant inclusion of constant functors ``C -> Cat(G~, C)``."""
        C, G = self.base, self.group
        const = lambda a: TildeGFunctor((a,) * G.order, (C.identity(a),) * G.order)
        return GFunctor(C, self, const, lambda f: Mor(const(f.src), const(f.tgt), f),
                        name="iota")

    def evaluation(self):
        """``F -> F(e)``, a nonequivariant inverse to iota."""
        return GFunctor(self, self.base, lambda F: F.objects[self.e], lambda eta: eta.data,
                        name="ev_e")


def act_on_tilde_object(C, h, F):
    """``(hF)(g) = h F(h^{-1} g)``; usable without building Cat(G~, C)."""
    G = C.group
    hi = G.inv(h)

    def edge(g2, g1):
        return C.compose(F.psi[g2], C.inverse(F.psi[g1]))

    objs = tuple(C.act_obj(h, F.objects[G.mul(hi, g)]) for g in G)
    psi = tuple(C.act_mor(h, edge(G.mul(hi, g), hi)) for g in G)
    return TildeGFunctor(objs, psi)


def cat_tilde_g(C, budget=DEFAULT_OBJECT_BUDGET):
    return CatTildeG(C, budget=budget)


def iota(C, target=None, budget=DEFAULT_OBJECT_BUDGET):
    T = target if target is not None else cat_tilde_g(C, budget=budget)
    return T.iota()


def postcompose(Theta, source=None, target=None, budget=DEFAULT_OBJECT_BUDGET):
    """Cat(G~, Theta) for an equivariant functor Theta."""
    S = source if source is not None else cat_tilde_g(Theta.source, budget=budget)
    T = target if target is not None else cat_tilde_g(Theta.target, budget=budget)

    def on_obj(F):
        return TildeGFunctor(tuple(Theta.obj(a) for a in F.objects),
                             tuple(Theta.mor(f) for f in F.psi))

    return GFunctor(S, T, on_obj, lambda eta: Mor(on_obj(eta.src), on_obj(eta.tgt), Theta.mor(eta.data)),
                    name=f"Cat(~G,{Theta.name})")
