"""Rectifying a pairing that commutes with the action only up to coherent isomorphism.

A pairing is a pseudo equivariant functor ``C x C -> C`` (diagonal action).
Strictifying it and precomposing with ``Cat(G~, C)^2 = Cat(G~, C x C)`` gives

    (F1 + F2)(g) = g(g^{-1}F1(g) + g^{-1}F2(g)),

which commutes with the action on the nose.  A unit is a pseudo equivariant
functor from the one-object category, i.e. an object I with isomorphisms
``u_g: I -> gI`` satisfying ``u_{gh} = g u_h o u_g``; its strictification
``g -> gI`` is a G-fixed object of Cat(G~, C).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, check_budget
from ..fincat.category import FinCat, Functor, Mor, product_category
from ..fincat.gcat import GCategory, fixed_subcategory
from ..fincat.tilde import TildeGFunctor, cat_tilde_g
from .pseudo import PseudoEqFunctor, validate_pseudo
from .strictify import PseudoError, strictify


def product_gcategory(C, D, name=None):
    """``C x D`` with the diagonal action; a morphism's data is the pair of morphisms."""
    cat = product_category(C.cat, D.cat, name=name)
    return GCategory(cat, C.group,
                     lambda g, x: (C.act_obj(g, x[0]), D.act_obj(g, x[1])),
                     lambda g, f: Mor((C.act_obj(g, f.src[0]), D.act_obj(g, f.src[1])),
                                      (C.act_obj(g, f.tgt[0]), D.act_obj(g, f.tgt[1])),
                                      (C.act_mor(g, f.data[0]), D.act_mor(g, f.data[1]))),
                     name=cat.name)


def point_gcategory(G):
    cat = FinCat(["*"], lambda a, b: (None,), lambda g, f: None, lambda a: None, name="pt")
    return GCategory(cat, G, lambda g, a: a, lambda g, f: f)


def pairing(C, on_obj, on_mor, theta, name="+"):
    """A pseudo equivariant pairing from its object map ``(a, b) -> a+b``, its map on pairs of
    morphisms and ``theta(g, (a, b)): g a + g b -> g(a + b)``."""
    CC = product_gcategory(C, C)
    F = Functor(CC, C, lambda x: on_obj(*x),
                lambda f: Mor(on_obj(*f.src), on_obj(*f.tgt), on_mor(*f.data)), name=name)
    return PseudoEqFunctor(CC, C, F, theta, name=name)


def strict_pairing(C, on_obj, on_mor, name="+"):
    P = pairing(C, on_obj, on_mor, lambda g, x: None, name=name)
    return P.with_theta(lambda g, x: C.identity(C.act_obj(g, P.obj(x))))


def unit_functor(C, unit, u):
    """The pseudo equivariant functor ``* -> C`` picking ``unit`` with ``u(g): unit -> g unit``."""
    pt = point_gcategory(C.group)
    F = Functor(pt, C, lambda a: unit, lambda f: C.identity(unit), name="unit")
    return PseudoEqFunctor(pt, C, F, lambda g, a: u(g), name="unit")


def pair_tilde(F1, F2):
    """The object of Cat(G~, C x C) corresponding to a pair of objects of Cat(G~, C)."""
    return TildeGFunctor(tuple(zip(F1.objects, F2.objects)),
                         tuple(Mor((a.src, b.src), (a.tgt, b.tgt), (a, b))
                               for a, b in zip(F1.psi, F2.psi)))


@dataclass
class MonoidalRectification:
    tilde: GCategory
    plus: Functor
    unit: TildeGFunctor
    report: dict = field(default_factory=dict)

    def add(self, F1, F2):
        return self.plus.obj((F1, F2))

    @property
    def passes(self):
        r = self.report
        return (r.get("pairing_valid", False) and not r.get("equivariance_violations")
                and r.get("unit_fixed", False) and not r.get("hofix_not_closed")
                and r.get("pointwise_when_strict", True))


def rectify_monoidal(P, unit=None, u=None, T=None, budget=DEFAULT_OBJECT_BUDGET, check=True):
    """The strict pairing on Cat(G~, C) induced by the pseudo equivariant pairing P.

    ``check`` runs the exhaustive verification: the pairing is equivariant on
    all pairs of objects and of morphisms, the unit is G-fixed, each fixed
    subcategory is closed under the pairing and, when P is strict, the
    pointwise formula is recovered.
    """
    rep = validate_pseudo(P)
    if not rep.ok:
        raise PseudoError(rep)
    C = P.target
    G = C.group
    T = T if T is not None else cat_tilde_g(C, budget=budget)
    St = strictify(P, validate=False, source=_LazyTilde(P.source), target=T)
    TT = product_gcategory(T, T)
    plus = Functor(TT, T, lambda x: St.obj(pair_tilde(*x)),
                   lambda f: Mor(St.obj(pair_tilde(*f.src)), St.obj(pair_tilde(*f.tgt)),
                                 P.mor(Mor((f.src[0].objects[G.identity], f.src[1].objects[G.identity]),
                                           (f.tgt[0].objects[G.identity], f.tgt[1].objects[G.identity]),
                                           (f.data[0].data, f.data[1].data)))),
                   name=f"tilde({P.name})")
    if unit is None:
        unit_obj = None
    else:
        U = unit_functor(C, unit, u)
        urep = validate_pseudo(U)
        if not urep.ok:
            raise PseudoError(urep)
        unit_obj = TildeGFunctor(tuple(C.act_obj(g, unit) for g in G), tuple(U.theta(g, "*") for g in G))
    out = MonoidalRectification(T, plus, unit_obj, {"pairing_valid": True, "strict_input": rep.strict})
    if check:
        out.report.update(_check(out, P, T, budget))
    return out


class _LazyTilde:
    """Stands in for Cat(G~, C x C) as the source of the strictified pairing; only the group is used."""

    def __init__(self, C):
        self.group = C.group
        self.name = f"Cat(~G,{C.name})"


def _check(out, P, T, budget):
    C, G = P.target, P.target.group
    src = set(P.source.objects)

    def defined(F1, F2):
        return all(x in src for x in zip(F1.objects, F2.objects))

    objs = list(T.objects)
    check_budget("pairs of objects of Cat(G~, C)", len(objs) ** 2, budget)
    eqv = []
    for F1, F2 in itertools.product(objs, repeat=2):
        if not defined(F1, F2):
            continue
        S = out.add(F1, F2)
        if not T.has_object(S):
            eqv.append(f"{F1!r} + {F2!r} is not an object")
            continue
        for g in G:
            if out.add(T.act_obj(g, F1), T.act_obj(g, F2)) != T.act_obj(g, S):
                eqv.append(f"g(F1 + F2) != gF1 + gF2 at g={g}, {F1!r}, {F2!r}")
    homs = {}
    for m in T.morphisms():
        homs.setdefault((m.src, m.tgt), []).append(m)
    keys = list(homs)
    pairs = [(k1, k2) for k1 in keys for k2 in keys
             if defined(k1[0], k2[0]) and defined(k1[1], k2[1])]
    check_budget("pairs of morphisms of Cat(G~, C)",
                 sum(len(homs[k1]) * len(homs[k2]) for k1, k2 in pairs), budget)
    for k1, k2 in pairs:
        for a, b in itertools.product(homs[k1], homs[k2]):
            s = out.plus.mor(Mor((a.src, b.src), (a.tgt, b.tgt), (a, b)))
            for g in G:
                gf = Mor((T.act_obj(g, a.src), T.act_obj(g, b.src)),
                         (T.act_obj(g, a.tgt), T.act_obj(g, b.tgt)),
                         (T.act_mor(g, a), T.act_mor(g, b)))
                if out.plus.mor(gf) != T.act_mor(g, s):
                    eqv.append(f"g(a + b) != ga + gb on morphisms at g={g}")
        if len(eqv) >= 20:
            break
    result = {"equivariance_violations": eqv[:20]}
    if out.unit is not None:
        result["unit_fixed"] = all(T.act_obj(g, out.unit) == out.unit for g in G)
    else:
        result["unit_fixed"] = True
    not_closed = []
    for H in G.subgroups():
        fixed = fixed_subcategory(T, H).objects
        fixed_set = set(fixed)
        for F1, F2 in itertools.product(fixed, repeat=2):
            if defined(F1, F2) and out.add(F1, F2) not in fixed_set:
                not_closed.append((H, F1, F2))
    result["hofix_not_closed"] = not_closed[:5]
    result["fixed_counts"] = {H: len(fixed_subcategory(T, H).objects) for H in G.subgroups()}
    if all(P.theta(g, x) == C.identity(C.act_obj(g, P.obj(x))) for g in G for x in P.source.objects):
        result["pointwise_when_strict"] = all(
            out.add(F1, F2).objects == tuple(P.obj((a, b)) for a, b in zip(F1.objects, F2.objects))
            for F1, F2 in itertools.product(objs, repeat=2) if defined(F1, F2))
    return result


# example pairings

def block_sum_pairing(GL):
    """Block sum on the GL tower up to its maximal rank; pairs past the top rank are excluded."""
    from ..algebra import matrices as mx

    R = GL.gring.ring
    N = GL.max_rank
    objs = [(a, b) for a in GL.objects for b in GL.objects if a + b <= N]
    src = product_gcategory(GL, GL).cat.full_subcategory(objs, name="GLxGL|<=N")
    CC = GCategory(src, GL.group, lambda g, x: x,
                   lambda g, f: Mor(f.src, f.tgt, (GL.act_mor(g, f.data[0]), GL.act_mor(g, f.data[1]))))

    def on_mor(f):
        (a, b) = f.src
        A, B = mx.decode(R, f.data[0].data, a), mx.decode(R, f.data[1].data, b)
        return Mor(a + b, a + b, int(mx.encode(R, mx.block_sum(R, A, B))))

    F = Functor(CC, GL, lambda x: x[0] + x[1], on_mor, name="block sum")
    return PseudoEqFunctor.strict(F)


def twisted_pair_pairing(C, base):
    """A constant pairing into ``base`` on a category whose objects are all isomorphic.

    Morphism labels add, so ``a + b = base`` on objects and ``(f, g) -> f + g`` on labels;
    ``theta_g: base -> g base`` is the label-0 isomorphism, which is not an identity when
    g moves ``base``.
    """
    def on_mor(f, g):
        return (f.data + g.data) % C.num_labels

    def theta(g, x):
        return Mor(base, C.act_obj(g, base), 0)

    return pairing(C, lambda a, b: base, on_mor, theta, name="twisted +")
