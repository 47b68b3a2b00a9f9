"""Hilbert 90, the comparison with fixed points of Cat(G~, Pi), and the iota criterion."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._util import DEFAULT_MULT_BUDGET, DEFAULT_OBJECT_BUDGET
from ..algebra.matrices import MatrixGroupTower
from ..algebra.rings import make_galois_gring
from ..fincat.category import Functor, Mor, check_equivalence
from ..fincat.gcat import fixed_subcategory, group_gcategory
from ..fincat.hofix import hofix
from ..fincat.tilde import TildeGFunctor, cat_tilde_g
from .crossed import crossed_category, enumerate_crossed_homs, h1_set


@dataclass
class Hilbert90Report:
    field: str
    n: int
    group_order: int
    gl_order: int
    fixed_order: int  # |GL_n| of the fixed field
    cocycle_count: int
    class_count: int
    orbit_size: int  # size of the class of the trivial cocycle

    @property
    def holds(self):
        return self.class_count == 1

    @property
    def orbit_stabilizer_ok(self):
        return self.orbit_size * self.fixed_order == self.gl_order

    def as_dict(self):
        return {"field": self.field, "n": self.n, "group_order": self.group_order,
                "gl_order": self.gl_order, "fixed_order": self.fixed_order,
                "cocycle_count": self.cocycle_count, "class_count": self.class_count,
                "orbit_size": self.orbit_size, "holds": self.holds,
                "orbit_stabilizer": self.orbit_stabilizer_ok}


def gl_action(GR, n, budget=DEFAULT_MULT_BUDGET):
    """GL_n(R) as a group with the entrywise action of the G-ring."""
    return MatrixGroupTower(GR, budget=budget).as_finite_group(n)[1]


def verify_hilbert90(p, d_total, d_sub, n, budget=DEFAULT_MULT_BUDGET):
    """H^1(Gal, GL_n) for ``F_{p^d_total} / F_{p^d_sub}`` by exhaustive enumeration."""
    GR = make_galois_gring(p, d_total, d_sub)
    action = gl_action(GR, n, budget=budget)
    hs = h1_set(action, budget=budget)
    Pi = action.Pi
    fixed = len(action.fixed_points(action.G.whole()))
    trivial = next(c for c in hs.classes if any(all(v == Pi.identity for v in f.values) for f in c))
    return Hilbert90Report(GR.ring.name, n, action.G.order, Pi.order, fixed, hs.cocycle_count,
                           hs.class_count, len(trivial))


# comparisons with fincat

@dataclass
class CrossedComparison:
    objects_equal: bool
    homs_equal: bool
    objects: int

    @property
    def passes(self):
        return self.objects_equal and self.homs_equal


def crossed_matches_hofix(action, H=None, budget=DEFAULT_OBJECT_BUDGET):
    """The crossed category against hofix of the one-object G-category Pi, computed separately."""
    H = tuple(sorted(H)) if H is not None else action.G.whole()
    X = crossed_category(action, H)
    HC = hofix(group_gcategory(action), H, budget=budget)
    by_values = {tuple(m.data for m in x.f): x for x in HC.objects}
    objs = {f.values for f in X.objects} == set(by_values)
    homs = objs and all(
        {m.data for m in X.hom(a, b)} ==
        {m.data.data for m in HC.hom(by_values[a.values], by_values[b.values])}
        for a in X.objects for b in X.objects)
    return CrossedComparison(objs, bool(homs), len(X.objects))


def crossed_to_tilde(action, f):
    """The G-fixed object of Cat(G~, Pi) attached to f: ``psi_h = h.f(h^{-1})``."""
    G = action.G
    return TildeGFunctor(("*",) * G.order,
                         tuple(Mor("*", "*", action.act(h, f.at(G.inv(h)))) for h in G))


@dataclass
class TildeComparison:
    bijective_on_objects: bool
    homs_match: bool
    functor_violations: list = field(default_factory=list)

    @property
    def passes(self):
        return self.bijective_on_objects and self.homs_match and not self.functor_violations


def crossed_matches_tilde_fixed(action, budget=DEFAULT_OBJECT_BUDGET):
    """Check that ``f -> crossed_to_tilde(f)``, ``s -> s`` is an isomorphism onto Cat(G~, Pi)^G."""
    G = action.G
    X = crossed_category(action, G.whole())
    C = group_gcategory(action)
    FX = fixed_subcategory(cat_tilde_g(C, budget=budget), G.whole())
    F = Functor(X, FX, lambda f: crossed_to_tilde(action, f),
                lambda s: Mor(crossed_to_tilde(action, s.src), crossed_to_tilde(action, s.tgt),
                              Mor("*", "*", s.data)), name="crossed -> tilde")
    images = [F.obj(f) for f in X.objects]
    bij = len(set(images)) == len(images) and set(images) == set(FX.objects)
    homs = bij and all({F.mor(s) for s in X.hom(a, b)} == set(FX.hom(F.obj(a), F.obj(b)))
                       for a in X.objects for b in X.objects)
    return TildeComparison(bij, bool(homs), F.violations())


# the iota criterion

@dataclass
class IotaLevel:
    H: tuple
    equivalence: bool
    h1_classes: int
    essentially_surjective: bool

    @property
    def h1_trivial(self):
        return self.h1_classes == 1

    @property
    def agrees(self):
        return self.equivalence == self.h1_trivial


@dataclass
class IotaReport:
    name: str
    levels: list

    @property
    def agrees(self):
        return all(lv.agrees for lv in self.levels)

    @property
    def counterexamples(self):
        return [lv.H for lv in self.levels if not lv.agrees]

    def as_dict(self):
        return {"name": self.name, "agrees": self.agrees,
                "levels": [{"subgroup": list(lv.H), "iota_equivalence": lv.equivalence,
                            "essentially_surjective": lv.essentially_surjective,
                            "h1_classes": lv.h1_classes, "agrees": lv.agrees}
                           for lv in self.levels]}


def iota_equivalence_check(action, subgroups=None, name=None, budget=DEFAULT_OBJECT_BUDGET):
    """For each H: is ``Pi^H -> Cat(G~, Pi)^H`` an equivalence, and is H^1(H; Pi) trivial?"""
    G = action.G
    C = group_gcategory(action)
    iota = cat_tilde_g(C, budget=budget).iota()
    subgroups = subgroups if subgroups is not None else G.subgroups()
    levels = []
    for H in subgroups:
        H = tuple(sorted(H))
        rep = check_equivalence(iota.on_fixed(H))
        levels.append(IotaLevel(H, rep.is_equivalence, h1_set(action, H).class_count,
                                rep.essentially_surjective))
    return IotaReport(name or f"{action.Pi.name}/{G.name}", levels)


def _automorphism_action(G, Pi, images, gens=None):
    from ..algebra.groups import GroupAction
    return GroupAction.from_generators(G, Pi, images, gens=gens)


def iota_battery():
    """Named (Pi, action) instances with both trivial and nontrivial H^1."""
    from ..algebra.groups import GroupAction, cyclic_group, symmetric_group
    from ..algebra.rings import make_finite_field, trivial_gring

    C2, C3 = cyclic_group(2), cyclic_group(3)
    out = []
    for p, d, n in [(2, 2, 1), (2, 2, 2), (3, 2, 1)]:
        GR = make_galois_gring(p, d, 1)
        out.append((f"GL{n}(F{p**d})/frob", gl_action(GR, n)))
    out.append(("GL1(F8)/frob", gl_action(make_galois_gring(2, 3, 1), 1)))
    for p, n in [(3, 1), (2, 2), (3, 2)]:
        out.append((f"GL{n}(F{p})/triv", gl_action(trivial_gring(make_finite_field(p, 1), C2), n)))
    out.append(("1/triv", GroupAction.trivial(C2, cyclic_group(1))))
    for m in (2, 3, 4):
        Z = cyclic_group(m)
        out.append((f"Z{m}/inv", _automorphism_action(C2, Z, [[Z.inv(a) for a in Z]])))
    S3 = symmetric_group(3)
    Z3 = cyclic_group(3)
    sign = [[a if S3.element_order(g) != 2 else Z3.inv(a) for a in Z3] for g in S3]
    out.append(("Z3/S3 sign", GroupAction(S3, Z3, sign)))
    out.append(("Z2/C3 triv", GroupAction.trivial(C3, cyclic_group(2))))
    return out
