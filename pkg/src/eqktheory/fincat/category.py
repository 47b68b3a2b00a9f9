"""Finite categories with value-based objects and morphisms, functors and equivalences."""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, UnionFind, check_budget

Mor = namedtuple("Mor", "src tgt data")
Mor.__doc__ = "A morphism ``src -> tgt``; ``data`` identifies it within its hom-set."


class CategoryError(ValueError):
    pass


class FinCat:
    """A finite category given by callables.

    ``hom(a, b)`` yields the data of the morphisms ``a -> b``,
    ``compose(g, f)`` returns the data of ``g o f`` (``f`` first) and
    ``identity(a)`` the data of ``id_a``.  Hom-sets are cached.
    """

    def __init__(self, objects, hom, compose, identity, name=None):
        self.objects = list(objects)
        self._hom = hom
        self._compose = compose
        self._identity = identity
        self.name = name or "C"
        self._homs = {}
        self._inverses = {}
        self._object_set = None

    def __repr__(self):
        return f"FinCat({self.name}, objects={len(self.objects)})"

    def has_object(self, a):
        if self._object_set is None:
            self._object_set = set(self.objects)
        return a in self._object_set

    def hom(self, a, b):
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = tuple(Mor(a, b, d) for d in self._hom(a, b))
        return self._homs[key]

    def identity(self, a):
        return Mor(a, a, self._identity(a))

    def compose(self, g, f):
        if f.tgt != g.src:
            raise CategoryError(f"cannot compose {g} after {f}")
        return Mor(f.src, g.tgt, self._compose(g, f))

    def chain(self, *mors):
        """``mors[0] o mors[1] o ...``: the last morphism is applied first."""
        out = mors[-1]
        for m in reversed(mors[:-1]):
            out = self.compose(m, out)
        return out

    def morphisms(self):
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def num_morphisms(self):
        return sum(len(self.hom(a, b)) for a in self.objects for b in self.objects)

    def has_morphism(self, a, b):
        return len(self.hom(a, b)) > 0

    def inverse(self, f):
        """The inverse of ``f``, or None when ``f`` is not an isomorphism."""
        if f not in self._inverses:
            inv = None
            ida, idb = self.identity(f.src), self.identity(f.tgt)
            for g in self.hom(f.tgt, f.src):
                if self.compose(g, f) == ida and self.compose(f, g) == idb:
                    inv = g
                    break
            self._inverses[f] = inv
        return self._inverses[f]

    def is_iso(self, f):
        return self.inverse(f) is not None

    def isos(self, a, b):
        return tuple(f for f in self.hom(a, b) if self.is_iso(f))

    def isomorphic(self, a, b):
        return any(self.is_iso(f) for f in self.hom(a, b))

    def is_groupoid(self):
        return all(self.is_iso(f) for f in self.morphisms())

    def violations(self, limit=20):
        """Exhaustive check of units, associativity and closure of composition."""
        out = []
        objs = self.objects
        for a in objs:
            ida = self.identity(a)
            if ida not in self.hom(a, a):
                out.append(f"identity of {a!r} missing from its hom-set")
        for a in objs:
            for b in objs:
                for f in self.hom(a, b):
                    if self.compose(self.identity(b), f) != f or self.compose(f, self.identity(a)) != f:
                        out.append(f"unit law fails for {f}")
                    for c in objs:
                        for g in self.hom(b, c):
                            gf = self.compose(g, f)
                            if gf not in self.hom(a, c):
                                out.append(f"composite {gf} not in hom({a!r}, {c!r})")
                            for d in objs:
                                for h in self.hom(c, d):
                                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                                        out.append(f"associativity fails at ({h}, {g}, {f})")
                                        if len(out) >= limit:
                                            return out
                if len(out) >= limit:
                    return out
        return out

    def full_subcategory(self, objects, name=None):
        parent = self
        objs = list(objects)
        return FinCat(objs, lambda a, b: (f.data for f in parent.hom(a, b)),
                      lambda g, f: parent._compose(g, f), parent._identity,
                      name=name or f"{self.name}|full")

    def subcategory(self, objects, keep, name=None):
        """Objects ``objects`` and the morphisms for which ``keep(f)`` is true."""
        parent = self
        return FinCat(list(objects), lambda a, b: (f.data for f in parent.hom(a, b) if keep(f)),
                      lambda g, f: parent._compose(g, f), parent._identity,
                      name=name or f"{self.name}|sub")

    @classmethod
    def from_tables(cls, num_objects, morphisms, identities, composition, name=None):
        """A category literal.

        ``morphisms`` lists ``(src, tgt)`` per morphism id, ``identities[a]``
        is the id of ``id_a`` and ``composition[(g, f)]`` the id of ``g o f``.
        """
        homs = {}
        for i, (s, t) in enumerate(morphisms):
            homs.setdefault((s, t), []).append(i)
        comp = {tuple(k): v for k, v in dict(composition).items()}
        for a, i in enumerate(identities):
            for j, (s, t) in enumerate(morphisms):
                if s == a:
                    comp.setdefault((j, i), j)
                if t == a:
                    comp.setdefault((i, j), j)

        def compose(g, f):
            try:
                return comp[(g.data, f.data)]
            except KeyError:
                raise CategoryError(f"composition of {g.data} after {f.data} is not tabulated") from None

        cat = cls(range(num_objects), lambda a, b: homs.get((a, b), ()), compose,
                  lambda a: identities[a], name=name)
        cat.morphism_table = list(morphisms)
        return cat


def discrete_category(objects, name=None):
    return FinCat(objects, lambda a, b: (None,) if a == b else (), lambda g, f: None,
                  lambda a: None, name=name or "discrete")


def group_category(Pi, name=None):
    """The one-object category with morphisms the elements of ``Pi``."""
    return FinCat(["*"], lambda a, b: range(Pi.order), lambda g, f: Pi.mul(g.data, f.data),
                  lambda a: Pi.identity, name=name or f"B{Pi.name}")


def product_category(C, D, name=None):
    objs = [(a, b) for a in C.objects for b in D.objects]
    return FinCat(objs,
                  lambda x, y: ((f, g) for f in C.hom(x[0], y[0]) for g in D.hom(x[1], y[1])),
                  lambda v, u: (C.compose(v.data[0], u.data[0]), D.compose(v.data[1], u.data[1])),
                  lambda x: (C.identity(x[0]), D.identity(x[1])),
                  name=name or f"{C.name}x{D.name}")


class Functor:
    """A functor given by its object and morphism maps."""

    def __init__(self, source, target, on_obj, on_mor, name=None):
        self.source = source
        self.target = target
        self._on_obj = on_obj
        self._on_mor = on_mor
        self.name = name or "F"
        self._obj_cache = {}

    def __repr__(self):
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"

    def obj(self, a):
        if a not in self._obj_cache:
            self._obj_cache[a] = self._on_obj(a)
        return self._obj_cache[a]

    def mor(self, f):
        return self._on_mor(f)

    def violations(self, limit=20):
        C, D = self.source, self.target
        out = []
        for a in C.objects:
            Fa = self.obj(a)
            if not D.has_object(Fa):
                out.append(f"F({a!r}) = {Fa!r} is not an object of the target")
            if self.mor(C.identity(a)) != D.identity(Fa):
                out.append(f"F does not preserve the identity of {a!r}")
        for f in C.morphisms():
            Ff = self.mor(f)
            if Ff.src != self.obj(f.src) or Ff.tgt != self.obj(f.tgt):
                out.append(f"F({f}) has the wrong source or target")
            elif Ff not in D.hom(Ff.src, Ff.tgt):
                out.append(f"F({f}) is not a morphism of the target")
            for c in C.objects:
                for g in C.hom(f.tgt, c):
                    if self.mor(C.compose(g, f)) != D.compose(self.mor(g), Ff):
                        out.append(f"F does not preserve the composite of {g} and {f}")
            if len(out) >= limit:
                break
        return out[:limit]

    def then(self, other, name=None):
        return Functor(self.source, other.target, lambda a: other.obj(self.obj(a)),
                       lambda f: other.mor(self.mor(f)),
                       name=name or f"{other.name}.{self.name}")


def identity_functor(C):
    return Functor(C, C, lambda a: a, lambda f: f, name=f"id_{C.name}")


@dataclass
class EquivalenceReport:
    essentially_surjective: bool
    full: bool
    faithful: bool
    witnesses: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def is_equivalence(self):
        return self.essentially_surjective and self.full and self.faithful and not self.violations

    def as_dict(self):
        return {"essentially_surjective": self.essentially_surjective, "full": self.full,
                "faithful": self.faithful, "equivalence": self.is_equivalence,
                "witnesses": {k: repr(v) for k, v in self.witnesses.items()},
                "violations": list(self.violations)}


def check_equivalence(F, check_functor=True):
    """Essential surjectivity, fullness and faithfulness, each checked exhaustively."""
    C, D = F.source, F.target
    violations = F.violations() if check_functor else []
    witnesses = {}
    images = {}
    for a in C.objects:
        images.setdefault(F.obj(a), a)
    ess = True
    for d in D.objects:
        if d in images:
            continue
        if not any(D.isomorphic(Fa, d) for Fa in images):
            ess = False
            witnesses["not_essentially_surjective"] = d
            break
    full = faithful = True
    for a in C.objects:
        for b in C.objects:
            maps = [F.mor(f) for f in C.hom(a, b)]
            if faithful and len(set(maps)) != len(maps):
                faithful = False
                witnesses["not_faithful"] = (a, b)
            if full and len(set(maps)) != len(D.hom(F.obj(a), F.obj(b))):
                full = False
                witnesses["not_full"] = (a, b)
    return EquivalenceReport(ess, full, faithful, witnesses, violations)


def connected_components(C):
    """Objects grouped by zigzags of morphisms, in order of first appearance."""
    uf = UnionFind(C.objects)
    for a in C.objects:
        for b in C.objects:
            if a != b and uf.find(a) != uf.find(b) and C.has_morphism(a, b):
                uf.union(a, b)
    return uf.classes()


def iso_classes(C):
    uf = UnionFind(C.objects)
    for a in C.objects:
        for b in C.objects:
            if a != b and uf.find(a) != uf.find(b) and C.isomorphic(a, b):
                uf.union(a, b)
    return uf.classes()


def ensure_budget(what, count, budget=DEFAULT_OBJECT_BUDGET):
    check_budget(what, count, budget)
