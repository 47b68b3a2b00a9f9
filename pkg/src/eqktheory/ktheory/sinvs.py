"""Quillen's S^{-1}S for a truncated symmetric monoidal groupoid, and pi_0 group completion.

Objects are pairs ``(m, n)``.  A morphism ``(m, n) -> (p, q)`` is the class
of a triple ``(r, f: r + m -> p, g: r + n -> q)``, two triples being
identified when an isomorphism ``b: r' -> r`` carries one to the other:

    (r, f, g) ~ (r', f o (b + m), g o (b + n)).

Each class is stored as its first member in enumeration order (objects
r in order, then f, then g in hom-set order).  Composition is

    (s, phi, psi) o (r, f, g) = (s + r, phi o (s + f), psi o (s + g)).

Hom-sets are enumerated only on request and under a budget; connected
components are found from the existence of some r, which needs no
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET, UnionFind, check_budget
from ..fincat.category import FinCat, Mor
from ..fincat.gcat import GCategory
from .grothendieck import (ClassMonoid, difference_vector, formal_difference_classes,
                           grothendieck_group)


class SInvSError(ValueError):
    pass


def translation_violations(S, limit=5):
    """Pairs (s, t) for which ``Aut(s) -> Aut(s + t), a -> a + id_t`` is not injective."""
    C = S.base
    out = []
    for s in S.objects:
        auts = S.isos(s, s)
        for t in S.objects:
            if S.plus(s, t) is None:
                continue
            idt = C.identity(t)
            seen = {}
            for a in auts:
                img = S.plus_mor(a, idt).data
                if img in seen:
                    out.append((s, t, seen[img], a))
                    break
                seen[img] = a
            if len(out) >= limit:
                return out
    return out


def iso_class_monoid(S):
    """Isomorphism classes of S as a ClassMonoid, with a map from objects to class indices."""
    objs = list(S.objects)
    uf = UnionFind(objs)
    for a, b in itertools.combinations(objs, 2):
        if S.rank(a) == S.rank(b) and uf.find(a) != uf.find(b) and S.isomorphic(a, b):
            uf.union(a, b)
    blocks = uf.classes()
    cls = {x: i for i, blk in enumerate(blocks) for x in blk}
    reps = [blk[0] for blk in blocks]
    table = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            s = S.plus(a, b)
            if s is not None:
                table[(i, j)] = cls[s]
    M = ClassMonoid([repr(r) for r in reps], [S.rank(r) for r in reps], cls[S.unit], table)
    M.reps = reps
    return M, cls


class SInvS:
    """S^{-1}S as a finite category with lazily enumerated hom-sets."""

    def __init__(self, S, check=True, budget=DEFAULT_OBJECT_BUDGET):
        if check:
            bad = translation_violations(S)
            if bad:
                s, t, a, b = bad[0]
                raise SInvSError(f"translation by {t!r} is not faithful on Aut({s!r}): "
                                 f"{a} and {b} have the same image")
        self.S = S
        self.budget = budget
        self.objects = [(m, n) for m in S.objects for n in S.objects]
        self._pos = {}
        self.cat = FinCat(self.objects, self._hom_data, self._compose_data,
                          lambda x: (S.unit, S.base.identity(x[0]), S.base.identity(x[1])),
                          name=f"{S.name}^-1 {S.name}")
        self.name = self.cat.name

    def __repr__(self):
        return f"SInvS({self.S.name}, objects={len(self.objects)})"

    # hom-set positions give the enumeration order used for canonical forms
    def _index(self, f):
        key = (f.src, f.tgt)
        if key not in self._pos:
            self._pos[key] = {m: i for i, m in enumerate(self.S.base.hom(*key))}
        return self._pos[key][f]

    def _obj_index(self, a):
        if not hasattr(self, "_opos"):
            self._opos = {x: i for i, x in enumerate(self.S.objects)}
        return self._opos[a]

    def orbit(self, m, n, triple):
        """All triples equivalent to ``triple`` for the source ``(m, n)``."""
        S, C = self.S, self.S.base
        r, f, g = triple
        out = []
        idm, idn = C.identity(m), C.identity(n)
        for r2 in S.objects:
            if S.rank(r2) != S.rank(r):
                continue
            for b in S.isos(r2, r):
                bm, bn = S.plus_mor(b, idm), S.plus_mor(b, idn)
                if bm is None or bn is None:
                    continue
                out.append((r2, C.compose(f, bm), C.compose(g, bn)))
        return out

    def _key(self, t):
        return (self._obj_index(t[0]), self._index(t[1]), self._index(t[2]))

    def canonical(self, m, n, triple):
        return min(self.orbit(m, n, triple), key=self._key)

    def triples(self, x, y):
        (m, n), (p, q) = x, y
        S, C = self.S, self.S.base
        for r in S.objects:
            rm, rn = S.plus(r, m), S.plus(r, n)
            if rm is None or rn is None:
                continue
            for f in C.hom(rm, p):
                for g in C.hom(rn, q):
                    yield (r, f, g)

    def hom_size_bound(self, x, y):
        (m, n), (p, q) = x, y
        S, C = self.S, self.S.base
        total = 0
        for r in S.objects:
            rm, rn = S.plus(r, m), S.plus(r, n)
            if rm is not None and rn is not None:
                total += len(C.hom(rm, p)) * len(C.hom(rn, q))
        return total

    def _hom_data(self, x, y):
        check_budget(f"triples for hom({x!r}, {y!r}) in {self.name}", self.hom_size_bound(x, y),
                     self.budget)
        m, n = x
        out, seen = [], set()
        for t in self.triples(x, y):
            if t in seen:
                continue
            orbit = self.orbit(m, n, t)
            seen.update(orbit)
            out.append(min(orbit, key=self._key))
        return sorted(out, key=self._key)

    def _compose_data(self, second, first):
        S, C = self.S, self.S.base
        (m, n) = first.src
        r, f, g = first.data
        s, phi, psi = second.data
        sr = S.plus(s, r)
        ids = C.identity(s)
        sf, sg = S.plus_mor(ids, f), S.plus_mor(ids, g)
        if sr is None or sf is None or sg is None:
            raise SInvSError("composite leaves the truncation window")
        return self.canonical(m, n, (sr, C.compose(phi, sf), C.compose(psi, sg)))

    def hom(self, x, y):
        return self.cat.hom(x, y)

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def has_morphism(self, x, y):
        """Existence of some r with ``r + m ~ p`` and ``r + n ~ q``, without enumerating."""
        (m, n), (p, q) = x, y
        S = self.S
        for r in S.objects:
            rm, rn = S.plus(r, m), S.plus(r, n)
            if rm is not None and rn is not None and S.isomorphic(rm, p) and S.isomorphic(rn, q):
                return True
        return False

    def components(self):
        """Connected components, via the class-level morphism graph."""
        S = self.S
        M, cls = iso_class_monoid(S)
        reps = M.reps
        uf = UnionFind(self.objects)
        for (m, n) in self.objects:
            uf.union((m, n), (reps[cls[m]], reps[cls[n]]))
        for m, n in itertools.product(reps, repeat=2):
            for r in reps:
                rm, rn = S.plus(r, m), S.plus(r, n)
                if rm is not None and rn is not None:
                    uf.union((m, n), (reps[cls[rm]], reps[cls[rn]]))
        return uf.classes()

    def gcategory(self):
        """The diagonal G-action, for S with a strict action."""
        S, C = self.S, self.S.base

        def act_mor(h, F):
            (m, n), (p, q) = F.src, F.tgt
            r, f, g = F.data
            gm, gn = C.act_obj(h, m), C.act_obj(h, n)
            t = (C.act_obj(h, r), C.act_mor(h, f), C.act_mor(h, g))
            return Mor((gm, gn), (C.act_obj(h, p), C.act_obj(h, q)), self.canonical(gm, gn, t))

        return GCategory(self.cat, S.group, lambda h, x: (C.act_obj(h, x[0]), C.act_obj(h, x[1])),
                         act_mor, name=self.name)


def s_inverse_s(S, check=True, budget=DEFAULT_OBJECT_BUDGET):
    return SInvS(S, check=check, budget=budget)


@dataclass
class GroupCompletion:
    """pi_0 of S^{-1}S with its group structure, and the checks behind it."""

    window: int
    components: list
    group: object
    elements: list  # normal-form coordinates of [m] - [n], one per component
    oracle_classes: int
    agrees_with_oracle: bool
    well_defined: bool
    injective: bool
    stable: object  # None when there is no smaller window to compare with
    smaller_group: object = None
    notes: list = field(default_factory=list)

    @property
    def passes(self):
        return self.agrees_with_oracle and self.well_defined and self.injective

    def as_dict(self):
        return {"window": self.window, "components": len(self.components),
                "group": self.group.describe(), "oracle_classes": self.oracle_classes,
                "agrees_with_oracle": self.agrees_with_oracle, "well_defined": self.well_defined,
                "injective": self.injective, "stable": self.stable, "notes": list(self.notes)}


def pi0_group_completion(S, check=True, budget=DEFAULT_OBJECT_BUDGET):
    """Components of S^{-1}S, read as elements of the Grothendieck group of the class monoid.

    Three routes are compared: components of S^{-1}S (morphism existence),
    the formal-difference oracle, and the Smith normal form presentation.
    The presentation is recomputed one rank lower; a change is flagged as
    instability of the truncation.
    """
    X = SInvS(S, check=check, budget=budget)
    comps = X.components()
    M, cls = iso_class_monoid(S)
    A = grothendieck_group(M)
    elements, well_defined = [], True
    for comp in comps:
        vals = {A.coordinates(difference_vector(M, cls[m], cls[n])) for m, n in comp}
        well_defined &= len(vals) == 1
        elements.append(min(vals))
    injective = len(set(elements)) == len(elements)
    uf = formal_difference_classes(M)
    oracle = uf.classes()
    # compare partitions of class pairs
    comp_of = {}
    for k, comp in enumerate(comps):
        for m, n in comp:
            comp_of[(cls[m], cls[n])] = k
    agrees = all(len({comp_of[p] for p in block}) == 1 for block in oracle) and \
        len(oracle) == len(comps)
    N = M.max_rank
    stable, smaller, notes = None, None, []
    if N > 0:
        smaller = grothendieck_group(M.truncate(N - 1))
        stable = (smaller.rank, sorted(smaller.torsion)) == (A.rank, sorted(A.torsion))
        if not stable:
            notes.append(f"group changes between rank windows {N - 1} and {N}: "
                         f"{smaller.describe()} vs {A.describe()}")
    return GroupCompletion(N, comps, A, elements, len(oracle), agrees, well_defined, injective,
                           stable, smaller, notes)
