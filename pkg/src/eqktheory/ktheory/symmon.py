"""Symmetric monoidal G-categories, presented permutatively and truncated by rank.

The pairing is strictly unital and associative.  Sums that leave the
truncation window are undefined (``plus`` returns None) and every check
quantifies only over defined sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..algebra import matrices as mx
from ..algebra.groups import cyclic_group, subgroup_as_group
from ..fincat.category import FinCat, Functor, Mor
from ..fincat.gcat import GCategory, fixed_subcategory, trivial_gcategory
from ..fincat.hofix import HofixObject, hofix
from ..rectify.models import gl_category


class SymMonError(ValueError):
    pass


@dataclass
class SymMonReport:
    ok: bool
    strict: bool
    violations: list


class SymMonGCat:
    """A G-category with a strict pairing, a strict unit and symmetry isomorphisms.

    ``plus_obj(a, b)`` gives the object sum and ``plus_mor(f, g)`` the data
    of ``f + g``; ``symmetry(a, b)`` is a morphism ``a + b -> b + a`` and
    ``rank`` grades objects for truncation.  ``groupoid=True`` records that
    every morphism is invertible by construction.
    """

    def __init__(self, base, plus_obj, plus_mor, unit, symmetry, rank, groupoid=False, name=None):
        self.base = base
        self._plus_obj = plus_obj
        self._plus_mor = plus_mor
        self.unit = unit
        self._symmetry = symmetry
        self.rank = rank
        self.groupoid = groupoid
        self.name = name or base.name
        self._obj_set = set(base.objects)

    def __repr__(self):
        return f"SymMonGCat({self.name})"

    @property
    def group(self):
        return self.base.group

    @property
    def objects(self):
        return self.base.objects

    @property
    def max_rank(self):
        return max(self.rank(a) for a in self.objects)

    def plus(self, a, b):
        c = self._plus_obj(a, b)
        return c if c is not None and c in self._obj_set else None

    def plus_mor(self, f, g):
        src, tgt = self.plus(f.src, g.src), self.plus(f.tgt, g.tgt)
        if src is None or tgt is None:
            return None
        return Mor(src, tgt, self._plus_mor(f, g))

    def symmetry(self, a, b):
        return self._symmetry(a, b)

    def isomorphic(self, a, b):
        C = self.base
        return C.has_morphism(a, b) if self.groupoid else C.isomorphic(a, b)

    def isos(self, a, b):
        C = self.base
        return C.hom(a, b) if self.groupoid else C.isos(a, b)

    def check(self, limit=20, max_pairs=10**5):
        """Unit and associativity laws, functoriality of the pairing and naturality of the symmetry.

        ``strict`` additionally records whether ``g(a + b) = ga + gb``
        exactly, on objects and on morphisms.  At most ``max_pairs`` pairs
        of morphisms are examined.
        """
        C, G = self.base, self.group
        out, strict = [], True
        objs = list(C.objects)
        for a in objs:
            if self.plus(self.unit, a) != a or self.plus(a, self.unit) != a:
                out.append(f"unit law fails at {a!r}")
            for b in objs:
                ab = self.plus(a, b)
                if ab is None:
                    continue
                s = self.symmetry(a, b)
                if (s.src, s.tgt) != (ab, self.plus(b, a)):
                    out.append(f"symmetry at ({a!r}, {b!r}) has the wrong ends")
                    continue
                if C.compose(self.symmetry(b, a), s) != C.identity(ab):
                    out.append(f"symmetry at ({a!r}, {b!r}) is not involutive")
                for g in G:
                    if self.plus(C.act_obj(g, a), C.act_obj(g, b)) != C.act_obj(g, ab):
                        strict = False
                for c in objs:
                    bc, abc = self.plus(b, c), self.plus(ab, c)
                    if bc is not None and abc is not None and abc != self.plus(a, bc):
                        out.append(f"associativity fails on ({a!r}, {b!r}, {c!r})")
                if self.plus_mor(C.identity(a), C.identity(b)) != C.identity(ab):
                    out.append(f"id + id is not the identity at ({a!r}, {b!r})")
            if len(out) >= limit:
                return SymMonReport(False, False, out[:limit])
        pairs = 0
        for f, h in self._defined_morphism_pairs():
            pf = self.plus_mor(f, h)
            if pf is None:
                continue
            pairs += 1
            if pairs > max_pairs or len(out) >= limit:
                break
            for g in G:
                if self.plus_mor(C.act_mor(g, f), C.act_mor(g, h)) != C.act_mor(g, pf):
                    strict = False
            s1, s2 = self.symmetry(f.src, h.src), self.symmetry(f.tgt, h.tgt)
            if C.compose(s2, pf) != C.compose(self.plus_mor(h, f), s1):
                out.append(f"symmetry is not natural at ({f}, {h})")
        return SymMonReport(not out, strict and not out, out[:limit])

    def _defined_morphism_pairs(self):
        """Pairs of morphisms whose sources can be added."""
        C = self.base
        out = {a: [m for b in C.objects for m in C.hom(a, b)] for a in C.objects}
        for a in C.objects:
            for b in C.objects:
                if self.plus(a, b) is not None:
                    for f in out[a]:
                        for h in out[b]:
                            yield f, h

    def functoriality_violations(self, limit=20):
        """``(f' o f) + (g' o g) = (f' + g') o (f + g)`` on all composable defined pairs."""
        C = self.base
        out = []
        for f, g in self._defined_morphism_pairs():
            fg = self.plus_mor(f, g)
            if fg is None:
                continue
            for f2 in (m for b in C.objects for m in C.hom(f.tgt, b)):
                for g2 in (m for b in C.objects for m in C.hom(g.tgt, b)):
                    top = self.plus_mor(f2, g2)
                    if top is None:
                        continue
                    if self.plus_mor(C.compose(f2, f), C.compose(g2, g)) != C.compose(top, fg):
                        out.append(f"pairing is not functorial at ({f}, {g})")
                        if len(out) >= limit:
                            return out
        return out

    def full_sub(self, objects, name=None):
        """The full symmetric monoidal subcategory on ``objects`` (closed under defined sums)."""
        sub = self.base.cat.full_subcategory(objects, name=name)
        base = GCategory(sub, self.group, self.base.act_obj, self.base.act_mor, name=sub.name)
        return SymMonGCat(base, self._plus_obj, self._plus_mor, self.unit, self._symmetry,
                          self.rank, groupoid=self.groupoid, name=sub.name)

    def fixed(self, H):
        """The H-fixed symmetric monoidal subcategory, on which H acts trivially."""
        K, _ = subgroup_as_group(self.group, H)
        F = fixed_subcategory(self.base, H)
        return SymMonGCat(trivial_gcategory(F, K, name=F.name), self._plus_obj, self._plus_mor,
                          self.unit, self._symmetry, self.rank, groupoid=self.groupoid,
                          name=F.name)


def inclusion(S, T):
    """The inclusion functor of a symmetric monoidal subcategory S of T."""
    return Functor(S.base, T.base, lambda a: a, lambda f: f, name=f"{S.name} -> {T.name}")


@lru_cache(maxsize=None)
def _swap_code(R, a, b):
    """The block swap ``R^a + R^b -> R^b + R^a``."""
    perm = [b + j for j in range(a)] + list(range(b))
    return int(mx.encode(R, mx.permutation_matrix(R, perm)))


@lru_cache(maxsize=2**20)
def _block_sum_code(R, a, n, b, m):
    return int(mx.encode(R, mx.block_sum(R, mx.decode(R, a, n), mx.decode(R, b, m))))


def gl_symmon(GR, N, inverse=False):
    """The GL tower of ranks 0..N under block sum, with the block swap as symmetry."""
    GL = gl_category(GR, N, inverse=inverse)
    R = GR.ring
    S = SymMonGCat(GL, lambda a, b: a + b,
                   lambda f, g: _block_sum_code(R, f.data, f.src, g.data, g.src), 0,
                   lambda a, b: Mor(a + b, b + a, _swap_code(R, a, b)), lambda a: a,
                   groupoid=True, name=f"GL({R.name})<={N}")
    S.gring = GR
    return S


def trivial_symmon(G=None):
    """The one-object, one-morphism symmetric monoidal category."""
    G = G or cyclic_group(1)
    cat = FinCat([0], lambda a, b: (None,), lambda g, f: None, lambda a: None, name="pt")
    return SymMonGCat(trivial_gcategory(cat, G, name="pt"), lambda a, b: 0, lambda f, g: None, 0,
                      lambda a, b: Mor(0, 0, None), lambda a: 0, groupoid=True, name="pt")


def discrete_symmon(Pi, G=None, name=None):
    """An abelian group as a discrete symmetric monoidal category, all objects of rank 0."""
    if not Pi.is_abelian():
        raise SymMonError("a discrete symmetric monoidal category needs an abelian group")
    G = G or cyclic_group(1)
    name = name or f"disc({Pi.name})"
    cat = FinCat(list(Pi), lambda a, b: (None,) if a == b else (), lambda g, f: None,
                 lambda a: None, name=name)
    return SymMonGCat(trivial_gcategory(cat, G, name=name), Pi.mul, lambda f, g: None,
                      Pi.identity, lambda a, b: Mor(Pi.mul(a, b), Pi.mul(b, a), None),
                      lambda a: 0, groupoid=True, name=name)


def hofix_symmon(GR, H, N, free_only=False):
    """Semilinear structures of rank <= N for H, i.e. hofix of the GL tower, under block sum.

    With ``free_only`` only the standard structures (all cocycle values the
    identity) are kept.  G acts trivially; the category is a groupoid.
    """
    GL = gl_category(GR, N)
    HC = hofix(GL, H)
    R = GR.ring
    if free_only:
        keep = [x for x in HC.objects if all(f == GL.identity(x.obj) for f in x.f)]
        sub = HC.full_subcategory(keep, name=f"free({R.name})<={N}")
        sub.base, sub.H = GL, HC.H
        HC = sub
    objs = {(x.obj, x.f): x for x in HC.objects}

    def plus_obj(x, y):
        n = x.obj + y.obj
        if n > N:
            return None
        f = tuple(Mor(n, n, _block_sum_code(R, a.data, x.obj, b.data, y.obj))
                  for a, b in zip(x.f, y.f))
        return objs.get((n, f))

    def plus_mor(f, g):
        n = f.src.obj + g.src.obj
        return Mor(n, n, _block_sum_code(R, f.data.data, f.src.obj, g.data.data, g.src.obj))

    def symmetry(x, y):
        n = x.obj + y.obj
        return Mor(plus_obj(x, y), plus_obj(y, x), Mor(n, n, _swap_code(R, x.obj, y.obj)))

    unit = objs[(0, tuple(GL.identity(0) for _ in HC.H))]
    S = SymMonGCat(trivial_gcategory(HC, GR.group, name=HC.name), plus_obj, plus_mor, unit,
                   symmetry, lambda x: x.obj, groupoid=True, name=HC.name)
    S.gring = GR
    return S


def standard_structure(S, n):
    """The object of a hofix_symmon with identity cocycle in rank n."""
    for x in S.objects:
        if x.obj == n and all(f.data == S.base.cat.base.identity(n).data for f in x.f):
            return x
    raise SymMonError(f"no standard structure of rank {n}")
