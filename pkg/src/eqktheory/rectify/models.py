"""Concrete G-categories used as test beds.

* preorder categories twisted by a group: objects form a G-set, there are
  ``|Pi|`` morphisms ``x -> y`` whenever ``x <= y`` and G acts on the labels
  through automorphisms of Pi;
* the twisted free-module model of iso F(R) for abelian G, and the GL tower;
* pointed finite sets, for pushouts.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from ..algebra import matrices as mx
from ..algebra.groups import GroupAction, cyclic_group, symmetric_group
from ..fincat.category import FinCat, Functor, Mor
from ..fincat.gcat import GCategory, GFunctor
from .pseudo import conjugate_functor


class ModelError(ValueError):
    pass


# preorders twisted by a group

def preorder_category(G, perms, leq, action, name=None):
    """Objects ``0..k-1`` permuted by ``perms[g]``; morphisms ``x -> y`` are Pi's elements when ``(x, y)`` is in ``leq``."""
    Pi = action.Pi
    leq = frozenset(leq)
    k = len(perms[0])
    cat = FinCat(range(k), lambda x, y: range(Pi.order) if (x, y) in leq else (),
                 lambda g, f: Pi.mul(g.data, f.data), lambda x: Pi.identity,
                 name=name or f"P{k}x{Pi.name}")
    C = GCategory(cat, G, lambda g, x: perms[g][x],
                  lambda g, f: Mor(perms[g][f.src], perms[g][f.tgt], action.act(g, f.data)))
    C.perms, C.leq, C.action = perms, leq, action
    return C


def random_gset(G, rng, max_size):
    """A G-set for cyclic G as a union of orbits of size 1 or |G|."""
    m = G.order
    orbits = []
    size = 0
    while True:
        choice = rng.choice([1, m]) if m > 1 else 1
        if size + choice > max_size:
            break
        orbits.append(choice)
        size += choice
        if rng.random() < 0.35:
            break
    if not orbits:
        orbits = [1]
    perms = [[0] * sum(orbits) for _ in range(m)]
    start = 0
    for o in orbits:
        for g in range(m):
            for i in range(o):
                perms[g][start + i] = start + (i + g) % o
        start += o
    return perms


def close_preorder(perms, pairs):
    k = len(perms[0])
    leq = {(x, x) for x in range(k)}
    leq |= {(perms[g][x], perms[g][y]) for (x, y) in pairs for g in range(len(perms))}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


def _label_actions(G):
    """Small groups Pi with a G-action, for cyclic G of order 2 or 3."""
    C1, C2, C3 = cyclic_group(1), cyclic_group(2), cyclic_group(3)
    out = [GroupAction.trivial(G, C1), GroupAction.trivial(G, C2), GroupAction.trivial(G, C3)]
    if G.order == 2:
        out.append(GroupAction.from_generators(G, C3, [[0, 2, 1]]))
        S3 = symmetric_group(3)
        t = S3.index[(1, 0, 2)]
        out.append(GroupAction.from_generators(
            G, S3, [[S3.mul(S3.mul(t, x), t) for x in S3]]))
    return out


def iso_count(C):
    return {a: sum(len(C.isos(a, b)) for b in C.objects) for a in C.objects}


def tilde_size(C):
    G = C.group
    return sum(v ** (G.order - 1) for v in iso_count(C).values())


def random_preorder_gcategory(G, rng, max_objects=4, action=None):
    perms = random_gset(G, rng, max_objects)
    k = len(perms[0])
    pairs = [(x, y) for x in range(k) for y in range(k) if x != y and rng.random() < 0.3]
    leq = close_preorder(perms, pairs)
    action = action if action is not None else rng.choice(_label_actions(G))
    return preorder_category(G, perms, leq, action)


def doubled(C):
    """Each object x becomes 2x and 2x+1, isomorphic, with the same labels."""
    k = len(C.objects)
    perms = [[2 * p[x // 2] + x % 2 for x in range(2 * k)] for p in C.perms]
    leq = {(2 * x + i, 2 * y + j) for (x, y) in C.leq for i in (0, 1) for j in (0, 1)}
    return preorder_category(C.group, perms, leq, C.action, name=f"2{C.cat.name}")


def with_isolated_orbit(C):
    """C plus one extra G-fixed object with only its identity-labelled endomorphisms."""
    k = len(C.objects)
    perms = [list(p) + [k] for p in C.perms]
    leq = set(C.leq) | {(k, k)}
    return preorder_category(C.group, perms, leq, C.action, name=f"{C.cat.name}+pt")


def collapsed(C):
    """Same preorder with trivial labels."""
    G = C.group
    return preorder_category(G, C.perms, C.leq, GroupAction.trivial(G, cyclic_group(1)),
                             name=f"{C.cat.name}/Pi")


def equivariant_map(kind, C):
    """An equivariant functor out of C of the given kind, and whether it is an equivalence."""
    if kind == "identity":
        return GFunctor(C, C, lambda x: x, lambda f: f, name="id"), True
    if kind == "doubled":
        D = doubled(C)
        return GFunctor(C, D, lambda x: 2 * x, lambda f: Mor(2 * f.src, 2 * f.tgt, f.data),
                        name="double"), True
    if kind == "collapse":
        D = collapsed(C)
        return (GFunctor(C, D, lambda x: x, lambda f: Mor(f.src, f.tgt, 0), name="collapse"),
                C.action.Pi.order == 1)
    if kind == "isolated":
        D = with_isolated_orbit(C)
        return GFunctor(C, D, lambda x: x, lambda f: f, name="include"), False
    raise ModelError(f"unknown map kind {kind!r}")


def random_pseudo_instance(seed, orders=(2, 3), max_objects=4, max_tilde=120,
                           kinds=("identity", "doubled", "collapse", "isolated")):
    """A pseudo equivariant functor obtained by conjugating an equivariant one.

    ``Theta(C)`` is a random object isomorphic to ``Phi(C)`` and ``tau(C)`` a
    random isomorphism between them, so the coherence maps are generally
    not identities.  Instances whose Cat(G~, -) would exceed ``max_tilde``
    objects are redrawn from the same seeded stream.
    """
    rng = random.Random(seed)
    for _ in range(1000):
        G = cyclic_group(rng.choice(orders))
        C = random_preorder_gcategory(G, rng, max_objects=max_objects)
        kind = rng.choice(kinds)
        if kind == "doubled" and len(C.objects) > 2:
            continue
        Phi, is_eq = equivariant_map(kind, C)
        D = Phi.target
        if tilde_size(C) > max_tilde or tilde_size(D) > max_tilde:
            continue
        choice, tau = {}, {}
        for a in C.objects:
            b = Phi.obj(a)
            targets = [f for c in D.objects for f in D.isos(b, c)]
            tau[a] = rng.choice(targets)
            choice[a] = tau[a].tgt
        P = conjugate_functor(Phi, lambda a: tau[a], lambda a: choice[a])
        P.name = f"seed{seed}:{G.name}:{kind}"
        P.expected_equivalence = is_eq
        return P
    raise ModelError("could not draw an instance within the size limit")


def swapped_pair(k=1):
    """Objects x, y exchanged by C2; every hom-set is Z/k and composition adds labels."""
    G = cyclic_group(2)
    cat = FinCat(["x", "y"], lambda a, b: range(k), lambda g, f: (g.data + f.data) % k,
                 lambda a: 0, name=f"pair{k}")
    other = {"x": "y", "y": "x"}
    C = GCategory(cat, G, lambda g, a: a if g == 0 else other[a],
                  lambda g, f: f if g == 0 else Mor(other[f.src], other[f.tgt], f.data))
    C.num_labels = k
    return C


# free modules

class _GLTables:
    """Products ``N M^t`` and twists ``M^t`` in GL_n(R), tabulated per (n, t) on first use."""

    def __init__(self, GR, N, max_pairs=4 * 10**6):
        R = GR.ring
        self.GR, self.R, self.max_pairs = GR, R, max_pairs
        self.codes = {n: tuple(int(c) for c in mx.encode(R, mx.general_linear(R, n)))
                      for n in range(N + 1)}
        self.ident = {n: int(mx.encode(R, mx.identity(R, n))) for n in range(N + 1)}
        self.pos = {n: {c: i for i, c in enumerate(cs)} for n, cs in self.codes.items()}
        self._mul = {}
        self._act = {}

    def act(self, t, n, code):
        key = (t, n)
        if key not in self._act:
            M = mx.decode(self.R, np.array(self.codes[n]), n)
            imgs = mx.encode(self.R, mx.act(self.GR, t, M))
            self._act[key] = dict(zip(self.codes[n], (int(c) for c in imgs)))
        return self._act[key][code]

    def mul(self, n, t, a, b):
        """The code of ``A B^t``."""
        k = len(self.codes[n])
        if k * k > self.max_pairs:
            A, B = mx.decode(self.R, a, n), mx.decode(self.R, self.act(t, n, b), n)
            return int(mx.encode(self.R, mx.matmul(self.R, A, B)))
        key = (n, t)
        if key not in self._mul:
            M = mx.decode(self.R, np.array(self.codes[n]), n)
            Mt = mx.act(self.GR, t, M)
            prod = mx.matmul(self.R, M[:, None], Mt[None, :])
            self._mul[key] = mx.encode(self.R, prod)
        pos = self.pos[n]
        return int(self._mul[key][pos[a], pos[b]])


def twisted_free_model(GR, N, name=None):
    """Objects ``(n, a)``: R^n with scalars acting through ``a``; isomorphisms only.

    A morphism ``(n, a) -> (n, b)`` is ``v -> M v^{b a^{-1}}`` for an
    invertible M, stored as the code of M.  G acts by ``g.(n, a) = (n, ga)``
    and leaves M alone, which is a strict action for abelian G.
    """
    G, R = GR.group, GR.ring
    if not G.is_abelian():
        raise ModelError("the twisted free-module model needs an abelian group")
    tables = _GLTables(GR, N)
    gl, ident = tables.codes, tables.ident
    objects = [(n, a) for n in range(N + 1) for a in G]

    def compose(g, f):
        (n, a), (_, b), (_, c) = f.src, f.tgt, g.tgt
        return tables.mul(n, G.mul(c, G.inv(b)), g.data, f.data)

    cat = FinCat(objects, lambda x, y: gl[x[0]] if x[0] == y[0] else (), compose,
                 lambda x: ident[x[0]], name=name or f"isoF({R.name})<={N}")
    C = GCategory(cat, G, lambda g, x: (x[0], G.mul(g, x[1])),
                  lambda g, f: Mor((f.src[0], G.mul(g, f.src[1])), (f.tgt[0], G.mul(g, f.tgt[1])), f.data))
    C.gring, C.max_rank = GR, N
    return C


def gl_category(GR, N, inverse=False, name=None):
    """The GL tower: one object per rank, GL_n(R) as automorphisms, entrywise action.

    With ``inverse=True`` the element g acts entrywise through ``g^{-1}``.
    """
    G, R = GR.group, GR.ring
    tables = _GLTables(GR, N)
    gl, ident = tables.codes, tables.ident
    e = G.identity

    def compose(g, f):
        return tables.mul(f.src, e, g.data, f.data)

    def act(g, f):
        h = G.inv(g) if inverse else g
        return Mor(f.src, f.tgt, tables.act(h, f.src, f.data))

    cat = FinCat(range(N + 1), lambda x, y: gl[x] if x == y else (), compose, lambda x: ident[x],
                 name=name or f"GL({R.name})<={N}")
    C = GCategory(cat, G, lambda g, x: x, act)
    C.gring, C.max_rank = GR, N
    return C


def identity_gammas(T):
    """gamma_{(n,a)}: (n, a) -> (n, e) with matrix I, i.e. v -> v^{a^{-1}}."""
    e = T.group.identity
    return {x: Mor(x, (x[0], e), T.identity((x[0], e)).data) for x in T.objects}


# pointed sets

def pointed_sets(max_size=3, involution=False, name=None):
    """Pointed sets {0, .., k-1} (basepoint 0) and basepoint-preserving maps.

    With ``involution=True``, C2 acts trivially on objects and by
    conjugation with the transposition of 1 and 2 on maps between
    3-element sets.
    """
    objs = list(range(1, max_size + 1))

    def hom(a, b):
        return (tuple([0] + list(rest)) for rest in itertools.product(range(b), repeat=a - 1))

    def compose(g, f):
        return tuple(g.data[i] for i in f.data)

    cat = FinCat(objs, hom, compose, lambda a: tuple(range(a)), name=name or f"Set*<={max_size}")
    G = cyclic_group(2)
    if not involution:
        C = GCategory(cat, G, lambda g, a: a, lambda g, f: f)
    else:
        def s(k):
            return (0, 2, 1) if k == 3 else tuple(range(k))

        def act(g, f):
            if g == 0:
                return f
            sa, sb = s(f.src), s(f.tgt)
            return Mor(f.src, f.tgt, tuple(sb[f.data[sa[i]]] for i in range(f.src)))

        C = GCategory(cat, G, lambda g, a: a, act)
    C.name = cat.name
    return C


def injective(f):
    return len(set(f.data)) == len(f.data)


def no_cocone_category():
    """a -> b and a -> c with nothing else: the span has no cocone."""
    cat = FinCat.from_tables(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)], [0, 1, 2], {},
                             name="span")
    return GCategory(cat, cyclic_group(1), lambda g, a: a, lambda g, f: f)


def swapped_zero_category():
    """Two zero objects z0, z1 exchanged by C2 and a fixed object a with endomorphisms {id, 0}."""
    objs = ["a", "z0", "z1"]

    def hom(x, y):
        if x == "a" and y == "a":
            return ("id", "0")
        return ("0",) if x != y else ("id",)

    def compose(g, f):
        if f.src == g.tgt and f.src != "a":
            return "id"
        return "id" if (f.data == "id" and g.data == "id") else "0"

    cat = FinCat(objs, hom, compose, lambda x: "id", name="zero-swap")
    swap = {"a": "a", "z0": "z1", "z1": "z0"}
    return GCategory(cat, cyclic_group(2), lambda g, x: x if g == 0 else swap[x],
                     lambda g, f: f if g == 0 else Mor(swap[f.src], swap[f.tgt], f.data))


def extension_of_scalars(GR_base, GR_total, N, source=None, target=None):
    """F^n -> E^n from the GL tower over F (trivial action) into the twisted model over E.

    The coherence map ``theta_g(n): (n, e) -> (n, g)`` is ``v -> v^g``; it is
    not an identity, so this functor is pseudo equivariant but not strict.
    ``inclusion[x]`` sends each element of F to its image in E.
    """
    from .pseudo import PseudoEqFunctor

    Rb, Rt = GR_base.ring, GR_total.ring
    G = GR_total.group
    inclusion = field_inclusion(Rb, Rt)
    S = source if source is not None else gl_category(GR_base, N)
    T = target if target is not None else twisted_free_model(GR_total, N)
    e = G.identity

    def on_mor(f):
        M = mx.decode(Rb, f.data, f.src)
        return Mor((f.src, e), (f.tgt, e), int(mx.encode(Rt, inclusion[M])))

    F = Functor(S, T, lambda n: (n, e), on_mor, name="E(x)-")
    theta = lambda g, n: Mor((n, e), (n, g), T.identity((n, e)).data)
    P = PseudoEqFunctor(S, T, F, theta, name="extension of scalars")
    P.inclusion = inclusion
    return P


def field_inclusion(F, E):
    """The unique ring map from a prime field, or between fields given with the same prime subfield."""
    p = F.characteristic()
    if E.characteristic() != p:
        raise ModelError("characteristics differ")
    if F.size == p:
        return np.array([E.integer(k) for k in range(p)], dtype=np.int64)
    # general case: search for an embedding sending a generator to a root of its minimal relation
    gens = [a for a in F if _generates(F, a)]
    g = gens[0]
    powers = _power_list(F, g)
    for cand in E:
        img = {F.zero: E.zero}
        x = E.one
        ok = True
        for k, pk in enumerate(powers):
            if pk in img and img[pk] != x:
                ok = False
                break
            img[pk] = x
            x = E.mul(x, cand)
        if ok and len(img) == F.size:
            phi = np.array([img[a] for a in F], dtype=np.int64)
            if all(phi[F.add(a, b)] == E.add(phi[a], phi[b]) for a in F for b in F):
                return phi
    raise ModelError(f"no embedding of {F.name} into {E.name}")


def _power_list(F, g):
    out, x = [], F.one
    while True:
        out.append(x)
        x = F.mul(x, g)
        if x == F.one:
            return out


def _generates(F, a):
    return a != F.zero and len(_power_list(F, a)) == F.size - 1
