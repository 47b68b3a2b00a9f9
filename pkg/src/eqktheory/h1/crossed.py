"""Crossed homomorphisms, the crossed functor category and nonabelian H^1.

For a group G acting on a group Pi (``act(g, act(h, x)) = act(gh, x)``), a
crossed homomorphism on a subgroup H is ``f: H -> Pi`` with

    f(gh) = f(g) (g.f(h)).

A morphism ``alpha -> beta`` is ``s`` in Pi with ``beta(g) (g.s) = s alpha(g)``;
H^1 is the set of isomorphism classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .._util import DEFAULT_MULT_BUDGET, UnionFind, check_budget
from ..fincat.category import FinCat


class H1Error(ValueError):
    pass


@dataclass(frozen=True)
class CrossedHom:
    """Values ``values[i] = f(H[i])`` of a crossed homomorphism on the subgroup H."""

    H: tuple
    values: tuple

    def at(self, h):
        return self.values[self.H.index(h)]

    def __repr__(self):
        return f"CrossedHom{self.values}"


def crossed_violations(action, f, limit=10):
    """Failures of ``f(e) = 1``, the cocycle identity and ``f(g^-1) = g^-1.f(g)^-1``."""
    G, Pi = action.G, action.Pi
    out = []
    if f.at(G.identity) != Pi.identity:
        out.append("f(e) is not the identity")
    for g in f.H:
        for h in f.H:
            if f.at(G.mul(g, h)) != Pi.mul(f.at(g), action.act(g, f.at(h))):
                out.append(f"cocycle identity fails at ({g}, {h})")
                if len(out) >= limit:
                    return out
        gi = G.inv(g)
        if f.at(gi) != action.act(gi, Pi.inv(f.at(g))):
            out.append(f"f(g^-1) != g^-1.f(g)^-1 at g = {g}")
    return out[:limit]


def _propagate(action, gens, vals):
    """Extend generator values along ``f(xs) = f(x) (x.f(s))``; None on a clash."""
    G, Pi = action.G, action.Pi
    f = {G.identity: Pi.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, v in zip(gens, vals):
                y = G.mul(x, s)
                w = Pi.mul(f[x], action.act(x, v))
                if y in f:
                    if f[y] != w:
                        return None
                else:
                    f[y] = w
                    nxt.append(y)
        frontier = nxt
    return f


def enumerate_crossed_homs(action, H=None, budget=DEFAULT_MULT_BUDGET):
    """All crossed homomorphisms on H (default: all of G), ordered lexicographically.

    Values are chosen on a generating set of H, propagated, then validated
    on every pair.
    """
    G, Pi = action.G, action.Pi
    H = tuple(sorted(H)) if H is not None else G.whole()
    gens = G.generators(H)
    check_budget(f"crossed homomorphism candidates {Pi.name}^{len(gens)}",
                 Pi.order ** len(gens), budget)
    out = []
    for vals in itertools.product(range(Pi.order), repeat=len(gens)):
        f = _propagate(action, gens, vals)
        if f is None:
            continue
        c = CrossedHom(H, tuple(f[h] for h in H))
        if not crossed_violations(action, c, limit=1):
            out.append(c)
    return sorted(out, key=lambda c: c.values)


def is_crossed_morphism(action, alpha, beta, s):
    Pi = action.Pi
    return all(Pi.mul(beta.at(g), action.act(g, s)) == Pi.mul(s, alpha.at(g)) for g in alpha.H)


def crossed_category(action, H=None, homs=None, budget=DEFAULT_MULT_BUDGET):
    """Crossed homomorphisms on H and the elements of Pi relating them; composition is the product."""
    Pi = action.Pi
    homs = homs if homs is not None else enumerate_crossed_homs(action, H, budget=budget)
    check_budget("crossed category hom tests", len(homs) ** 2 * Pi.order, budget)
    cat = FinCat(homs,
                 lambda a, b: [s for s in Pi if is_crossed_morphism(action, a, b, s)],
                 lambda t, s: Pi.mul(t.data, s.data),
                 lambda a: Pi.identity,
                 name=f"Z1({Pi.name})")
    return cat


def twist(action, s, f):
    """``g -> s f(g) (g.s)^-1``, the crossed homomorphism isomorphic to f through s."""
    Pi = action.Pi
    return CrossedHom(f.H, tuple(Pi.mul(Pi.mul(s, v), Pi.inv(action.act(g, s)))
                                 for g, v in zip(f.H, f.values)))


@dataclass
class H1Set:
    H: tuple
    cocycle_count: int
    classes: list  # each a sorted list of crossed homs; representative first
    stabilizer_orders: list

    @property
    def class_count(self):
        return len(self.classes)

    @property
    def representatives(self):
        return [c[0] for c in self.classes]

    @property
    def orbit_sizes(self):
        return [len(c) for c in self.classes]

    @property
    def trivial(self):
        return self.class_count == 1

    def as_dict(self, action=None):
        def show(f):
            if action is None:
                return list(f.values)
            return [action.Pi.names[v] for v in f.values]

        return {"subgroup": list(self.H), "cocycle_count": self.cocycle_count,
                "class_count": self.class_count, "orbit_sizes": self.orbit_sizes,
                "representatives": [show(f) for f in self.representatives]}


def h1_set(action, H=None, homs=None, budget=DEFAULT_MULT_BUDGET):
    """H^1(H; Pi): orbits of crossed homomorphisms under twisting by generators of Pi.

    Each class is listed in lexicographic order of values, so the
    representative is the lexicographically least member.
    """
    G, Pi = action.G, action.Pi
    H = tuple(sorted(H)) if H is not None else G.whole()
    homs = homs if homs is not None else enumerate_crossed_homs(action, H, budget=budget)
    known = set(homs)
    uf = UnionFind(homs)
    for f in homs:
        for s in Pi.generators():
            t = twist(action, s, f)
            if t not in known:
                raise H1Error(f"twisting {f} by {s} leaves the enumerated crossed homomorphisms")
            uf.union(f, t)
    classes = sorted((sorted(c, key=lambda f: f.values) for c in uf.classes()),
                     key=lambda c: c[0].values)
    stab = [Pi.order // len(c) for c in classes]
    return H1Set(H, len(homs), classes, stab)


def transport_action(action, perm):
    """The same action after relabelling the elements of Pi by ``x -> perm[x]``."""
    from ..algebra.groups import FiniteGroup, GroupAction

    Pi = action.Pi
    n = Pi.order
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    table = [[perm[Pi.mul(inv[a], inv[b])] for b in range(n)] for a in range(n)]
    names = [Pi.names[inv[a]] for a in range(n)]
    Q = FiniteGroup(table, names=names, name=Pi.name)
    perms = [[perm[action.act(g, inv[a])] for a in range(n)] for g in action.G]
    return GroupAction(action.G, Q, perms)


def conjugate_action(action, phi):
    """``g -> phi o act(g) o phi^-1`` for an automorphism phi of Pi given as a list."""
    from ..algebra.groups import GroupAction

    Pi = action.Pi
    inv = [0] * Pi.order
    for x, y in enumerate(phi):
        inv[y] = x
    perms = [[phi[action.act(g, inv[a])] for a in Pi] for g in action.G]
    return GroupAction(action.G, Pi, perms)
