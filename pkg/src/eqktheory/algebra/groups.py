"""Finite groups as multiplication tables, plus groups acting on groups."""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group on the elements ``0 .. order-1``.

    ``table[a, b]`` is the index of the product ``a*b``.  Construction
    verifies the group axioms exhaustively.
    """

    def __init__(self, table, names=None, name=None):
        table = np.array(table, dtype=np.int64)
        n = len(table)
        if table.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be square and nonempty")
        if table.min() < 0 or table.max() >= n:
            raise GroupError("table entries out of range")
        self.table = table
        self.order = n
        self.name = name or f"G{n}"
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        idx = np.arange(n)
        ids = [e for e in range(n) if (table[e] == idx).all() and (table[:, e] == idx).all()]
        if not ids:
            raise GroupError("no identity element")
        self.identity = ids[0]
        left = table[table]
        right = table[idx[:, None, None], table[None, :, :]]
        if not (left == right).all():
            a, b, c = np.argwhere(left != right)[0]
            raise GroupError(f"not associative at ({a}, {b}, {c})")
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(table[a] == self.identity)[0]
            if len(hits) != 1 or table[hits[0], a] != self.identity:
                raise GroupError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        self.inv_table = inv
        self._subgroups = None

    # basic arithmetic

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inv_table[a])

    def prod(self, *elems):
        out = self.identity
        for a in elems:
            out = int(self.table[out, a])
        return out

    def power(self, a, k):
        out = self.identity
        if k < 0:
            a, k = self.inv(a), -k
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    # subgroups

    def closure(self, gens):
        """The subgroup generated by ``gens`` as a sorted tuple."""
        seen = {self.identity}
        frontier = deque([self.identity])
        gens = list(gens)
        while frontier:
            x = frontier.popleft()
            for s in gens:
                y = int(self.table[x, s])
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return tuple(sorted(seen))

    def is_subgroup(self, elems):
        elems = set(elems)
        if self.identity not in elems:
            return False
        return all(int(self.table[a, self.inv_table[b]]) in elems for a in elems for b in elems)

    def subgroups(self):
        """All subgroups, sorted by (order, elements)."""
        if self._subgroups is None:
            found = {self.closure([a]) for a in self}
            frontier = list(found)
            while frontier:
                new = []
                for H in frontier:
                    for a in self:
                        if a not in H:
                            K = self.closure(H + (a,))
                            if K not in found:
                                found.add(K)
                                new.append(K)
                frontier = new
            self._subgroups = sorted(found, key=lambda H: (len(H), H))
        return list(self._subgroups)

    def whole(self):
        return tuple(range(self.order))

    def trivial_subgroup(self):
        return (self.identity,)

    def generators(self, H=None):
        """A small generating set of ``H`` (default: the whole group), chosen greedily."""
        H = tuple(sorted(H)) if H is not None else self.whole()
        gens = []
        current = (self.identity,)
        # prefer elements of large order: fewer generators
        for a in sorted(H, key=lambda x: (-self.element_order(x), x)):
            if a not in current:
                gens.append(a)
                current = self.closure(gens)
                if len(current) == len(H):
                    break
        return gens

    def conjugate(self, g, H):
        """``g H g^{-1}`` as a sorted tuple."""
        gi = self.inv(g)
        return tuple(sorted(self.prod(g, h, gi) for h in H))

    def left_cosets(self, K, H):
        """Left cosets ``tH`` of ``H`` in ``K``, sorted by their minimal element.

        Each coset is returned as a sorted tuple whose first entry serves as
        its representative.
        """
        K = tuple(sorted(K))
        remaining = set(K)
        cosets = []
        for t in K:
            if t in remaining:
                coset = tuple(sorted(self.mul(t, h) for h in H))
                remaining -= set(coset)
                cosets.append(coset)
        return sorted(cosets)

    def double_cosets(self, H, K, L=None):
        """Double cosets ``H g K`` inside ``L`` (default whole group), sorted by minimal element."""
        L = tuple(sorted(L)) if L is not None else self.whole()
        remaining = set(L)
        out = []
        for g in L:
            if g in remaining:
                dc = tuple(sorted({self.prod(h, g, k) for h in H for k in K}))
                remaining -= set(dc)
                out.append(dc)
        return sorted(out)

    def conjugacy_classes(self):
        remaining = set(self)
        out = []
        for a in self:
            if a in remaining:
                cls = tuple(sorted({self.prod(g, a, self.inv(g)) for g in self}))
                remaining -= set(cls)
                out.append(cls)
        return out

    def homomorphisms_to(self, other, gens=None):
        """All homomorphisms self -> other, as tuples indexed by element."""
        gens = gens if gens is not None else self.generators()
        out = []
        for images in itertools.product(range(other.order), repeat=len(gens)):
            phi = _extend_on_generators(
                self, gens, images, lambda g, x, y: other.mul(x, y), other.identity
            )
            if phi is not None and all(
                phi[self.mul(a, b)] == other.mul(phi[a], phi[b]) for a in self for b in self
            ):
                out.append(phi)
        return out

    @classmethod
    def from_elements(cls, elements, mul, name=None, names=None):
        """Build the table from a list of hashable elements and a product function."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                try:
                    table[i, j] = index[mul(x, y)]
                except KeyError:
                    raise GroupError(f"product of {x!r} and {y!r} leaves the set") from None
        G = cls(table, names=names or [str(x) for x in elements], name=name)
        G.elements = elements
        G.index = index
        return G


def _extend_on_generators(G, gens, images, step, unit):
    """Propagate values along the Cayley graph: val(x s) = step(x, val(x), img(s)).

    Returns a tuple indexed by group element, or None when two paths disagree.
    """
    val = {G.identity: unit}
    frontier = deque([G.identity])
    while frontier:
        x = frontier.popleft()
        for s, img in zip(gens, images):
            y = G.mul(x, s)
            v = step(x, val[x], img)
            if y in val:
                if val[y] != v:
                    return None
            else:
                val[y] = v
                frontier.append(y)
    return tuple(val[a] for a in range(G.order))


def cyclic_group(n, name=None):
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, names=[f"s^{k}" if k else "e" for k in range(n)],
                       name=name or f"C{n}")


def symmetric_group(n, name=None):
    perms = sorted(itertools.permutations(range(n)))
    # (p*q)(i) = p(q(i))
    G = FiniteGroup.from_elements(perms, lambda p, q: tuple(p[i] for i in q),
                                  name=name or f"S{n}")
    return G


def direct_product(G, H, name=None):
    pairs = [(a, b) for a in G for b in H]
    return FiniteGroup.from_elements(
        pairs, lambda x, y: (G.mul(x[0], y[0]), H.mul(x[1], y[1])),
        name=name or f"{G.name}x{H.name}")


PRESETS = {
    "trivial": lambda: cyclic_group(1, "1"),
    "C1": lambda: cyclic_group(1, "1"),
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
    "V4": lambda: direct_product(cyclic_group(2), cyclic_group(2), "V4"),
}


def preset_group(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise GroupError(f"unknown group preset {name!r}; known: {sorted(PRESETS)}") from None


class GroupAction:
    """A group ``G`` acting on a group ``Pi`` by automorphisms.

    ``perm[g]`` is the permutation of Pi's elements given by ``g``.
    Convention: ``act(g, act(h, x)) == act(g*h, x)``.
    """

    def __init__(self, G, Pi, perms):
        perm = np.array(perms, dtype=np.int64)
        if perm.shape != (G.order, Pi.order):
            raise GroupError("need one permutation of Pi per element of G")
        self.G = G
        self.Pi = Pi
        self.perm = perm
        self._validate()

    @classmethod
    def trivial(cls, G, Pi):
        return cls(G, Pi, [list(range(Pi.order))] * G.order)

    @classmethod
    def from_generators(cls, G, Pi, images, gens=None):
        """Extend generator permutations (lists) to all of G."""
        gens = gens if gens is not None else G.generators()
        ident = tuple(range(Pi.order))
        perms = _extend_on_generators(
            G, gens, [tuple(p) for p in images],
            lambda x, px, ps: tuple(px[i] for i in ps), ident)
        if perms is None:
            raise GroupError("generator images do not define an action")
        return cls(G, Pi, perms)

    def act(self, g, x):
        return int(self.perm[g, x])

    def _validate(self):
        G, Pi, perm = self.G, self.Pi, self.perm
        if not (perm[G.identity] == np.arange(Pi.order)).all():
            raise GroupError("identity of G must act trivially")
        for g in G:
            if sorted(perm[g]) != list(range(Pi.order)):
                raise GroupError(f"element {g} does not act by a bijection")
            pg = perm[g]
            if not (pg[Pi.table] == Pi.table[pg[:, None], pg[None, :]]).all():
                raise GroupError(f"element {g} does not act by a homomorphism")
            for h in G:
                if not (perm[G.mul(g, h)] == pg[perm[h]]).all():
                    raise GroupError(f"action not compatible with product at ({g}, {h})")

    def fixed_points(self, H):
        return tuple(x for x in self.Pi if all(self.perm[h, x] == x for h in H))


def subgroup_as_group(G, H):
    """H as a group in its own right, with the embedding ``emb[k] = H[k]``."""
    H = tuple(sorted(H))
    if not G.is_subgroup(H):
        raise GroupError(f"{H} is not a subgroup of {G.name}")
    pos = {h: i for i, h in enumerate(H)}
    table = [[pos[G.mul(a, b)] for b in H] for a in H]
    name = G.name if len(H) == G.order else f"{G.name}{{{','.join(map(str, H))}}}"
    return FiniteGroup(table, names=[G.names[h] for h in H], name=name), H
