"""Twisted group rings R_G[G] and the map to R^G-linear endomorphisms of R."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rings import FiniteRing


class TwistedGroupRing:
    """Formal sums ``sum_g r_g g`` with ``(r g)(s h) = r s^g (gh)``.

    An element is encoded by the integer ``sum_g r_g |R|^g``; ``coords``
    recovers the tuple ``(r_g)``.  ``ring`` is the resulting
    :class:`FiniteRing`, whose axioms are verified exhaustively.
    """

    def __init__(self, GR, twisted=True, check=True):
        self.gring = GR
        self.base = GR.ring
        self.group = GR.group
        self.twisted = twisted
        R, G = self.base, self.group
        q, m = R.size, G.order
        size = q**m
        self.size = size
        idx = np.arange(size)
        self._coords = np.stack([(idx // q**g) % q for g in range(m)], axis=1)
        C = self._coords
        act = GR.act_table if twisted else np.tile(np.arange(q), (m, 1))

        add = np.zeros((size, size), dtype=np.int64)
        for g in range(m):
            add += R.add_table[C[:, None, g], C[None, :, g]] * q**g

        # coefficient of k in x*y: sum over g h = k of x_g * (y_h)^g
        prod = np.full((size, size, m), R.zero, dtype=np.int64)
        for g in range(m):
            twisted_y = act[g][C]  # (size, m): y_h^g
            for h in range(m):
                k = G.mul(g, h)
                term = R.mul_table[C[:, None, g], twisted_y[None, :, h]]
                prod[:, :, k] = R.add_table[prod[:, :, k], term]
        mul = (prod * (q ** np.arange(m))).sum(axis=2)

        labels = [self._label(x) for x in range(size)]
        self.ring = FiniteRing(add, mul, self.encode({}), self.encode({G.identity: R.one}),
                               name=f"{R.name}_{G.name}[{G.name}]" if twisted else f"{R.name}[{G.name}]",
                               labels=labels, check=check)

    def coords(self, x):
        return tuple(int(c) for c in self._coords[x])

    def encode(self, terms):
        """Encode a dict ``{g: r}`` (missing group elements have coefficient 0)."""
        R, q = self.base, self.base.size
        return sum(int(terms.get(g, R.zero)) * q**g for g in range(self.group.order))

    def basis(self, r, g):
        """The element ``r g``."""
        return self.encode({g: r})

    def mul(self, x, y):
        return self.ring.mul(x, y)

    def add(self, x, y):
        return self.ring.add(x, y)

    def _label(self, x):
        R, G = self.base, self.group
        parts = []
        for g, r in enumerate(self._coords[x]):
            if r != R.zero:
                parts.append(f"{R.labels[r]}*{G.names[g]}")
        return " + ".join(parts) if parts else "0"

    def __len__(self):
        return self.size


def twisted_group_ring(GR, check=True):
    return TwistedGroupRing(GR, twisted=True, check=check)


def group_ring(GR, check=True):
    """The ordinary group ring R[G], ignoring the action."""
    return TwistedGroupRing(GR, twisted=False, check=check)


def module_generators(R, scalars):
    """A small generating set of R as a module over the subring ``scalars``."""
    def span(gens):
        seen = {R.zero}
        frontier = [R.zero]
        while frontier:
            x = frontier.pop()
            for s in gens:
                for c in scalars:
                    y = R.add(x, R.mul(c, s))
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return seen

    gens, current = [], span([])
    for x in R:
        if x not in current:
            gens.append(x)
            current = span(gens)
    return gens


def linear_endomorphisms(GR):
    """All R^G-linear maps R -> R, as tuples of images, sorted.

    Each candidate assignment on a generating set is extended along the span
    and kept only if the extension is well defined and R^G-linear.
    """
    R = GR.ring
    scalars = GR.fixed_subring()
    gens = module_generators(R, scalars)
    # express every element as a combination of gens
    combos = {R.zero: ()}
    frontier = [R.zero]
    while frontier:
        x = frontier.pop(0)
        for i, s in enumerate(gens):
            for c in scalars:
                y = R.add(x, R.mul(c, s))
                if y not in combos:
                    combos[y] = combos[x] + ((c, i),)
                    frontier.append(y)
    out = []
    for images in np.ndindex(*([R.size] * len(gens))):
        f = [R.zero] * R.size
        for x, terms in combos.items():
            v = R.zero
            for c, i in terms:
                v = R.add(v, R.mul(c, images[i]))
            f[x] = v
        ok = all(f[R.add(x, y)] == R.add(f[x], f[y]) for x in R for y in R) and all(
            f[R.mul(c, x)] == R.mul(c, f[x]) for c in scalars for x in R)
        if ok:
            out.append(tuple(f))
    return sorted(set(out))


@dataclass
class ThetaMap:
    """``theta: R_G[G] -> End_{R^G}(R)`` with its exhaustively computed image."""

    twisted: TwistedGroupRing
    values: list  # values[x] = tuple of images of theta(x)
    endomorphisms: list
    additive: bool
    multiplicative: bool

    def __call__(self, x):
        return self.values[x]

    @property
    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self):
        return set(self.values) == set(self.endomorphisms)

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def counterexample(self):
        """A witness against bijectivity, or None."""
        seen = {}
        for x, v in enumerate(self.values):
            if v in seen:
                return {"kind": "not injective", "elements": (seen[v], x)}
            seen[v] = x
        missing = sorted(set(self.endomorphisms) - set(self.values))
        if missing:
            return {"kind": "not surjective", "endomorphism": missing[0]}
        return None


def theta_hom(GR, T=None):
    """theta(r g) = (s -> r s^g), checked additive and multiplicative on all pairs."""
    T = T if T is not None else twisted_group_ring(GR)
    R, G = GR.ring, GR.group
    act = GR.act_table
    values = []
    for x in range(T.size):
        c = T.coords(x)
        img = np.full(R.size, R.zero, dtype=np.int64)
        for g in G:
            if c[g] != R.zero:
                img = R.add_table[img, R.mul_table[c[g], act[g]]]
        values.append(tuple(int(v) for v in img))
    V = np.array(values, dtype=np.int64)
    idx = np.arange(T.size)
    sums = V[T.ring.add_table[idx[:, None], idx[None, :]]]
    additive = bool((sums == R.add_table[V[:, None, :], V[None, :, :]]).all())
    prods = V[T.ring.mul_table[idx[:, None], idx[None, :]]]
    composed = V[idx[:, None, None], V[None, :, :]]
    multiplicative = bool((prods == composed).all())
    return ThetaMap(T, values, linear_endomorphisms(GR), additive, multiplicative)
