"""Truncated commutative monoids of isomorphism classes and their Grothendieck groups.

A ClassMonoid lists classes with ranks and a partial sum table (sums past
the truncation are absent).  Its group completion is computed twice: by
Smith normal form of the relations ``[a] + [b] - [a + b]`` and, as an
oracle, by formal differences ``(a, b) ~ (a', b')`` whenever
``a + b' + c = a' + b + c`` for some c.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.domains import ZZ

from .._util import UnionFind


@dataclass
class ClassMonoid:
    labels: list
    ranks: list
    unit: int
    table: dict  # (i, j) -> index of the class of the sum, for defined sums

    def __len__(self):
        return len(self.labels)

    def add(self, i, j):
        return self.table.get((i, j))

    @property
    def max_rank(self):
        return max(self.ranks)

    def truncate(self, n):
        """The submonoid of classes of rank at most n, reindexed."""
        keep = [i for i, r in enumerate(self.ranks) if r <= n]
        pos = {i: k for k, i in enumerate(keep)}
        table = {(pos[i], pos[j]): pos[s] for (i, j), s in self.table.items()
                 if i in pos and j in pos and s in pos}
        return ClassMonoid([self.labels[i] for i in keep], [self.ranks[i] for i in keep],
                           pos[self.unit], table)

    def violations(self):
        out = []
        for i in range(len(self)):
            if self.add(self.unit, i) != i or self.add(i, self.unit) != i:
                out.append(f"unit law fails at {self.labels[i]}")
        for (i, j), s in self.table.items():
            if self.table.get((j, i)) != s:
                out.append(f"sum is not commutative at ({self.labels[i]}, {self.labels[j]})")
            if self.ranks[s] != self.ranks[i] + self.ranks[j]:
                out.append(f"rank is not additive at ({self.labels[i]}, {self.labels[j]})")
        for (i, j), s in self.table.items():
            for k in range(len(self)):
                a, b = self.add(s, k), self.add(j, k)
                if a is not None and b is not None and self.add(i, b) != a:
                    out.append(f"sum is not associative at {self.labels[i]}, {self.labels[j]}, {self.labels[k]}")
        return out


@dataclass
class AbelianGroup:
    """``Z^k / (row span of the relations)`` with coordinates from a Smith decomposition."""

    generators: list
    invariants: list  # one entry per generator: 0 for Z, d > 1 for Z/d, 1 for a trivial factor
    V: object

    @property
    def rank(self):
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self):
        return [d for d in self.invariants if d > 1]

    def order_is_trivial(self):
        return all(d == 1 for d in self.invariants)

    def coordinates(self, vec):
        """Normal-form coordinates of an integer vector over the generators."""
        y = Matrix([list(vec)]) * self.V
        out = []
        for i, d in enumerate(self.invariants):
            if d == 1:
                continue
            out.append(int(y[0, i]) % d if d > 1 else int(y[0, i]))
        return tuple(out)

    def describe(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        if not parts:
            return "0"
        if not self.torsion and self.rank > 1:
            return f"Z^{self.rank}"
        return " + ".join(parts)


def presented_group(generators, relations):
    """The abelian group on ``generators`` modulo the integer row vectors ``relations``."""
    k = len(generators)
    if k == 0:
        return AbelianGroup([], [], Matrix.zeros(0, 0))
    rows = [list(r) for r in relations if any(r)]
    if not rows:
        return AbelianGroup(list(generators), [0] * k, Matrix.eye(k))
    D, _, V = smith_normal_decomp(Matrix(rows), domain=ZZ)
    inv = [abs(int(D[i, i])) if i < min(D.shape) else 0 for i in range(k)]
    return AbelianGroup(list(generators), inv, V)


def grothendieck_group(M):
    """Group completion of a ClassMonoid by Smith normal form."""
    k = len(M)
    rels = []
    for (i, j), s in sorted(M.table.items()):
        if i <= j:
            r = [0] * k
            r[i] += 1
            r[j] += 1
            r[s] -= 1
            rels.append(r)
    return presented_group(M.labels, rels)


def difference_vector(M, a, b):
    v = [0] * len(M)
    v[a] += 1
    v[b] -= 1
    return v


def formal_difference_classes(M):
    """Pairs of classes modulo ``(a, b) ~ (a', b')`` iff ``a + b' + c = a' + b + c`` for some c.

    Returns a union-find over all pairs; the relation is closed transitively
    because within a truncation it need not be transitive by itself.
    """
    n = len(M)
    uf = UnionFind(itertools.product(range(n), repeat=2))
    buckets = {}  # (x + y + c, c) -> [(x, y)]
    for x, y in itertools.product(range(n), repeat=2):
        s = M.add(x, y)
        if s is None:
            continue
        for c in range(n):
            t = M.add(s, c)
            if t is not None:
                buckets.setdefault((t, c), []).append((x, y))
    for entries in buckets.values():
        # (a, bb) and (a2, b) in one bucket: a + bb + c = a2 + b + c, so (a, b) ~ (a2, bb)
        for (a, bb), (a2, b) in itertools.product(entries, repeat=2):
            uf.union((a, b), (a2, bb))
    return uf


def indecomposables(M):
    """Non-unit classes that are not a sum of two non-unit classes."""
    decomposable = {s for (i, j), s in M.table.items() if i != M.unit and j != M.unit}
    return [i for i in range(len(M)) if i != M.unit and i not in decomposable]


def decompositions(M, target, indec=None):
    """All multisets of indecomposables (sorted index tuples) whose sum is ``target``."""
    indec = indecomposables(M) if indec is None else indec
    out = []

    def search(start, acc, parts):
        if acc == target:
            out.append(tuple(parts))
        if M.ranks[acc] >= M.ranks[target]:
            return
        for k in range(start, len(indec)):
            s = M.add(acc, indec[k])
            if s is not None and M.ranks[s] <= M.ranks[target]:
                search(k, s, parts + [indec[k]])

    search(0, M.unit, [])
    return out


@dataclass
class KrullSchmidtReport:
    indecomposables: list
    decomposition: dict  # class -> tuple of indecomposables
    failures: list = field(default_factory=list)

    @property
    def holds(self):
        return not self.failures


def krull_schmidt(M):
    """Check that every class is a sum of indecomposables in exactly one way."""
    indec = indecomposables(M)
    dec, bad = {}, []
    for c in range(len(M)):
        ds = decompositions(M, c, indec)
        if len(ds) != 1:
            bad.append((M.labels[c], ds))
        else:
            dec[c] = ds[0]
    return KrullSchmidtReport(indec, dec, bad)
