"""Semilinear structures on free modules: cocycles H -> GL_n(R) and their classes.

A rank-n structure for a subgroup H is a family of matrices ``A_h`` with
``A_e = I`` and ``A_{gh} = A_g (A_h)^g``; ``h`` acts on column vectors by
``v -> A_h v^h``.  Two cocycles are isomorphic when ``A'_h B^h = B A_h`` for
some invertible ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .._util import DEFAULT_MULT_BUDGET, check_budget
from . import matrices as mx


class SemilinearError(ValueError):
    pass


@dataclass(frozen=True)
class SemilinearModule:
    """``R^n`` with the semilinear H-action given by a cocycle."""

    gring: object
    H: tuple
    n: int
    cocycle: tuple  # matrices (as nested tuples) in the order of H

    @classmethod
    def from_array(cls, GR, H, arr):
        arr = np.asarray(arr)
        n = arr.shape[-1]
        return cls(GR, tuple(H), n, tuple(_as_tuple(a) for a in arr))

    def matrix(self, h):
        return np.array(self.cocycle[self.H.index(h)], dtype=np.int64).reshape(self.n, self.n)

    def array(self):
        return np.array(self.cocycle, dtype=np.int64).reshape(len(self.H), self.n, self.n)

    def act(self, h, v):
        v = self.gring.act_table[h][np.asarray(v)]
        return mx.matvec(self.gring.ring, self.matrix(h), v)

    def violations(self, check_vectors=True):
        """Every failure of the cocycle and semilinearity laws, as strings."""
        GR, R, G = self.gring, self.gring.ring, self.gring.group
        out = []
        e = G.identity
        if not (self.matrix(e) == mx.identity(R, self.n)).all():
            out.append("A_e is not the identity")
        for g in self.H:
            for h in self.H:
                lhs = self.matrix(G.mul(g, h))
                rhs = mx.matmul(R, self.matrix(g), mx.act(GR, g, self.matrix(h)))
                if not (lhs == rhs).all():
                    out.append(f"cocycle condition fails at ({g}, {h})")
        if check_vectors and self.n and R.size**self.n <= 4096:
            vecs = mx.decode(R, np.arange(R.size**self.n), 1, self.n)[:, 0, :]
            for h in self.H:
                for r in R:
                    lhs = self.act(h, R.mul_table[r, vecs])
                    rhs = R.mul_table[GR.act(h, r), self.act(h, vecs)]
                    if not (lhs == rhs).all():
                        out.append(f"semilinearity fails for h={h}, r={r}")
                        break
        return out

    def direct_sum(self, other):
        R = self.gring.ring
        return SemilinearModule.from_array(
            self.gring, self.H, mx.block_sum(R, self.array(), other.array()))


def _as_tuple(a):
    return tuple(tuple(int(x) for x in row) for row in a)


def check_order_invertible(GR, H):
    """Whether ``|H| * 1`` is a unit of R."""
    R = GR.ring
    return bool(R.is_unit(R.integer(len(H))))


# cocycle enumeration

def _extend(GR, H, gens, gen_values):
    """Batched propagation ``A_{x s} = A_x (A_s)^x``; returns (cocycles, consistent mask)."""
    G, R = GR.group, GR.ring
    B, n = gen_values.shape[0], gen_values.shape[-1]
    vals = {G.identity: mx.identity(R, n, batch=(B,))}
    ok = np.ones(B, dtype=bool)
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = G.mul(x, s)
                v = mx.matmul(R, vals[x], mx.act(GR, x, gen_values[:, i]))
                if y in vals:
                    ok &= (vals[y] == v).all(axis=(-1, -2))
                else:
                    vals[y] = v
                    nxt.append(y)
        frontier = nxt
    if set(vals) != set(H):
        raise SemilinearError("generators do not generate the given subgroup")
    return np.stack([vals[h] for h in H], axis=1), ok


def _cocycle_mask(GR, H, arr):
    """Exhaustive cocycle check over all pairs, batched."""
    G, R = GR.group, GR.ring
    pos = {h: i for i, h in enumerate(H)}
    ok = np.ones(arr.shape[0], dtype=bool)
    for g in H:
        for h in H:
            rhs = mx.matmul(R, arr[:, pos[g]], mx.act(GR, g, arr[:, pos[h]]))
            ok &= (arr[:, pos[G.mul(g, h)]] == rhs).all(axis=(-1, -2))
    return ok


def _involution_solutions(GR, sigma, n, budget, stats):
    """All A with ``A A^sigma = I``, joining entries in hook order.

    Stage k fixes row k from the diagonal onward and column k below the
    diagonal; after it every product entry (i, j) with max(i, j) = k is known
    and checked.
    """
    R = GR.ring
    q = R.size
    perm = GR.act_table[sigma]
    partial = np.full((1, n, n), -1, dtype=np.int64)
    for k in range(n):
        cells = [(k, j) for j in range(k, n)] + [(i, k) for i in range(k + 1, n)]
        cand = mx.decode(R, np.arange(q ** len(cells)), 1, len(cells))[:, 0, :]
        total = len(partial) * len(cand)
        stats["work"] += total
        check_budget(f"rank-{n} involution cocycles over {R.name}", stats["work"], budget)
        checks = [(i, j) for i in range(k + 1) for j in range(k + 1) if max(i, j) == k]
        kept = []
        chunk = max(1, 2_000_000 // max(1, len(cand)))
        for start in range(0, len(partial), chunk):
            part = partial[start:start + chunk]
            A = np.repeat(part, len(cand), axis=0)
            tiled = np.tile(cand, (len(part), 1))
            for c, (i, j) in enumerate(cells):
                A[:, i, j] = tiled[:, c]
            good = np.ones(len(A), dtype=bool)
            for i, j in checks:
                acc = np.full(len(A), R.zero, dtype=np.int64)
                for l in range(n):
                    acc = R.add_table[acc, R.mul_table[A[:, i, l], perm[A[:, l, j]]]]
                good &= acc == (R.one if i == j else R.zero)
            kept.append(A[good])
        partial = np.concatenate(kept) if kept else np.zeros((0, n, n), dtype=np.int64)
    return partial


def enumerate_cocycles(GR, H, n, budget=DEFAULT_MULT_BUDGET, stats=None):
    """All cocycles ``H -> GL_n(R)`` as an array of shape (count, |H|, n, n).

    The strategy depends on H: order-two subgroups use the staged solver,
    other cyclic subgroups check the norm condition over all of GL_n, and
    the general case propagates every assignment on a generating set.
    """
    G, R = GR.group, GR.ring
    H = tuple(sorted(H))
    stats = stats if stats is not None else {"work": 0}
    stats.setdefault("work", 0)
    if not G.is_subgroup(H):
        raise SemilinearError(f"{H} is not a subgroup")
    if n == 0 or len(H) == 1:
        return mx.identity(R, n, batch=(1, len(H))), ()
    gens = G.generators(H)
    if len(H) == 2:
        sols = _involution_solutions(GR, gens[0], n, budget, stats)
        gen_values = sols[:, None]
    else:
        GL = mx.general_linear(R, n, budget=budget)
        need = len(GL) ** len(gens) * len(H)
        stats["work"] += need
        check_budget(f"cocycles H -> GL_{n}({R.name})", stats["work"], budget)
        if len(gens) == 1:
            gen_values = GL[:, None]
        else:
            idx = np.indices([len(GL)] * len(gens)).reshape(len(gens), -1).T
            gen_values = np.stack([GL[idx[:, i]] for i in range(len(gens))], axis=1)
    arr, ok = _extend(GR, H, gens, gen_values)
    arr = arr[ok]
    arr = arr[_cocycle_mask(GR, H, arr)]
    order = np.lexsort([mx.encode(R, arr[:, i]) for i in range(len(H) - 1, -1, -1)])
    return arr[order], tuple(gens)


@dataclass
class SemilinearClasses:
    """Cocycles of one rank, partitioned into isomorphism classes.

    ``labels[i]`` is the class of cocycle ``i``; classes are numbered by
    their lexicographically minimal member, which is the representative.
    """

    gring: object
    H: tuple
    n: int
    cocycles: np.ndarray
    labels: np.ndarray
    generators: tuple
    stats: dict = field(default_factory=dict)

    @property
    def count(self):
        return len(self.cocycles)

    @property
    def num_classes(self):
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def class_sizes(self):
        return [int(c) for c in np.bincount(self.labels, minlength=self.num_classes)]

    def representative_index(self, c):
        return int(np.nonzero(self.labels == c)[0][0])

    def representatives(self):
        return [SemilinearModule.from_array(self.gring, self.H, self.cocycles[self.representative_index(c)])
                for c in range(self.num_classes)]

    def keys(self, arr):
        """Lookup keys from the values on the generators."""
        R = self.gring.ring
        pos = [self.H.index(s) for s in self.generators]
        codes = [mx.encode(R, np.asarray(arr)[..., p, :, :]) for p in pos]
        return _combine(codes, R.size ** (self.n * self.n))

    def class_of(self, module_or_array):
        arr = module_or_array.array() if isinstance(module_or_array, SemilinearModule) else module_or_array
        arr = np.asarray(arr)[None]
        if self.n == 0 or len(self.H) == 1:
            return 0
        idx = _lookup(self._sorted_keys(), self.keys(arr))
        if idx[0] < 0:
            raise SemilinearError("not a cocycle of this rank")
        return int(self.labels[self._key_order[idx[0]]])

    def _sorted_keys(self):
        if not hasattr(self, "_skeys"):
            k = self.keys(self.cocycles)
            self._key_order = np.argsort(k, kind="stable")
            self._skeys = k[self._key_order]
        return self._skeys


def _combine(codes, radix):
    out = np.zeros_like(codes[0])
    for c in codes:
        out = out * radix + c
    return out


def _lookup(sorted_keys, keys):
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, len(sorted_keys) - 1)
    return np.where(sorted_keys[pos] == keys, pos, -1)


def twisted_conjugate(GR, H, B, arr):
    """``A_h -> B A_h (B^h)^{-1}`` applied to a batch of cocycles."""
    R = GR.ring
    out = np.empty_like(arr)
    for i, h in enumerate(H):
        Bh_inv = mx.inverse(R, mx.act(GR, h, B))
        out[:, i] = mx.matmul(R, mx.matmul(R, B, arr[:, i]), Bh_inv)
    return out


def enumerate_semilinear_structures(GR, H, n, budget=DEFAULT_MULT_BUDGET):
    """All rank-n semilinear structures for H, partitioned into isomorphism classes.

    Orbits of the twisted conjugation action are the connected components of
    the graph whose edges are moves by a generating set of GL_n(R).
    """
    R = GR.ring
    H = tuple(sorted(H))
    stats = {"work": 0}
    arr, gens = enumerate_cocycles(GR, H, n, budget=budget, stats=stats)
    N = len(arr)
    if n == 0 or len(H) == 1:
        return SemilinearClasses(GR, H, n, arr, np.zeros(1, dtype=np.int64), (), stats)
    if not mx.code_fits(R, n * n * len(gens)):
        raise SemilinearError("cocycle keys too large for this rank")
    result = SemilinearClasses(GR, H, n, arr, np.zeros(N, dtype=np.int64), gens, stats)
    skeys = result._sorted_keys()
    order = result._key_order
    rows, cols = [], []
    moves = mx.gl_generators(R, n)
    stats["work"] += N * len(moves) * len(H)
    check_budget("twisted conjugation orbits", stats["work"], budget)
    for B in moves:
        moved = twisted_conjugate(GR, H, B, arr)
        idx = _lookup(skeys, result.keys(moved))
        if (idx < 0).any():
            raise SemilinearError("twisted conjugation left the cocycle set")
        rows.append(np.arange(N))
        cols.append(order[idx])
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(N, N))
    _, comp = connected_components(graph, directed=False)
    # renumber components by their first (lexicographically minimal) member
    first = {}
    labels = np.empty(N, dtype=np.int64)
    for i, c in enumerate(comp):
        labels[i] = first.setdefault(c, len(first))
    result.labels = labels
    return result
