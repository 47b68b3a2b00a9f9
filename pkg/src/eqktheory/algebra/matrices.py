"""Matrices over finite rings, stored as integer arrays of ring element indices.

All routines accept batches: an array of shape ``(..., n, n)`` is a stack of
``n x n`` matrices.  Matrices are encoded as integers in base ``|R|`` with the
first entry (row-major) most significant, so integer order on codes is the
lexicographic order on entry tuples.
"""

from __future__ import annotations

import itertools

import numpy as np

from .._util import DEFAULT_MULT_BUDGET, check_budget


class MatrixError(ValueError):
    pass


def identity(R, n, batch=()):
    out = np.full(tuple(batch) + (n, n), R.zero, dtype=np.int64)
    idx = np.arange(n)
    out[..., idx, idx] = R.one
    return out


def zeros(R, n, m=None, batch=()):
    return np.full(tuple(batch) + (n, n if m is None else m), R.zero, dtype=np.int64)


def encode(R, A):
    A = np.asarray(A, dtype=np.int64)
    flat = A.reshape(A.shape[:-2] + (-1,))
    k = flat.shape[-1]
    weights = R.size ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def decode(R, codes, n, m=None):
    m = n if m is None else m
    codes = np.asarray(codes, dtype=np.int64)
    k = n * m
    weights = R.size ** np.arange(k - 1, -1, -1, dtype=np.int64)
    flat = (codes[..., None] // weights) % R.size
    return flat.reshape(codes.shape + (n, m))


def code_fits(R, entries):
    return R.size ** entries < 2**62


def add(R, A, B):
    return R.add_table[A, B]


def neg(R, A):
    return R.neg_table[A]


def matmul(R, A, B):
    """Batched product ``A @ B`` via the ring tables."""
    A = np.asarray(A)
    B = np.asarray(B)
    prods = R.mul_table[A[..., :, :, None], B[..., None, :, :]]
    if prods.shape[-2] == 0:
        return np.full(prods.shape[:-3] + prods.shape[-3:-2] + prods.shape[-1:], R.zero,
                       dtype=np.int64)
    out = prods[..., 0, :]
    for j in range(1, prods.shape[-2]):
        out = R.add_table[out, prods[..., j, :]]
    return out


def matvec(R, A, v):
    prods = R.mul_table[A, np.asarray(v)[..., None, :]]
    out = prods[..., 0]
    for j in range(1, prods.shape[-1]):
        out = R.add_table[out, prods[..., j]]
    return out


def scalar(R, c, A):
    return R.mul_table[c, A]


def act(GR, g, A):
    """Entrywise action ``A^g``."""
    return GR.act_table[g][np.asarray(A)]


def block_sum(R, A, B):
    A, B = np.asarray(A), np.asarray(B)
    n, m = A.shape[-1], B.shape[-1]
    batch = np.broadcast_shapes(A.shape[:-2], B.shape[:-2])
    out = np.full(batch + (n + m, n + m), R.zero, dtype=np.int64)
    out[..., :n, :n] = A
    out[..., n:, n:] = B
    return out


def permutation_matrix(R, perm):
    """Matrix sending basis vector ``j`` to ``perm[j]``."""
    n = len(perm)
    out = zeros(R, n)
    for j, i in enumerate(perm):
        out[i, j] = R.one
    return out


def _require_commutative(R):
    if not R.is_commutative:
        raise MatrixError(f"determinants need a commutative ring; {R.name} is not")


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            sign *= -1 if length % 2 == 0 else 1
    return sign


def det(R, A):
    """Batched determinant by the Leibniz formula (fine for n <= 4)."""
    _require_commutative(R)
    A = np.asarray(A)
    n = A.shape[-1]
    out = np.full(A.shape[:-2], R.zero, dtype=np.int64)
    if n == 0:
        return np.full(A.shape[:-2], R.one, dtype=np.int64)
    for p in itertools.permutations(range(n)):
        term = A[..., 0, p[0]]
        for i in range(1, n):
            term = R.mul_table[term, A[..., i, p[i]]]
        if _perm_sign(p) < 0:
            term = R.neg_table[term]
        out = R.add_table[out, term]
    return out


def is_invertible(R, A):
    return R.inv_table[det(R, A)] >= 0


def inverse(R, A):
    """Batched inverse through the adjugate; raises if any matrix is singular."""
    A = np.asarray(A)
    n = A.shape[-1]
    d = det(R, A)
    dinv = R.inv_table[d]
    if (dinv < 0).any():
        raise MatrixError("singular matrix")
    if n == 1:
        return dinv[..., None, None].copy()
    adj = np.empty_like(A)
    rows = np.arange(n)
    for i in range(n):
        for j in range(n):
            minor = A[..., rows != i, :][..., :, rows != j]
            c = det(R, minor)
            if (i + j) % 2:
                c = R.neg_table[c]
            adj[..., j, i] = c
    return R.mul_table[dinv[..., None, None], adj]


def all_matrices(R, n, m=None, budget=DEFAULT_MULT_BUDGET):
    m = n if m is None else m
    count = R.size ** (n * m)
    check_budget(f"all {n}x{m} matrices over {R.name}", count, budget)
    return decode(R, np.arange(count, dtype=np.int64), n, m)


def general_linear(R, n, budget=DEFAULT_MULT_BUDGET):
    """All invertible ``n x n`` matrices, sorted by code."""
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    mats = all_matrices(R, n, budget=budget)
    return mats[is_invertible(R, mats)]


def gl_order(R, n):
    """|GL_n(R)| for a field or a product of fields (by factor)."""
    factors = getattr(R, "factors", None)
    if factors is not None:
        out = 1
        for F in factors:
            out *= gl_order(F, n)
        return out
    if R.field is None:
        raise MatrixError(f"order formula needs a field; {R.name} is not flagged as one")
    q = R.size
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _greedy_generators(elements, closure):
    gens, span = [], closure([])
    for x in elements:
        if x not in span:
            gens.append(x)
            span = closure(gens)
    return gens


def additive_generators(R):
    def closure(gens):
        seen = {R.zero}
        frontier = [R.zero]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = R.add(x, s)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen
    return _greedy_generators(range(R.size), closure)


def unit_generators(R):
    def closure(gens):
        seen = {R.one}
        frontier = [R.one]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = R.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen
    units = sorted(R.units(), key=lambda u: (-_mult_order(R, u), u))
    return _greedy_generators(units, closure)


def _mult_order(R, u):
    k, x = 1, u
    while x != R.one:
        x = R.mul(x, u)
        k += 1
    return k


def gl_generators(R, n):
    """Elementary transvections and unit diagonals generating GL_n(R).

    Valid for semilocal commutative rings, which covers fields and finite
    products of fields; ``generated_subgroup_size`` checks it on small cases.
    """
    if n == 0:
        return np.zeros((0, 0, 0), dtype=np.int64)
    gens = []
    for u in unit_generators(R):
        D = identity(R, n)
        D[0, 0] = u
        gens.append(D)
    for lam in additive_generators(R):
        for i in range(n):
            for j in range(n):
                if i != j:
                    E = identity(R, n)
                    E[i, j] = lam
                    gens.append(E)
    if not gens:
        gens.append(identity(R, n))
    return np.array(gens, dtype=np.int64)


def generated_subgroup_size(R, gens, budget=DEFAULT_MULT_BUDGET):
    """Size of the subgroup generated by ``gens``, by breadth-first closure."""
    gens = np.asarray(gens)
    n = gens.shape[-1]
    start = encode(R, identity(R, n))
    seen = {int(start)}
    frontier = identity(R, n, batch=(1,))
    work = 0
    while len(frontier):
        work += len(frontier) * len(gens)
        check_budget("generated subgroup closure", work, budget)
        prods = matmul(R, gens[:, None], frontier[None]).reshape(-1, n, n)
        codes = encode(R, prods)
        codes, first = np.unique(codes, return_index=True)
        new = [i for i, c in zip(first, codes) if int(c) not in seen]
        seen.update(int(encode(R, prods[i])) for i in new)
        frontier = prods[new]
    return len(seen)


class MatrixGroupTower:
    """GL_n(R) for n = 0, 1, 2, ... with the entrywise action of the G-ring."""

    def __init__(self, GR, budget=DEFAULT_MULT_BUDGET):
        self.gring = GR
        self.ring = GR.ring
        self.budget = budget
        self._levels = {}

    def level(self, n):
        if n not in self._levels:
            self._levels[n] = general_linear(self.ring, n, budget=self.budget)
        return self._levels[n]

    def act(self, g, A):
        return act(self.gring, g, A)

    def block_sum(self, A, B):
        return block_sum(self.ring, A, B)

    def as_finite_group(self, n):
        """GL_n(R) as a :class:`FiniteGroup` together with the entrywise action."""
        from .groups import FiniteGroup, GroupAction

        mats = self.level(n)
        R = self.ring
        N = len(mats)
        check_budget(f"GL_{n}({R.name}) multiplication table", N * N, self.budget)
        codes = encode(R, mats)
        order = np.argsort(codes)
        mats, codes = mats[order], codes[order]
        table = np.empty((N, N), dtype=np.int64)
        for i in range(N):
            table[i] = np.searchsorted(codes, encode(R, matmul(R, mats[i][None], mats)))
        names = [str(mats[i].tolist()) for i in range(N)]
        Pi = FiniteGroup(table, names=names, name=f"GL{n}({R.name})")
        Pi.matrices = mats
        G = self.gring.group
        perms = [np.searchsorted(codes, encode(R, act(self.gring, g, mats))) for g in G]
        return Pi, GroupAction(G, Pi, perms)
