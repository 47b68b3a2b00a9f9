"""K_0 of a G-ring as a Mackey table of truncated Grothendieck groups.

For each subgroup H the classes of rank-n semilinear structures (n <= N)
form a graded monoid under block sum; K_0^H is its group completion, with
the indecomposable classes as generators once unique decomposition has been
confirmed by brute force.  Restriction forgets part of a cocycle,
conjugation by x sends A to ``(c_x A)_{x l x^{-1}} = (A_l)^x``, and transfer
from H to K induces along left cosets ``t_1 H, ..., t_k H`` (each represented
by its minimal element):

    block (j, i) of B_k is (A_h)^{t_j}   where   k t_i = t_j h,

and is zero when ``t_j^{-1} k t_i`` is not in H.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._util import DEFAULT_MULT_BUDGET
from ..algebra import matrices as mx
from ..algebra.semilinear import (SemilinearModule, check_order_invertible,
                                  enumerate_semilinear_structures)
from ..fincat.category import Functor, Mor
from ..fincat.hofix import HofixObject, hofix
from ..fincat.tilde import TildeGFunctor, act_on_tilde_object
from ..rectify.models import gl_category
from .grothendieck import ClassMonoid, grothendieck_group, krull_schmidt


class K0Error(ValueError):
    pass


def is_field_like(R):
    """A finite field or a finite product of finite fields."""
    factors = getattr(R, "factors", None)
    if factors:
        return all(is_field_like(F) for F in factors)
    return R.field is not None


def _require_field_like(R):
    if not is_field_like(R):
        raise K0Error(f"K_0 is only supported over finite fields and their products, not {R.name}")


# cocycle operations

def restrict_cocycle(G, K, arr, H):
    """Values of a K-cocycle on the subgroup H (both sorted tuples)."""
    pos = {k: i for i, k in enumerate(K)}
    return np.asarray(arr)[..., [pos[h] for h in H], :, :]


def conjugate_cocycle(GR, H, arr, x):
    """The cocycle ``(c_x A)_{x l x^{-1}} = A_l^x`` on ``x H x^{-1}``."""
    G = GR.group
    xi = G.inv(x)
    target = G.conjugate(x, H)
    pos = {h: i for i, h in enumerate(H)}
    arr = np.asarray(arr)
    return target, np.stack([mx.act(GR, x, arr[..., pos[G.prod(xi, k, x)], :, :]) for k in target],
                            axis=-3)


def coset_representatives(G, K, H):
    """Minimal elements of the left cosets ``tH`` in K, in increasing order."""
    return [c[0] for c in G.left_cosets(K, H)]


def induce_cocycle(GR, H, K, arr, reps=None):
    """The transferred K-cocycle of an H-cocycle ``arr`` (shape (|H|, n, n))."""
    G, R = GR.group, GR.ring
    H, K = tuple(sorted(H)), tuple(sorted(K))
    reps = coset_representatives(G, K, H) if reps is None else list(reps)
    arr = np.asarray(arr)
    n, k = arr.shape[-1], len(reps)
    posH = {h: i for i, h in enumerate(H)}
    out = np.full((len(K), n * k, n * k), R.zero, dtype=np.int64)
    for a, kk in enumerate(K):
        for i, ti in enumerate(reps):
            x = G.mul(kk, ti)
            for j, tj in enumerate(reps):
                h = G.mul(G.inv(tj), x)
                if h in posH:
                    out[a, j * n:(j + 1) * n, i * n:(i + 1) * n] = mx.act(GR, tj, arr[posH[h]])
                    break
            else:
                raise K0Error("coset representatives do not cover K/H")
    return out


# one subgroup

@dataclass
class K0Level:
    """K_0^H through rank N."""

    H: tuple
    N: int
    classes: list  # classes[n]: SemilinearClasses of rank n
    monoid: ClassMonoid
    index: dict  # (n, c) -> monoid index
    generators: list  # monoid indices of indecomposables
    labels: list
    krull_schmidt: object
    group: object
    identified: bool
    notes: list = field(default_factory=list)

    @property
    def rank(self):
        return len(self.generators)

    def class_of(self, arr):
        arr = np.asarray(arr)
        n = arr.shape[-1]
        if n > self.N:
            return None
        return n, self.classes[n].class_of(arr)

    def vector(self, arr):
        """Coordinates of the class of ``arr`` over the generators, or None past the window."""
        nc = self.class_of(arr)
        if nc is None:
            return None
        i = self.index[nc]
        if i not in self.krull_schmidt.decomposition:
            raise K0Error(f"class {self.monoid.labels[i]} has no unique decomposition")
        parts = self.krull_schmidt.decomposition[i]
        v = [0] * len(self.generators)
        for p in parts:
            v[self.generators.index(p)] += 1
        return v

    def generator_array(self, j):
        n, c = self.gen_key(j)
        cl = self.classes[n]
        return cl.cocycles[cl.representative_index(c)]

    def gen_key(self, j):
        inv = {v: k for k, v in self.index.items()}
        return inv[self.generators[j]]


def _label(GR, H, n, cl, c):
    R, G = GR.ring, GR.group
    if n == 1:
        ident = mx.identity(R, 1, batch=(len(H),))
        if cl.class_of(ident) == c:
            return "trivial"
        if len(H) == 2 and R.neg(R.one) != R.one:
            sign = ident.copy()
            sign[H.index(max(H)), 0, 0] = R.neg(R.one)
            if not SemilinearModule.from_array(GR, H, sign).violations(check_vectors=False) \
                    and cl.class_of(sign) == c:
                return "sign"
    return f"V{n}.{c}"


def k0_level(GR, H, N, budget=DEFAULT_MULT_BUDGET):
    H = tuple(sorted(H))
    R = GR.ring
    classes = [enumerate_semilinear_structures(GR, H, n, budget=budget) for n in range(N + 1)]
    index, labels, ranks = {}, [], []
    for n, cl in enumerate(classes):
        for c in range(cl.num_classes):
            index[(n, c)] = len(labels)
            labels.append(f"{n}.{c}")
            ranks.append(n)
    table = {}
    reps = {key: classes[key[0]].cocycles[classes[key[0]].representative_index(key[1])]
            for key in index}
    for (n, c), i in index.items():
        for (m, d), j in index.items():
            if n + m <= N:
                s = mx.block_sum(R, reps[(n, c)], reps[(m, d)])
                table[(i, j)] = index[(n + m, classes[n + m].class_of(s))]
    M = ClassMonoid(labels, ranks, index[(0, 0)], table)
    ks = krull_schmidt(M)
    inv = {v: k for k, v in index.items()}
    gens = ks.indecomposables
    glabels = [_label(GR, H, inv[g][0], classes[inv[g][0]], inv[g][1]) for g in gens]
    identified = check_order_invertible(GR, H)
    notes = [] if identified else [
        "not identified with K_0 of the twisted group ring: |H| is not invertible"]
    if not ks.holds:
        notes.append("unique decomposition fails; generators are not a basis")
    return K0Level(H, N, classes, M, index, gens, glabels, ks, grothendieck_group(M), identified,
                   notes)


# the table

@dataclass
class MackeyK0Table:
    gring: object
    N: int
    subgroups: list  # representatives up to conjugacy
    levels: dict  # every subgroup -> K0Level
    res: dict = field(default_factory=dict)  # (H, K) -> list of columns (H <= K)
    tr: dict = field(default_factory=dict)  # (H, K) -> list of columns, None past the window
    conj: dict = field(default_factory=dict)  # (x, H) -> list of columns into x H x^-1

    @property
    def group(self):
        return self.gring.group

    def matrix(self, cols, rows):
        """Columns to an integer matrix, or None if some column is outside the window."""
        if any(c is None for c in cols):
            return None
        return np.array(cols, dtype=np.int64).reshape(len(cols), rows).T

    def res_matrix(self, H, K):
        return self.matrix(self.res[(H, K)], self.levels[H].rank)

    def tr_matrix(self, H, K):
        return self.matrix(self.tr[(H, K)], self.levels[K].rank)

    def as_dict(self):
        G = self.group

        def name(H):
            return "{" + ",".join(G.names[h] for h in H) + "}"

        def mat(m):
            return None if m is None else m.tolist()

        out = {"group": G.name, "ring": self.gring.ring.name, "max_rank": self.N, "subgroups": []}
        for H in self.subgroups:
            L = self.levels[H]
            out["subgroups"].append({"subgroup": name(H), "rank": L.rank, "generators": L.labels,
                                     "group": L.group.describe(), "identified": L.identified,
                                     "notes": L.notes})
        out["restriction"] = [{"from": name(K), "to": name(H), "matrix": mat(self.res_matrix(H, K))}
                              for (H, K) in self.res if H in self.subgroups and K in self.subgroups]
        out["transfer"] = [{"from": name(H), "to": name(K), "matrix": mat(self.tr_matrix(H, K))}
                           for (H, K) in self.tr if H in self.subgroups and K in self.subgroups]
        rep = mackey_check(self)
        out["mackey_check"] = rep.passes
        out["mackey_failures"] = [repr(f) for f in rep.failures]
        return out


def _conjugacy_reps(G):
    seen, reps = set(), []
    for H in G.subgroups():
        if H not in seen:
            reps.append(H)
            seen.update(G.conjugate(x, H) for x in G)
    return reps


def k0_gring(GR, N, budget=DEFAULT_MULT_BUDGET):
    """The Mackey table of K_0 for the G-ring GR through rank N."""
    _require_field_like(GR.ring)
    G = GR.group
    subs = G.subgroups()
    levels = {H: k0_level(GR, H, N, budget=budget) for H in subs}
    T = MackeyK0Table(GR, N, _conjugacy_reps(G), levels)
    for K in subs:
        for H in subs:
            if set(H) <= set(K):
                LK, LH = levels[K], levels[H]
                T.res[(H, K)] = [LH.vector(restrict_cocycle(G, K, LK.generator_array(j), H))
                                 for j in range(LK.rank)]
                T.tr[(H, K)] = [_transfer_column(GR, LH, LK, j) for j in range(LH.rank)]
    for x in G:
        for H in subs:
            L = levels[H]
            cols = []
            for j in range(L.rank):
                target, arr = conjugate_cocycle(GR, H, L.generator_array(j), x)
                cols.append(levels[target].vector(arr))
            T.conj[(x, H)] = cols
    return T


def _transfer_column(GR, LH, LK, j):
    arr = LH.generator_array(j)
    idx = len(LK.H) // len(LH.H)
    if arr.shape[-1] * idx > LK.N:
        return None
    return LK.vector(induce_cocycle(GR, LH.H, LK.H, arr))


@dataclass
class MackeyReport:
    checked: list
    skipped: list
    failures: list

    @property
    def passes(self):
        return not self.failures


def _apply(cols, v, rows):
    """``M v`` for M given by columns; None if a needed column is outside the window."""
    if v is None:
        return None
    out = np.zeros(rows, dtype=np.int64)
    for c, a in zip(cols, v):
        if a:
            if c is None:
                return None
            out += a * np.asarray(c, dtype=np.int64)
    return out


def mackey_check(T):
    """``res^G_H tr^G_L = sum over x in H\\G/L of tr^H_{H n xLx^-1} c_x res^L_{x^-1Hx n L}``.

    Checked generator by generator on K_0^L for every pair of subgroups;
    generators whose transfers leave the rank window are skipped and listed.
    """
    G = T.group
    W = G.whole()
    checked, skipped, failures = [], [], []
    for H in T.levels:
        for L in T.levels:
            LL = T.levels[L]
            for j in range(LL.rank):
                e = [0] * LL.rank
                e[j] = 1
                lhs = _apply(T.res[(H, W)], _apply(T.tr[(L, W)], e, T.levels[W].rank),
                             T.levels[H].rank)
                rhs = np.zeros(T.levels[H].rank, dtype=np.int64)
                ok = lhs is not None
                for dc in G.double_cosets(H, L):
                    x = dc[0]
                    xi = G.inv(x)
                    A = tuple(sorted(set(G.conjugate(xi, H)) & set(L)))
                    B = G.conjugate(x, A)
                    v = _apply(T.res[(A, L)], e, T.levels[A].rank)
                    v = _apply(T.conj[(x, A)], v, T.levels[B].rank)
                    v = _apply(T.tr[(B, H)], v, T.levels[H].rank)
                    if v is None:
                        ok = False
                        break
                    rhs += v
                if not ok:
                    skipped.append((H, L, j))
                    continue
                checked.append((H, L, j))
                if not np.array_equal(lhs, rhs):
                    failures.append((H, L, j, lhs.tolist(), rhs.tolist()))
    return MackeyReport(checked, skipped, failures)


# transfer on homotopy fixed points

def transfer_functor(GR, H, N, reps=None):
    """The transfer hofix(GL_{<=N}, H) -> hofix(GL_{<=kN}, G), k = [G : H].

    Objects are induced cocycles; a morphism alpha goes to
    ``blockdiag(alpha^{t_1}, ..., alpha^{t_k})``.
    """
    G, R = GR.group, GR.ring
    H, W = tuple(sorted(H)), G.whole()
    reps = coset_representatives(G, W, H) if reps is None else list(reps)
    k = len(reps)
    src_gl, tgt_gl = gl_category(GR, N), gl_category(GR, N * k)
    S, T = hofix(src_gl, H), hofix(tgt_gl, W)

    def on_obj(x):
        n = x.obj
        arr = np.stack([mx.decode(R, f.data, n) for f in x.f]) if n else np.zeros((len(H), 0, 0), np.int64)
        B = induce_cocycle(GR, H, W, arr, reps)
        return HofixObject(n * k, W, tuple(Mor(n * k, n * k, int(mx.encode(R, b))) for b in B))

    def on_mor(a):
        n = a.src.obj
        M = mx.decode(R, a.data.data, n)
        D = mx.identity(R, 0)
        for t in reps:
            D = mx.block_sum(R, D, mx.act(GR, t, M))
        code = int(mx.encode(R, D))
        return Mor(on_obj(a.src), on_obj(a.tgt), Mor(n * k, n * k, code))

    F = Functor(S, T, on_obj, on_mor, name=f"tr_{len(H)}^{len(W)}")
    F.gl = tgt_gl
    return F


def hofix_to_tilde(C, x):
    """The G-fixed object of Cat(G~, C) attached to a G-cocycle: ``psi_h = h.f(h^{-1})``."""
    G = C.group
    return TildeGFunctor(tuple(C.act_obj(h, x.obj) for h in G),
                         tuple(C.act_mor(h, x.at(G.inv(h))) for h in G))


def transfer_outputs_fixed(F):
    """Every output object, read in Cat(G~, C), is fixed by all of G."""
    C = F.gl
    G = C.group
    bad = []
    for x in F.source.objects:
        X = hofix_to_tilde(C, F.obj(x))
        if any(act_on_tilde_object(C, g, X) != X for g in G):
            bad.append(x)
    return bad
