"""Descent along a Galois extension, K_0 of the fixed points, and the assembly map at K_0."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from ..algebra import matrices as mx
from ..algebra.rings import trivial_gring
from ..algebra.semilinear import check_order_invertible, enumerate_semilinear_structures
from ..ktheory.mackey import k0_level
from ..rectify.models import extension_of_scalars
from ..rectify.pseudo import validate_pseudo
from .extension import GaloisError, check_galois


def _require_galois(ext):
    rep = check_galois(ext)
    if not rep.is_galois:
        raise GaloisError(f"{ext.name} is not a Galois extension: {rep.counterexample}")
    return rep


def descent_witness(GR, A, rng, tries=200):
    """An invertible B with ``A_g B^g = B`` for every g, i.e. an isomorphism from the standard structure.

    B is the average ``sum_g A_g C^g`` of a random matrix C; the first
    invertible one found is returned, or None after ``tries`` draws.
    """
    S, G = GR.ring, GR.group
    n = A.shape[-1]
    for _ in range(tries):
        C = np.array([[rng.randrange(S.size) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        B = mx.zeros(S, n)
        for g in G:
            B = mx.add(S, B, mx.matmul(S, A[g], mx.act(GR, g, C)))
        if mx.is_invertible(S, B):
            if all(np.array_equal(mx.matmul(S, A[g], mx.act(GR, g, B)), B) for g in G):
                return B
    return None


@dataclass
class DescentLevel:
    n: int
    semilinear_classes: int
    base_classes: int
    cocycles: int
    witness: object  # matrix B carrying the standard structure to the class representative

    @property
    def passes(self):
        return self.semilinear_classes == self.base_classes and self.witness is not None


@dataclass
class DescentReport:
    name: str
    levels: list = field(default_factory=list)

    @property
    def passes(self):
        return all(lv.passes for lv in self.levels)

    @property
    def failing_rank(self):
        return next((lv.n for lv in self.levels if not lv.passes), None)

    def as_dict(self):
        return {"extension": self.name, "passes": self.passes, "failing_rank": self.failing_rank,
                "levels": [{"rank": lv.n, "semilinear_classes": lv.semilinear_classes,
                            "base_classes": lv.base_classes, "cocycles": lv.cocycles,
                            "essentially_surjective": lv.witness is not None}
                           for lv in self.levels]}


def descent_check(ext, N, seed=0):
    """Per rank n <= N: semilinear classes over S against rank-n free R-modules (one class).

    Extension of scalars sends R^n to S^n with the identity cocycle; it
    hits every class when each class representative carries a witness
    isomorphism from that standard structure.
    """
    _require_galois(ext)
    GR, G = ext.total, ext.group
    rng = random.Random(seed)
    report = DescentReport(ext.name)
    for n in range(1, N + 1):
        cl = enumerate_semilinear_structures(GR, G.whole(), n)
        witnesses = []
        for c in range(cl.num_classes):
            witnesses.append(descent_witness(GR, cl.cocycles[cl.representative_index(c)], rng))
        w = witnesses[0] if all(x is not None for x in witnesses) else None
        report.levels.append(DescentLevel(n, cl.num_classes, 1, cl.count, w))
    return report


@dataclass
class K0GaloisReport:
    name: str
    fixed_group: str
    generator_ranks: list
    class_ranks_match: bool

    @property
    def passes(self):
        return self.fixed_group == "Z" and self.generator_ranks == [1] and self.class_ranks_match

    def as_dict(self):
        return {"extension": self.name, "fixed_k0": self.fixed_group, "base_k0": "Z",
                "generator_ranks": self.generator_ranks,
                "rank_isomorphism": self.class_ranks_match, "passes": self.passes}


def k0_galois_check(ext, N=2):
    """K_0 of the G-fixed semilinear structures is Z, and the class of rank n is n."""
    _require_galois(ext)
    L = k0_level(ext.total, ext.group.whole(), N)
    ranks = [L.gen_key(j)[0] for j in range(L.rank)]
    match = L.rank == 1 and all(L.krull_schmidt.holds and
                                len(L.krull_schmidt.decomposition[i]) == n
                                for (n, c), i in L.index.items())
    return K0GaloisReport(ext.name, L.group.describe(), ranks, match)


@dataclass
class AssemblyReport:
    name: str
    source_labels: list
    target_labels: list
    source_ranks: list
    matrix: np.ndarray
    pseudo_ok: bool

    @property
    def total_dimension(self):
        """Each generator of rank n goes to n times the generator, when the target is Z."""
        return self.matrix.shape[0] == 1 and self.matrix[0].tolist() == self.source_ranks

    def as_dict(self):
        return {"extension": self.name, "source": self.source_labels, "target": self.target_labels,
                "matrix": self.matrix.tolist(), "pseudo_equivariant": self.pseudo_ok,
                "total_dimension": self.total_dimension}


def assembly_map_k0(ext, N=1, validate=True):
    """``Rep_F[G] -> K_0`` of G-fixed semilinear structures over E, by extension of scalars.

    Source generators are the irreducible representations of rank <= N
    (indecomposable classes, found by brute-force decomposition).  Each is
    tensored up to E and its semilinear class read off.
    """
    _require_galois(ext)
    G, F = ext.group, ext.base
    W = G.whole()
    src_gr = trivial_gring(F, G)
    if not check_order_invertible(src_gr, W):
        raise GaloisError(f"|G| = {G.order} is not invertible in {F.name}")
    src = k0_level(src_gr, W, N)
    tgt = k0_level(ext.total, W, N)
    cols = []
    for j in range(src.rank):
        arr = ext.inclusion[src.generator_array(j)]
        cols.append(tgt.vector(arr))
    M = np.array(cols, dtype=np.int64).reshape(src.rank, tgt.rank).T
    pseudo_ok = None
    if validate:
        pseudo_ok = validate_pseudo(extension_of_scalars(src_gr, ext.total, N)).ok
    ranks = [src.gen_key(j)[0] for j in range(src.rank)]
    return AssemblyReport(ext.name, src.labels, tgt.labels, ranks, M, pseudo_ok)
