"""Equivariant Morita equivalences, checked stage by stage.

A pseudo equivariant functor between bounded module G-categories is an
equivariant Morita equivalence when it is an equivalence of underlying
categories; it then induces equivalences on every homotopy fixed point
category.  ``verify_equivariant_morita`` checks the hypothesis and each
conclusion exhaustively and names the first stage that fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import matrices as mx
from ..fincat.category import FinCat, Functor, Mor, check_equivalence
from ..fincat.gcat import GCategory
from ..rectify.models import field_inclusion, gl_category
from ..rectify.pseudo import PseudoEqFunctor, validate_pseudo
from ..rectify.strictify import induced_hofix_map


@dataclass
class MoritaStage:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class MoritaReport:
    stages: list = field(default_factory=list)

    @property
    def passes(self):
        return all(s.passed for s in self.stages)

    @property
    def failed_stage(self):
        return next((s.name for s in self.stages if not s.passed), None)

    def as_dict(self):
        return {"passes": self.passes, "failed_stage": self.failed_stage,
                "stages": [{"name": s.name, "passed": s.passed, "detail": s.detail}
                           for s in self.stages]}


def _describe(rep):
    bad = [name for name, ok in (("essential surjectivity", rep.essentially_surjective),
                                 ("fullness", rep.full), ("faithfulness", rep.faithful)) if not ok]
    if rep.violations:
        bad.append("functoriality")
    return "fails at " + ", ".join(bad) if bad else "equivalence"


def verify_equivariant_morita(P, subgroups=None):
    """Validate P, check it is an equivalence, then check every induced map on hofix categories.

    Stages are ``pseudo``, ``underlying`` and ``hofix H`` for each subgroup
    H (all subgroups by default).  Checking stops at the first failure.
    """
    report = MoritaReport()
    v = validate_pseudo(P)
    report.stages.append(MoritaStage("pseudo", v.ok, "; ".join(v.violations[:3])))
    if not v.ok:
        return report
    rep = check_equivalence(P.functor)
    report.stages.append(MoritaStage("underlying", rep.is_equivalence, _describe(rep)))
    if not rep.is_equivalence:
        return report
    G = P.source.group
    subgroups = subgroups if subgroups is not None else G.subgroups()
    for H in subgroups:
        H = tuple(sorted(H))
        rep = check_equivalence(induced_hofix_map(P, H, validate=False))
        report.stages.append(MoritaStage(f"hofix {list(H)}", rep.is_equivalence, _describe(rep)))
        if not rep.is_equivalence:
            break
    return report


def _unit_tensor(R, i, j, k):
    """``E_ij (x) I_k`` acting on ``R^2 (x) R^k``."""
    E = mx.zeros(R, 2 * k)
    idx = np.arange(k)
    E[i * k + idx, j * k + idx] = R.one
    return E


def matrix_module_category(GR, K):
    """Projective modules ``R^2 (x) R^k`` over ``M_2(R)``, k <= K, with their automorphisms.

    Automorphisms are found by brute force: the invertible ``2k x 2k``
    matrices commuting with every ``E_ij (x) I_k``.  G acts entrywise.
    """
    R = GR.ring
    autos = {}
    for k in range(K + 1):
        X = mx.general_linear(R, 2 * k)
        keep = np.ones(len(X), dtype=bool)
        for i in range(2):
            for j in range(2):
                E = _unit_tensor(R, i, j, k)
                keep &= (mx.matmul(R, X, E) == mx.matmul(R, E, X)).all(axis=(-2, -1))
        autos[k] = tuple(sorted(int(c) for c in mx.encode(R, X[keep])))
    ident = {k: int(mx.encode(R, mx.identity(R, 2 * k))) for k in autos}
    products = {}

    def compose(g, f):
        key = (g.data, f.data)
        if key not in products:
            n = 2 * f.src
            A, B = mx.decode(R, g.data, n), mx.decode(R, f.data, n)
            products[key] = int(mx.encode(R, mx.matmul(R, A, B)))
        return products[key]

    def act(g, f):
        A = mx.decode(R, f.data, 2 * f.src)
        return Mor(f.src, f.tgt, int(mx.encode(R, mx.act(GR, g, A))))

    cat = FinCat(range(K + 1), lambda a, b: autos[a] if a == b else (), compose,
                 lambda a: ident[a], name=f"P(M2({R.name}))<={K}")
    C = GCategory(cat, GR.group, lambda g, a: a, act, name=cat.name)
    C.gring, C.autos = GR, autos
    return C


def matrix_morita_functor(GR, K):
    """``R^k -> R^2 (x) R^k``, ``A -> I_2 (x) A``: GL tower over R into modules over M_2(R).

    The functor commutes with the entrywise action, so its coherence maps
    are identities.
    """
    R = GR.ring
    S, T = gl_category(GR, K), matrix_module_category(GR, K)

    def on_mor(f):
        A = mx.decode(R, f.data, f.src)
        return Mor(f.src, f.tgt, int(mx.encode(R, mx.block_sum(R, A, A))))

    F = Functor(S, T, lambda k: k, on_mor, name=f"I2 (x) - over {R.name}")
    return PseudoEqFunctor.strict(F)


def identity_morita(GR, N):
    C = gl_category(GR, N)
    return PseudoEqFunctor.strict(Functor(C, C, lambda a: a, lambda f: f, name=f"id {C.name}"))


def scalar_inclusion(GR_base, GR_total, N):
    """The GL tower over a subfield into the GL tower over the field, entry by entry.

    Equivariant when the group fixes the subfield; bijective on objects and
    faithful, but not full once the fields differ.
    """
    Rb, Rt = GR_base.ring, GR_total.ring
    inc = field_inclusion(Rb, Rt)
    S, T = gl_category(GR_base, N), gl_category(GR_total, N)

    def on_mor(f):
        A = inc[mx.decode(Rb, f.data, f.src)]
        return Mor(f.src, f.tgt, int(mx.encode(Rt, A)))

    F = Functor(S, T, lambda n: n, on_mor, name=f"{Rb.name} -> {Rt.name}")
    return PseudoEqFunctor.strict(F)
