"""Strictification on Cat(G~, -) and induced maps of homotopy fixed points."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._util import DEFAULT_OBJECT_BUDGET
from ..fincat.category import Functor, Mor, check_equivalence
from ..fincat.gcat import GFunctor
from ..fincat.hofix import HofixObject, hofix
from ..fincat.tilde import TildeGFunctor, cat_tilde_g
from .pseudo import validate_pseudo


class PseudoError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("not a valid pseudo equivariant functor: " + "; ".join(report.violations[:3]))


def _require_valid(P, validate):
    if validate:
        rep = validate_pseudo(P)
        if not rep.ok:
            raise PseudoError(rep)


def strictify(P, source=None, target=None, validate=True, budget=DEFAULT_OBJECT_BUDGET):
    """The equivariant functor ``F -> (g -> g Theta(g^{-1} F(g)))`` on Cat(G~, -).

    ``psi_g`` of the image is ``theta_g(g^{-1} F(g)) o Theta(psi_g)``; a
    transformation with e-component ``a`` goes to the one with e-component
    ``Theta(a)``.
    """
    _require_valid(P, validate)
    C, D = P.source, P.target
    G = C.group
    S = source if source is not None else cat_tilde_g(C, budget=budget)
    T = target if target is not None else cat_tilde_g(D, budget=budget)

    def on_obj(F):
        objs, psi = [], []
        for g in G:
            x = C.act_obj(G.inv(g), F.objects[g])
            objs.append(D.act_obj(g, P.obj(x)))
            psi.append(D.compose(P.theta(g, x), P.mor(F.psi[g])))
        return TildeGFunctor(tuple(objs), tuple(psi))

    def on_mor(eta):
        return Mor(out.obj(eta.src), out.obj(eta.tgt), P.mor(eta.data))

    out = GFunctor(S, T, on_obj, on_mor, name=f"strict({P.name})")
    return out


def equivariance_report(F, limit=20):
    """``F(hX) == h F(X)`` on every object and morphism, exactly."""
    return F.equivariance_violations(limit=limit)


def induced_hofix_map(P, H=None, source=None, target=None, validate=True,
                      budget=DEFAULT_OBJECT_BUDGET):
    """``(C, f) -> (Theta C, f_theta)`` with ``f_theta(h) = Theta(f(h)) o theta_h(C)^{-1}``."""
    _require_valid(P, validate)
    C, D = P.source, P.target
    H = tuple(sorted(H)) if H is not None else C.group.whole()
    S = source if source is not None else hofix(C, H, budget=budget)
    T = target if target is not None else hofix(D, H, budget=budget)

    def on_obj(x):
        f = tuple(D.compose(P.mor(x.f[i]), D.inverse(P.theta(h, x.obj))) for i, h in enumerate(H))
        return HofixObject(P.obj(x.obj), H, f)

    return Functor(S, T, on_obj, lambda a: Mor(on_obj(a.src), on_obj(a.tgt), P.mor(a.data)),
                   name=f"hofix({P.name})")


@dataclass
class InstanceResult:
    name: str
    equivariant: bool
    is_equivalence: bool
    hofix_equivalences: dict = field(default_factory=dict)
    strict_matches_postcomposition: object = None
    violations: list = field(default_factory=list)

    @property
    def passes(self):
        ok = self.equivariant and not self.violations
        if self.is_equivalence:
            ok = ok and all(self.hofix_equivalences.values())
        return ok


def check_instance(P, name="instance", budget=DEFAULT_OBJECT_BUDGET):
    """Strictify P, check exact equivariance and, for equivalences, the induced hofix maps."""
    C = P.source
    rep = validate_pseudo(P)
    if not rep.ok:
        return InstanceResult(name, False, False, violations=rep.violations)
    St = strictify(P, validate=False, budget=budget)
    viol = equivariance_report(St)
    eq = check_equivalence(P.functor).is_equivalence
    res = InstanceResult(name, not viol, eq, violations=viol)
    if eq:
        for H in C.group.subgroups():
            F = induced_hofix_map(P, H, validate=False, budget=budget)
            bad = F.violations()
            res.hofix_equivalences[H] = not bad and check_equivalence(F, check_functor=False).is_equivalence
    return res
