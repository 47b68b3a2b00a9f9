"""Functors that commute with the group action up to coherent isomorphism."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..fincat.category import Functor


class PseudoEqFunctor:
    """A functor Theta with isomorphisms ``theta(g, C): Theta(gC) -> g Theta(C)``."""

    def __init__(self, source, target, functor, theta, name=None):
        self.source = source
        self.target = target
        self.functor = functor
        self._theta = theta
        self.name = name or functor.name
        self._cache = {}
        self._mor_cache = {}

    def __repr__(self):
        return f"PseudoEqFunctor({self.name})"

    def obj(self, a):
        return self.functor.obj(a)

    def mor(self, f):
        if f not in self._mor_cache:
            self._mor_cache[f] = self.functor.mor(f)
        return self._mor_cache[f]

    def theta(self, g, a):
        key = (g, a)
        if key not in self._cache:
            self._cache[key] = self._theta(g, a)
        return self._cache[key]

    def with_theta(self, theta, name=None):
        return PseudoEqFunctor(self.source, self.target, self.functor, theta,
                               name=name or self.name)

    @classmethod
    def strict(cls, F, name=None):
        """An equivariant functor, with identity coherence maps."""
        D = F.target
        return cls(F.source, F.target, F,
                   lambda g, a: D.identity(D.act_obj(g, F.obj(a))), name=name or F.name)


@dataclass
class PseudoReport:
    ok: bool
    strict: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"ok": self.ok, "strict": self.strict, "violations": list(self.violations)}


def validate_pseudo(P, limit=20):
    """Exhaustive check of functoriality, naturality of each theta_g and the cocycle coherence."""
    C, D = P.source, P.target
    G = C.group
    out = list(P.functor.violations(limit=limit))
    strict = True
    for a in C.objects:
        for g in G:
            t = P.theta(g, a)
            src, tgt = P.obj(C.act_obj(g, a)), D.act_obj(g, P.obj(a))
            if (t.src, t.tgt) != (src, tgt):
                out.append(f"theta_{g}({a!r}) has the wrong ends")
                continue
            if not D.is_iso(t):
                out.append(f"theta_{g}({a!r}) is not an isomorphism")
            if t != D.identity(tgt):
                strict = False
        if P.theta(G.identity, a) != D.identity(P.obj(a)):
            out.append(f"theta_e({a!r}) is not the identity")
        if len(out) >= limit:
            return PseudoReport(False, False, out[:limit])
    if out:
        return PseudoReport(False, False, out)
    for f in C.morphisms():
        for g in G:
            lhs = D.compose(P.theta(g, f.tgt), P.mor(C.act_mor(g, f)))
            rhs = D.compose(D.act_mor(g, P.mor(f)), P.theta(g, f.src))
            if lhs != rhs:
                out.append(f"theta_{g} is not natural at {f}")
        if len(out) >= limit:
            break
    for a in C.objects:
        for g in G:
            for h in G:
                lhs = P.theta(G.mul(g, h), a)
                rhs = D.compose(D.act_mor(g, P.theta(h, a)), P.theta(g, C.act_obj(h, a)))
                if lhs != rhs:
                    out.append(f"coherence fails at ({g}, {h}, {a!r})")
        if len(out) >= limit:
            break
    return PseudoReport(not out, strict and not out, out[:limit])


def conjugate_functor(Phi, tau, on_obj):
    """``Theta(f) = tau(C') o Phi(f) o tau(C)^{-1}`` for isomorphisms ``tau(C): Phi(C) -> Theta(C)``.

    When Phi is equivariant the result is pseudo equivariant with
    ``theta_g(C) = (g tau(C)) o tau(gC)^{-1}``.
    """
    C, D = Phi.source, Phi.target

    def on_mor(f):
        return D.chain(tau(f.tgt), Phi.mor(f), D.inverse(tau(f.src)))

    Theta = Functor(C, D, on_obj, on_mor, name=f"{Phi.name}^tau")

    def theta(g, a):
        return D.compose(D.act_mor(g, tau(a)), D.inverse(tau(C.act_obj(g, a))))

    return PseudoEqFunctor(C, D, Theta, theta, name=Theta.name)


def corrupt(P, g, a, replacement):
    """A copy of P whose ``theta(g, a)`` is replaced, for negative tests."""
    def theta(h, b):
        if (h, b) == (g, a):
            return replacement
        return P.theta(h, b)
    return P.with_theta(theta, name=f"{P.name}(corrupted)")


def pseudo_from_tables(source, target, obj_map, mor_map, theta_map):
    """A pseudo functor from dictionaries, for configuration literals."""
    F = Functor(source, target, lambda a: obj_map[a], lambda f: mor_map[f])
    return PseudoEqFunctor(source, target, F, lambda g, a: theta_map[(g, a)])

