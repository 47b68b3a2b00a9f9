"""The acceptance checks and the per-subcommand checks, as uniform Check records.

Each ``criterion_*`` function runs one acceptance criterion on its pinned
instances and returns a Check.  The configuration contributes the seed,
the budgets and the truncation rank where a criterion leaves them free.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .._util import UnionFind
from ..algebra import (GroupAction, MatrixGroupTower, cyclic_group, make_finite_field,
                       make_galois_gring, trivial_gring)
from ..fincat import (FinCat, check_weak_g_equivalence_surrogate, discrete_gcategory,
                      group_gcategory, trivial_gcategory, validate_gcategory)
from ..fincat.tilde import cat_tilde_g
from ..galois import (assembly_map_k0, check_galois, descent_check, diagonal_extension,
                      galois_field_extension, theta_matrix_iso, trivial_extension)
from ..h1 import crossed_violations, gl_action, h1_set, iota_equivalence_check, verify_hilbert90
from ..h1.criteria import iota_battery
from ..ktheory import gl_symmon, k0_gring, mackey_check, pi0_group_completion
from ..rectify import check_instance, equivariant_skeleton
from ..rectify.models import (gl_category, identity_gammas, random_pseudo_instance, swapped_pair,
                              twisted_free_model)


@dataclass
class Check:
    name: str
    verdict: bool
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0
    limit: float | None = None  # wall-time limit in seconds, where the criterion pins one

    def as_dict(self, timing=False):
        out = {"name": self.name, "verdict": "pass" if self.verdict else "fail",
               "counts": self.counts, "witnesses": self.witnesses}
        if timing:
            out["seconds"] = round(self.seconds, 3)
            if self.limit is not None:
                out["limit_seconds"] = self.limit
        return out

    def line(self):
        t = f" ({self.seconds:.1f}s" + (f" < {self.limit:g}s)" if self.limit else ")")
        return f"{'PASS' if self.verdict else 'FAIL'}  {self.name}{t}"


def timed(fn):
    """Run ``fn`` and store its wall time on the Check it returns."""
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        out.seconds = time.perf_counter() - t
        return out
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _c2():
    return cyclic_group(2)


def _matrix_rows(Pi, v):
    return Pi.matrices[v].tolist()


# 1. Hilbert 90

@timed
def criterion_hilbert90(cfg):
    """Exact cocycle and class counts for four Galois instances."""
    cases = [("GL1(F4)/C2", (2, 2, 1, 1), 3), ("GL2(F4)/C2", (2, 2, 1, 2), 30),
             ("GL1(F9)/C2", (3, 2, 1, 1), 4), ("GL1(F8)/C3", (2, 3, 1, 1), None)]
    counts, ok = {}, True
    for name, args, expected in cases:
        r = verify_hilbert90(*args, budget=cfg.elements)
        counts[name] = {"cocycles": r.cocycle_count, "classes": r.class_count}
        ok &= r.class_count == 1 and r.orbit_stabilizer_ok
        ok &= expected is None or r.cocycle_count == expected
    return Check("1 hilbert90", ok, counts, limit=10.0)


# 2. theta

@timed
def criterion_theta(cfg):
    """theta: S_G[G] -> End_R(S) is bijective for F4/F2, F9/F3 and F2 x F2 / F2."""
    counts, ok = {}, True
    for ext, size in ((galois_field_extension(2, 2, 1), 16), (galois_field_extension(3, 2, 1), 81),
                      (diagonal_extension(make_finite_field(2, 1)), 16)):
        th = theta_matrix_iso(ext)
        counts[ext.name] = {"source": th.source_size, "target": th.target_size,
                            "bijective": th.bijective}
        ok &= th.bijective and th.ring_map and th.source_size == th.target_size == size
    return Check("2 theta", ok, counts, limit=5.0)


# 3 and 4. Mackey tables

def _levels(T):
    W = T.group.whole()
    return T.levels[(T.group.identity,)], T.levels[W], W


@timed
def criterion_k0_f4(cfg):
    """K_0 of F4 with C2 Frobenius: Z at both levels, res = id, tr = 2."""
    N = max(cfg.truncation, 1)
    T = k0_gring(make_galois_gring(2, 2, 1), N, budget=cfg.elements)
    Le, LG, W = _levels(T)
    e = Le.H
    res, tr = T.res_matrix(e, W).tolist(), T.tr_matrix(e, W).tolist()
    mk = mackey_check(T)
    counts = {"max_rank": N, "K0^e": Le.group.describe(), "K0^C2": LG.group.describe(),
              "res": res, "tr": tr, "mackey_checked": len(mk.checked)}
    ok = (Le.group.describe() == LG.group.describe() == "Z" and res == [[1]] and tr == [[2]]
          and mk.passes)
    return Check("3 k0 F4/C2", ok, counts)


def hom_classes(R, G, n):
    """Homomorphisms G -> GL_n(R) up to conjugation, from the group structure of GL_n alone."""
    Pi = MatrixGroupTower(trivial_gring(R, G)).as_finite_group(n)[0]
    uf = UnionFind(tuple(phi) for phi in G.homomorphisms_to(Pi))
    items = list(uf.parent)
    for phi in items:
        for x in Pi.generators():
            xi = Pi.inv(x)
            uf.union(phi, tuple(Pi.prod(x, a, xi) for a in phi))
    return len(uf)


@timed
def criterion_k0_f3(cfg):
    """K_0 of F3 with trivial C2: Z^2 on {trivial, sign}, cross-checked against hom classes."""
    R = make_finite_field(3, 1)
    GR = trivial_gring(R, _c2())
    T = k0_gring(GR, 2, budget=cfg.elements)
    Le, LG, W = _levels(T)
    e = Le.H
    res, tr = T.res_matrix(e, W), T.tr_matrix(e, W)
    semilinear = [LG.classes[n].num_classes for n in range(3)]
    homs = [hom_classes(R, GR.group, n) for n in range(1, 3)]
    counts = {"K0^C2": LG.group.describe(), "generators": LG.labels, "res": res.tolist(),
              "tr": tr.tolist(), "res_tr": (res @ tr).tolist(),
              "semilinear_classes": semilinear[1:], "hom_classes": homs}
    ok = (LG.group.describe() == "Z^2" and LG.labels == ["trivial", "sign"]
          and res.tolist() == [[1, 1]] and tr.tolist() == [[1], [1]]
          and (res @ tr).tolist() == [[2]] and semilinear[1:] == homs and mackey_check(T).passes)
    return Check("4 k0 F3/C2 trivial", ok, counts)


# 5. strictification

def strictify_suite(seed, count, budget):
    results = [check_instance(random_pseudo_instance(seed + i), f"seed {seed + i}", budget=budget)
               for i in range(count)]
    bad = [r.name for r in results if not r.passes]
    counts = {"instances": count, "equivariant": sum(bool(r.equivariant) for r in results),
              "equivalences": sum(bool(r.is_equivalence) for r in results),
              "hofix_preserved": sum(bool(r.is_equivalence) and r.passes for r in results),
              "failures": len(bad)}
    return not bad and count >= 1, counts, bad[:10]


@timed
def criterion_strictify(cfg, count=100):
    """Randomized pseudo equivariant functors: strictify is equivariant, hofix maps equivalences."""
    ok, counts, bad = strictify_suite(cfg.seed, count, cfg.objects)
    return Check("5 strictification", ok and count >= 100, counts, bad, limit=60.0)


# 6. group completion

@timed
def criterion_group_completion(cfg):
    """S^{-1}S for GL(F2) up to rank 4: 9 components, one per rank difference."""
    N = 4
    gc = pi0_group_completion(gl_symmon(make_galois_gring(2, 1, 1), N))
    diffs = [sorted({m - n for m, n in comp}) for comp in gc.components]
    by_rank = all(len(d) == 1 for d in diffs) and sorted(d[0] for d in diffs) == list(range(-N, N + 1))
    counts = {"components": len(gc.components), "oracle_classes": gc.oracle_classes,
              "group": gc.group.describe(), "rank_differences": sorted(d[0] for d in diffs)}
    ok = len(gc.components) == 2 * N + 1 and by_rank and gc.agrees_with_oracle and gc.passes
    return Check("6 group completion", ok, counts)


# 7. Galois criterion

@timed
def criterion_galois(cfg):
    """F4/F2 and F2 x F2 / F2 are Galois; trivial actions of C2 are not."""
    F2, F3 = make_finite_field(2, 1), make_finite_field(3, 1)
    expected = [(galois_field_extension(2, 2, 1), True), (diagonal_extension(F2), True),
                (trivial_extension(F2, _c2()), False), (trivial_extension(F3, _c2()), False)]
    counts, witnesses, ok = {}, [], True
    for ext, want in expected:
        r = check_galois(ext)
        counts[ext.name] = r.is_galois
        ok &= r.is_galois == want
        if r.counterexample is not None:
            witnesses.append({"extension": ext.name, **r.counterexample})
    return Check("7 galois criterion", ok, counts, witnesses)


# 8. descent

@timed
def criterion_descent(cfg):
    """One semilinear class per rank for F4/F2 and F9/F3, each hit by extension of scalars."""
    N = max(cfg.truncation, 1)
    counts, ok = {}, True
    for ext in (galois_field_extension(2, 2, 1), galois_field_extension(3, 2, 1)):
        rep = descent_check(ext, N, seed=cfg.seed)
        counts[ext.name] = {"classes": [lv.semilinear_classes for lv in rep.levels],
                            "cocycles": [lv.cocycles for lv in rep.levels]}
        ok &= rep.passes and all(lv.semilinear_classes == 1 for lv in rep.levels)
    return Check("8 descent", ok, counts)


# 9. assembly

@timed
def criterion_assembly(cfg):
    """The assembly map at K_0 for F9/F3 and C2 is [1 1]."""
    rep = assembly_map_k0(galois_field_extension(3, 2, 1), 2)
    counts = {"source": rep.source_labels, "matrix": rep.matrix.tolist()}
    ok = rep.matrix.tolist() == [[1, 1]] and rep.source_labels == ["trivial", "sign"] \
        and rep.pseudo_ok
    return Check("9 assembly", ok, counts)


# 10. idempotence

def idempotence_battery():
    """G-categories with |G| = 2 and at most two objects."""
    G = _c2()
    swap = {"a": "b", "b": "a"}
    arrow = FinCat(["a", "b"], lambda x, y: [] if (x, y) == ("b", "a") else [0],
                   lambda g, f: 0, lambda a: 0, name="arrow")
    return [
        discrete_gcategory(G, ["a"], lambda g, x: x, name="point"),
        discrete_gcategory(G, ["a", "b"], lambda g, x: x, name="two points"),
        discrete_gcategory(G, ["a", "b"], lambda g, x: x if g == 0 else swap[x], name="swapped points"),
        trivial_gcategory(arrow, G, name="arrow"),
        swapped_pair(1), swapped_pair(2), swapped_pair(3),
        group_gcategory(GroupAction.trivial(G, cyclic_group(2)), name="BC2"),
        group_gcategory(GroupAction.trivial(G, cyclic_group(3)), name="BC3"),
        group_gcategory(gl_action(make_galois_gring(2, 2, 1), 1), name="BGL1(F4)"),
    ]


@timed
def criterion_idempotence(cfg):
    """iota: Cat(G~, C) -> Cat(G~, Cat(G~, C)) is an equivalence on every H-fixed subcategory."""
    counts, bad = {}, []
    for C in idempotence_battery():
        T = cat_tilde_g(C, budget=cfg.objects)
        rep = check_weak_g_equivalence_surrogate(cat_tilde_g(T, budget=cfg.objects).iota())
        counts[C.name] = rep.passes
        if not rep.passes:
            bad.append(C.name)
    return Check("10 idempotence", not bad, counts, bad, limit=30.0)


# 11. iota criterion

@timed
def criterion_iota(cfg):
    """iota is an equivalence at H exactly when H^1(H; Pi) is trivial."""
    reports = [iota_equivalence_check(A, name=n, budget=cfg.objects) for n, A in iota_battery()]
    levels = [lv for r in reports for lv in r.levels]
    trivial = sum(lv.h1_trivial for lv in levels)
    counts = {"instances": len(reports), "levels": len(levels), "h1_trivial": trivial,
              "h1_nontrivial": len(levels) - trivial}
    bad = [{"instance": r.name, "subgroups": [list(H) for H in r.counterexamples]}
           for r in reports if not r.agrees]
    ok = not bad and len(reports) >= 10 and 0 < trivial < len(levels)
    return Check("11 iota criterion", ok, counts, bad)


CRITERIA = [criterion_hilbert90, criterion_theta, criterion_k0_f4, criterion_k0_f3,
            criterion_strictify, criterion_group_completion, criterion_galois, criterion_descent,
            criterion_assembly, criterion_idempotence, criterion_iota]


def run_suite(cfg):
    return [crit(cfg) for crit in CRITERIA]


# checks behind the other subcommands

@timed
def h1_check(GR, n, budget):
    """H^1(G; GL_n(R)) with lexicographically least representatives."""
    action = gl_action(GR, n, budget=budget)
    hs = h1_set(action, budget=budget)
    Pi = action.Pi
    reps = hs.representatives
    valid = all(not crossed_violations(action, f) for f in reps)
    counts = {"cocycle_count": hs.cocycle_count, "class_count": hs.class_count,
              "orbit_sizes": list(hs.orbit_sizes)}
    witnesses = [[_matrix_rows(Pi, v) for v in f.values] for f in reps]
    return Check("h1", valid and sum(hs.orbit_sizes) == hs.cocycle_count, counts, witnesses)


@timed
def skeleton_check(GR, N, budget):
    """Skeleta: the twisted free model retracts onto the GL tower; swapped pairs onto a point."""
    counts, ok = {}, True
    if GR.group.is_abelian():
        T = twisted_free_model(GR, N)
        valid = validate_gcategory(T, budget=budget).ok
        S = equivariant_skeleton(T, gamma=identity_gammas(T), budget=budget)
        rep = S.report()
        ranks = [n for n, _ in S.sk.objects]
        tower = list(gl_category(GR, N, inverse=True).objects)
        counts[T.name] = {"valid": valid, "equivariant": rep["equivariant"],
                          "equivalence": rep["equivalence"], "objects": rep["objects"]}
        ok &= valid and rep["equivariant"] and rep["equivalence"] and ranks == tower
    else:
        counts["twisted model"] = f"not built: {GR.group.name} is not abelian"
    for k in (1, 2, 3):
        C = swapped_pair(k)
        rep = equivariant_skeleton(C, budget=budget).report()
        counts[C.name] = {"equivariant": rep["equivariant"], "equivalence": rep["equivalence"],
                          "gamma_natural": rep["gamma_natural"], "objects": rep["objects"]}
        ok &= rep["equivariant"] and rep["equivalence"] and rep["gamma_natural"]
    return Check("skeleton", ok, counts)
