import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from eqktheory.algebra import cyclic_group, make_finite_field, make_galois_gring, trivial_gring
from eqktheory.algebra.matrices import MatrixGroupTower
from eqktheory.fincat import (Functor, GFunctor, Mor, cat_tilde_g, check_equivalence,
                              check_weak_g_equivalence_surrogate, connected_components,
                              group_gcategory, hofix, postcompose, validate_gcategory)
from eqktheory.rectify import (PseudoEqFunctor, PseudoError, SkeletonError, block_sum_pairing,
                               check_instance, conjugate_functor, corrupt, equivariant_skeleton,
                               find_pushout, induced_hofix_map, rectify_monoidal, rectify_pushouts,
                               rectify_zero, strictify, twisted_pair_pairing, validate_pseudo,
                               ZeroObjectError, PushoutError)
from eqktheory.rectify.models import (extension_of_scalars, gl_category, identity_gammas, injective,
                                      no_cocone_category, pointed_sets, random_pseudo_instance,
                                      swapped_pair, swapped_zero_category, twisted_free_model)
from eqktheory.rectify.skeleton import find_gammas, representatives
from eqktheory.rectify.waldhausen import is_pushout, span_orbit_closed


def gl1(GR):
    _, action = MatrixGroupTower(GR).as_finite_group(1)
    return group_gcategory(action)


def twisted_identity(C, seed=0):
    """The identity of C conjugated by random isomorphisms, redrawn until theta is not the identity."""
    rng = random.Random(seed)
    ident = GFunctor(C, C, lambda a: a, lambda f: f, name="id")
    for _ in range(100):
        tau = {a: rng.choice([f for b in C.objects for f in C.isos(a, b)]) for a in C.objects}
        P = conjugate_functor(ident, tau.__getitem__, lambda a, t=tau: t[a].tgt)
        if not validate_pseudo(P).strict:
            return P
    raise AssertionError("no non-strict conjugate found")


# validation

def test_strict_functor_reports_strict():
    C = swapped_pair(2)
    rep = validate_pseudo(PseudoEqFunctor.strict(GFunctor(C, C, lambda a: a, lambda f: f)))
    assert rep.ok and rep.strict


def test_extension_of_scalars_is_pseudo_but_not_strict():
    F = trivial_gring(make_finite_field(2, 1), cyclic_group(2))
    P = extension_of_scalars(F, make_galois_gring(2, 2, 1), 2)
    rep = validate_pseudo(P)
    assert rep.ok and not rep.strict


def test_corrupted_theta_breaks_coherence():
    C = swapped_pair(2)
    P = PseudoEqFunctor.strict(GFunctor(C, C, lambda a: a, lambda f: f))
    bad = corrupt(P, 1, "x", Mor("y", "y", 1))
    rep = validate_pseudo(bad)
    assert not rep.ok
    assert "coherence fails at (1, 1, 'x')" in rep.violations


def test_strictify_rejects_invalid():
    C = swapped_pair(2)
    P = PseudoEqFunctor.strict(GFunctor(C, C, lambda a: a, lambda f: f))
    with pytest.raises(PseudoError):
        strictify(corrupt(P, 1, "x", Mor("y", "y", 1)))


# strictification

def test_strict_input_matches_postcomposition():
    C = swapped_pair(2)
    Theta = GFunctor(C, C, lambda a: a, lambda f: f, name="id")
    St = strictify(PseudoEqFunctor.strict(Theta))
    post = postcompose(Theta, source=St.source, target=St.target)
    assert all(St.obj(F) == post.obj(F) for F in St.source.objects)
    assert all(St.mor(f) == post.mor(f) for f in St.source.morphisms())


def test_strictify_of_nontrivial_theta_is_equivariant():
    P = twisted_identity(swapped_pair(3), seed=1)
    assert not validate_pseudo(P).strict
    St = strictify(P)
    assert St.equivariance_violations() == []
    assert check_weak_g_equivalence_surrogate(St).passes


def test_identity_induces_identity_on_hofix():
    C = gl1(make_galois_gring(2, 2, 1))
    F = induced_hofix_map(PseudoEqFunctor.strict(GFunctor(C, C, lambda a: a, lambda f: f)))
    assert all(F.obj(x) == x for x in F.source.objects)


def test_induced_hofix_gl1_f4():
    C = gl1(make_galois_gring(2, 2, 1))
    P = twisted_identity(C, seed=3)
    F = induced_hofix_map(P)
    assert len(F.source.objects) == len(F.target.objects) == 3
    assert F.violations() == []
    assert check_equivalence(F).is_equivalence
    assert len(connected_components(F.source)) == len(connected_components(F.target)) == 1


@pytest.mark.parametrize("seed", range(12))
def test_random_instances(seed):
    P = random_pseudo_instance(seed)
    res = check_instance(P, P.name)
    assert res.passes, res.violations
    assert res.is_equivalence == P.expected_equivalence


def test_random_suite_has_nonstrict_and_equivalence_instances():
    Ps = [random_pseudo_instance(s) for s in range(20)]
    assert any(not validate_pseudo(P).strict for P in Ps)
    assert any(P.expected_equivalence for P in Ps) and any(not P.expected_equivalence for P in Ps)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=1000, max_value=10**6))
def test_strictify_equivariant_property(seed):
    P = random_pseudo_instance(seed, max_tilde=40)
    St = strictify(P)
    assert St.equivariance_violations() == []
    assert St.violations() == []


# skeleton

def test_skeleton_of_skeletal_category_is_identity():
    S = equivariant_skeleton(gl1(make_galois_gring(2, 2, 1)))
    assert S.sk.objects == S.retraction.source.objects
    assert all(S.retraction.mor(f) == f for f in S.retraction.source.morphisms())


@pytest.mark.parametrize("k", [1, 2, 3])
def test_skeleton_of_swapped_pair(k):
    C = swapped_pair(k)
    S = equivariant_skeleton(C)
    assert S.sk.objects == ["x"]
    assert S.sk.num_morphisms() == k
    assert validate_gcategory(S.sk).ok
    rep = S.report()
    assert rep["equivariant"] and rep["equivalence"] and rep["gamma_natural"]


def test_skeleton_rejects_incompatible_gamma():
    # gamma_y o s(gamma_y) = id forces label 0 when labels are Z/3
    C = swapped_pair(3)
    rep = representatives(C)
    good = find_gammas(C, rep)
    assert good["y"].data == 0
    bad = dict(good)
    bad["y"] = Mor("y", "x", 1)
    with pytest.raises(SkeletonError):
        equivariant_skeleton(C, gamma=bad)


@pytest.mark.parametrize("GR", [trivial_gring(make_finite_field(2, 1), cyclic_group(2)),
                                make_galois_gring(2, 2, 1)])
def test_skeleton_of_twisted_model_is_gl_tower(GR):
    T = twisted_free_model(GR, 2)
    assert validate_gcategory(T).ok
    S = equivariant_skeleton(T, gamma=identity_gammas(T))
    rep = S.report()
    assert rep["equivariant"] and rep["equivalence"]
    GL = gl_category(GR, 2, inverse=True)
    assert [n for n, _ in S.sk.objects] == list(GL.objects)
    for g in GR.group:
        for f in S.sk.morphisms():
            assert S.sk.act_mor(g, f).data == GL.act_mor(g, Mor(f.src[0], f.tgt[0], f.data)).data


# monoidal

@pytest.mark.parametrize("k", [1, 2])
def test_twisted_pairing_rectifies(k):
    C = swapped_pair(k)
    P = twisted_pair_pairing(C, "x")
    assert not validate_pseudo(P).strict
    R = rectify_monoidal(P, unit="x", u=lambda g: Mor("x", C.act_obj(g, "x"), 0))
    assert R.passes, R.report


@pytest.mark.parametrize("GR,N", [(make_galois_gring(2, 2, 1), 1),
                                  (trivial_gring(make_finite_field(2, 1), cyclic_group(2)), 2)])
def test_block_sum_rectification(GR, N):
    GL = gl_category(GR, N)
    R = rectify_monoidal(block_sum_pairing(GL), unit=0, u=lambda g: GL.identity(0))
    assert R.passes and R.report["strict_input"] and R.report["pointwise_when_strict"]


# zero objects and pushouts

def test_zero_not_fixed_in_c_but_fixed_in_tilde():
    C = swapped_zero_category()
    assert C.act_obj(1, "z0") == "z1"
    rep = rectify_zero(C)
    assert rep.passes and rep.zero.objects == ("z0", "z1")


def test_zero_of_pointed_sets_is_constant():
    rep = rectify_zero(pointed_sets(2))
    assert rep.passes and rep.zero.objects == (1, 1)


def test_no_zero_object():
    with pytest.raises(ZeroObjectError):
        rectify_zero(swapped_pair(2))


@pytest.mark.parametrize("involution", [False, True])
def test_pointed_set_pushouts(involution):
    C = pointed_sets(3, involution=involution)
    PC = rectify_pushouts(C, injective, require_all=False)
    # a pushout along an injection has |b| + |c| - |a| points; it exists iff that fits
    for (f, g), Q in PC.choice.items():
        assert Q.obj == f.tgt + g.tgt - f.src and is_pushout(C, f, g, Q)
    assert all(f.tgt + g.tgt - f.src > 3 for f, g in PC.missing)
    assert span_orbit_closed(C, PC.choice)
    rep = PC.check_fixed(C.group.whole(), injective)
    assert rep["spans"] > 0 and rep["not_fixed"] == []


def test_transported_pushout_is_a_pushout_in_tilde():
    C = pointed_sets(3, involution=True)
    PC = rectify_pushouts(C, injective, require_all=False)
    T = PC.tilde
    spans = PC.fixed_spans(C.group.whole(), injective)
    assert spans
    from eqktheory.rectify.waldhausen import Pushout
    checked = 0
    for a, b in spans:
        try:
            P, u, v = PC.pushout(a, b)
        except PushoutError:
            continue
        checked += 1
        assert is_pushout(T, a, b, Pushout(P, u, v))
    assert checked > 0


def test_span_without_cocone():
    with pytest.raises(PushoutError):
        rectify_pushouts(no_cocone_category())
    C = no_cocone_category()
    f, g = C.hom(0, 1)[0], C.hom(0, 2)[0]
    assert find_pushout(C, f, g) is None


def test_suite_runtime_budget():
    t = time.time()
    for s in range(10):
        assert check_instance(random_pseudo_instance(s)).passes
    assert time.time() - t < 15
