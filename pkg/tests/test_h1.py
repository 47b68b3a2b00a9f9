import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from eqktheory._util import BudgetError
from eqktheory.algebra import (GroupAction, cyclic_group, make_finite_field, make_galois_gring,
                               symmetric_group, trivial_gring)
from eqktheory.h1 import (conjugate_action, crossed_category, crossed_matches_hofix,
                          crossed_matches_tilde_fixed, crossed_violations, enumerate_crossed_homs,
                          gl_action, h1_set, iota_equivalence_check, transport_action,
                          verify_hilbert90)
from eqktheory.h1.criteria import iota_battery
from eqktheory.fincat import connected_components
import oracles

C2 = cyclic_group(2)
BATTERY = iota_battery()
BATTERY_IDS = [name for name, _ in BATTERY]


def frob(p, d, n):
    return gl_action(make_galois_gring(p, d, 1), n)


def triv(p, n, G=C2):
    return gl_action(trivial_gring(make_finite_field(p, 1), G), n)


# Hilbert 90

@pytest.mark.parametrize("args,cocycles", [((2, 2, 1, 1), 3), ((2, 2, 1, 2), 30),
                                           ((3, 2, 1, 1), 4), ((2, 3, 1, 1), 7)])
def test_hilbert90_counts(args, cocycles):
    r = verify_hilbert90(*args)
    assert r.holds and r.class_count == 1
    assert r.cocycle_count == cocycles
    assert r.orbit_size == cocycles and r.orbit_stabilizer_ok


def test_gl2_f4_orbit_stabilizer():
    r = verify_hilbert90(2, 2, 1, 2)
    assert (r.gl_order, r.fixed_order, r.orbit_size) == (180, 6, 30)


@pytest.mark.parametrize("p,d,n", [(2, 2, 1), (2, 2, 2), (3, 2, 1)])
def test_cocycles_match_matrix_oracle(p, d, n):
    GR = make_galois_gring(p, d, 1)
    A = gl_action(GR, n)
    ours = {tuple(tuple(map(tuple, A.Pi.matrices[v].tolist())) for v in f.values)
            for f in enumerate_crossed_homs(A)}
    assert ours == set(oracles.cocycles(GR, GR.group.whole(), n))
    assert h1_set(A).class_count == len(oracles.cocycle_classes(GR, GR.group.whole(), n))


# crossed homomorphisms

def test_trivial_action_gives_homomorphisms():
    for A in (triv(3, 1), triv(2, 2), GroupAction.trivial(C2, symmetric_group(3))):
        homs = {f.values for f in enumerate_crossed_homs(A)}
        assert homs == {tuple(phi) for phi in A.G.homomorphisms_to(A.Pi)}


@pytest.mark.parametrize("name,A", BATTERY, ids=BATTERY_IDS)
def test_every_crossed_hom_satisfies_the_inverse_identity(name, A):
    for H in A.G.subgroups():
        for f in enumerate_crossed_homs(A, H):
            assert crossed_violations(A, f) == []


def test_crossed_category_trivial_abelian():
    A = triv(3, 1)
    X = crossed_category(A)
    for a in X.objects:
        for b in X.objects:
            assert bool(X.hom(a, b)) == (a == b)
        assert len(X.hom(a, a)) == A.Pi.order


def test_crossed_category_f4_is_connected():
    X = crossed_category(frob(2, 2, 1))
    assert len(X.objects) == 3
    assert len(connected_components(X)) == 1
    assert X.violations() == []


@pytest.mark.parametrize("name,A", BATTERY, ids=BATTERY_IDS)
def test_crossed_category_is_hofix(name, A):
    for H in A.G.subgroups():
        assert crossed_matches_hofix(A, H).passes


@pytest.mark.parametrize("name,A", BATTERY, ids=BATTERY_IDS)
def test_crossed_category_is_fixed_tilde(name, A):
    assert crossed_matches_tilde_fixed(A).passes


# H^1

def test_h1_examples():
    assert h1_set(frob(2, 2, 1)).class_count == 1
    assert h1_set(triv(3, 1)).class_count == 2
    assert h1_set(frob(2, 2, 2), H=(0,)).class_count == 1


def test_h1_representatives_are_least():
    hs = h1_set(triv(3, 2))
    for cls in hs.classes:
        assert cls[0].values == min(f.values for f in cls)
    assert sum(hs.orbit_sizes) == hs.cocycle_count


def test_h1_matches_components_of_crossed_category():
    for name, A in BATTERY:
        if A.Pi.order <= 60:
            assert len(connected_components(crossed_category(A))) == h1_set(A).class_count, name


@settings(max_examples=25, deadline=None)
@given(st.integers(0, len(BATTERY) - 1), st.randoms(use_true_random=False))
def test_h1_invariant_under_relabelling(k, rnd):
    _, A = BATTERY[k]
    perm = list(range(A.Pi.order))
    rnd.shuffle(perm)
    B = transport_action(A, perm)
    for H in A.G.subgroups():
        assert h1_set(B, H).class_count == h1_set(A, H).class_count
        assert h1_set(B, H).cocycle_count == h1_set(A, H).cocycle_count


@settings(max_examples=25, deadline=None)
@given(st.integers(0, len(BATTERY) - 1), st.data())
def test_h1_invariant_under_inner_conjugate_action(k, data):
    _, A = BATTERY[k]
    Pi = A.Pi
    x = data.draw(st.integers(0, Pi.order - 1))
    phi = [Pi.prod(x, a, Pi.inv(x)) for a in Pi]
    B = conjugate_action(A, phi)
    assert h1_set(B).class_count == h1_set(A).class_count


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        enumerate_crossed_homs(frob(2, 2, 2), budget=10)


# the iota criterion

def test_battery_is_large_and_mixed():
    assert len(BATTERY) >= 10
    reports = [iota_equivalence_check(A, name=n) for n, A in BATTERY]
    trivial = [lv for r in reports for lv in r.levels if lv.h1_trivial]
    nontrivial = [lv for r in reports for lv in r.levels if not lv.h1_trivial]
    assert trivial and nontrivial


@pytest.mark.parametrize("name,A", BATTERY, ids=BATTERY_IDS)
def test_iota_criterion(name, A):
    r = iota_equivalence_check(A, name=name)
    assert r.agrees, r.counterexamples


def test_iota_f3_trivial_fails_essential_surjectivity():
    r = iota_equivalence_check(triv(3, 1))
    top = r.levels[-1]
    assert top.H == (0, 1) and not top.essentially_surjective and top.h1_classes == 2


def test_iota_trivial_pi():
    r = iota_equivalence_check(GroupAction.trivial(C2, cyclic_group(1)))
    assert all(lv.equivalence for lv in r.levels)
