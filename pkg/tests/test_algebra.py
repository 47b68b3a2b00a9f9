import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqktheory._util import BudgetError
from eqktheory.algebra import (GRing, GroupError, RingError, ReducibleModulusError,
                               check_order_invertible, cyclic_group, enumerate_cocycles,
                               enumerate_semilinear_structures, group_ring, integers_mod,
                               make_finite_field, make_galois_gring, preset_group, swap_gring,
                               symmetric_group, theta_hom, trivial_gring, twisted_group_ring)
from eqktheory.algebra import matrices as mx
from eqktheory.algebra.groups import FiniteGroup, GroupAction
from eqktheory.algebra.semilinear import SemilinearModule

import oracles


# groups

@pytest.mark.parametrize("name,order", [("C1", 1), ("C2", 2), ("C3", 3), ("C4", 4), ("S3", 6), ("V4", 4)])
def test_presets(name, order):
    G = preset_group(name)
    assert G.order == order


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


def test_subgroups_are_exactly_closed_subsets():
    import itertools
    G = symmetric_group(3)
    brute = [tuple(s) for k in range(1, 7) for s in itertools.combinations(range(6), k)
             if G.is_subgroup(s)]
    assert sorted(G.subgroups()) == sorted(brute)
    assert len(brute) == 6


def test_cosets_and_double_cosets():
    G = symmetric_group(3)
    H = G.subgroups()[1]
    assert len(G.left_cosets(G.whole(), H)) == 3
    assert sum(len(d) for d in G.double_cosets(H, H)) == 6


def test_group_action_validation():
    G, Pi = cyclic_group(2), cyclic_group(3)
    inv = GroupAction.from_generators(G, Pi, [[0, 2, 1]])
    assert inv.act(1, 1) == 2
    with pytest.raises(GroupError):
        GroupAction(G, Pi, [[0, 1, 2], [0, 1, 1]])


# fields

def test_prime_field():
    F = make_finite_field(2, 1, [1])
    assert F.size == 2 and F.add(1, 1) == 0


@pytest.mark.parametrize("p,d,mod", [(2, 2, [1, 1, 1]), (3, 2, [1, 0, 1]), (2, 3, [1, 1, 0, 1]), (5, 2, [2, 0, 1])])
def test_field_tables_match_polynomial_oracle(p, d, mod):
    F = make_finite_field(p, d, mod)
    digits = lambda a: [(a // p**i) % p for i in range(d)]
    for a in F:
        for b in F:
            expected = oracles.poly_mul_mod(digits(a), digits(b), mod, p)
            assert digits(F.mul(a, b)) == expected


def test_named_products():
    F4 = make_finite_field(2, 2, [1, 1, 1])
    x = 2
    assert F4.labels[F4.mul(x, x)] == "x+1"
    F9 = make_finite_field(3, 2, [1, 0, 1])
    assert F9.mul(3, 3) == 2


def test_reducible_modulus_has_witness():
    with pytest.raises(ReducibleModulusError) as err:
        make_finite_field(2, 2, [1, 0, 1])
    assert err.value.factor == (1, 1)


def test_default_modulus_is_smallest_irreducible():
    assert make_finite_field(2, 2).field.modulus == (1, 1, 1)
    assert make_finite_field(3, 2).field.modulus == (1, 0, 1)
    assert make_finite_field(2, 3).field.modulus == (1, 1, 0, 1)


def test_non_prime_rejected():
    with pytest.raises(RingError):
        make_finite_field(4, 1)


def test_every_nonzero_invertible():
    F = make_finite_field(3, 2)
    assert all(F.mul(a, F.inverse(a)) == F.one for a in range(1, F.size))


# G-rings

@pytest.mark.parametrize("p,dt,ds,fixed", [(2, 2, 1, 2), (3, 2, 1, 3), (2, 1, 1, 2), (2, 3, 1, 2), (2, 4, 2, 4)])
def test_galois_grings(p, dt, ds, fixed):
    GR = make_galois_gring(p, dt, ds)
    assert GR.group.order == dt // ds
    assert len(GR.fixed_subring()) == fixed


def test_frobenius_is_squaring():
    GR = make_galois_gring(2, 2, 1)
    F = GR.ring
    assert all(GR.act(1, a) == F.mul(a, a) for a in F)
    assert GR.fixed_subring() == (0, 1)


def test_non_divisor_rejected():
    with pytest.raises(RingError):
        make_galois_gring(2, 3, 2)


def test_gring_convention_enforced():
    # S3 acting on Z/2 x ... cannot be faked: use a non-homomorphic assignment
    F = make_finite_field(2, 2)
    frob = [0, 1, 3, 2]
    with pytest.raises(RingError):
        GRing(F, cyclic_group(3), [[0, 1, 2, 3], frob, frob])


def test_action_composition_exhaustive():
    GR = make_galois_gring(2, 4, 1)
    G, T = GR.group, GR.act_table
    for g in G:
        for h in G:
            assert (T[G.mul(g, h)] == T[g][T[h]]).all()


# twisted group rings and theta

def test_trivial_action_gives_group_ring():
    GR = trivial_gring(make_finite_field(3, 1), cyclic_group(2))
    T, P = twisted_group_ring(GR), group_ring(GR)
    assert (T.ring.mul_table == P.ring.mul_table).all()
    assert T.ring.is_commutative


def test_twisted_products():
    GR = make_galois_gring(2, 2, 1)
    T = twisted_group_ring(GR)
    x, sigma = 2, 1
    xs = T.basis(x, sigma)
    assert T.mul(xs, xs) == T.basis(1, 0)
    # sigma x = x^sigma sigma
    assert T.mul(T.basis(1, sigma), T.basis(x, 0)) == T.basis(GR.act(sigma, x), sigma)
    assert not T.ring.is_commutative
    assert T.size == 16


@pytest.mark.parametrize("GR,size", [(make_galois_gring(2, 2, 1), 16), (make_galois_gring(3, 2, 1), 81),
                                     (swap_gring(make_finite_field(2, 1)), 16)])
def test_theta_bijective_for_galois(GR, size):
    th = theta_hom(GR)
    assert th.additive and th.multiplicative
    assert len(th.endomorphisms) == size
    assert th.is_bijective and th.counterexample() is None


def test_theta_collapses_trivial_action():
    th = theta_hom(trivial_gring(make_finite_field(2, 1), cyclic_group(2)))
    assert th.additive and th.multiplicative
    assert not th.is_injective
    assert th.counterexample()["kind"] == "not injective"


# matrices

def test_gl_orders():
    F4 = make_finite_field(2, 2)
    assert len(mx.general_linear(F4, 2)) == mx.gl_order(F4, 2) == 180
    F3 = make_finite_field(3, 1)
    assert len(mx.general_linear(F3, 2)) == len(oracles.gl(F3, 2)) == 48


@pytest.mark.parametrize("R,n", [(make_finite_field(2, 1), 2), (make_finite_field(2, 1), 3),
                                 (make_finite_field(3, 1), 2), (make_finite_field(2, 2), 2),
                                 (swap_gring(make_finite_field(2, 1)).ring, 2)])
def test_gl_generators_generate(R, n):
    assert mx.generated_subgroup_size(R, mx.gl_generators(R, n)) == len(mx.general_linear(R, n))


def test_block_sum_is_equivariant_homomorphism():
    GR = make_galois_gring(2, 2, 1)
    R = GR.ring
    A, B = mx.general_linear(R, 1), mx.general_linear(R, 2)
    for a1 in A:
        for a2 in A:
            for b1 in B[::17]:
                lhs = mx.block_sum(R, mx.matmul(R, a1, a2), mx.matmul(R, b1, b1))
                rhs = mx.matmul(R, mx.block_sum(R, a1, b1), mx.block_sum(R, a2, b1))
                assert (lhs == rhs).all()
                assert (mx.act(GR, 1, mx.block_sum(R, a1, b1))
                        == mx.block_sum(R, mx.act(GR, 1, a1), mx.act(GR, 1, b1))).all()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=9, max_size=9), st.lists(st.integers(0, 8), min_size=9, max_size=9))
def test_det_multiplicative_and_inverse(a, b):
    F9 = make_finite_field(3, 2)
    A, B = np.array(a).reshape(3, 3), np.array(b).reshape(3, 3)
    assert mx.det(F9, mx.matmul(F9, A, B)) == F9.mul(int(mx.det(F9, A)), int(mx.det(F9, B)))
    if mx.is_invertible(F9, A):
        assert (mx.matmul(F9, A, mx.inverse(F9, A)) == mx.identity(F9, 3)).all()
    assert tuple(map(tuple, mx.matmul(F9, A, B))) == oracles.mat_mul(F9, tuple(map(tuple, A)), tuple(map(tuple, B)))


def test_encoding_is_lexicographic():
    F = make_finite_field(3, 1)
    mats = mx.all_matrices(F, 2)
    codes = mx.encode(F, mats)
    assert (codes == np.arange(81)).all()
    assert (mx.decode(F, codes, 2) == mats).all()


def test_tower_as_group_is_equivariant():
    GR = make_galois_gring(2, 2, 1)
    Pi, action = mx.MatrixGroupTower(GR).as_finite_group(1)
    assert Pi.order == 3 and action.act(1, 1) == 2


# semilinear structures

@pytest.mark.parametrize("GR,n", [
    (make_galois_gring(2, 2, 1), 1), (make_galois_gring(2, 2, 1), 2), (make_galois_gring(3, 2, 1), 1),
    (make_galois_gring(2, 3, 1), 1), (trivial_gring(make_finite_field(3, 1), cyclic_group(2)), 1),
    (trivial_gring(make_finite_field(3, 1), cyclic_group(2)), 2),
    (trivial_gring(make_finite_field(2, 1), cyclic_group(2)), 2),
    (trivial_gring(make_finite_field(2, 1), cyclic_group(3)), 2),
    (swap_gring(make_finite_field(2, 1)), 1),
])
def test_cocycles_and_classes_match_oracle(GR, n):
    H = GR.group.whole()
    got = enumerate_semilinear_structures(GR, H, n)
    expected = oracles.cocycle_classes(GR, H, n)
    as_tuples = [tuple(tuple(map(tuple, a)) for a in c) for c in got.cocycles]
    assert sorted(as_tuples) == sorted(c for cls in expected for c in cls)
    got_classes = sorted(sorted(t for t, l in zip(as_tuples, got.labels) if l == k)
                         for k in range(got.num_classes))
    assert got_classes == sorted(expected)
    reps = [tuple(tuple(map(tuple, a)) for a in r.array()) for r in got.representatives()]
    assert reps == [cls[0] for cls in sorted(expected)]


@pytest.mark.parametrize("GR,n,count", [
    (make_galois_gring(2, 2, 1), 3, 1080), (make_galois_gring(3, 2, 1), 2, 120),
    (make_galois_gring(2, 3, 1), 2, 588),
])
def test_larger_counts_orbit_stabilizer(GR, n, count):
    # a single orbit with stabilizer GL_n of the fixed field
    res = enumerate_semilinear_structures(GR, GR.group.whole(), n)
    fixed = make_finite_field(GR.ring.field.p, 1)
    assert res.count == count == mx.gl_order(GR.ring, n) // mx.gl_order(fixed, n)
    assert res.num_classes == 1


def test_examples_of_class_counts():
    F3 = trivial_gring(make_finite_field(3, 1), cyclic_group(2))
    assert enumerate_semilinear_structures(F3, (0, 1), 1).num_classes == 2
    assert enumerate_semilinear_structures(make_galois_gring(2, 2, 1), (0, 1), 1).num_classes == 1
    assert enumerate_semilinear_structures(F3, (0,), 3).num_classes == 1


@pytest.mark.parametrize("GR", [make_galois_gring(2, 2, 1), trivial_gring(make_finite_field(3, 1), symmetric_group(3)),
                                swap_gring(make_finite_field(3, 1))])
def test_rank_zero_one_class(GR):
    for H in GR.group.subgroups():
        assert enumerate_semilinear_structures(GR, H, 0).num_classes == 1


@pytest.mark.parametrize("G,p,n", [(cyclic_group(2), 3, 2), (cyclic_group(3), 2, 2), (symmetric_group(3), 2, 2),
                                   (preset_group("V4"), 3, 1), (cyclic_group(4), 3, 1)])
def test_trivial_action_classes_are_rep_classes(G, p, n):
    GR = trivial_gring(make_finite_field(p, 1), G)
    H = G.whole()
    res = enumerate_semilinear_structures(GR, H, n)
    assert res.num_classes == oracles.hom_conjugacy_classes(G, H, GR.ring, n)


def test_modules_satisfy_semilinearity():
    GR = make_galois_gring(3, 2, 1)
    res = enumerate_semilinear_structures(GR, (0, 1), 2)
    for i in range(0, res.count, 7):
        m = SemilinearModule.from_array(GR, (0, 1), res.cocycles[i])
        assert m.violations() == []
    bad = SemilinearModule.from_array(GR, (0, 1), [np.eye(2, dtype=int), np.eye(2, dtype=int) * 2 + np.eye(2, dtype=int) * 3])
    assert bad.violations()


def test_class_lookup():
    GR = trivial_gring(make_finite_field(3, 1), cyclic_group(2))
    res = enumerate_semilinear_structures(GR, (0, 1), 2)
    for i in range(res.count):
        assert res.class_of(res.cocycles[i]) == res.labels[i]


def test_budget_is_enforced():
    GR = make_galois_gring(3, 2, 1)
    with pytest.raises(BudgetError):
        enumerate_cocycles(GR, (0, 1), 3, budget=1000)


def test_order_invertible():
    assert check_order_invertible(trivial_gring(make_finite_field(3, 1), cyclic_group(2)), (0, 1))
    assert not check_order_invertible(trivial_gring(make_finite_field(2, 1), cyclic_group(2)), (0, 1))
    assert check_order_invertible(trivial_gring(make_finite_field(2, 2), cyclic_group(3)), (0, 1, 2))
    assert not check_order_invertible(trivial_gring(integers_mod(4), cyclic_group(2)), (0, 1))
