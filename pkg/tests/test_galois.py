import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqktheory.algebra import cyclic_group, integers_mod, make_finite_field
from eqktheory.algebra import matrices as mx
from eqktheory.galois import (GaloisError, RingExtension, assembly_map_k0, change_of_basis,
                              check_galois, descent_check, descent_witness, diagonal_extension,
                              galois_field_extension, k0_galois_check, theta_matrix_iso,
                              trivial_extension)
from oracles import gamma_image

F2, F3 = make_finite_field(2, 1), make_finite_field(3, 1)
F4_F2 = galois_field_extension(2, 2, 1)
F9_F3 = galois_field_extension(3, 2, 1)
F8_F2 = galois_field_extension(2, 3, 1)
DIAG2 = diagonal_extension(F2)
DIAG3 = diagonal_extension(F3)
GALOIS = [F4_F2, F9_F3, F8_F2, DIAG2, DIAG3]
GALOIS_IDS = [e.name for e in GALOIS]


# the Galois criterion

@pytest.mark.parametrize("ext", GALOIS, ids=GALOIS_IDS)
def test_galois_instances(ext):
    rep = check_galois(ext)
    assert rep.is_galois and rep.order_count
    assert ext.ring.size == ext.base.size ** ext.group.order
    assert len(gamma_image(ext)) == ext.ring.size ** ext.group.order


def test_f4_over_f2_sizes():
    rep = check_galois(F4_F2)
    assert (rep.tensor_size, rep.product_size) == (16, 16)


@pytest.mark.parametrize("R", [F2, F3, make_finite_field(2, 2)], ids=["F2", "F3", "F4"])
def test_trivial_action_is_not_galois(R):
    ext = trivial_extension(R, cyclic_group(2))
    rep = check_galois(ext)
    assert not rep.is_galois and not rep.surjective
    assert rep.counterexample["kind"] == "not surjective"
    assert len(gamma_image(ext)) < R.size ** 2


def test_trivial_group_is_galois():
    assert check_galois(trivial_extension(F3, cyclic_group(1))).is_galois


def test_non_field_base_is_rejected():
    R = integers_mod(4)
    with pytest.raises(GaloisError):
        check_galois(trivial_extension(R, cyclic_group(1)))


def test_inclusion_must_be_fixed():
    # F2 -> F4 through the identity map of F4 is not an extension of F2
    bad = RingExtension(F4_F2.ring, F4_F2.total, np.arange(4))
    assert bad.violations()
    with pytest.raises(GaloisError):
        check_galois(bad)


# theta

@pytest.mark.parametrize("ext,size", [(F4_F2, 16), (F9_F3, 81), (DIAG2, 16)],
                         ids=["F4/F2", "F9/F3", "F2xF2/F2"])
def test_theta_is_a_matrix_ring_isomorphism(ext, size):
    th = theta_matrix_iso(ext)
    assert th.bijective and th.ring_map
    assert th.source_size == th.target_size == size
    R = ext.base
    k = len(th.basis)
    assert {int(mx.encode(R, M)) for M in th.matrices} == set(range(R.size ** (k * k)))


def test_theta_requires_galois():
    with pytest.raises(GaloisError):
        theta_matrix_iso(trivial_extension(F2, cyclic_group(2)))


def _bases(ext):
    S = ext.ring
    k = len(ext.basis())
    out = []
    for cand in itertools.permutations([x for x in S if x != S.zero], k):
        try:
            ext.coordinate_table(list(cand))
        except GaloisError:
            continue
        out.append(list(cand))
    return out


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([F4_F2, F9_F3, DIAG2]), st.data())
def test_theta_is_basis_independent(ext, data):
    R = ext.base
    old = ext.basis()
    new = data.draw(st.sampled_from(_bases(ext)))
    a, b = theta_matrix_iso(ext), theta_matrix_iso(ext, basis=new)
    assert b.bijective and b.ring_map
    P = change_of_basis(ext, old, new)
    Pi = mx.inverse(R, P)
    for Ma, Mb in zip(a.matrices, b.matrices):
        assert np.array_equal(Mb, mx.matmul(R, mx.matmul(R, Pi, Ma), P))


# descent

@pytest.mark.parametrize("ext,N", [(F4_F2, 3), (F9_F3, 3), (DIAG2, 2)],
                         ids=["F4/F2", "F9/F3", "F2xF2/F2"])
def test_descent(ext, N):
    rep = descent_check(ext, N)
    assert rep.passes
    assert [lv.semilinear_classes for lv in rep.levels] == [1] * N
    # descent implies the K_0 statement
    assert k0_galois_check(ext).passes


def test_descent_cocycle_counts():
    rep = descent_check(F4_F2, 3)
    assert [lv.cocycles for lv in rep.levels] == [3, 30, 1080]
    rep = descent_check(F9_F3, 2)
    assert [lv.cocycles for lv in rep.levels] == [4, 120]


def test_descent_witness_is_an_isomorphism():
    import random
    from eqktheory.algebra.semilinear import enumerate_semilinear_structures
    GR = F9_F3.total
    S = GR.ring
    cl = enumerate_semilinear_structures(GR, GR.group.whole(), 2)
    rng = random.Random(1)
    for A in cl.cocycles[:20]:
        B = descent_witness(GR, A, rng)
        assert B is not None and mx.is_invertible(S, B)
        for g in GR.group:
            assert np.array_equal(mx.matmul(S, A[g], mx.act(GR, g, B)), B)


def test_descent_rejects_non_galois():
    with pytest.raises(GaloisError):
        descent_check(trivial_extension(F2, cyclic_group(2)), 1)


@pytest.mark.parametrize("ext", [F4_F2, F9_F3, DIAG2], ids=["F4/F2", "F9/F3", "F2xF2/F2"])
def test_k0_galois(ext):
    rep = k0_galois_check(ext)
    assert rep.passes and rep.fixed_group == "Z" and rep.generator_ranks == [1]


def test_k0_galois_rejects_trivial_action():
    with pytest.raises(GaloisError):
        k0_galois_check(trivial_extension(F2, cyclic_group(2)))


# assembly

def test_assembly_f9_f3():
    rep = assembly_map_k0(F9_F3, 2)
    assert rep.source_labels == ["trivial", "sign"]
    assert rep.matrix.tolist() == [[1, 1]]
    assert rep.pseudo_ok and rep.total_dimension


def test_assembly_trivial_group_is_identity():
    rep = assembly_map_k0(galois_field_extension(3, 1, 1), 2)
    assert rep.matrix.tolist() == [[1]]


def test_assembly_needs_invertible_order():
    with pytest.raises(GaloisError):
        assembly_map_k0(F4_F2, 1)


def test_assembly_total_dimension_c3():
    # F_64 over F_4 with C3: |C3| is invertible in F4, and F4 has the cube roots of unity
    ext = galois_field_extension(2, 6, 2)
    rep = assembly_map_k0(ext, 1, validate=False)
    assert rep.source_ranks == [1, 1, 1]
    assert rep.matrix.tolist() == [[1, 1, 1]]
