"""Finite-set growth lab on unipotent matrix groups."""

from fractions import Fraction

import pytest

from nilbch.algebra import AlgebraContext
from nilbch.errors import SizeCapError
from nilbch.growth import (
    check_commutator_containment,
    check_sum_containment,
    compute_B_chain,
    find_cover,
    generate_ball,
    inverse_set,
    log_set,
    power_set,
    powers_up_to,
    product_set,
    scale_set,
    sumset,
    ut_generators,
)
from nilbch.identities import containment_certificate
from nilbch.matrices import (
    mat_identity,
    mat_mul,
    nil_add,
    nil_scale,
    nil_zero,
)


def heisenberg_ball(radius: int):
    return generate_ball(3, ut_generators(3), radius)


def test_ut_generators_symmetric():
    gens = ut_generators(4)
    assert len(gens) == 6
    s = set(gens)
    from nilbch.matrices import mat_inverse

    assert all(mat_inverse(g) in s for g in gens)


def test_ball_sizes_heisenberg():
    assert len(heisenberg_ball(0)) == 1
    assert len(heisenberg_ball(1)) == 5
    assert len(heisenberg_ball(2)) == 17


def test_ball_contains_identity_and_is_symmetric():
    a = heisenberg_ball(1)
    assert mat_identity(3) in a
    from nilbch.matrices import mat_inverse

    assert all(mat_inverse(g) in a for g in a)
    assert a.symmetric


def test_product_set_is_square():
    a = heisenberg_ball(1)
    aa = product_set(a, a)
    assert len(aa) == 17
    direct = {mat_mul(g, h) for g in a for h in a}
    assert aa.elements == direct


def test_powers_monotone_and_match_literal_products():
    a = heisenberg_ball(1)
    powers = powers_up_to(a, 5)
    assert [len(p) for p in powers] == [5, 17, 53, 135, 299]
    literal = a
    for k in range(1, 5):
        literal = product_set(literal, a)
        assert powers[k].elements == literal.elements
    assert power_set(a, 3).elements == powers[2].elements


def test_inverse_set_of_symmetric_ball_is_itself():
    a = heisenberg_ball(1)
    assert inverse_set(a).elements == a.elements


def test_log_set_cardinality_preserved():
    for radius in (1, 2):
        a = heisenberg_ball(radius)
        assert len(log_set(a)) == len(a)


def test_sumset_and_scale():
    a = heisenberg_ball(1)
    la = log_set(a)
    ss = sumset(la, la)
    assert len(ss) == 13
    assert Fraction(len(ss), len(la)) == Fraction(13, 5)
    doubled = scale_set(la, 2)
    assert doubled == {nil_scale(x, 2) for x in la}
    assert sumset(la, {nil_zero(3)}) == la


def test_find_cover_is_valid_cover():
    a = heisenberg_ball(1)
    report = find_cover(a)
    assert report.size_a == 5
    assert report.size_aa == 17
    assert report.k == 4
    assert len(report.translates) == report.k
    covered = set()
    for t in report.translates:
        covered |= {mat_mul(t, g) for g in a}
    assert covered >= product_set(a, a).elements


def test_sum_containment_exhaustive_heisenberg():
    a = heisenberg_ball(1)
    report = check_sum_containment(a, 1, 1, 2)
    assert report.failures == 0
    assert report.checked_pairs == 25
    assert report.m == 2
    assert report.word_length == 12
    assert report.bound_power == 12
    assert 0 < report.max_witness_power <= report.bound_power


def test_sum_containment_sampled_subset():
    a = heisenberg_ball(1)
    full = check_sum_containment(a, 1, 1, 2)
    sampled = check_sum_containment(a, 1, 1, 2, mode="sampled", sample_size=10, seed=3)
    assert sampled.checked_pairs == 10
    assert sampled.failures == 0
    again = check_sum_containment(a, 1, 1, 2, mode="sampled", sample_size=10, seed=3)
    assert sampled == again
    assert full.bound_power == sampled.bound_power


def test_sum_containment_thread_invariance():
    a = heisenberg_ball(1)
    assert check_sum_containment(a, 1, 1, 2, threads=4) == check_sum_containment(
        a, 1, 1, 2
    )


def test_sum_containment_dimension_guard():
    with pytest.raises(ValueError):
        check_sum_containment(heisenberg_ball(1), 1, 1, 3)


def test_b_chain_heisenberg():
    a = heisenberg_ball(1)
    chain = compute_B_chain(a, 2)
    assert [len(b) for b in chain] == [5, 3, 1]
    assert chain[2] == frozenset({nil_zero(3)})
    # B_1 sits in the center: only the corner entry survives
    for x in chain[1]:
        assert x.rows[0][1] == 0 and x.rows[1][2] == 0


def test_b_chain_dim_four_terminates():
    a = generate_ball(4, ut_generators(4), 1)
    assert len(a) == 7
    chain = compute_B_chain(a, 3)
    assert chain[3] == frozenset({nil_zero(4)})


def test_commutator_containment_first_level():
    a = heisenberg_ball(1)
    cert = containment_certificate(1, AlgebraContext(2, 2))
    report = check_commutator_containment(a, 1, cert)
    assert report.failures == 0
    assert report.checked == report.set_size == 3
    # every witness reconstructs its target exactly
    for target, parts in report.witnesses:
        total = nil_zero(3)
        for q, part in zip(cert.rationals, parts):
            total = nil_add(total, nil_scale(part, 1))
        # parts are already scaled by q_i inside the term sets
        assert total == target


def test_commutator_containment_trivial_level():
    a = heisenberg_ball(1)
    cert = containment_certificate(2, AlgebraContext(2, 2))
    report = check_commutator_containment(a, 2, cert)
    assert report.failures == 0


def test_commutator_containment_thread_invariance():
    a = heisenberg_ball(1)
    cert = containment_certificate(1, AlgebraContext(2, 2))
    r1 = check_commutator_containment(a, 1, cert)
    r4 = check_commutator_containment(a, 1, cert, threads=4)
    assert r1 == r4


def test_size_cap_trips():
    with pytest.raises(SizeCapError) as err:
        generate_ball(3, ut_generators(3), 4, cap=30)
    assert err.value.cap == 30
    a = heisenberg_ball(1)
    with pytest.raises(SizeCapError):
        product_set(a, a, cap=10)
