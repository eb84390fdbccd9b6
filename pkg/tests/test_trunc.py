import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from truncs.trunc import (
    CarrierMismatch, DomainError, EvSeq, FinCof, FinVec, bright, brute_force_closure,
    check_axioms, dark, diminish, in_k0, in_k1, is_truncated, kernel_closure, polar,
    random_element, random_finvec, truncate,
)

rationals = st.fractions(min_value=0, max_value=5, max_denominator=12)
units = st.lists(st.fractions(min_value=Q(1, 12), max_value=4, max_denominator=12),
                 min_size=1, max_size=4)


@st.composite
def finvec_elements(draw):
    c = FinVec(draw(units))
    return c, c.element([draw(rationals) for _ in range(c.dim)])


def test_finvec_truncation_is_meet_with_unit():
    c = FinVec([1, 2])
    assert truncate(c.element(3, 1)) == c.element(1, 1)


def test_evseq_truncation_caps_at_one():
    c = EvSeq()
    a = c.element(3, Q(1, 2), 2)
    assert truncate(a) == c.element(1, Q(1, 2), 1)


def test_truncation_rejects_negative():
    with pytest.raises(DomainError):
        truncate(FinVec([1]).element(-1))


def test_carriers_do_not_mix():
    with pytest.raises(CarrierMismatch):
        FinVec([1]).element(1) + FinVec([2]).element(1)


@settings(max_examples=100, deadline=None)
@given(finvec_elements(), rationals)
def test_diminution_formula(ca, r):
    c, a = ca
    d = diminish(a, r)
    for i in range(c.dim):
        level = c.unit[i] * r
        assert d[i] == max(a[i] - level, 0)


@settings(max_examples=100, deadline=None)
@given(finvec_elements())
def test_truncate_idempotent_and_below(ca):
    c, a = ca
    t = truncate(a)
    assert is_truncated(t) and truncate(t) == t and t <= a


@pytest.mark.parametrize("carrier", [FinVec([1]), FinVec([Q(1, 3), 2, 5]), EvSeq()])
def test_axioms_hold(carrier):
    rep = check_axioms(carrier, samples=100, seed=3)
    assert rep.passed, rep.results


@pytest.mark.parametrize("mode,axiom", [("zero", "T2"), ("identity", "T3")])
def test_mutations_caught(mode, axiom):
    rep = check_axioms(FinVec([1, 2]).mutated(mode), samples=20)
    assert not rep.passed and not rep.results[axiom].passed
    assert rep.results[axiom].witness


def test_closure_matches_brute_force():
    rng = random.Random(4)
    for _ in range(50):
        c = random_finvec(rng, 3)
        B = [random_element(c, rng, nonneg=False) for _ in range(2)]
        assert kernel_closure(B).support == brute_force_closure(B, c).support


def test_evseq_closure_of_finite_support_is_finite():
    c = EvSeq()
    K = kernel_closure([c.element(0, 2)])
    assert c.basis(1) in K and c.basis(0) not in K


def test_polar_is_disjoint_complement():
    c = FinVec([1, 1, 1])
    P = polar([c.element(1, 0, 0)])
    assert P.support == frozenset({1, 2})


def test_bright_and_dark_levels():
    c = FinVec([1, 1])
    a = c.element(Q(1, 2), 1)
    assert bright(a, Q(1, 4)).support == frozenset({0, 1})
    assert bright(a, Q(1, 2)).support == frozenset({1})
    # a sits below level 1 only on coordinate 0
    assert dark(a, 1).support == frozenset({0})
    with pytest.raises(DomainError):
        bright(a, -1)


def test_k0_k1_disjoint_on_proper_kernel():
    c = FinVec([1, 1])
    K = kernel_closure([c.element(1, 0)])
    a = c.element(0, 1)
    b = c.element(1, 0)
    assert in_k0(K, b) and not in_k1(K, b)
    assert in_k1(K, a) and not in_k0(K, a)


def test_fincof_complement():
    S = FinCof([1, 2])
    assert S.complement().cofinite and S.complement().complement() == S
