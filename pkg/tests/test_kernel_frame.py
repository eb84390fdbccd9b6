from fractions import Fraction

import pytest

from truncs.kernel_frame import (
    KernelFrameSizeError, classify_unital, kernel_frame, kernel_frame_to_dot,
    pseudocomplement_matches_polar, spectrum, spectrum_to_dict,
)
from truncs.trunc import EvSeq, FinVec, kernel_closure


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_finvec_kernel_frame_is_powerset(n):
    b = kernel_frame(FinVec([1] * n))
    assert len(b.frame) == 2 ** n and b.frame.is_boolean()


def test_element_kernel_round_trip():
    c = FinVec([1, 2, 3])
    b = kernel_frame(c)
    for e in b.frame:
        assert b.element_of(b.kernel_of(e)) == e
    assert b.kernel_element(c.element(0, 1, 0)) == frozenset({1})


def test_frame_join_is_kernel_join():
    c = EvSeq()
    b = kernel_frame(c, window=3)
    K1, K2 = kernel_closure([c.basis(0)]), kernel_closure([c.basis(2)])
    assert b.element_of(K1 | K2) == b.frame.join(b.element_of(K1), b.element_of(K2))


def test_pseudocomplement_is_polar():
    c = FinVec([1, 1, 2])
    b = kernel_frame(c)
    assert pseudocomplement_matches_polar(b, c.element(1, 0, 2))


def test_finvec_unital_evseq_not():
    rep = classify_unital(FinVec([2, Fraction(1, 2)]))
    assert rep.unital and rep.point_isolated and rep.dark_zero and rep.greatest_truncated
    ev = classify_unital(EvSeq())
    assert not ev.unital and not ev.point_isolated and ev.window_artifact



def test_evseq_spectrum_filter_proper():
    b = kernel_frame(EvSeq(), window=4)
    M = spectrum(b)
    assert b.frame.bottom not in b.filter
    assert not M.is_isolated()
    assert len(M.frame) == len(b.frame) + len(b.filter)


def test_size_guard():
    with pytest.raises(KernelFrameSizeError):
        kernel_frame(FinVec([1] * 8), max_dim=6)


def test_exports():
    b = kernel_frame(FinVec([1, 1]))
    assert "digraph" in kernel_frame_to_dot(b)
    d = spectrum_to_dict(b)
    assert d["isolated"] and d["size"] == 8 and not d["filter_proper"]
