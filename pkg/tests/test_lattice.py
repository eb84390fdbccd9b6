import itertools

import pytest
from hypothesis import given, settings, strategies as st

from truncs.lattice import (
    FiniteFrame, FrameError, Poset, PosetError, boolean_frame, build_frame, chain_frame,
    check_frame_map, frame_maps, frame_to_dot, is_prime, points, unlabeled_posets,
)

FRAMES = [build_frame(P) for n in range(4) for P in unlabeled_posets(n)]


def test_unlabeled_poset_counts():
    assert [len(unlabeled_posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_frame_sizes():
    assert len(boolean_frame(3)) == 8
    assert len(chain_frame(4)) == 5
    assert len(build_frame(Poset.antichain("ab"))) == 4


def test_not_closed_family_rejected():
    with pytest.raises(FrameError):
        FiniteFrame([set(), {1}, {2}])


def test_cyclic_covers_rejected():
    with pytest.raises(PosetError):
        Poset.from_covers("ab", [("a", "b"), ("b", "a")])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FRAMES), st.data())
def test_heyting_adjunction(L, data):
    a, b, c = (data.draw(st.sampled_from(L.order)) for _ in range(3))
    assert L.leq(L.meet(c, a), b) == L.leq(c, L.arrow(a, b))


@pytest.mark.parametrize("L", FRAMES)
def test_pseudocomplement_is_arrow_to_bottom(L):
    for a in L:
        assert L.pseudocomplement(a) == L.arrow(a, L.bottom)
        assert L.meet(a, L.pseudocomplement(a)) == L.bottom


@pytest.mark.parametrize("L", FRAMES)
def test_regular_iff_boolean(L):
    assert L.is_regular() == L.is_boolean() == all(L.is_complemented(a) for a in L)


def test_chain_is_not_regular():
    L = chain_frame(2)
    assert not L.is_regular()
    mid = L.order[1]
    assert not L.rather_below(mid, mid)


@pytest.mark.parametrize("L", FRAMES)
def test_points_have_prime_kernels(L):
    for p in points(L):
        assert is_prime(L, p.kernel)


def test_frame_map_enumeration_valid():
    L, M = chain_frame(2), boolean_frame(2)
    maps = list(frame_maps(L, M))
    assert maps and all(check_frame_map(f).valid for f in maps)
    assert len({tuple(sorted(f.table.items(), key=repr)) for f in maps}) == len(maps)


def test_dot_export_lists_every_element():
    L = boolean_frame(2)
    dot = frame_to_dot(L, "b2")
    assert dot.startswith('digraph "b2"') and dot.count("label=") >= len(L)
