import itertools
import random

import pytest

from truncs.lattice import boolean_frame, build_frame, chain_frame, unlabeled_posets
from truncs.pointed import (
    FilteredFrame, FilterError, check_filter, check_filtered_morphism, filters, frame_checks,
    free_isolated, functor_D, functor_E, is_regular_filter, pointed_from_kernel, pointed_maps,
    principal_filter, round_trip, standard_representation, two_sub_F,
)

SMALL = [build_frame(P) for n in range(4) for P in unlabeled_posets(n)]


@pytest.mark.parametrize("L", SMALL)
def test_round_trip_every_filter(L):
    for F in filters(L):
        M = two_sub_F(L, F)
        rt = round_trip(M)
        assert rt.pointed_iso and rt.filtered_iso and rt.filter_matches


@pytest.mark.parametrize("L", SMALL)
def test_density_and_regularity_transfer(L):
    for F in filters(L):
        M = two_sub_F(L, F)
        chk = frame_checks(M)
        assert chk.dense == (L.bottom not in F)
        assert chk.regular == (L.is_regular() and is_regular_filter(L, F))


@pytest.mark.parametrize("L", SMALL)
def test_point_isolated_iff_filter_improper(L):
    for F in filters(L):
        assert two_sub_F(L, F).is_isolated() == (L.bottom in F)


def test_filter_validation():
    L = chain_frame(2)
    with pytest.raises(FilterError):
        check_filter(L, [L.order[1]])  # not upward closed


def test_standard_representation_composes_to_nu():
    L = chain_frame(2)
    M = two_sub_F(L, principal_filter(L, L.order[1]))
    tau, sigma = standard_representation(M)
    nu = free_isolated(M).nu
    assert tau.then(sigma).table == nu.table


def test_pointed_maps_preserve_point():
    L = boolean_frame(1)
    M = pointed_from_kernel(L, L.bottom)
    for f in pointed_maps(M, M):
        assert all(M.at(f.table[x]) == M.at(x) for x in M.frame)
