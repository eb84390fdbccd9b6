import random
from fractions import Fraction as Q

import pytest

from truncs.kernel_frame import kernel_frame
from truncs.lattice import FrameError, boolean_frame, chain_frame
from truncs.representation import (
    MorphismError, RealFrameMap, TruncMorphism, atom_oracle, constant, hat, hat_morphism,
    in_R0, induced_g, nonfunctorial_demo, random_real_map, represent, underline, verify_hat,
    verify_kappa, w_morphism_factorizations, w_reflect,
)
from truncs.trunc import EvSeq, FinVec, truncate


def test_step_form_validation():
    L = chain_frame(2)
    bottom, mid, top = L.order
    RealFrameMap(L, ((0, mid), (1, bottom)))
    with pytest.raises(FrameError):
        RealFrameMap(L, ((1, mid), (0, bottom)))
    with pytest.raises(FrameError):
        RealFrameMap(L, ((0, mid),))


def test_evaluation_on_intervals():
    L = boolean_frame(1)
    f = constant(L, 2)
    assert f("(1,3)") == L.top
    assert f("(3,4)") == L.bottom
    assert f.coz() == L.top and f.con() == L.top
    assert constant(L, 1).con() == L.bottom


def test_atomwise_arithmetic():
    L = boolean_frame(2)
    rng = random.Random(2)
    for _ in range(30):
        f, g = random_real_map(L, rng), random_real_map(L, rng)
        x, y = f.to_atoms(), g.to_atoms()
        assert (f + g).to_atoms() == {p: x[p] + y[p] for p in x}
        assert (f & g).to_atoms() == {p: min(x[p], y[p]) for p in x}
        assert RealFrameMap.from_atoms(L, x) == f


def test_underline_matches_atom_oracle():
    c = FinVec([2, Q(1, 3), 1])
    b = kernel_frame(c)
    a = c.element(1, Q(1, 2), 0)
    assert underline(b, a, check=True).to_atoms() == atom_oracle(b, a)


@pytest.mark.parametrize("carrier", [FinVec([1, 3]), EvSeq()])
def test_kappa_and_hat_preserve_structure(carrier):
    assert verify_kappa(carrier, samples=100, seed=1).passed
    assert verify_hat(carrier, samples=50, seed=1, window=6).passed


def test_hat_lands_in_r0():
    c = FinVec([1, 2])
    rep = represent(c)
    a = c.element(3, Q(1, 2))
    assert in_R0(hat(rep, a), rep.spectrum)
    assert hat(rep, truncate(a)).agrees(hat(rep, a) & constant(rep.spectrum.frame, 1))


def test_non_lattice_theta_rejected():
    A, B = FinVec([1, 1]), FinVec([1])
    rb = represent(B)
    f = hat(rb, B.element(1))
    th = TruncMorphism(A, rb.spectrum, {0: f, 1: f})
    with pytest.raises(MorphismError) as e:
        th.validate()
    assert "^" in e.value.identity


def test_demo_example():
    d = nonfunctorial_demo()
    assert d.passed and d.frame_maps == 1 and d.left != d.right


def test_induced_g_projection():
    A, B = FinVec([1, 2]), FinVec([1])
    ra, rb = represent(A), represent(B)
    th = hat_morphism(ra, rb, lambda a: B.element(a[1] / 2))
    th.validate()
    ind = induced_g(ra, th)
    assert ind.passed and ind.unique


def test_reflection_of_unital_trunc_is_iso():
    refl = w_reflect(FinVec([1, 2]))
    assert refl.unital and refl.b0_in_image


def test_reflection_of_evseq_adjoins_unit():
    c = EvSeq()
    refl = w_reflect(c, window=3)
    assert refl.unital and refl.b0_is_top and not refl.b0_in_image
    rng = random.Random(0)
    assert all(w_morphism_factorizations(refl, c, 3, rng).ok for _ in range(10))


def test_con_is_atoms_off_one():
    L = boolean_frame(2)
    p, q = L.atoms()
    f = RealFrameMap.from_atoms(L, {p: 3, q: 1})
    assert f.truncate_at_1().to_atoms() == {p: 1, q: 1}
    assert f.con() == p and f.con_from_rays() == L.bottom
    rng = random.Random(7)
    for _ in range(100):
        g = random_real_map(L, rng).pos().truncate_at_1()
        assert g.con() == g.con_from_rays()
