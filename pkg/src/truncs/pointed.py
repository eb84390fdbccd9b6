"""Pointed frames, filtered frames and the equivalence between them."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .lattice import (
    STAR,
    TWO,
    FiniteFrame,
    FrameError,
    FrameMap,
    MapReport,
    check_frame_map,
    element_str,
    frame_map,
    frame_maps,
    frame_to_dot,
    point_kernel,
)


class FilterError(FrameError):
    def __init__(self, law: str, witness: tuple = ()):
        super().__init__(f"filter law '{law}' fails at {[element_str(w) for w in witness]}")
        self.law = law
        self.witness = witness


@dataclass(frozen=True)
class PairCoding:
    """Encodes pairs (eps, a) of 2 x L as subsets of the tagged label set."""

    inner: FiniteFrame

    def encode(self, eps: bool, a) -> frozenset:
        tagged = frozenset(("L", x) for x in a)
        return tagged | {STAR} if eps else tagged

    def decode(self, e) -> tuple[bool, frozenset]:
        return STAR in e, frozenset(x[1] for x in e if x != STAR)


@dataclass(frozen=True, eq=False)
class PointedFrame:
    frame: FiniteFrame
    point: FrameMap
    coding: PairCoding | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.point.source != self.frame or self.point.target != TWO:
            raise FrameError("the designated point must be a map frame -> 2")
        rep = check_frame_map(self.point)
        if not rep.valid:
            raise FrameError(f"designated point is not a frame map ({rep.law})")

    @property
    def kernel(self) -> frozenset:
        return point_kernel(self.point)

    def at(self, a) -> bool:
        return self.point(a) == TWO.top

    def is_isolated(self) -> bool:
        return self.frame.is_complemented(self.kernel)

    def pair(self, e) -> tuple[bool, frozenset]:
        if self.coding is None:
            raise FrameError("frame is not presented as pairs")
        return self.coding.decode(e)

    def element(self, eps: bool, a) -> frozenset:
        if self.coding is None:
            raise FrameError("frame is not presented as pairs")
        e = self.coding.encode(eps, a)
        self.frame.check(e)
        return e


def pointed_from_kernel(L: FiniteFrame, p) -> PointedFrame:
    from .lattice import point_from_kernel

    return PointedFrame(L, point_from_kernel(L, p))


def is_pointed_map(f: FrameMap, M: PointedFrame, N: PointedFrame) -> bool:
    return all(N.point(f(a)) == M.point(a) for a in M.frame)


def pointed_maps(M: PointedFrame, N: PointedFrame) -> Iterator[FrameMap]:
    for f in frame_maps(M.frame, N.frame):
        if is_pointed_map(f, M, N):
            yield f


def product2(L: FiniteFrame) -> PointedFrame:
    """2L = 2 x L pointed by the first projection."""
    code = PairCoding(L)
    frame = FiniteFrame((code.encode(e, a) for e in (False, True) for a in L),
                        name=f"2x{L.name or len(L)}")
    point = frame_map(frame, TWO, lambda x: TWO.top if STAR in x else TWO.bottom)
    return PointedFrame(frame, point, code)


def projection(M: PointedFrame) -> FrameMap:
    """Second projection of a pair-presented pointed frame onto its inner frame."""
    return frame_map(M.frame, M.coding.inner, lambda x: M.pair(x)[1])


def check_filter(L: FiniteFrame, F: Iterable) -> frozenset:
    F = frozenset(F)
    for a in F:
        if a not in L:
            raise FilterError("membership", (a,))
    if not F:
        raise FilterError("nonempty")
    for a in F:
        for b in L:
            if a <= b and b not in F:
                raise FilterError("upward closure", (a, b))
    for a, b in itertools.combinations(F, 2):
        if a & b not in F:
            raise FilterError("meet closure", (a, b))
    return F


def principal_filter(L: FiniteFrame, a) -> frozenset:
    L.check(a)
    return frozenset(b for b in L if a <= b)


def filters(L: FiniteFrame) -> list[frozenset]:
    """Every filter of a finite frame (all are principal)."""
    return [principal_filter(L, a) for a in L]


def filter_generated(L: FiniteFrame, gens: Iterable) -> frozenset:
    gens = list(gens)
    least = L.meet_all(gens)
    return principal_filter(L, least)


def is_regular_filter(L: FiniteFrame, F) -> bool:
    return L.join_all(L.pseudocomplement(b) for b in F) == L.top


@dataclass(frozen=True, eq=False)
class FilteredFrame:
    frame: FiniteFrame
    filter: frozenset

    def __post_init__(self):
        object.__setattr__(self, "filter", check_filter(self.frame, self.filter))

    @property
    def regular(self) -> bool:
        return is_regular_filter(self.frame, self.filter)

    @property
    def improper(self) -> bool:
        return self.frame.bottom in self.filter


def two_sub_F(L: FiniteFrame, F: Iterable) -> PointedFrame:
    """The subframe {(eps, a) : eps = top implies a in F} of 2L."""
    F = check_filter(L, F)
    code = PairCoding(L)
    els = [code.encode(False, a) for a in L] + [code.encode(True, a) for a in L if a in F]
    frame = FiniteFrame(els, name=f"2_F{L.name or len(L)}")
    point = frame_map(frame, TWO, lambda x: TWO.top if STAR in x else TWO.bottom)
    return PointedFrame(frame, point, code)


def functor_D(LF: FilteredFrame) -> PointedFrame:
    return two_sub_F(LF.frame, LF.filter)


def functor_E(M: PointedFrame) -> FilteredFrame:
    p = M.kernel
    L = M.frame.down(p)
    F = frozenset(p & a for a in M.frame if M.at(a))
    return FilteredFrame(L, F)


def unit_pointed(M: PointedFrame) -> FrameMap:
    """M -> D(E(M)), a -> (point(a), p & a)."""
    p = M.kernel
    D = functor_D(functor_E(M))
    return frame_map(M.frame, D.frame, lambda a: D.coding.encode(M.at(a), p & a))


def unit_filtered(LF: FilteredFrame) -> FrameMap:
    """(L, F) -> E(D(L, F)), a -> (bot, a)."""
    D = functor_D(LF)
    E = functor_E(D)
    return frame_map(LF.frame, E.frame, lambda a: D.coding.encode(False, a))


@dataclass(frozen=True)
class RoundTrip:
    pointed_iso: bool
    filtered_iso: bool
    filter_matches: bool


def round_trip(M: PointedFrame) -> RoundTrip:
    """Check that the units at M and at E(M) are isomorphisms of the right kind."""
    u = unit_pointed(M)
    D = functor_D(functor_E(M))
    piso = (check_frame_map(u).valid and u.is_injective() and u.is_surjective()
            and is_pointed_map(u, M, D))
    LF = functor_E(M)
    v = unit_filtered(LF)
    back = functor_E(functor_D(LF))
    fiso = check_frame_map(v).valid and v.is_injective() and v.is_surjective()
    fmatch = frozenset(v(a) for a in LF.filter) == back.filter
    return RoundTrip(piso, fiso, fmatch)


# ---------------------------------------------------------------------------
# filtered morphisms


@dataclass(frozen=True, eq=False)
class FilteredMorphism:
    """(c, f): (L, F) -> (M, K) with f a frame map L -> down(c)."""

    source: FilteredFrame
    target: FilteredFrame
    c: frozenset
    f: FrameMap

    def __call__(self, a) -> frozenset:
        return self.f(a)


@dataclass(frozen=True)
class FilteredReport:
    valid: bool
    reason: str | None = None
    witness: frozenset | None = None


def check_filtered_morphism(m: FilteredMorphism) -> FilteredReport:
    M = m.target.frame
    if m.c not in M:
        return FilteredReport(False, "c not in target frame")
    if m.f.source != m.source.frame or m.f.target != M.down(m.c):
        return FilteredReport(False, "f must map the source frame onto down(c)")
    rep = check_frame_map(m.f)
    if not rep.valid:
        return FilteredReport(False, f"f is not a frame map ({rep.law})")
    for a in m.source.frame:
        if a in m.source.filter and M.arrow(m.c, m.f(a)) not in m.target.filter:
            return FilteredReport(False, "arrow image escapes target filter", a)
    return FilteredReport(True)


def compose_filtered(m1: FilteredMorphism, m2: FilteredMorphism) -> FilteredMorphism:
    """(g(c), g . f) for m1 = (c, f) then m2 = (d, g)."""
    if m1.target.frame != m2.source.frame:
        raise FrameError("composition target of the first morphism must be the second's source")
    gc = m2.f(m1.c)
    N = m2.target.frame
    down = N.down(gc)
    table = {a: m2.f(m1.f(a)) for a in m1.source.frame}
    return FilteredMorphism(m1.source, m2.target, gc, FrameMap(m1.source.frame, down, table))


def identity_filtered(LF: FilteredFrame) -> FilteredMorphism:
    L = LF.frame
    return FilteredMorphism(LF, LF, L.top, frame_map(L, L.down(L.top), lambda a: a))


def full_reflector(LF: FilteredFrame) -> FilteredMorphism:
    """(L, F) -> (L, L), c = top, f = id."""
    L = LF.frame
    return FilteredMorphism(LF, FilteredFrame(L, frozenset(L.elements)), L.top,
                            frame_map(L, L.down(L.top), lambda a: a))


def random_filtered_morphism(LF: FilteredFrame, MK: FilteredFrame, rng: random.Random,
                             require_valid: bool | None = None, tries: int = 200) -> FilteredMorphism | None:
    """A random pair (c, f); optionally searched until it is (in)valid."""
    M = MK.frame
    for _ in range(tries):
        c = rng.choice(M.order)
        maps = list(frame_maps(LF.frame, M.down(c)))
        if not maps:
            continue
        m = FilteredMorphism(LF, MK, c, rng.choice(maps))
        if require_valid is None or check_filtered_morphism(m).valid == require_valid:
            return m
    return None


def D_on_morphism(m: FilteredMorphism) -> FrameMap:
    """2_F L -> 2_K M: (bot, a) -> (bot, f(a)), (top, a) -> (top, c -> f(a))."""
    src, tgt = functor_D(m.source), functor_D(m.target)
    M = m.target.frame

    def act(x):
        eps, a = src.pair(x)
        if eps:
            return tgt.coding.encode(True, M.arrow(m.c, m.f(a)))
        return tgt.coding.encode(False, m.f(a))

    return frame_map(src.frame, tgt.frame, act)


def E_on_morphism(g: FrameMap, M: PointedFrame, N: PointedFrame) -> FilteredMorphism:
    """g restricted to down(p_M), landing in down(g(p_M)) inside down(p_N)."""
    EM, EN = functor_E(M), functor_E(N)
    c = g(M.kernel)
    return FilteredMorphism(EM, EN, c, frame_map(EM.frame, EN.frame.down(c), g))


# ---------------------------------------------------------------------------
# free isolated point frame


@dataclass(frozen=True)
class FreeIsolated:
    target: PointedFrame
    nu: FrameMap


def free_isolated(M: PointedFrame) -> FreeIsolated:
    """nu_M = point x open quotient : M -> 2L with L = down(p_M)."""
    p = M.kernel
    two_l = product2(M.frame.down(p))
    nu = frame_map(M.frame, two_l.frame, lambda a: two_l.coding.encode(M.at(a), a & p))
    return FreeIsolated(two_l, nu)


def standard_representation(M: PointedFrame) -> tuple[FrameMap, FrameMap]:
    """(tau_M, sigma_M): M -> 2_F L -> 2L with nu_M = sigma . tau."""
    D = functor_D(functor_E(M))
    tau = unit_pointed(M)
    two_l = product2(D.coding.inner)
    sigma = frame_map(D.frame, two_l.frame, lambda x: x)
    return tau, sigma


def factorizations(h: FrameMap, M: PointedFrame, N: PointedFrame) -> list[FrameMap]:
    """Pointed maps k : 2L -> N with k . nu_M = h."""
    fi = free_isolated(M)
    return [k for k in pointed_maps(fi.target, N)
            if all(k(fi.nu(a)) == h(a) for a in M.frame)]


# ---------------------------------------------------------------------------
# checks on 2_F L


@dataclass(frozen=True)
class FrameCheckReport:
    dense: bool
    regular: bool
    compact: bool
    filter_proper: bool
    filter_regular: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def frame_checks(M: PointedFrame) -> FrameCheckReport:
    L = M.coding.inner
    pi = projection(M)
    dense = all(x == M.frame.bottom for x in M.frame if pi(x) == L.bottom)
    F_inner = frozenset(M.pair(x)[1] for x in M.frame if M.at(x))
    return FrameCheckReport(
        dense=dense,
        regular=M.frame.is_regular(),
        # every cover of a finite frame has a finite subcover
        compact=True,
        filter_proper=L.bottom not in F_inner,
        filter_regular=is_regular_filter(L, F_inner),
    )


def co_free_lifts(M: PointedFrame, f: FrameMap, L: FiniteFrame) -> list[FrameMap]:
    """Pointed maps k : M -> 2L with pi . k = f."""
    two_l = product2(L)
    pi = projection(two_l)
    return [k for k in pointed_maps(M, two_l) if all(pi(k(a)) == f(a) for a in M.frame)]


def pointed_to_dot(M: PointedFrame, name: str = "pointed", filter_elements: Iterable = ()) -> str:
    deco: dict = {}
    for a in filter_elements:
        deco.setdefault(a, {})["shape"] = "box"
    deco.setdefault(M.kernel, {}).update({"style": "filled", "fillcolor": "lightblue"})
    return frame_to_dot(M.frame, name, deco)


def filtered_to_dot(LF: FilteredFrame, name: str = "filtered") -> str:
    return frame_to_dot(LF.frame, name, {a: {"shape": "box"} for a in LF.filter})


def map_report_str(rep: MapReport) -> str:
    return "valid" if rep.valid else f"invalid: {rep.law} at {[element_str(w) for w in rep.witness]}"
