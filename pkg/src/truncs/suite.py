"""Seeded property suites keyed by lemma anchors, and the report assembler.

Every check is a module-level function ``fn(rng, out, cfg)`` run for a fixed
number of instances (or once, for exhaustive checks that count their own
cases).  Seeds are derived from the base seed and the anchor text, so a check
sees the same instances whatever else runs and in whatever order; the report
carries no timings, which makes reruns byte-identical.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable

from .kernel_frame import (
    ClassificationError,
    classify_unital,
    kernel_frame,
    pseudocomplement_matches_polar,
    spectrum,
)
from .lattice import (
    FiniteFrame,
    boolean_frame,
    build_frame,
    check_frame_map,
    element_str,
    points,
    unlabeled_posets,
)
from .pointed import (
    FilteredFrame,
    check_filtered_morphism,
    compose_filtered,
    filters,
    free_isolated,
    is_regular_filter,
    pointed_from_kernel,
    product2,
    random_filtered_morphism,
    round_trip,
    standard_representation,
    two_sub_F,
)
from .representation import (
    RealFrameMap,
    atom_oracle,
    constant,
    hat_product,
    in_R0,
    nonfunctorial_demo,
    random_real_map,
    represent,
    underline,
    unit_table,
    verify_hat,
    verify_kappa,
    w_morphism_factorizations,
    w_reflect,
)
from .trunc import (
    EvSeq,
    FinCof,
    FinVec,
    TruncationKernel,
    TruncElement,
    bright,
    brute_force_closure,
    check_axioms,
    dark,
    dark_evidence,
    diminish,
    hull_support,
    in_k0,
    in_k1,
    is_kernel_support,
    is_truncated,
    join_kernels,
    kernel_closure,
    polar,
    qstr,
    random_element,
    random_finvec,
    random_kernel,
    random_rational,
    random_truncated,
    truncate,
    zero_kernel,
)

DEFAULT_INSTANCES = 200
# EvSeq window for the isomorphism checks: random elements have prefixes of length <= 6
ISO_WINDOW = 6


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    instances: int = DEFAULT_INSTANCES
    window: int = 4
    max_dim: int = 4
    mutate: str | None = None
    jobs: int = 1

    def to_dict(self) -> dict:
        return {"seed": self.seed, "instances": self.instances, "window": self.window,
                "max_dim": self.max_dim, "mutate": self.mutate}


@dataclass
class Outcome:
    checked: int = 0
    failures: int = 0
    witness: str | None = None
    stats: dict = field(default_factory=dict)

    def fail(self, *witness) -> None:
        self.failures += 1
        if self.witness is None:
            self.witness = fmt(*witness)

    def check(self, ok: bool, *witness) -> None:
        if not ok:
            self.fail(*witness)

    def most(self, key: str, value) -> None:
        self.stats[key] = max(self.stats.get(key, value), value)

    def count(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures,
                "witness": self.witness, "stats": dict(sorted(self.stats.items()))}


def fmt(*objs) -> str:
    def one(o):
        if isinstance(o, frozenset):
            return element_str(o)
        if isinstance(o, Q):
            return qstr(o)
        if isinstance(o, (tuple, list)):
            return "(" + ", ".join(one(x) for x in o) + ")"
        return repr(o)
    return "; ".join(one(o) for o in objs)


@dataclass(frozen=True)
class Check:
    anchor: str
    module: str
    fn: Callable
    # per-instance checks run ``instances`` times; exhaustive ones run once
    exhaustive: bool = False
    min_instances: int = 0


REGISTRY: list[Check] = []


def check(anchor: str, module: str, exhaustive: bool = False, min_instances: int = 0):
    def deco(fn):
        REGISTRY.append(Check(anchor, module, fn, exhaustive, min_instances))
        return fn
    return deco


def seed_for(seed: int, anchor: str) -> int:
    return seed * 1_000_003 + zlib.crc32(anchor.encode())


def run_check(c: Check, cfg: SuiteConfig) -> Outcome:
    rng = random.Random(seed_for(cfg.seed, c.anchor))
    out = Outcome()
    if c.exhaustive:
        c.fn(rng, out, cfg)
    else:
        for _ in range(max(cfg.instances, c.min_instances)):
            out.checked += 1
            c.fn(rng, out, cfg)
    return out


# ---------------------------------------------------------------------------
# shared generators


@functools.lru_cache(maxsize=None)
def carrier_pool(seed: int, max_dim: int, size: int = 12) -> tuple:
    """Seeded FinVec carriers shared by the per-instance checks.

    Instances vary the elements; drawing units from a fixed pool lets the
    kernel frames and ladder results be reused.
    """
    rng = random.Random(seed_for(seed, "carrier pool"))
    pool = [random_finvec(rng, n, min_dim=n) for n in range(1, max_dim + 1)]
    pool += [random_finvec(rng, max_dim) for _ in range(size - len(pool))]
    return tuple(pool)


def _finvec(rng: random.Random, cfg: SuiteConfig) -> FinVec:
    return rng.choice(carrier_pool(cfg.seed, cfg.max_dim))


def _carrier(rng: random.Random, cfg: SuiteConfig):
    return EvSeq() if rng.random() < 0.4 else _finvec(rng, cfg)


def _rq(rng, lo=0, hi=3) -> Q:
    return random_rational(rng, lo, hi)


def _restrict(a: TruncElement, S) -> TruncElement:
    c = a.carrier
    return c.element([x if i in S else 0 for i, x in enumerate(a.coords)])


def _rb(b: TruncationKernel, a: TruncationKernel) -> bool:
    """b rather below a in K A: b* v a = top."""
    return (b.pseudocomplement() | a).is_full()


def _nonzero(c, rng) -> TruncElement:
    while True:
        a = random_element(c, rng)
        if not a.is_zero():
            return a


@functools.lru_cache(maxsize=None)
def _bundle(carrier, window: int):
    return kernel_frame(carrier, window=window)


def _frames(max_n: int) -> list[FiniteFrame]:
    return [build_frame(P) for n in range(max_n + 1) for P in unlabeled_posets(n)]


# ---------------------------------------------------------------------------
# lattice-core


@check("c∧a ≤ b ⇔ c ≤ (a→b)", "lattice-core", exhaustive=True)
def heyting_adjunction(rng, out, cfg):
    for L in _frames(5):
        arrows = {(a, b): L.arrow(a, b) for a in L for b in L}
        for a, b, c in itertools.product(L.order, repeat=3):
            out.checked += 1
            out.check(((c & a) <= b) == (c <= arrows[a, b]), a, b, c)
    out.stats["frames"] = len(_frames(5))


@check("Suppose that b₁ ≻ b₂", "lattice-core")
def rather_below_pseudocomplements(rng, out, cfg):
    L = rng.choice(_frames(4))
    pairs = [(b1, b2) for b1 in L for b2 in L if L.rather_below(b2, b1)]
    (b1, b2), (c1, c2) = rng.choice(pairs), rng.choice(pairs)
    pc = L.pseudocomplement
    lo, mid, hi = pc(b1) | pc(c1), pc(b1 & c1), pc(b2) | pc(c2)
    out.check(lo <= mid <= hi, b1, b2, c1, c2)


@check("b ∨ c = ⊤ and b ∧ c = d", "lattice-core", exhaustive=True)
def complement_arrow(rng, out, cfg):
    for L in _frames(4):
        for b, c in itertools.product(L.order, repeat=2):
            if b | c == L.top:
                out.checked += 1
                out.check(b == L.arrow(c, b & c), b, c)


@check("The conclusion follows from the fact", "lattice-core", exhaustive=True)
def nested_arrow(rng, out, cfg):
    for L in _frames(4):
        for a, b, c in itertools.product(L.order, repeat=3):
            if a <= b <= c:
                out.checked += 1
                out.check(L.arrow(c, L.arrow(b, a)) <= L.arrow(b, a), a, b, c)


@check("regular iff every element is complemented", "lattice-core", exhaustive=True)
def regular_iff_boolean(rng, out, cfg):
    for L in _frames(5):
        out.checked += 1
        scan = all(L.is_complemented(a) for a in L)
        out.check(L.is_regular() == scan, L.order)


@check("the largest element of M sent", "lattice-core", exhaustive=True)
def point_kernels_prime(rng, out, cfg):
    for L in _frames(4):
        for pt in points(L):
            out.checked += 1
            p = pt.kernel
            prime = all(a <= p or b <= p for a in L for b in L if (a & b) <= p)
            out.check(prime and p != L.top, p)
            out.check(all((pt.map(a) == frozenset()) == (a <= p) for a in L), p)


# ---------------------------------------------------------------------------
# pointed-filtered


def _small_filtered(max_n: int):
    for L in _frames(max_n):
        for F in filters(L):
            yield L, F


@check("constitute a categorical equivalence", "pointed-filtered", exhaustive=True)
def de_equivalence(rng, out, cfg):
    for L, F in _small_filtered(3):
        M = two_sub_F(L, F)
        out.checked += 1
        rt = round_trip(M)
        out.check(rt.pointed_iso and rt.filtered_iso and rt.filter_matches, L.order, F)


@check("regular iff F is regular", "pointed-filtered", exhaustive=True)
def regularity_transfer(rng, out, cfg):
    for n in range(4):
        L = boolean_frame(n)
        for F in filters(L):
            out.checked += 1
            M = two_sub_F(L, F)
            improper = L.bottom in F
            out.check(M.frame.is_regular() == is_regular_filter(L, F) == improper, n, F)


@check("dense iff F is a proper filter", "pointed-filtered", exhaustive=True)
def density(rng, out, cfg):
    from .pointed import frame_checks

    for L, F in _small_filtered(3):
        out.checked += 1
        rep = frame_checks(two_sub_F(L, F))
        out.check(rep.dense == (L.bottom not in F) and rep.compact, L.order, F)


@check("is a filtered frame morphism", "pointed-filtered")
def filtered_composition(rng, out, cfg):
    frames = _frames(2)
    stages = []
    for _ in range(3):
        L = rng.choice(frames)
        stages.append(FilteredFrame(L, rng.choice(filters(L))))
    m1 = random_filtered_morphism(stages[0], stages[1], rng, require_valid=True)
    m2 = random_filtered_morphism(stages[1], stages[2], rng, require_valid=True)
    if m1 is None or m2 is None:
        out.count("no_valid_morphism")
        return
    out.count("composed")
    out.check(check_filtered_morphism(compose_filtered(m1, m2)).valid, m1.c, m2.c)


@check("free isolated point frame over the pointed", "pointed-filtered", exhaustive=True)
def standard_representation_factors(rng, out, cfg):
    for L, F in _small_filtered(3):
        M = two_sub_F(L, F)
        out.checked += 1
        fi = free_isolated(M)
        tau, sigma = standard_representation(M)
        inner = fi.target.coding
        ok = all(inner.decode(fi.nu(a)) == inner.decode(sigma(tau(a))) for a in M.frame)
        out.check(ok and check_frame_map(fi.nu).valid and fi.nu.is_injective(), L.order, F)


@check("the co-free pointed frame over", "pointed-filtered", exhaustive=True)
def co_free(rng, out, cfg):
    from .lattice import frame_maps
    from .pointed import co_free_lifts

    targets = _frames(2)
    for L in _frames(3):
        for pt in points(L):
            M = pointed_from_kernel(L, pt.kernel)
            for T in targets:
                for f in frame_maps(L, T):
                    out.checked += 1
                    out.check(len(co_free_lifts(M, f, T)) == 1, L.order, pt.kernel)


# ---------------------------------------------------------------------------
# trunc-algebra


@check("check_axioms", "trunc-algebra", exhaustive=True)
def axioms_finvec(rng, out, cfg):
    for _ in range(1000):
        c = random_finvec(rng, cfg.max_dim)
        if cfg.mutate:
            c = c.mutated(cfg.mutate)
        rep = check_axioms(c, samples=4, seed=rng.randrange(2 ** 31))
        out.checked += 1
        for name, r in rep.results.items():
            if not r.passed:
                out.count(f"{name}_failures")
                out.fail(name, repr(c), *(r.witness or ()))
    for _ in range(1):
        c = EvSeq()
        if cfg.mutate:
            c = c.mutated(cfg.mutate)
        rep = check_axioms(c, samples=500, seed=rng.randrange(2 ** 31))
        out.checked += 500
        for name, r in rep.results.items():
            if not r.passed:
                out.count(f"{name}_failures")
                out.fail(name, repr(c), *(r.witness or ()))


@check("ladder-closed supports are exactly the K_S", "trunc-algebra", exhaustive=True)
def kernel_oracle(rng, out, cfg):
    for n in range(1, 4):
        for _ in range(3):
            c = random_finvec(rng, n, min_dim=n)
            every = [frozenset(S) for r in range(n + 1) for S in itertools.combinations(range(n), r)]
            ladder_closed = {S for S in every if is_kernel_support(c, S)}
            brute_closed = {S for S in every if brute_kernel_closed(c, S)}
            out.checked += len(every)
            out.check(ladder_closed == brute_closed == set(every), repr(c),
                      sorted(map(sorted, set(every) - ladder_closed)))


def brute_kernel_closed(c: FinVec, S: frozenset) -> bool:
    """K_S is absorbing and archimedean, decided on a grid of elements.

    Independent of the ladder code.  Absorbing: trunc(a) in K_S forces a in
    K_S.  Archimedean: (n a - b)^+ in K_S for every n forces a in K_S; past
    N = max ceil(b_i / a_i) + 1 the support of (n a - b)^+ is that of a, so
    checking n <= N decides "every n" exactly.
    """
    import math

    grid_vals = [Q(0), Q(1, 2), Q(2)]
    scale = [c.scale_of(i) for i in range(c.dim)]
    grid = [tuple(v * scale[i] for i, v in enumerate(vals))
            for vals in itertools.product(grid_vals, repeat=c.dim)]
    outside = [i for i in range(c.dim) if i not in S]
    inside = lambda v: all(v[i] <= 0 for i in outside)
    for a in grid:
        if inside(a):
            continue
        if inside(truncate(c.element(list(a))).coords):
            return False
        for b in grid:
            N = max((math.ceil(b[i] / a[i]) + 1 for i in range(c.dim) if a[i] > 0), default=1)
            if all(inside([n * x - y for x, y in zip(a, b)]) for n in range(1, N + 1)):
                return False
    return True


@check("lies in a truncation kernel", "trunc-algebra")
def lies_in_kernel(rng, out, cfg):
    c = _carrier(rng, cfg)
    K = random_kernel(c, rng)
    b = random_element(c, rng)
    if rng.random() < 0.5:
        b = _restrict(b, K.support)
    inside = b in K
    out.count("inside" if inside else "outside")
    for n in range(1, 7):
        out.check((truncate(b / n) * n in K) == inside, b, K, n)


@check("false without the hypothesis of convexity", "trunc-algebra")
def convex_meet(rng, out, cfg):
    c = _carrier(rng, cfg)
    B1 = [random_element(c, rng, nonneg=False) for _ in range(rng.randint(1, 3))]
    B2 = [random_element(c, rng, nonneg=False) for _ in range(rng.randint(1, 3))]
    S1, S2 = hull_support(c, B1), hull_support(c, B2)
    close = lambda S: kernel_closure(kernels=[TruncationKernel(c, S)], carrier=c)
    out.check(close(S1) & close(S2) == close(S1 & S2), B1, B2)
    # the lines through x and x + e_0 meet in 0, yet both generate everything
    if isinstance(c, FinVec) and c.dim >= 2:
        x = c.element([c.scale_of(i) * (1 + rng.randint(0, 3)) for i in range(c.dim)])
        y = x + c.basis(0)
        if not (kernel_closure([x]) & kernel_closure([y])).is_zero():
            out.count("non_convex_counterexamples")


@check("because A/K must satisfy (𝔗3)", "trunc-algebra")
def multiples_generate(rng, out, cfg):
    c = _carrier(rng, cfg)
    a = _nonzero(c, rng)
    target = kernel_closure([a])
    out.check(bright(a, 0) == target, a, "a |> 0")
    for N in range(1, 65):
        if kernel_closure([diminish(a * n, 1) for n in range(1, N + 1)]) == target:
            out.most("stabilizing_n", N)
            return
    out.fail(a, "no stabilizing n up to 64")


@check("express a⊖(r+1/n) as", "trunc-algebra")
def bright_right_continuous(rng, out, cfg):
    c = _carrier(rng, cfg)
    a = random_element(c, rng)
    r = _rq(rng)
    target = bright(a, r)
    acc = zero_kernel(c)
    for n in range(1, 400):
        acc = acc | bright(a, r + Q(1, n))
        if acc == target:
            out.most("stabilizing_n", n)
            break
    else:
        out.fail(a, r, "join over s > r did not reach a |> r")
    if r > 0:
        s = r * _rq(rng, 0, 1)
        if 0 < s < r:
            out.check(diminish(diminish(a, s), r - s) == diminish(a, r), a, s, r)


@check("is a frame, and the frame operations", "trunc-algebra")
def kernel_frame_operations(rng, out, cfg):
    c = _carrier(rng, cfg)
    K1, K2 = kernel_closure([random_element(c, rng)]), random_kernel(c, rng)
    K2 = kernel_closure(kernels=[K2], carrier=c)
    meet = K1 & K2
    out.check(is_kernel_support(c, meet.support), K1, K2, "meet")
    join = join_kernels(K1, K2)
    out.check(is_kernel_support(c, join.support) and K1 <= join and K2 <= join, K1, K2, "join")
    if isinstance(c, FinVec):
        gens = [c.basis(i) for i in range(c.dim) if i in K1.support or i in K2.support]
        out.check(join == brute_force_closure(gens, c), K1, K2, "join vs brute force")
    a1, a2 = random_element(c, rng), random_element(c, rng)
    k = lambda a: kernel_closure([a])
    out.check(k(a1) & k(a2) == k(a1 & a2), a1, a2, "[a1] meet [a2]")
    out.check(k(a1) | k(a2) == k(a1 | a2), a1, a2, "[a1] join [a2]")
    B = [random_element(c, rng, nonneg=False) for _ in range(rng.randint(1, 3))]
    out.check(kernel_closure(B).pseudocomplement() == polar(B), B, "K* = K-perp")
    out.check(polar([a1]).pseudocomplement() == polar([truncate(a1)]).pseudocomplement(),
              a1, "a-perp-perp = trunc(a)-perp-perp")


@check("for s<r in ℚ⁺", "trunc-algebra")
def bright_rather_below(rng, out, cfg):
    c = _carrier(rng, cfg)
    a = random_element(c, rng)
    s, r = sorted((_rq(rng), _rq(rng)))
    if s == r:
        r = s + Q(1, rng.randint(1, 12))
    out.check(_rb(bright(a, r), bright(a, s)), a, s, r)


@check("Suppose aᵢ ∈ Ā", "trunc-algebra")
def bright_dark_calculus(rng, out, cfg):
    c = _carrier(rng, cfg)
    a1, a2 = random_truncated(c, rng), random_truncated(c, rng)
    s = _rq(rng, 0, 1)
    r = s + (0 if rng.random() < 0.15 else Q(rng.randint(1, 12), 12))
    # (1)
    out.check(bright(a1, r) | bright(a2, r) == bright(a1 | a2, r), a1, a2, r, "(1) join")
    out.check(bright(a1, r) & bright(a2, r) == bright(a1 & a2, r), a1, a2, r, "(1) meet")
    # (2)
    if r > 0:
        out.check(dark(a1, r) | dark(a2, r) == dark(a1 & a2, r), a1, a2, r, "(2) join")
        out.check(dark(a1, r) & dark(a2, r) == dark(a1 | a2, r), a1, a2, r, "(2) meet")
    a = a1
    # (4), first half for s <= r
    out.check((dark(a, s) & bright(a, r)).is_zero(), a, s, r, "(4) meet")
    if s < r:
        out.count("strict")
        out.check(_rb(bright(a, r), bright(a, s)), a, s, r, "(3)")
        out.check(_rb(bright(a, s).pseudocomplement(), bright(a, r).pseudocomplement()), a, s, r, "(3*)")
        out.check((dark(a, r) | bright(a, s)).is_full(), a, s, r, "(4) join")
        out.check(_rb(dark(a, s), dark(a, r)), a, s, r, "(5)")
        out.check(_rb(dark(a, r).pseudocomplement(), dark(a, s).pseudocomplement()), a, s, r, "(5*)")


def _room_below_level(a: TruncElement, rng) -> TruncElement:
    """A truncated b with a + b truncated (coordinatewise below the level)."""
    c = a.carrier
    n = c.dim if isinstance(c, FinVec) else len(a.coords) + rng.randint(0, 2)
    out = []
    for i in range(n):
        room = c.scale_of(i) - a[i]
        out.append(Q(0) if rng.random() < 0.3 else room * _rq(rng, 0, 1))
    return c.element(out)


@check("implies b ∈ a◀1", "trunc-algebra")
def sum_in_dark(rng, out, cfg):
    c = _carrier(rng, cfg)
    a = random_truncated(c, rng)
    b = _room_below_level(a, rng)
    out.check(is_truncated(b) and is_truncated(a + b), a, b, "construction")
    out.check(b in dark(a, 1), a, b)


@check("By replacing b by a∧b", "trunc-algebra")
def bright_join_dark(rng, out, cfg):
    c = _carrier(rng, cfg)
    a, b = random_truncated(c, rng), random_truncated(c, rng)
    if rng.random() < 0.3:
        b = a & b
    out.check(bright(b, 0) | dark(a, 1) == dark((a - b).pos(), 1), a, b)


@check("Since any nonzero multiple of a generator", "trunc-algebra")
def truncated_diminution(rng, out, cfg):
    c = _carrier(rng, cfg)
    a = random_element(c, rng)
    r = _rq(rng, 0, 1)
    if r == 1:
        r = Q(0)
    ta, ar = truncate(a), diminish(a, r)
    out.check(bright(ta, r) == bright(a, r) == kernel_closure([truncate(ar)]), a, r)
    out.check(diminish(ta, r) == truncate(ar / (1 - r)) * (1 - r), a, r, "rearranged identity")


@check("Suppose K ∈ K A", "trunc-algebra")
def one_k_absorbs(rng, out, cfg):
    c = _carrier(rng, cfg)
    K = random_kernel(c, rng)
    if isinstance(c, EvSeq) and not K.support.cofinite:
        K = TruncationKernel(c, K.support | FinCof(range(6), cofinite=False).complement())
    K = kernel_closure(kernels=[K], carrier=c)
    outside = c.complement(K.support)
    if isinstance(c, FinVec):
        top_off = c.element([c.scale_of(i) if i in outside else 0 for i in range(c.dim)])
    else:
        top_off = c.indicator(sorted(outside.items))
    a = random_truncated(c, rng) | top_off
    b = _restrict(random_truncated(c, rng), K.support)
    out.check(in_k1(K, a) and in_k0(K, b), a, b, K, "construction")
    out.check(in_k1(K, (a - b).pos()), a, b, K)
    # 0K is the truncated part of K and is disjoint from 1K when K is proper
    out.check(in_k0(K, b) == (b in K), b, K, "0K")
    if not K.is_full():
        out.check(not in_k0(K, a), a, K, "disjoint")


# ---------------------------------------------------------------------------
# kernel-frame


@check("K* = K^⊥ in the computed frame", "kernel-frame")
def frame_pseudocomplement(rng, out, cfg):
    c = _carrier(rng, cfg)
    bundle = _bundle(c, cfg.window)
    a = _restrict_window(random_element(c, rng), cfg.window)
    out.check(pseudocomplement_matches_polar(bundle, a), a)


def _restrict_window(a: TruncElement, window: int) -> TruncElement:
    if isinstance(a.carrier, EvSeq):
        return a.carrier.element(list(a.coords[:window]))
    return a


@check("frame operations agree with kernel operations", "kernel-frame")
def frame_ops_agree(rng, out, cfg):
    c = _carrier(rng, cfg)
    bundle = _bundle(c, cfg.window)
    L = bundle.frame
    x, y = rng.choice(L.order), rng.choice(L.order)
    K1, K2 = bundle.kernel_of(x), bundle.kernel_of(y)
    out.check(bundle.element_of(K1 & K2) == L.meet(x, y), x, y, "meet")
    out.check(bundle.element_of(K1 | K2) == L.join(x, y), x, y, "join")
    out.check(bundle.element_of(K1.pseudocomplement()) == L.pseudocomplement(x), x, "pseudocomplement")


@check("the designated point of MA is isolated", "kernel-frame")
def unital_classification(rng, out, cfg):
    c = _carrier(rng, cfg)
    try:
        rep = classify_unital(c, window=cfg.window, samples=10, seed=rng.randrange(2 ** 31))
    except ClassificationError as e:
        out.fail(repr(c), str(e))
        return
    want = isinstance(c, FinVec)
    out.check(rep.unital == want, repr(c))
    if want:
        out.check(rep.witness == c.unit_element(), repr(c), "witness")


@check("kernel_frame(FinVec) is Boolean with 2^n elements", "kernel-frame", exhaustive=True)
def kernel_frame_sizes(rng, out, cfg):
    for n in range(1, cfg.max_dim + 1):
        for _ in range(3):
            c = random_finvec(rng, n, min_dim=n)
            b = kernel_frame(c)
            M = spectrum(b)
            out.checked += 1
            out.check(len(b.frame) == 2 ** n and b.frame.is_boolean() and M.is_isolated()
                      and len(M.frame) == 2 ** (n + 1), repr(c))
    b = kernel_frame(EvSeq(), window=cfg.window)
    M = spectrum(b)
    out.checked += 1
    out.check(b.frame.bottom not in b.filter and not M.is_isolated() and not M.frame.is_regular(),
              "EvSeq spectrum")


# ---------------------------------------------------------------------------
# representation


@check("is a trunc isomorphism", "representation", exhaustive=True)
def kappa_iso(rng, out, cfg):
    for c in (random_finvec(rng, cfg.max_dim, min_dim=cfg.max_dim), EvSeq()):
        # the window covers every prefix the element generator produces
        rep = verify_kappa(c, samples=1000, seed=rng.randrange(2 ** 31), window=ISO_WINDOW,
                           bundle=_bundle(c, ISO_WINDOW))
        for name, t in rep.identities.items():
            out.checked += t.checked
            if not t.passed:
                out.fail(repr(c), name, *(t.witness or ()))


@check("extends to a unique truncation isomorphism", "representation", exhaustive=True)
def hat_iso(rng, out, cfg):
    for c in (random_finvec(rng, 3, min_dim=2), EvSeq()):
        rep = verify_hat(c, samples=200, seed=rng.randrange(2 ** 31), window=ISO_WINDOW)
        for name, t in rep.identities.items():
            out.checked += t.checked
            if not t.passed:
                out.fail(repr(c), name, *(t.witness or ()))
    c = random_finvec(rng, 3)
    rp = represent(c)
    table = unit_table(rp, c.unit_element())
    out.checked += len(table)
    out.check(all(ok for _, ok in table.values()), table)


def _coz_join(bundle, elements) -> frozenset:
    return bundle.frame.join_all(underline(bundle, x).coz() for x in elements)


def _members(K: TruncationKernel, rng, k: int = 4) -> list[TruncElement]:
    """Random nonnegative members of K, used to confirm that a join is stable."""
    c = K.carrier
    return [_restrict(random_element(c, rng), K.support) for _ in range(k)]


def _kernel_gens(K: TruncationKernel) -> list[TruncElement]:
    c = K.carrier
    return [c.basis(i) for i in range(c.dim) if i in K.support]


def _join_stable(out: Outcome, ok: bool, *ctx) -> None:
    """Extra members of the index kernel leave the join unchanged."""
    out.check(ok, *ctx)
    if ok:
        out.count("joins_stable")


def _coz_instance(rng, cfg):
    c = _finvec(rng, cfg)
    return c, _bundle(c, cfg.window)


@check("⋁_S coz a = ⋁_[S] coz a", "representation")
def coz_join_closure(rng, out, cfg):
    c, bundle = _coz_instance(rng, cfg)
    S = [random_element(c, rng, nonneg=False) for _ in range(rng.randint(1, 3))]
    K = kernel_closure(S)
    lhs = _coz_join(bundle, S)
    rhs = _coz_join(bundle, _kernel_gens(K))
    _join_stable(out, _coz_join(bundle, _kernel_gens(K) + _members(K, rng)) == rhs, S, "join stable")
    out.check(lhs == rhs, S)


@check("coz b ≤ con a. Therefore", "representation")
def coz_below_con(rng, out, cfg):
    c, bundle = _coz_instance(rng, cfg)
    a = random_truncated(c, rng)
    D = dark(a, 1)
    b = _restrict(random_element(c, rng), D.support)
    con_a = underline(bundle, a).con()
    out.check(underline(bundle, b).coz() <= con_a, a, b)
    J = _coz_join(bundle, _kernel_gens(D))
    _join_stable(out, _coz_join(bundle, _kernel_gens(D) + _members(D, rng)) == J, a, "join stable")
    out.check(J <= con_a, a)


@check("we may assume that b=(1/2)·(2b)-bar", "representation")
def coz_con_meet(rng, out, cfg):
    c, bundle = _coz_instance(rng, cfg)
    a, b = random_truncated(c, rng), random_element(c, rng)
    D = dark(a, 1)
    J = _coz_join(bundle, _kernel_gens(D))
    _join_stable(out, _coz_join(bundle, _kernel_gens(D) + _members(D, rng)) == J, a, "join stable")
    out.check(underline(bundle, b).coz() & underline(bundle, a).con() <= J, a, b)


@check("Together, these two facts imply", "representation")
def coz_con_equality(rng, out, cfg):
    c, bundle = _coz_instance(rng, cfg)
    a, b = random_truncated(c, rng), random_element(c, rng)
    D = dark(a, 1)
    gens, extra = _kernel_gens(D), _members(D, rng)
    lhs = underline(bundle, b).coz() & underline(bundle, a).con()
    mid = underline(bundle, b).coz() & _coz_join(bundle, gens)
    rhs = _coz_join(bundle, [b & x for x in gens])
    _join_stable(out, _coz_join(bundle, [b & x for x in gens + extra]) == rhs, a, b, "join stable")
    out.check(lhs == mid == rhs, a, b)


@check("We begin with the observation that", "representation")
def con_cover(rng, out, cfg):
    c, bundle = _coz_instance(rng, cfg)
    a, b = random_truncated(c, rng), random_truncated(c, rng)
    D = dark(b, 1)
    J = _coz_join(bundle, _kernel_gens(D))
    _join_stable(out, _coz_join(bundle, _kernel_gens(D) + _members(D, rng)) == J, b, "join stable")
    out.check(underline(bundle, b).con() <= underline(bundle, a).con() | J, a, b)


@check("is a subtrunc of R M", "representation")
def hat_in_r0(rng, out, cfg):
    c = _carrier(rng, cfg)
    rp = _rep(c, cfg.window)
    a = _restrict_window(random_element(c, rng, nonneg=False), cfg.window)
    out.check(in_R0(rp.hat(a), rp.spectrum), a)


@functools.lru_cache(maxsize=None)
def _rep(c, window: int = 4):
    return represent(c, window)


@check("effects an AT-isomorphism", "representation")
def hat_product_iso(rng, out, cfg):
    L = rng.choice([boolean_frame(n) for n in range(1, 4)] + _frames(3)[1:])
    f, g = random_real_map(L, rng), random_real_map(L, rng)
    two, F = hat_product(L, f)
    _, G = hat_product(L, g)
    _, FG = hat_product(L, f + g)
    _, FmG = hat_product(L, f & g)
    out.check(in_R0(F, two), f, "R0")
    out.check((F + G).agrees(FG) and (F & G).agrees(FmG), f, g, "operations")
    back = RealFrameMap.from_upper(L, [(r, two.coding.decode(v)[1]) for r, v in F.steps])
    out.check(back.agrees(f), f, "projection recovers f")


@check("are isomorphic truncs", "representation")
def filtered_vs_r0(rng, out, cfg):
    L = boolean_frame(rng.randint(1, 3))
    F = rng.choice(filters(L))
    M = two_sub_F(L, F)
    g = random_real_map(L, rng)
    pts = g.probes()
    neg, pos = [r for r in pts if r < 0] + [Q(-1, 10**6)], [s for s in pts if s > 0] + [Q(1, 10**6)]
    filtered = all(g.interval(r, s) in F for r in neg for s in pos)
    pairs = [(r, (r < 0, v)) for r, v in [(x, g.upper(x)) for x in sorted(set(pts) | {Q(0)})]]
    coded = [(r, M.coding.encode(eps, v)) for r, (eps, v) in pairs]
    if all(x in M.frame for _, x in coded):
        G = RealFrameMap.from_upper(M.frame, coded)
        lifted = in_R0(G, M)
    else:
        lifted = False
    out.count("in" if filtered else "out")
    out.check(filtered == lifted, g, F)


@check("there is a unique pointed frame morphism", "representation", exhaustive=True)
def universal_arrow(rng, out, cfg):
    demo = nonfunctorial_demo()
    out.checked += 1
    out.check(demo.passed, demo.to_dict())
    out.stats["frame_maps_2_to_4"] = demo.frame_maps
    from .representation import hat_morphism, induced_g

    for c in (FinVec([1]), FinVec([1, 2])):
        rp = _rep(c)
        th = hat_morphism(rp, rp, lambda a: a)
        ind = induced_g(rp, th)
        out.checked += 1
        out.check(ind.passed and all(ind.g(x) == x for x in rp.spectrum.frame), repr(c), "identity")


@check("is monoreflective in AT", "representation", exhaustive=True)
def w_reflection(rng, out, cfg):
    for c in (random_finvec(rng, 3), EvSeq()):
        refl = w_reflect(c, window=cfg.window, seed=rng.randrange(2 ** 31))
        out.checked += 1
        if isinstance(c, FinVec):
            out.check(refl.b0_in_image and refl.unital, repr(c), "isomorphism")
        else:
            out.check(not refl.b0_in_image and refl.unital and refl.b0_is_top, repr(c), "adjoined top")
        for _ in range(50):
            rep = w_morphism_factorizations(refl, c, cfg.window, rng)
            out.checked += 1
            out.most("max_factorizations", rep.factors)
            out.check(rep.ok, repr(c), rep.sigma, rep.unit, rep.factors)


# ---------------------------------------------------------------------------
# running


MODULES = ("lattice-core", "pointed-filtered", "trunc-algebra", "kernel-frame", "representation")


def _run_index(args) -> dict:
    i, cfg = args
    return run_check(REGISTRY[i], cfg).to_dict()


def select(modules=None, anchors=None) -> list[int]:
    return [i for i, c in enumerate(REGISTRY)
            if (not modules or c.module in modules) and (not anchors or c.anchor in anchors)]


def run_suite(cfg: SuiteConfig, modules=None, anchors=None) -> dict:
    """Run the selected checks and assemble the report."""
    idx = select(modules, anchors)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_index, [(i, cfg) for i in idx]))
    else:
        results = [_run_index((i, cfg)) for i in idx]
    suites: dict = {m: {} for m in MODULES}
    for i, res in zip(idx, results):
        suites[REGISTRY[i].module][REGISTRY[i].anchor] = res
    suites = {m: s for m, s in suites.items() if s}
    return {
        "config": cfg.to_dict(),
        "passed": all(r["passed"] for s in suites.values() for r in s.values()),
        "suites": suites,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def report_text(report: dict) -> str:
    lines = []
    for module, checks in report["suites"].items():
        lines.append(f"[{module}]")
        for anchor, r in checks.items():
            status = "PASS" if r["passed"] else "FAIL"
            extra = "" if r["passed"] else f"  witness: {r['witness']}"
            stats = ", ".join(f"{k}={v}" for k, v in r["stats"].items())
            lines.append(f"  {status} {anchor} ({r['checked']} checked{'; ' + stats if stats else ''}){extra}")
    lines.append("ALL PASS" if report["passed"] else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"
