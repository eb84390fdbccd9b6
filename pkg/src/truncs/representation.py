"""Frame-valued real maps and the representations of a trunc inside them.

A frame map from the open sets of the reals into a finite frame L is stored
by its values on the rays (r, oo): a right-continuous, nonincreasing step
function that is top far to the left and bottom far to the right.  Every
value of such a map is complemented, so the map is also described by one
rational per atom of the Boolean centre of L (the "atom form"); the
arithmetic of R L is carried out there.
"""

from __future__ import annotations

import bisect
import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .kernel_frame import KernelFrameBundle, kernel_frame, spectrum, truncation_generators
from .lattice import (
    STAR,
    FiniteFrame,
    FrameError,
    FrameMap,
    check_frame_map,
    element_str,
    frame_map,
    frame_maps,
)
from .pointed import (
    PointedFrame,
    free_isolated,
    is_pointed_map,
    pointed_maps,
    product2,
)
from .trunc import (
    Q,
    Carrier,
    TruncElement,
    bright,
    diminish,
    in_k0,
    in_k1,
    is_truncated,
    q,
    qstr,
    random_element,
    random_truncated,
    truncate,
)


class UnsupportedTarget(FrameError):
    pass


class MorphismError(ValueError):
    def __init__(self, identity: str, witness: tuple):
        super().__init__(f"not a trunc morphism: {identity} fails at {witness}")
        self.identity = identity
        self.witness = witness


@functools.lru_cache(maxsize=256)
def boolean_centre(L: FiniteFrame) -> tuple[frozenset, tuple]:
    """The complemented elements of L and the atoms among them."""
    comp = frozenset(a for a in L.order if L.is_complemented(a))
    atoms = tuple(a for a in L.order if a in comp and a != L.bottom
                  and not any(b != L.bottom and b < a for b in comp))
    return comp, atoms


def _interval_set(text: str) -> list[tuple]:
    """Parse '(a,b)' pieces joined by 'u'; 'inf' marks an open end."""
    out = []
    for piece in text.replace(" ", "").split("u"):
        if not (piece.startswith("(") and piece.endswith(")")):
            raise ValueError(f"bad interval {piece!r}")
        lo, hi = piece[1:-1].split(",")
        out.append((None if lo in ("-inf", "-oo") else q(lo),
                    None if hi in ("inf", "+inf", "oo") else q(hi)))
    return out


@dataclass(frozen=True, eq=False)
class RealFrameMap:
    """r -> f(r, oo): top below steps[0][0], steps[i][1] on [r_i, r_{i+1}), bottom from the last."""

    target: FiniteFrame
    steps: tuple

    def __post_init__(self):
        L = self.target
        steps = tuple((q(r), v) for r, v in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            if L.top != L.bottom:
                raise FrameError("a step form over a nontrivial frame needs at least one step")
            return
        prev_r, prev_v = None, L.top
        for r, v in steps:
            L.check(v)
            if prev_r is not None and r <= prev_r:
                raise FrameError("breakpoints must increase strictly")
            if not (v < prev_v):
                raise FrameError(f"values must decrease strictly (at {qstr(r)})")
            prev_r, prev_v = r, v
        if steps[-1][1] != L.bottom:
            raise FrameError("the last step value must be bottom")

    # evaluation

    @property
    def breakpoints(self) -> tuple:
        return tuple(r for r, _ in self.steps)

    def upper(self, r) -> frozenset:
        """f(r, oo)."""
        i = bisect.bisect_right(self.breakpoints, q(r)) - 1
        return self.target.top if i < 0 else self.steps[i][1]

    def lower(self, r) -> frozenset:
        """f(-oo, r) = join over s < r of f(s, oo)*."""
        i = bisect.bisect_left(self.breakpoints, q(r)) - 1
        return self.target.bottom if i < 0 else self.target.pseudocomplement(self.steps[i][1])

    def interval(self, lo, hi) -> frozenset:
        L = self.target
        a = L.top if lo is None else self.upper(lo)
        b = L.top if hi is None else self.lower(hi)
        return a & b

    def __call__(self, U) -> frozenset:
        """Value on a finite union of open intervals (text or (lo, hi) pairs)."""
        if isinstance(U, str):
            U = _interval_set(U)
        return self.target.join_all(self.interval(lo, hi) for lo, hi in U)

    def probes(self, other: "RealFrameMap | None" = None) -> list[Fraction]:
        """Breakpoints (of both maps), midpoints and one point beyond each end."""
        pts = sorted(set(self.breakpoints) | set(other.breakpoints if other else ()))
        if not pts:
            return [Q(0)]
        out = [pts[0] - 1] + pts + [pts[-1] + 1]
        out += [(x + y) / 2 for x, y in zip(pts, pts[1:])]
        return sorted(out)

    def agrees(self, other: "RealFrameMap") -> bool:
        """Equal iff equal at every breakpoint of both and just below the smallest."""
        if self.target != other.target:
            return False
        return all(self.upper(r) == other.upper(r) for r in self.probes(other))

    def __eq__(self, other) -> bool:
        return isinstance(other, RealFrameMap) and self.target == other.target and self.steps == other.steps

    def __hash__(self) -> int:
        return hash((self.target, self.steps))

    def __repr__(self) -> str:
        body = ", ".join(f"{qstr(r)}:{element_str(v)}" for r, v in self.steps)
        return f"RealFrameMap[{body}]"

    def to_list(self) -> list[dict]:
        return [{"breakpoint": qstr(r), "value": element_str(v)} for r, v in self.steps]

    # scale conditions

    def scale_conditions(self) -> tuple[bool, str | None]:
        """The three conditions under which the ray values extend to a frame map."""
        L = self.target
        pts = self.probes()
        for i, r in enumerate(pts):
            for s in pts[i + 1:]:
                if not L.rather_below(self.upper(s), self.upper(r)):
                    return False, f"f({qstr(s)},oo) is not rather below f({qstr(r)},oo)"
        # right continuity: the value on [r_i, r_{i+1}) is attained at its midpoint
        for r in pts:
            nxt = [x for x in pts if x > r]
            if nxt and self.upper((r + nxt[0]) / 2) != self.upper(r) and r in self.breakpoints:
                return False, f"not right-continuous at {qstr(r)}"
        if L.join_all(self.upper(r) for r in pts) != L.top:
            return False, "rays do not cover at the low end"
        if L.join_all(L.pseudocomplement(self.upper(r)) for r in pts) != L.top:
            return False, "pseudocomplements do not cover at the high end"
        return True, None

    # atom form

    def to_atoms(self) -> dict:
        comp, atoms = boolean_centre(self.target)
        for _, v in self.steps:
            if v not in comp:
                raise UnsupportedTarget(f"value {element_str(v)} lies outside the Boolean centre")
        out = {}
        for p in atoms:
            out[p] = next(r for r, v in self.steps if not p <= v)
        return out

    @staticmethod
    def from_atoms(L: FiniteFrame, values: Mapping) -> "RealFrameMap":
        comp, atoms = boolean_centre(L)
        if set(values) != set(atoms):
            raise UnsupportedTarget("atom form must assign a value to every atom of the Boolean centre")
        ts = sorted(set(q(v) for v in values.values()))
        steps = [(t, L.join_all(p for p in atoms if q(values[p]) > t)) for t in ts]
        return RealFrameMap(L, tuple(steps))

    @staticmethod
    def from_upper(L: FiniteFrame, pairs: Iterable[tuple]) -> "RealFrameMap":
        """Normalize (r, value on [r, next r)) pairs into a step form."""
        steps, prev = [], L.top
        for r, v in sorted(pairs, key=lambda p: p[0]):
            if v != prev:
                steps.append((q(r), v))
                prev = v
        return RealFrameMap(L, tuple(steps))

    def _atomwise(self, other: "RealFrameMap | None", fn: Callable) -> "RealFrameMap":
        if other is not None and other.target != self.target:
            raise FrameError("real frame maps into different frames")
        x = self.to_atoms()
        y = other.to_atoms() if other is not None else None
        return RealFrameMap.from_atoms(self.target, {p: fn(x[p], y[p]) if y else fn(x[p]) for p in x})

    def _stepwise(self, other: "RealFrameMap", op: Callable) -> "RealFrameMap":
        if other.target != self.target:
            raise FrameError("real frame maps into different frames")
        pts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return RealFrameMap.from_upper(self.target, [(r, op(self.upper(r), other.upper(r))) for r in pts])

    def __add__(self, other):
        return self._atomwise(other, lambda s, t: s + t)

    def __sub__(self, other):
        return self._atomwise(other, lambda s, t: s - t)

    def __neg__(self):
        return self._atomwise(None, lambda s: -s)

    def __mul__(self, c):
        c = q(c)
        return self._atomwise(None, lambda s: c * s)

    __rmul__ = __mul__

    def __and__(self, other):
        return self._stepwise(other, lambda x, y: x & y)

    def __or__(self, other):
        return self._stepwise(other, lambda x, y: x | y)

    def pos(self) -> "RealFrameMap":
        return self | constant(self.target, 0)

    def truncate_at_1(self) -> "RealFrameMap":
        return self & constant(self.target, 1)

    def coz(self) -> frozenset:
        return self([(None, Q(0)), (Q(0), None)])

    def con(self) -> frozenset:
        return self([(None, Q(1)), (Q(1), None)])

    def con_from_rays(self) -> frozenset:
        """join over s < 1 of f(s, oo)*; equals con f when f <= 1."""
        return self.lower(1)

    def compose(self, g: FrameMap) -> "RealFrameMap":
        if g.source != self.target:
            raise FrameError("frame map source must be the target of the real map")
        return RealFrameMap.from_upper(g.target, [(r, g(v)) for r, v in self.steps])

    def is_nonneg(self) -> bool:
        return self.upper(Q(-1, 10**9) + min(self.breakpoints + (Q(0),))) == self.target.top and \
            all(self.upper(r) == self.target.top for r in self.probes() if r < 0)


def constant(L: FiniteFrame, r) -> RealFrameMap:
    """The constant r: (s, oo) -> top for s < r and bottom for s >= r."""
    if L.top == L.bottom:
        return RealFrameMap(L, ())
    return RealFrameMap(L, ((q(r), L.bottom),))


def minkowski_sum(f: RealFrameMap, g: RealFrameMap, r) -> frozenset:
    """(f + g)(r, oo) = join over r1 + r2 = r of f(r1, oo) & g(r2, oo).

    Both factors are constant between the points of C = {f's breakpoints}
    union {r - g's breakpoints}, so C, its midpoints and one point past
    each end realize the join.
    """
    r = q(r)
    C = sorted(set(f.breakpoints) | {r - t for t in g.breakpoints} | {Q(0)})
    pts = [C[0] - 1] + C + [C[-1] + 1] + [(x + y) / 2 for x, y in zip(C, C[1:])]
    return f.target.join_all(f.upper(r1) & g.upper(r - r1) for r1 in pts)


def in_R0(f: RealFrameMap, M: PointedFrame) -> bool:
    """The point of M applied to f is the constant 0, on right and left rays."""
    if f.target != M.frame:
        return False
    pts = f.probes() + [Q(0), Q(-1, 10**6) * (1 + max((abs(r) for r in f.breakpoints), default=Q(0)))]
    neg = [r for r in f.breakpoints if r < 0]
    if neg:
        pts.append((neg[-1] + 0) / 2)
    if not all(M.at(f.upper(r)) == (r < 0) for r in pts):
        return False
    # the left rays (-oo, s) must contain the point exactly when s > 0
    return all(M.at(f.lower(s)) == (s > 0) for s in pts + [Q(1, 10**6)])


# ---------------------------------------------------------------------------
# the underline representation into R(K A)


def underline(bundle: KernelFrameBundle, a: TruncElement, check: bool = False) -> RealFrameMap:
    """(r, oo) -> a |> r for r >= 0 and top for r < 0; negative parts by subtraction."""
    if not a.is_nonneg():
        return underline(bundle, a.pos(), check) - underline(bundle, a.neg(), check)
    L = bundle.frame
    levels = sorted({Q(0)} | {l for l in bundle.carrier.levels(a) if l > 0})
    pairs = [(r, bundle.element_of(bright(a, r))) for r in levels]
    f = RealFrameMap.from_upper(L, pairs)
    if check:
        # between and past the level set nothing changes
        for x, y in zip(levels, levels[1:] + [levels[-1] + 1]):
            if bundle.element_of(bright(a, (x + y) / 2)) != f.upper(x):
                raise ArithmeticError(f"bright({a}, r) changes off the level set near {qstr(x)}")
    return f


def atom_oracle(bundle: KernelFrameBundle, a: TruncElement) -> dict:
    """The atom form of underline(a) read off the coordinates: a(x) / u(x) at atom {x}."""
    c = bundle.carrier
    out = {}
    for p in bundle.frame.atoms():
        (x,) = tuple(p)
        out[p] = Q(0) if bundle.window is not None and x not in range(bundle.window) else a[x] / c.scale_of(x)
    return out


def in_underline_range(bundle: KernelFrameBundle, f: RealFrameMap) -> bool:
    """Does f equal underline(a) for some a?  Decided through the atom form."""
    vals = f.to_atoms()
    c = bundle.carrier
    coords = {}
    for p, t in vals.items():
        (x,) = tuple(p)
        if bundle.window is not None and x not in range(bundle.window):
            if t != 0:
                return False
            continue
        coords[x] = t * c.scale_of(x)
    n = bundle.window if bundle.window is not None else c.dim
    a = c.element([coords.get(i, 0) for i in range(n)])
    return underline(bundle, a).agrees(f)


@dataclass
class IdentityTally:
    checked: int = 0
    failures: int = 0
    witness: tuple | None = None

    def record(self, ok: bool, *witness) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked,
                "witness": None if self.witness is None else [repr(w) for w in self.witness]}


@dataclass
class KappaReport:
    carrier: str
    identities: dict

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.identities.values())

    def to_dict(self) -> dict:
        return {"carrier": self.carrier, "passed": self.passed,
                "identities": {k: v.to_dict() for k, v in self.identities.items()}}


def verify_representation(rep: Callable, target_of: Callable, carrier: Carrier, samples: int,
                          seed: int, oracle: Callable | None = None, one=None) -> KappaReport:
    rng = random.Random(seed)
    names = ["meet", "join", "sum", "truncation", "injective", "minkowski"]
    if oracle is not None:
        names.append("atom_oracle")
    tally = {n: IdentityTally() for n in names}
    zero = carrier.zero()
    for i in range(samples):
        if i == 0:
            a = b = zero
        else:
            a = random_element(carrier, rng, nonneg=rng.random() < 0.5)
            b = random_element(carrier, rng, nonneg=rng.random() < 0.5)
        fa, fb = rep(a), rep(b)
        tally["meet"].record(rep(a & b).agrees(fa & fb), a, b)
        tally["join"].record(rep(a | b).agrees(fa | fb), a, b)
        fs = rep(a + b)
        tally["sum"].record(fs.agrees(fa + fb), a, b)
        ap = abs(a)
        tally["truncation"].record(rep(truncate(ap)).agrees(rep(ap) & one), a)
        tally["injective"].record(a.is_zero() or rep(a).coz() != target_of().bottom, a)
        if i % 10 == 0:
            r = rng.choice(fs.probes())
            tally["minkowski"].record(minkowski_sum(fa, fb, r) == fs.upper(r), a, b, r)
        if oracle is not None:
            tally["atom_oracle"].record(oracle(a) == fa.to_atoms(), a)
    return KappaReport(repr(carrier), tally)


def verify_kappa(carrier: Carrier, samples: int = 1000, seed: int = 0, window: int = 6,
                 bundle: KernelFrameBundle | None = None) -> KappaReport:
    """underline preserves meets, joins, sums and truncation, and is injective."""
    bundle = bundle or kernel_frame(carrier, window=window)
    one = constant(bundle.frame, 1)
    return verify_representation(
        lambda a: underline(bundle, a), lambda: bundle.frame, carrier, samples, seed,
        oracle=lambda a: atom_oracle(bundle, a), one=one)


# ---------------------------------------------------------------------------
# the pointed representation into R_0(M A)


@dataclass(frozen=True, eq=False)
class Representation:
    """A trunc together with its kernel frame and spectrum."""

    bundle: KernelFrameBundle
    spectrum: PointedFrame

    @property
    def carrier(self) -> Carrier:
        return self.bundle.carrier

    def hat(self, a: TruncElement) -> RealFrameMap:
        return hat(self, a)


def represent(carrier: Carrier, window: int = 4) -> Representation:
    bundle = kernel_frame(carrier, window=window)
    return Representation(bundle, spectrum(bundle))


def hat(rep: Representation, a: TruncElement) -> RealFrameMap:
    """(r, oo) -> (bot, a |> r) for r >= 0 and (top, top) for r < 0."""
    if not a.is_nonneg():
        return hat(rep, a.pos()) - hat(rep, a.neg())
    M = rep.spectrum
    f = underline(rep.bundle, a)
    pairs = [(Q(0), M.coding.encode(False, f.upper(0)))]
    pairs += [(r, M.coding.encode(False, v)) for r, v in f.steps if r > 0]
    out = RealFrameMap.from_upper(M.frame, pairs)
    if not in_R0(out, M):
        raise FrameError(f"hat({a}) left R_0 of the spectrum")
    return out


def verify_hat(carrier: Carrier, samples: int = 200, seed: int = 0, window: int = 4) -> KappaReport:
    rep = represent(carrier, window)
    one = constant(rep.spectrum.frame, 1)
    report = verify_representation(lambda a: hat(rep, a), lambda: rep.spectrum.frame, carrier,
                                   samples, seed, one=one)
    membership = IdentityTally()
    rng = random.Random(seed + 1)
    for _ in range(min(samples, 50)):
        a = random_element(carrier, rng, nonneg=False)
        membership.record(in_R0(hat(rep, a), rep.spectrum), a)
    report.identities["R0_membership"] = membership
    return report


def unit_table(rep: Representation, a0: TruncElement) -> dict:
    """hat(a0) on the four kinds of open set, against the expected values."""
    M = rep.spectrum
    f = hat(rep, a0)
    TT, TB = M.element(True, rep.bundle.frame.top), M.element(True, rep.bundle.frame.bottom)
    BT, BB = M.element(False, rep.bundle.frame.top), M.element(False, rep.bundle.frame.bottom)
    cases = {
        "0,1 in U": ("(-1/2,3/2)", TT),
        "0 in U, 1 not": ("(-1/2,1/2)", TB),
        "1 in U, 0 not": ("(1/2,3/2)", BT),
        "neither": ("(3/2,2)u(-2,-1)", BB),
    }
    return {k: (U, f(U) == want) for k, (U, want) in cases.items()}


def hat_product(L: FiniteFrame, f: RealFrameMap) -> tuple[PointedFrame, RealFrameMap]:
    """0 x f : O(R) -> 2L for f in R L."""
    two = product2(L)
    pairs = [(Q(0), two.coding.encode(False, f.upper(0)))]
    pairs += [(r, two.coding.encode(False, f.upper(r))) for r in f.breakpoints if r > 0]
    pairs += [(r, two.coding.encode(True, f.upper(r))) for r in f.breakpoints if r < 0]
    return two, RealFrameMap.from_upper(two.frame, pairs)


def random_real_map(L: FiniteFrame, rng: random.Random, span: int = 3) -> RealFrameMap:
    _, atoms = boolean_centre(L)
    return RealFrameMap.from_atoms(L, {p: Q(rng.randint(-2 * span, 2 * span), 2) for p in atoms})


# ---------------------------------------------------------------------------
# trunc morphisms and the induced pointed frame map


@dataclass(frozen=True, eq=False)
class TruncMorphism:
    """A trunc morphism A -> R_0 L given by its values on the basis.

    For FinVec the basis element i is the unit restricted to coordinate i;
    for EvSeq it is the indicator of coordinate i.  Coordinates without an
    image are sent to 0.
    """

    source: Carrier
    target: PointedFrame
    images: Mapping

    def __call__(self, a: TruncElement) -> RealFrameMap:
        self.source.own(a)
        L = self.target.frame
        out = constant(L, 0)
        for i, f in self.images.items():
            coef = a[i] / self.source.scale_of(i)
            if coef:
                out = out + f * coef
        return out

    def validate(self, samples: int = 50, seed: int = 0) -> None:
        """Raise MorphismError naming the first identity that fails."""
        for i, f in self.images.items():
            if f.target != self.target.frame:
                raise MorphismError("codomain", (i,))
            if not in_R0(f, self.target):
                raise MorphismError("point . theta = 0", (i,))
        rng = random.Random(seed)
        one = constant(self.target.frame, 1)
        for _ in range(samples):
            a = random_element(self.source, rng, nonneg=False)
            b = random_element(self.source, rng, nonneg=False)
            if not self(a & b).agrees(self(a) & self(b)):
                raise MorphismError("theta(a ^ b) = theta(a) ^ theta(b)", (a, b))
            if not self(a | b).agrees(self(a) | self(b)):
                raise MorphismError("theta(a v b) = theta(a) v theta(b)", (a, b))
            ap = abs(a)
            if not self(truncate(ap)).agrees(self(ap) & one):
                raise MorphismError("theta(trunc a) = theta(a) ^ 1", (ap,))


def hat_morphism(rep_a: Representation, rep_b: Representation, theta: Callable) -> TruncMorphism:
    """mu_B . theta for a map theta: A -> B given as a function on elements."""
    c = rep_a.carrier
    n = c.dim if c.base.kind == "finvec" else rep_a.bundle.window
    return TruncMorphism(c, rep_b.spectrum, {i: hat(rep_b, theta(c.basis(i))) for i in range(n)})


@dataclass(frozen=True)
class JoinReduction:
    value: frozenset
    generators: int
    samples: int
    stable: bool


def _stable_join(L: FiniteFrame, gens: list, extra: list, fn: Callable) -> JoinReduction:
    base = L.join_all(fn(a) for a in gens)
    full = L.join_all([base] + [fn(a) for a in extra])
    return JoinReduction(base, len(gens), len(extra), full == base)


@dataclass
class InducedMap:
    g: FrameMap
    reductions: dict
    frame_map_valid: bool
    pointed: bool
    square: bool
    unique: bool | None = None
    competitors: int | None = None

    @property
    def stable(self) -> bool:
        return all(r.stable for r in self.reductions.values())

    @property
    def passed(self) -> bool:
        return self.frame_map_valid and self.pointed and self.square and self.stable and self.unique is not False

    def to_dict(self) -> dict:
        return {
            "table": {element_str(k): element_str(v) for k, v in
                      sorted(self.g.table.items(), key=lambda kv: (len(kv[0]), element_str(kv[0])))},
            "frame_map": self.frame_map_valid,
            "pointed": self.pointed,
            "square_commutes": self.square,
            "joins_stable": self.stable,
            "unique": self.unique,
            "commuting_maps": self.competitors,
        }


def square_commutes(g: FrameMap, rep: Representation, theta: TruncMorphism, elements: Iterable) -> bool:
    return all(hat(rep, a).compose(g).agrees(theta(a)) for a in elements)


def induced_g(rep: Representation, theta: TruncMorphism, samples: int = 8, seed: int = 0,
              check_unique: bool = True) -> InducedMap:
    """g(bot, K) = join of coz theta(a) over 0K; g(top, K) = join of con theta(a) over 1K.

    Each join is taken over the truncated generators lying in 0K (resp. 1K)
    and compared against extra random members; ``stable`` records agreement.
    """
    rng = random.Random(seed)
    M, L = rep.spectrum, theta.target.frame
    gens = truncation_generators(rep.bundle)
    extra = [random_truncated(rep.carrier, rng) for _ in range(samples)]
    table, reductions = {}, {}
    for x in M.frame:
        eps, e = M.pair(x)
        K = rep.bundle.kernel_of(e)
        if eps:
            member = lambda a: in_k1(K, a)
            fn = lambda a: theta(a).con()
        else:
            member = lambda a: in_k0(K, a)
            fn = lambda a: theta(a).coz()
        red = _stable_join(L, [a for a in gens if member(a)], [a for a in extra if member(a)], fn)
        table[x] = red.value
        reductions[x] = red
    g = FrameMap(M.frame, L, table)
    valid = check_frame_map(g).valid
    pointed = valid and is_pointed_map(g, M, theta.target)
    probe = list(gens) + extra[:3]
    sq = valid and square_commutes(g, rep, theta, probe)
    out = InducedMap(g, reductions, valid, pointed, sq)
    if check_unique:
        commuting = [h for h in pointed_maps(M, theta.target) if square_commutes(h, rep, theta, probe)]
        out.competitors = len(commuting)
        out.unique = len(commuting) == 1 and commuting[0] == g
    return out


# ---------------------------------------------------------------------------
# the unpointed representation is not functorial


@dataclass
class DemoReport:
    frame_maps: int
    failing_probe: str
    left: str
    right: str
    induced: InducedMap
    lines: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.frame_maps == 1 and self.left != self.right and self.induced.passed

    def to_dict(self) -> dict:
        return {"frame_maps_2_to_4": self.frame_maps, "failing_probe": self.failing_probe,
                "g_of_underline_theta_source": self.left, "underline_of_theta": self.right,
                "pointed_repair": self.induced.to_dict(), "passed": self.passed}


def nonfunctorial_demo(probe: str = "(1/2,3/2)") -> DemoReport:
    """A = Q, B = Q^2, theta(a) = (a, 0)."""
    from .trunc import FinVec

    A, B = FinVec([1]), FinVec([1, 1])
    KA, KB = kernel_frame(A), kernel_frame(B)
    theta = lambda a: B.element(a[0], 0)
    maps = list(frame_maps(KA.frame, KB.frame))
    lines = [f"K A has {len(KA.frame)} elements, K B has {len(KB.frame)}",
             f"frame maps K A -> K B: {len(maps)}"]
    g = maps[0]
    lines.append("the unique map: " + ", ".join(f"{element_str(k)} -> {element_str(v)}"
                                                 for k, v in sorted(g.table.items(), key=lambda kv: len(kv[0]))))
    one = A.element(1)
    left = underline(KA, one).compose(g)(probe)
    right = underline(KB, theta(one))(probe)
    lines.append(f"at U = {probe}: g(underline(1))(U) = {element_str(left)}, "
                 f"underline(theta(1))(U) = {element_str(right)}")
    ra, rb = represent(A), represent(B)
    th = hat_morphism(ra, rb, theta)
    th.validate()
    ind = induced_g(ra, th)
    lines.append(f"pointed spectra: |M A| = {len(ra.spectrum.frame)}, |M B| = {len(rb.spectrum.frame)}")
    lines.append(f"induced g is a pointed frame map: {ind.pointed}; square commutes: {ind.square}; "
                 f"commuting pointed maps: {ind.competitors}")
    return DemoReport(len(maps), probe, element_str(left), element_str(right), ind, lines)


# ---------------------------------------------------------------------------
# the W-reflection


@dataclass
class Reflection:
    carrier: str
    isolated: bool
    b0: RealFrameMap
    b0_in_image: bool
    b0_is_top: bool
    unital: bool
    omega: Callable = field(repr=False)
    target: PointedFrame = field(repr=False)
    coordinates: tuple = ()
    lines: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"carrier": self.carrier, "isolated": self.isolated,
                "b0": self.b0.to_list(), "b0_in_image": self.b0_in_image,
                "b0_is_top": self.b0_is_top, "unital": self.unital,
                "coordinates": [element_str(p) for p in self.coordinates]}


def w_reflect(carrier: Carrier, window: int = 4, samples: int = 30, seed: int = 0) -> Reflection:
    """omega_A = R_0(nu_M) . mu_A : A -> R_0(2 K A) and the unit b0 of the reflection."""
    rng = random.Random(seed)
    rep = represent(carrier, window)
    fi = free_isolated(rep.spectrum)
    two = fi.target
    omega = lambda a: hat(rep, a).compose(fi.nu)
    inner = two.coding.inner
    b0 = RealFrameMap.from_upper(two.frame, [(Q(0), two.coding.encode(False, inner.top)),
                                             (Q(1), two.frame.bottom)])
    coords = tuple(p for p in boolean_centre(two.frame)[1] if STAR not in p)
    basis = truncation_generators(rep.bundle)
    b0_in_image = in_omega_span(rep, omega, b0)
    # b0 bounds the truncated part: every truncated combination of generators lies below it
    tops = []
    for _ in range(samples):
        a = random_element(carrier, rng, nonneg=True)
        x = (omega(a) + b0 * Q(rng.randint(0, 4), 2)).truncate_at_1()
        tops.append(x.agrees(x & b0))
    unital = all(
        (omega(a) + b0 * Q(k, 3)).pos().truncate_at_1().agrees((omega(a) + b0 * Q(k, 3)).pos() & b0)
        for a, k in ((random_element(carrier, rng), rng.randint(-3, 3)) for _ in range(samples)))
    lines = [f"spectrum point isolated: {rep.spectrum.is_isolated()}",
             f"b0 = {b0!r}", f"b0 in the image of omega: {b0_in_image}",
             f"truncation in <omega A, b0> is meet with b0: {unital}"]
    return Reflection(repr(carrier), rep.spectrum.is_isolated(), b0, b0_in_image, all(tops),
                      unital, omega, two, coords, lines)


def in_omega_span(rep: Representation, omega: Callable, f: RealFrameMap) -> bool:
    """Is f = omega(a) for some a?  The preimage is read off the atom form."""
    atoms = f.to_atoms()
    c = rep.carrier
    n = c.dim if c.base.kind == "finvec" else rep.bundle.window
    coords = [Q(0)] * n
    for p, t in atoms.items():
        if STAR in p:
            continue
        (x,) = tuple(p)
        while isinstance(x, tuple) and x[:1] == ("L",):
            x = x[1]
        if isinstance(x, int) and x < n:
            coords[x] = t * c.scale_of(x)
    return omega(c.element(coords)).agrees(f)


@dataclass
class FactorReport:
    sigma: tuple
    unit: tuple
    factors: int
    ok: bool


def w_morphism_factorizations(refl: Reflection, carrier: Carrier, window: int, rng: random.Random,
                              max_y: int = 3) -> FactorReport:
    """Sample theta: A -> Q^Y and count W-morphisms theta' with theta' . omega = theta.

    theta(a)_y = u_y a_{sigma(y)} / u_{sigma(y)} (or 0 when sigma(y) is None).  A W-morphism
    out of the reflected trunc sends b0 to u, and each coordinate of it is an
    l-homomorphism into Q, hence a positive multiple of one atom coordinate;
    b0 -> u fixes the multiple, so the candidates are indexed by a choice of
    atom per y.
    """
    ny = rng.randint(1, max_y)
    u = tuple(Q(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(ny))
    if carrier.base.kind == "finvec":
        # a unital source: a coordinate killed by theta admits no W-factorization
        sigma = tuple(rng.randrange(carrier.dim) for _ in range(ny))
    else:
        sigma = tuple(rng.choice(list(range(window)) + [None]) for _ in range(ny))

    def theta(a):
        return tuple(u[y] * a[s] / carrier.scale_of(s) if s is not None else Q(0)
                     for y, s in enumerate(sigma))

    coords = [p for p in boolean_centre(refl.target.frame)[1]]
    n = carrier.dim if carrier.base.kind == "finvec" else window
    gens = [carrier.basis(i) for i in range(n)]
    images = [refl.omega(a).to_atoms() for a in gens]
    b0 = refl.b0.to_atoms()
    count = 0
    for choice in itertools.product(coords, repeat=ny):
        def theta_prime(atomvals):
            return tuple(u[y] * atomvals[choice[y]] for y in range(ny))
        if theta_prime(b0) != u:
            continue
        if all(theta_prime(img) == theta(a) for img, a in zip(images, gens)):
            count += 1
    return FactorReport(sigma, u, count, count == 1)
