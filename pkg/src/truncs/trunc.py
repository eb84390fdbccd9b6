"""Concrete truncated l-groups with exact rational arithmetic, and their kernels.

Two carriers are provided:

``FinVec(unit)``
    Q^X for a finite index set X = {0, ..., n-1}, truncation a -> a ^ unit.
``EvSeq()``
    eventually-zero rational sequences, truncation a -> a ^ 1 pointwise.  The
    constant 1 lies outside the trunc, which is therefore not unital.

Truncation kernels are represented by supports (a subset of X, or a finite or
cofinite subset of N).  The closure ``[B]`` is computed by iterating the
archimedean and absorbing ladder steps; each step decides coordinates by
probing basis elements with the carrier's own arithmetic and truncation.
"""

from __future__ import annotations

import functools
import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Q = Fraction
LADDER_CAP = 8


class CarrierMismatch(TypeError):
    pass


class DomainError(ValueError):
    pass


class LadderWarning(RuntimeWarning):
    pass


def q(x) -> Fraction:
    """Parse a rational: int, Fraction, ``"p/q"`` text or a ``(p, q)`` pair."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)):
        num, den = x
        return Fraction(int(num), int(den))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'p/q' text")
    return Fraction(x)


def qstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class FinCof:
    """A finite or cofinite subset of N.

    ``FinCof(S)`` is S itself; ``FinCof(S, cofinite=True)`` is N minus S.
    """

    __slots__ = ("items", "cofinite")

    def __init__(self, items: Iterable[int] = (), cofinite: bool = False):
        self.items = frozenset(items)
        self.cofinite = cofinite

    def __contains__(self, n: int) -> bool:
        return (n not in self.items) if self.cofinite else (n in self.items)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinCof) and self.items == other.items
                and self.cofinite == other.cofinite)

    def __hash__(self) -> int:
        return hash((self.items, self.cofinite))

    def __repr__(self) -> str:
        body = sorted(self.items)
        return f"N\\{body}" if self.cofinite else f"{set(body) or '{}'}"

    def complement(self) -> "FinCof":
        return FinCof(self.items, not self.cofinite)

    def __or__(self, other: "FinCof") -> "FinCof":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return FinCof(a.items | b.items)
        if a.cofinite and b.cofinite:
            return FinCof(a.items & b.items, True)
        fin, cof = (a, b) if not a.cofinite else (b, a)
        return FinCof(cof.items - fin.items, True)

    def __and__(self, other: "FinCof") -> "FinCof":
        return (self.complement() | other.complement()).complement()

    def __sub__(self, other: "FinCof") -> "FinCof":
        return self & other.complement()

    def __le__(self, other: "FinCof") -> bool:
        return (self - other).is_empty()

    def __lt__(self, other: "FinCof") -> bool:
        return self <= other and self != other

    def is_empty(self) -> bool:
        return not self.cofinite and not self.items

    def bound(self) -> int:
        """One past the largest index mentioned explicitly."""
        return max(self.items) + 1 if self.items else 0


# ---------------------------------------------------------------------------
# carriers


class Carrier:
    kind = "abstract"

    def truncate(self, a: "TruncElement") -> "TruncElement":
        self.own(a)
        if not a.is_nonneg():
            raise DomainError(f"truncation is defined on positive elements only, got {a}")
        return self._truncate(a)

    def _truncate(self, a):
        raise NotImplementedError

    def own(self, *els: "TruncElement") -> None:
        for a in els:
            if a.carrier is not self and a.carrier != self:
                raise CarrierMismatch(f"{a} does not belong to {self}")

    def mutated(self, kind: str) -> "Carrier":
        return Mutated(self, kind)

    @property
    def base(self) -> "Carrier":
        return self


class FinVec(Carrier):
    kind = "finvec"

    def __init__(self, unit: Sequence):
        unit = tuple(q(x) for x in unit)
        if any(x <= 0 for x in unit):
            raise DomainError(f"unit must be strictly positive, got {unit}")
        self.unit = unit

    @property
    def dim(self) -> int:
        return len(self.unit)

    def __eq__(self, other) -> bool:
        return type(other) is FinVec and self.unit == other.unit

    def __hash__(self) -> int:
        return hash(("finvec", self.unit))

    def __repr__(self) -> str:
        return f"FinVec({', '.join(qstr(u) for u in self.unit)})"

    def element(self, *coords) -> "TruncElement":
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        if len(coords) != self.dim:
            raise DomainError(f"expected {self.dim} coordinates, got {len(coords)}")
        return TruncElement(self, tuple(q(c) for c in coords))

    def zero(self) -> "TruncElement":
        return TruncElement(self, (Q(0),) * self.dim)

    def unit_element(self) -> "TruncElement":
        return TruncElement(self, self.unit)

    def _truncate(self, a):
        return TruncElement(self, tuple(min(x, u) for x, u in zip(a.coords, self.unit)))

    def scale_of(self, i: int) -> Fraction:
        return self.unit[i]

    def basis(self, i: int, t: Fraction = Q(1)) -> "TruncElement":
        """t times the unit, restricted to coordinate i."""
        return TruncElement(self, tuple(t * u if j == i else Q(0) for j, u in enumerate(self.unit)))

    def levels(self, a: "TruncElement") -> list[Fraction]:
        return sorted({x / u for x, u in zip(a.coords, self.unit)})

    # supports

    def empty_support(self) -> frozenset:
        return frozenset()

    def full_support(self) -> frozenset:
        return frozenset(range(self.dim))

    def complement(self, S) -> frozenset:
        return self.full_support() - S

    def probe(self, *supports) -> tuple[list[int], None]:
        return list(range(self.dim)), None

    def assemble(self, chosen: Iterable[int], rep: int | None, rep_in: bool) -> frozenset:
        return frozenset(chosen)


class EvSeq(Carrier):
    kind = "evseq"

    def __eq__(self, other) -> bool:
        return type(other) is EvSeq

    def __hash__(self) -> int:
        return hash("evseq")

    def __repr__(self) -> str:
        return "EvSeq()"

    def element(self, *prefix, tail=0) -> "TruncElement":
        if len(prefix) == 1 and isinstance(prefix[0], (list, tuple)):
            prefix = tuple(prefix[0])
        return TruncElement(self, tuple(q(c) for c in prefix), q(tail))

    def indicator(self, idx: Iterable[int], value=1) -> "TruncElement":
        idx = set(idx)
        n = max(idx) + 1 if idx else 0
        return self.element([q(value) if i in idx else 0 for i in range(n)])

    def zero(self) -> "TruncElement":
        return TruncElement(self, ())

    def _truncate(self, a):
        return TruncElement(self, tuple(min(x, Q(1)) for x in a.coords), min(a.tail, Q(1)))

    def scale_of(self, i: int) -> Fraction:
        return Q(1)

    def basis(self, i: int, t: Fraction = Q(1)) -> "TruncElement":
        return TruncElement(self, tuple(t if j == i else Q(0) for j in range(i + 1)))

    def levels(self, a: "TruncElement") -> list[Fraction]:
        return sorted(set(a.coords) | {a.tail})

    def empty_support(self) -> FinCof:
        return FinCof()

    def full_support(self) -> FinCof:
        return FinCof((), True)

    def complement(self, S: FinCof) -> FinCof:
        return S.complement()

    def probe(self, *supports) -> tuple[list[int], int]:
        """Explicit indices plus one representative for every index past them.

        Coordinates beyond every explicitly mentioned index are
        interchangeable, so deciding the representative decides them all.
        """
        m = max((s.bound() for s in supports), default=0)
        return list(range(m)), m

    def assemble(self, chosen: Iterable[int], rep: int | None, rep_in: bool) -> FinCof:
        chosen = set(chosen)
        if rep_in:
            return FinCof(set(range(rep)) - chosen, True)
        return FinCof(chosen)


class Mutated(Carrier):
    """A carrier whose truncation is deliberately broken (test fixtures).

    ``kind="zero"`` truncates everything to 0; ``kind="identity"`` leaves
    elements unchanged.
    """

    def __init__(self, base: Carrier, kind: str):
        if kind not in ("zero", "identity"):
            raise ValueError(f"unknown mutation {kind!r}")
        self._base = base
        self.kind = f"{base.kind}:{kind}"
        self.mutation = kind

    @property
    def base(self) -> Carrier:
        return self._base

    def __eq__(self, other) -> bool:
        return isinstance(other, Mutated) and (self._base, self.mutation) == (other._base, other.mutation)

    def __hash__(self) -> int:
        return hash((self._base, self.mutation))

    def __repr__(self) -> str:
        return f"Mutated({self._base!r}, {self.mutation!r})"

    def __getattr__(self, name):
        return getattr(self._base, name)

    def _rebind(self, a: "TruncElement") -> "TruncElement":
        return TruncElement(self, a.coords, a.tail)

    def element(self, *args, **kw):
        return self._rebind(self._base.element(*args, **kw))

    def zero(self):
        return self._rebind(self._base.zero())

    def unit_element(self):
        return self._rebind(self._base.unit_element())

    def indicator(self, *args, **kw):
        return self._rebind(self._base.indicator(*args, **kw))

    def basis(self, i, t=Q(1)):
        return self._rebind(self._base.basis(i, t))

    def _truncate(self, a):
        if self.mutation == "zero":
            return self.zero()
        return a


# ---------------------------------------------------------------------------
# elements


_ZERO = Q(0)


@dataclass(frozen=True)
class TruncElement:
    carrier: Carrier
    coords: tuple
    tail: Fraction = Q(0)

    def __post_init__(self):
        if self.carrier.base.kind == "evseq":
            c = list(self.coords)
            while c and c[-1] == self.tail:
                c.pop()
            object.__setattr__(self, "coords", tuple(c))

    def __repr__(self) -> str:
        body = ", ".join(qstr(x) for x in self.coords)
        if self.carrier.base.kind == "evseq":
            return f"<{body} | {qstr(self.tail)}...>"
        return f"<{body}>"

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i] if i < len(self.coords) else self.tail

    def _zip(self, other: "TruncElement", fn: Callable) -> "TruncElement":
        if not isinstance(other, TruncElement) or (other.carrier is not self.carrier
                                                   and other.carrier != self.carrier):
            raise CarrierMismatch(f"cannot combine {self!r} and {other!r}")
        n = max(len(self.coords), len(other.coords))
        return TruncElement(self.carrier, tuple(fn(self[i], other[i]) for i in range(n)),
                            fn(self.tail, other.tail))

    def _map(self, fn: Callable) -> "TruncElement":
        return TruncElement(self.carrier, tuple(fn(x) for x in self.coords), fn(self.tail))

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self):
        return self._map(lambda x: -x)

    def __and__(self, other):
        return self._zip(other, min)

    def __or__(self, other):
        return self._zip(other, max)

    def __abs__(self):
        return self._map(abs)

    def __mul__(self, t):
        t = q(t)
        return self._map(lambda x: t * x)

    __rmul__ = __mul__

    def __truediv__(self, t):
        return self * (1 / q(t))

    def __le__(self, other) -> bool:
        d = other - self
        return d.is_nonneg()

    def __ge__(self, other) -> bool:
        return other <= self

    def pos(self) -> "TruncElement":
        # the sign of a Fraction is the sign of its numerator
        return self._map(lambda x: x if x.numerator > 0 else _ZERO)

    def neg(self) -> "TruncElement":
        return (-self).pos()

    def is_nonneg(self) -> bool:
        return self.tail.numerator >= 0 and all(x.numerator >= 0 for x in self.coords)

    def is_zero(self) -> bool:
        return self.tail.numerator == 0 and all(x.numerator == 0 for x in self.coords)

    def in_trunc(self) -> bool:
        return self.carrier.base.kind != "evseq" or self.tail == 0

    @property
    def support(self):
        if self.carrier.base.kind == "evseq":
            if self.tail == 0:
                return FinCof(i for i, x in enumerate(self.coords) if x != 0)
            return FinCof((i for i, x in enumerate(self.coords) if x == 0), True)
        return frozenset(i for i, x in enumerate(self.coords) if x != 0)

    def to_list(self) -> list[str]:
        return [qstr(x) for x in self.coords]


def truncate(a: TruncElement) -> TruncElement:
    return a.carrier.truncate(a)


def is_truncated(a: TruncElement) -> bool:
    return a.is_nonneg() and truncate(a) == a


def diminish(a: TruncElement, r) -> TruncElement:
    """a (-) r = a - r * trunc(a / r); the identity at r = 0."""
    r = q(r)
    if not a.is_nonneg():
        raise DomainError(f"diminution needs a >= 0, got {a}")
    if r < 0:
        raise DomainError(f"diminution needs r >= 0, got {r}")
    if r == 0:
        return a
    return a - truncate(a / r) * r


# ---------------------------------------------------------------------------
# random instances


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Q(rng.randint(lo * den, hi * den), den)


def random_finvec(rng: random.Random, max_dim: int = 4, min_dim: int = 1) -> FinVec:
    n = rng.randint(min_dim, max_dim)
    return FinVec([random_rational(rng, 0, 3) or Q(1, rng.randint(1, 12)) for _ in range(n)])


def random_element(carrier: Carrier, rng: random.Random, nonneg: bool = True,
                   span: int = 3, max_len: int = 6, zero_rate: float = 0.3) -> TruncElement:
    """Random element; roughly ``zero_rate`` of the coordinates vanish."""
    lo = 0 if nonneg else -span
    if carrier.base.kind == "finvec":
        n = carrier.dim
        scale = carrier.unit
    else:
        n = rng.randint(0, max_len)
        scale = (Q(1),) * n
    coords = [Q(0) if rng.random() < zero_rate else random_rational(rng, lo, span) * s
              for s in scale]
    return carrier.element(coords)


def random_truncated(carrier: Carrier, rng: random.Random, **kw) -> TruncElement:
    return truncate(random_element(carrier, rng, nonneg=True, **kw))


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomResult:
    passed: bool
    checked: int
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked,
                "witness": None if self.witness is None else [repr(w) for w in self.witness]}


@dataclass
class AxiomReport:
    carrier: str
    results: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_dict(self) -> dict:
        return {"carrier": self.carrier, "passed": self.passed,
                "axioms": {k: v.to_dict() for k, v in self.results.items()}}


def _archimedean_bound(a: TruncElement) -> int:
    c = a.carrier
    ratios = [x / c.scale_of(i) for i, x in enumerate(a.coords)] + [a.tail]
    return math.ceil(max(ratios, default=Q(0))) + 1


def _truncation_escape_bound(a: TruncElement) -> int:
    """An n with na above the truncation level somewhere (1 if a = 0)."""
    c = a.carrier
    ratios = [c.scale_of(i) / x for i, x in enumerate(a.coords) if x > 0]
    if a.tail > 0:
        ratios.append(1 / a.tail)
    return math.ceil(min(ratios, default=Q(0))) + 1


def check_axioms(carrier: Carrier, samples: int = 200, seed: int = 0,
                 elements: Sequence[TruncElement] | None = None) -> AxiomReport:
    """Check T1-T4 on sampled positive elements.

    The first sample is the unit (FinVec) or the indicator of coordinate 0
    (EvSeq), so forced failures report that element as witness.
    """
    rng = random.Random(seed)
    if elements is None:
        first = carrier.unit_element() if carrier.base.kind == "finvec" else carrier.indicator([0])
        elements = [first] + [random_element(carrier, rng) for _ in range(samples - 1)]
    res = {name: AxiomResult(True, 0) for name in ("T1", "T2", "T3", "T4")}

    def fail(name, *w):
        if res[name].passed:
            res[name].passed = False
            res[name].witness = w

    for i, a in enumerate(elements):
        b = elements[(i * 7 + 3) % len(elements)]
        ta = truncate(a)
        res["T1"].checked += 1
        if not ((a & truncate(b)) <= ta and ta <= a):
            fail("T1", a, b)
        res["T2"].checked += 1
        if ta.is_zero() and not a.is_zero():
            fail("T2", a)
        # T3 at finite scale: some multiple up to N3 must exceed the truncation
        N3 = _truncation_escape_bound(a)
        res["T3"].checked += 1
        if all(truncate(a * n) == a * n for n in range(1, N3 + 1)) and not a.is_zero():
            fail("T3", a)
        # T4: a (-) n vanishes once n passes the largest coordinate ratio
        N = _archimedean_bound(a)
        res["T4"].checked += 1
        meet = full_kernel(carrier)
        for n in range(1, N + 1):
            meet = meet & polar([diminish(a, n)]).pseudocomplement()
        if not meet.is_zero():
            fail("T4", a)
    return AxiomReport(repr(carrier), res)


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class TruncationKernel:
    carrier: Carrier
    support: object
    stages: int = field(default=0, compare=False)

    def __contains__(self, a: TruncElement) -> bool:
        self.carrier.own(a)
        return a.support <= self.support

    def __le__(self, other: "TruncationKernel") -> bool:
        return self.support <= other.support

    def __lt__(self, other: "TruncationKernel") -> bool:
        return self.support <= other.support and self.support != other.support

    def __and__(self, other: "TruncationKernel") -> "TruncationKernel":
        return TruncationKernel(self.carrier, self.support & other.support)

    def __or__(self, other: "TruncationKernel") -> "TruncationKernel":
        return join_kernels(self, other)

    def pseudocomplement(self) -> "TruncationKernel":
        return TruncationKernel(self.carrier, self.carrier.complement(self.support))

    def is_zero(self) -> bool:
        return self.support == self.carrier.empty_support()

    def is_full(self) -> bool:
        return self.support == self.carrier.full_support()

    def __repr__(self) -> str:
        s = self.support
        if isinstance(s, frozenset):
            s = set(sorted(s)) or "{}"
        return f"K{s}"


def zero_kernel(carrier: Carrier) -> TruncationKernel:
    return TruncationKernel(carrier, carrier.empty_support())


def full_kernel(carrier: Carrier) -> TruncationKernel:
    return TruncationKernel(carrier, carrier.full_support())


def kernel_of_support(carrier: Carrier, support) -> TruncationKernel:
    return TruncationKernel(carrier, support)


def _union(carrier: Carrier, supports: Iterable):
    out = carrier.empty_support()
    for s in supports:
        out = out | s
    return out


def hull_support(carrier: Carrier, B: Iterable[TruncElement]):
    """Support of the convex l-subgroup generated by B."""
    B = list(B)
    carrier.own(*B)
    return _union(carrier, (abs(b).support for b in B))


def _decide(carrier: Carrier, S, test: Callable[[int], bool]):
    # members of S are kept regardless, so only the others are probed
    idx, rep = carrier.probe(S)
    chosen = [i for i in idx if i in S or test(i)]
    rep_in = rep is not None and (rep in S or test(rep))
    return carrier.assemble(chosen, rep, rep_in) | S


def archimedean_step(carrier: Carrier, S):
    """Coordinates i whose probe e_i admits c >= 0 with (n e_i - c)^+ in K_S for all n."""
    K = TruncationKernel(carrier, S)

    def test(i: int) -> bool:
        e = carrier.basis(i)
        # only the i-th coordinate of c can affect (n e - c)^+ at i, so
        # multiples of the probe are the relevant witnesses; past n = k + 1
        # the pattern of memberships no longer changes
        for k in range(0, 4):
            c = e * k
            if all((e * n - c).pos() in K for n in range(1, k + 3)):
                return True
        return False

    return _decide(carrier, S, test)


def absorbing_step(carrier: Carrier, S):
    """Coordinates i whose probes t e_i have their truncation inside K_S."""
    K = TruncationKernel(carrier, S)

    def test(i: int) -> bool:
        return any(truncate(carrier.basis(i, t)) in K for t in (Q(1, 2), Q(1), Q(2)))

    return _decide(carrier, S, test)


@functools.lru_cache(maxsize=65536)
def ladder(carrier: Carrier, S, cap: int = LADDER_CAP) -> tuple[object, int]:
    """Alternate the archimedean and absorbing steps until nothing changes.

    Returns the fixpoint and the number of rounds run (the last one being the
    round that confirmed the fixpoint).
    """
    for stage in range(1, cap + 1):
        nxt = absorbing_step(carrier, archimedean_step(carrier, S))
        if nxt == S:
            return S, stage
        S = nxt
    warnings.warn(f"ladder did not stabilize within {cap} rounds", LadderWarning)
    return S, cap


def kernel_closure(B: Iterable[TruncElement] = (), kernels: Iterable[TruncationKernel] = (),
                   carrier: Carrier | None = None) -> TruncationKernel:
    """The least truncation kernel [B] containing B (and the given kernels)."""
    B, kernels = list(B), list(kernels)
    if carrier is None:
        if B:
            carrier = B[0].carrier
        elif kernels:
            carrier = kernels[0].carrier
        else:
            raise ValueError("kernel_closure of nothing needs an explicit carrier")
    S = hull_support(carrier, B) | _union(carrier, (k.support for k in kernels))
    S, stages = ladder(carrier, S)
    return TruncationKernel(carrier, S, stages)


def join_kernels(*ks: TruncationKernel) -> TruncationKernel:
    return kernel_closure(kernels=ks, carrier=ks[0].carrier)


def brute_force_closure(B: Sequence[TruncElement], carrier: FinVec) -> TruncationKernel:
    """Intersection of every ladder-closed K_S (S a subset of X) containing B."""
    import itertools

    best = carrier.full_support()
    for r in range(carrier.dim + 1):
        for S in itertools.combinations(range(carrier.dim), r):
            S = frozenset(S)
            K = TruncationKernel(carrier, S)
            if is_kernel_support(carrier, S) and all(b in K for b in B):
                best = best & S
    return TruncationKernel(carrier, best)


def is_kernel_support(carrier: Carrier, S) -> bool:
    """K_S is a convex l-subgroup fixed by both ladder steps."""
    return archimedean_step(carrier, S) == S and absorbing_step(carrier, S) == S


def polar(B: Iterable[TruncElement], carrier: Carrier | None = None) -> TruncationKernel:
    """B-perp = {a : |a| ^ |b| = 0 for all b in B}."""
    B = list(B)
    if carrier is None:
        if not B:
            raise ValueError("polar of nothing needs an explicit carrier")
        carrier = B[0].carrier
    carrier.own(*B)
    idx, rep = carrier.probe(*(b.support for b in B))

    def test(i: int) -> bool:
        e = carrier.basis(i)
        return all((e & abs(b)).is_zero() for b in B)

    chosen = [i for i in idx if test(i)]
    rep_in = rep is not None and test(rep)
    return TruncationKernel(carrier, carrier.assemble(chosen, rep, rep_in))


def bright(a: TruncElement, r) -> TruncationKernel:
    """a |> r = [a (-) r]."""
    return _bright(a, q(r))


@functools.lru_cache(maxsize=1 << 16)
def _bright(a: TruncElement, r: Fraction) -> TruncationKernel:
    if r < 0:
        raise DomainError("bright needs r >= 0")
    return kernel_closure([diminish(a, r)])


@dataclass(frozen=True)
class JoinEvidence:
    """A join over an infinite index family evaluated on a finite sample.

    ``stable`` records that refining the sample did not change the join.
    """

    value: object
    samples: tuple
    stable: bool


def dark_evidence(a: TruncElement, r) -> JoinEvidence:
    r = q(r)
    carrier = a.carrier
    if not is_truncated(a):
        raise DomainError(f"dark needs a truncated element, got {a}")
    if r <= 0:
        return JoinEvidence(zero_kernel(carrier), (), True)
    below = [l for l in carrier.levels(a) if 0 < l < r]
    ss = {r * (1 - Q(1, 2 ** k)) for k in range(1, 5)}
    ss |= {(l + r) / 2 for l in below}
    ss = sorted(ss)
    polars = [polar([diminish(a, s)]) for s in ss]
    value = join_kernels(*polars)
    finer = r - (r - ss[-1]) / 3
    stable = join_kernels(value, polar([diminish(a, finer)])) == value
    return JoinEvidence(value, tuple(ss), stable)


def dark(a: TruncElement, r) -> TruncationKernel:
    """a <| r = join over 0 < s < r of (a (-) s)-perp."""
    ev = dark_evidence(a, r)
    if not ev.stable:
        raise ArithmeticError(f"join defining dark({a}, {r}) did not stabilize")
    return ev.value


def in_k0(K: TruncationKernel, a: TruncElement) -> bool:
    """a in 0K: a truncated and a |> 0 inside K."""
    return is_truncated(a) and bright(a, 0) <= K


def in_k1(K: TruncationKernel, a: TruncElement) -> bool:
    """a in 1K: a truncated and a <| 1 inside K."""
    return is_truncated(a) and dark(a, 1) <= K


def k0(K: TruncationKernel) -> Callable[[TruncElement], bool]:
    return lambda a: in_k0(K, a)


def k1(K: TruncationKernel) -> Callable[[TruncElement], bool]:
    return lambda a: in_k1(K, a)


def random_kernel(carrier: Carrier, rng: random.Random, max_len: int = 6) -> TruncationKernel:
    if carrier.base.kind == "finvec":
        return TruncationKernel(carrier, frozenset(i for i in range(carrier.dim) if rng.random() < 0.5))
    items = [i for i in range(max_len) if rng.random() < 0.4]
    return TruncationKernel(carrier, FinCof(items, rng.random() < 0.5))
