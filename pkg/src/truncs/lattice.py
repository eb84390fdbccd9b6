"""Finite frames as rings of sets.

A finite frame is stored as a family of frozensets closed under union and
intersection, so that join is ``|`` and meet is ``&``.  ``build_frame`` gives
the Birkhoff presentation (downsets of a poset of join-irreducibles); the
same class also carries the sub- and quotient frames (``down``, ``up``,
product constructions) without relabeling their elements.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

Element = frozenset


class PosetError(ValueError):
    """A relation failed one of the partial-order laws."""

    def __init__(self, law: str, witness: tuple):
        super().__init__(f"{law} fails at {witness!r}")
        self.law = law
        self.witness = witness


class FrameError(ValueError):
    pass


class MembershipError(FrameError):
    pass


class InvalidKernelError(FrameError):
    pass


def label_key(x: Any) -> tuple:
    """Total, deterministic sort key for the heterogeneous labels in use."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, Fraction)):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(label_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, element_key(x))
    return (4, repr(x))


def element_key(e: Iterable) -> tuple:
    items = sorted(e, key=label_key)
    return (len(items), tuple(label_key(x) for x in items))


def label_str(x: Any) -> str:
    if isinstance(x, tuple):
        if x == STAR:
            return "*"
        if len(x) == 2 and x[0] == "L":
            return label_str(x[1])
        return "(" + ",".join(label_str(y) for y in x) + ")"
    return str(x)


def element_str(e: Iterable) -> str:
    return "{" + ",".join(label_str(x) for x in sorted(e, key=label_key)) + "}"


# Label of the adjoined point in 2 x L.
STAR = ("*",)


@dataclass(frozen=True)
class Poset:
    elements: frozenset
    leq: frozenset

    def __post_init__(self):
        els = self.elements
        for a, b in self.leq:
            if a not in els or b not in els:
                raise PosetError("domain", (a, b))
        for a in els:
            if (a, a) not in self.leq:
                raise PosetError("reflexivity", (a,))
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                raise PosetError("antisymmetry", (a, b))
        for a, b in self.leq:
            for c in els:
                if (b, c) in self.leq and (a, c) not in self.leq:
                    raise PosetError("transitivity", (a, b, c))

    @classmethod
    def from_covers(cls, labels: Iterable[Hashable], covers: Iterable[tuple] = ()) -> "Poset":
        """Reflexive-transitive closure of covering pairs ``(lower, upper)``."""
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise PosetError("distinct labels", tuple(labels))
        els = frozenset(labels)
        rel = {(a, a) for a in els}
        rel.update(tuple(c) for c in covers)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return cls(els, frozenset(rel))

    @classmethod
    def antichain(cls, labels: Iterable[Hashable]) -> "Poset":
        return cls.from_covers(labels, ())

    @classmethod
    def chain(cls, labels: Iterable[Hashable]) -> "Poset":
        labels = list(labels)
        return cls.from_covers(labels, zip(labels, labels[1:]))

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def below(self, a) -> frozenset:
        return frozenset(x for x in self.elements if (x, a) in self.leq)

    def linear_extension(self) -> list:
        rest = sorted(self.elements, key=label_key)
        out = []
        while rest:
            for x in rest:
                if all(y in out for y in self.below(x) if y != x):
                    out.append(x)
                    rest.remove(x)
                    break
        return out

    def covers(self) -> list[tuple]:
        lt = [(a, b) for a, b in self.leq if a != b]
        return sorted(
            ((a, b) for a, b in lt
             if not any((a, c) in self.leq and (c, b) in self.leq
                        for c in self.elements if c not in (a, b))),
            key=label_key,
        )


def all_posets(n: int) -> Iterator[Poset]:
    """Every partial order on the labels ``0..n-1`` (labeled, not up to iso)."""
    labels = list(range(n))
    pairs = [(a, b) for a in labels for b in labels if a != b]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        strict = {p for p, on in zip(pairs, bits) if on}
        if any((b, a) in strict for a, b in strict):
            continue
        if any((b, c) in strict and (a, c) not in strict
               for a, b in strict for c in labels if c != a):
            continue
        yield Poset(frozenset(labels), frozenset(strict | {(a, a) for a in labels}))


def _canonical_strict(n: int, strict: frozenset) -> tuple:
    return min(tuple(sorted((p[a], p[b]) for a, b in strict))
               for p in itertools.permutations(range(n)))


@functools.lru_cache(maxsize=None)
def unlabeled_posets(n: int) -> tuple:
    """One poset on ``0..n-1`` per isomorphism class.

    Every poset arises from one on n-1 points by adding a maximal point
    above some downset, so candidates are grown that way and deduplicated
    by a canonical relabeling.
    """
    if n == 0:
        return (Poset(frozenset(), frozenset()),)
    seen, out = set(), []
    for P in unlabeled_posets(n - 1):
        strict_old = frozenset(p for p in P.leq if p[0] != p[1])
        for D in build_frame(P):
            strict = strict_old | {(d, n - 1) for d in D}
            key = _canonical_strict(n, strict)
            if key not in seen:
                seen.add(key)
                labels = frozenset(range(n))
                out.append(Poset(labels, frozenset(key) | {(a, a) for a in labels}))
    return tuple(out)


class FiniteFrame:
    """A finite distributive lattice presented as a ring of sets.

    Elements are frozensets; meet is intersection and join is union.  The
    family must be closed under both operations, which makes every finite
    instance a frame.
    """

    def __init__(self, elements: Iterable[Iterable], name: str | None = None):
        els = frozenset(frozenset(e) for e in elements)
        if not els:
            raise FrameError("a frame needs at least one element")
        for a, b in itertools.combinations(els, 2):
            if a | b not in els or a & b not in els:
                raise FrameError(f"not closed under union/intersection at {element_str(a)}, {element_str(b)}")
        self.elements = els
        self.order = sorted(els, key=element_key)
        self.bottom = frozenset.intersection(*els)
        self.top = frozenset.union(*els)
        self.name = name
        self._pc: dict = {}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.order)

    def __contains__(self, a) -> bool:
        return a in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteFrame) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<FiniteFrame{tag} |L|={len(self)}>"

    def check(self, *els) -> None:
        for a in els:
            if a not in self.elements:
                raise MembershipError(f"{element_str(a)} is not an element of {self!r}")

    # lattice operations

    def meet(self, a, b) -> frozenset:
        return a & b

    def join(self, a, b) -> frozenset:
        return a | b

    def join_all(self, els: Iterable) -> frozenset:
        out = self.bottom
        for e in els:
            out = out | e
        return out

    def meet_all(self, els: Iterable) -> frozenset:
        out = self.top
        for e in els:
            out = out & e
        return out

    def leq(self, a, b) -> bool:
        return a <= b

    # Heyting structure

    def arrow(self, a, b) -> frozenset:
        self.check(a, b)
        return self.join_all(c for c in self.order if c & a <= b)

    def pseudocomplement(self, a) -> frozenset:
        try:
            return self._pc[a]
        except KeyError:
            self._pc[a] = pc = self.arrow(a, self.bottom)
            return pc

    def rather_below(self, b, a) -> bool:
        """``b`` is rather below ``a``: b* v a = top."""
        self.check(a, b)
        return self.pseudocomplement(b) | a == self.top

    def is_complemented(self, a) -> bool:
        return self.pseudocomplement(a) | a == self.top

    def is_regular(self) -> bool:
        return all(self.join_all(b for b in self.order if self.rather_below(b, a)) == a
                   for a in self.order)

    def is_boolean(self) -> bool:
        return all(self.is_complemented(a) for a in self.order)

    # structure

    def join_irreducibles(self) -> list[frozenset]:
        out = []
        for a in self.order:
            if a == self.bottom:
                continue
            below = self.join_all(b for b in self.order if b < a)
            if below != a:
                out.append(a)
        return out

    def atoms(self) -> list[frozenset]:
        return [a for a in self.order if a != self.bottom
                and not any(self.bottom < b < a for b in self.order)]

    def base(self) -> Poset:
        """The poset of join-irreducibles (the Birkhoff dual)."""
        ji = self.join_irreducibles()
        idx = {j: ("J", i) for i, j in enumerate(ji)}
        return Poset(frozenset(idx.values()),
                     frozenset((idx[a], idx[b]) for a in ji for b in ji if a <= b))

    def down(self, c) -> "FiniteFrame":
        self.check(c)
        return FiniteFrame((a for a in self.order if a <= c), name=f"down{element_str(c)}")

    def up(self, p) -> "FiniteFrame":
        self.check(p)
        return FiniteFrame((a for a in self.order if p <= a), name=f"up{element_str(p)}")

    def covers(self) -> list[tuple[frozenset, frozenset]]:
        out = []
        for a in self.order:
            for b in self.order:
                if a < b and not any(a < c < b for c in self.order):
                    out.append((a, b))
        return out


def build_frame(base: Poset, name: str | None = None) -> FiniteFrame:
    """The lattice of downsets of ``base``."""
    ext = base.linear_extension()
    below = {x: base.below(x) - {x} for x in ext}
    downsets = []

    def grow(i: int, current: frozenset):
        if i == len(ext):
            downsets.append(current)
            return
        x = ext[i]
        grow(i + 1, current)
        if below[x] <= current:
            grow(i + 1, current | {x})

    grow(0, frozenset())
    return FiniteFrame(downsets, name=name)


def boolean_frame(n: int) -> FiniteFrame:
    return build_frame(Poset.antichain(range(n)), name=f"2^{n}")


def chain_frame(n: int) -> FiniteFrame:
    """The (n+1)-element chain."""
    return build_frame(Poset.chain(range(n)), name=f"chain{n + 1}")


TWO = build_frame(Poset.antichain(["pt"]), name="2")


# ---------------------------------------------------------------------------
# frame maps


@dataclass(frozen=True)
class MapReport:
    valid: bool
    law: str | None = None
    witness: tuple = ()

    def to_dict(self) -> dict:
        return {"valid": self.valid, "law": self.law,
                "witness": [element_str(w) if isinstance(w, frozenset) else str(w) for w in self.witness]}


@dataclass(frozen=True, eq=False)
class FrameMap:
    source: FiniteFrame
    target: FiniteFrame
    table: Mapping = field(repr=False)

    def __call__(self, a) -> frozenset:
        try:
            return self.table[a]
        except KeyError:
            raise MembershipError(f"{element_str(a)} is not in the source frame") from None

    def __eq__(self, other) -> bool:
        return (isinstance(other, FrameMap) and self.source == other.source
                and self.target == other.target and dict(self.table) == dict(other.table))

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.table.items())))

    def then(self, other: "FrameMap") -> "FrameMap":
        """``other`` after ``self``."""
        return FrameMap(self.source, other.target, {a: other(self(a)) for a in self.source})

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.source)

    def is_surjective(self) -> bool:
        return set(self.table.values()) == set(self.target.elements)


def identity_map(L: FiniteFrame) -> FrameMap:
    return FrameMap(L, L, {a: a for a in L})


def frame_map(source: FiniteFrame, target: FiniteFrame, fn: Callable) -> FrameMap:
    return FrameMap(source, target, {a: fn(a) for a in source})


def check_frame_map(f: FrameMap) -> MapReport:
    src, tgt = f.source, f.target
    missing = [a for a in src if a not in f.table]
    if missing:
        return MapReport(False, "totality", (missing[0],))
    for a in src:
        if f.table[a] not in tgt:
            return MapReport(False, "codomain", (a,))
    if f(src.bottom) != tgt.bottom:
        return MapReport(False, "bottom", (src.bottom,))
    if f(src.top) != tgt.top:
        return MapReport(False, "top", (src.top,))
    for a, b in itertools.combinations_with_replacement(src.order, 2):
        if f(a & b) != f(a) & f(b):
            return MapReport(False, "meet", (a, b))
        if f(a | b) != f(a) | f(b):
            return MapReport(False, "join", (a, b))
    return MapReport(True)


def frame_maps(source: FiniteFrame, target: FiniteFrame) -> Iterator[FrameMap]:
    """All frame maps ``source -> target``.

    A frame map is fixed by its values on join-irreducibles, so candidates are
    assignments on those (pruned for monotonicity), extended by joins.
    """
    ji = source.join_irreducibles()
    ji_below = {a: [j for j in ji if j <= a] for a in source}
    choice: dict = {}

    def extend(i: int):
        if i == len(ji):
            table = {a: target.join_all(choice[j] for j in ji_below[a]) for a in source}
            f = FrameMap(source, target, table)
            if check_frame_map(f).valid:
                yield f
            return
        j = ji[i]
        for v in target.order:
            if all(choice[k] <= v for k in ji[:i] if k <= j):
                choice[j] = v
                yield from extend(i + 1)
        choice.pop(j, None)

    yield from extend(0)


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class Point:
    map: FrameMap
    kernel: frozenset


def point_kernel(f: FrameMap) -> frozenset:
    return f.source.join_all(a for a in f.source if f(a) == f.target.bottom)


def points(L: FiniteFrame) -> list[Point]:
    """Every frame map ``L -> 2`` with its kernel."""
    return [Point(f, point_kernel(f)) for f in frame_maps(L, TWO)]


def is_prime(L: FiniteFrame, p) -> bool:
    if p == L.top:
        return False
    return all(a <= p or b <= p for a in L for b in L if a & b <= p)


def point_from_kernel(L: FiniteFrame, p) -> FrameMap:
    L.check(p)
    if not is_prime(L, p):
        raise InvalidKernelError(f"{element_str(p)} is not a prime element")
    return frame_map(L, TWO, lambda a: TWO.bottom if a <= p else TWO.top)


@dataclass(frozen=True)
class PointQuotients:
    closed: FrameMap
    open: FrameMap
    closed_open_injective: bool
    point_open_injective: bool


def point_quotients(L: FiniteFrame, p) -> PointQuotients:
    """Closed quotient a -> a v p onto up(p) and open quotient a -> a & p onto down(p)."""
    pt = point_from_kernel(L, p)
    up, down = L.up(p), L.down(p)
    closed = frame_map(L, up, lambda a: a | p)
    opened = frame_map(L, down, lambda a: a & p)
    co = len({(closed(a), opened(a)) for a in L}) == len(L)
    po = len({(pt(a), opened(a)) for a in L}) == len(L)
    return PointQuotients(closed, opened, co, po)


# ---------------------------------------------------------------------------
# exports


def frame_listing(L: FiniteFrame) -> list[list[str]]:
    return [[label_str(x) for x in sorted(a, key=label_key)] for a in L]


def frame_to_dot(L: FiniteFrame, name: str = "frame", decorate: Mapping | None = None) -> str:
    """Hasse diagram of the element lattice.  ``decorate`` maps elements to DOT attributes."""
    decorate = decorate or {}
    ids = {a: f"n{i}" for i, a in enumerate(L.order)}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=ellipse];"]
    for a in L.order:
        attrs = {"label": element_str(a)}
        attrs.update(decorate.get(a, {}))
        body = ", ".join(f'{k}="{v}"' for k, v in attrs.items())
        lines.append(f"  {ids[a]} [{body}];")
    for a, b in L.covers():
        lines.append(f"  {ids[a]} -> {ids[b]} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
