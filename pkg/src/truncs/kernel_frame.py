"""The frame K A of truncation kernels, the truncation filter and the spectrum M A."""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

from .lattice import FiniteFrame, FrameError, element_str, frame_listing, frame_to_dot
from .pointed import PointedFrame, filter_generated, pointed_to_dot, two_sub_F
from .trunc import (
    Carrier,
    FinCof,
    TruncationKernel,
    TruncElement,
    dark,
    is_kernel_support,
    is_truncated,
    kernel_closure,
    polar,
    random_truncated,
)

# Frame label standing for "every index past the window".
TAIL = ("tail",)


class KernelFrameSizeError(ValueError):
    def __init__(self, count: int, bound: int):
        super().__init__(f"kernel frame would have {count} elements (bound {bound})")
        self.count = count
        self.bound = bound


@dataclass(frozen=True, eq=False)
class KernelFrameBundle:
    """K A materialized as a finite frame together with the kernel each element names.

    For EvSeq the frame is a finite shadow: labels ``0..W-1`` plus ``TAIL``.
    A finite-or-cofinite support collapses to its window part, plus ``TAIL``
    when it is cofinite.
    """

    carrier: Carrier
    frame: FiniteFrame
    labeling: dict
    window: int | None = None
    filter_generators: tuple = field(default=())

    def element_of(self, K: TruncationKernel) -> frozenset:
        s = K.support
        if self.window is None:
            return frozenset(s)
        part = {i for i in range(self.window) if i in s}
        return frozenset(part | ({TAIL} if s.cofinite else set()))

    def kernel_of(self, e) -> TruncationKernel:
        self.frame.check(e)
        return self.labeling[e]

    def kernel_element(self, a: TruncElement) -> frozenset:
        """The frame element [a]."""
        return self.element_of(kernel_closure([a]))

    @property
    def filter(self) -> frozenset:
        return filter_generated(self.frame, self.filter_generators)

    def to_dict(self) -> dict:
        return {
            "carrier": repr(self.carrier),
            "window": self.window,
            "elements": frame_listing(self.frame),
            "filter": sorted(element_str(e) for e in self.filter),
        }


def _canonical_support(carrier: Carrier, e: frozenset, window: int | None):
    if window is None:
        return frozenset(e)
    part = {i for i in e if i != TAIL}
    if TAIL in e:
        return FinCof(set(range(window)) - part, cofinite=True)
    return FinCof(part)


@functools.lru_cache(maxsize=256)
def kernel_frame(carrier: Carrier, max_dim: int = 6, window: int = 4) -> KernelFrameBundle:
    """All truncation kernels of ``carrier`` as a frame under inclusion.

    Bundles are immutable, so results are memoized per carrier and window.
    """
    if carrier.base.kind == "finvec":
        labels, win = list(range(carrier.dim)), None
    else:
        labels, win = list(range(window)) + [TAIL], window
    if len(labels) > max_dim + (win is not None):
        raise KernelFrameSizeError(2 ** len(labels), 2 ** (max_dim + (win is not None)))
    labeling = {}
    for r in range(len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            e = frozenset(combo)
            S = _canonical_support(carrier, e, win)
            if is_kernel_support(carrier, S):
                labeling[e] = TruncationKernel(carrier, S)
    frame = FiniteFrame(labeling, name=f"K({carrier!r})")
    if not (frame.is_boolean() and frame.is_regular()):
        raise FrameError("kernel frame failed its Boolean/regular self-check")
    bundle = KernelFrameBundle(carrier, frame, labeling, win)
    gens = tuple(sorted({bundle.element_of(dark(g, 1)) for g in truncation_generators(bundle)},
                        key=lambda e: (len(e), element_str(e))))
    return KernelFrameBundle(carrier, frame, labeling, win, gens)


def truncation_generators(bundle: KernelFrameBundle) -> list[TruncElement]:
    """Truncated elements whose darks at 1 exhaust every dark at 1.

    For a truncated a the kernel a <| 1 is the support where a stays below
    the truncation level, so it only depends on the set T where a reaches
    it; the elements chi_T scaled to that level realize every such T.
    """
    c = bundle.carrier
    if bundle.window is None:
        idx = range(c.dim)
        make = lambda T: c.element([c.unit[i] if i in T else 0 for i in idx])
    else:
        idx = range(bundle.window)
        make = lambda T: c.indicator(T)
    return [make(set(T)) for r in range(len(idx) + 1) for T in itertools.combinations(idx, r)]


def trunc_filter(bundle: KernelFrameBundle) -> frozenset:
    return bundle.filter


def spectrum(bundle: KernelFrameBundle) -> PointedFrame:
    """M A = 2_F K A."""
    return two_sub_F(bundle.frame, bundle.filter)


def pseudocomplement_matches_polar(bundle: KernelFrameBundle, a: TruncElement) -> bool:
    """[a]* computed in the frame equals the polar a-perp."""
    e = bundle.kernel_element(a)
    return bundle.frame.pseudocomplement(e) == bundle.element_of(polar([a]))


# ---------------------------------------------------------------------------
# unital classification


class ClassificationError(AssertionError):
    pass


@dataclass
class UnitalReport:
    unital: bool
    witness: TruncElement | None
    dark_zero: bool
    point_isolated: bool
    greatest_truncated: bool
    evidence: list = field(default_factory=list)
    window_artifact: str | None = None

    def to_dict(self) -> dict:
        return {
            "unital": self.unital,
            "witness": None if self.witness is None else self.witness.to_list(),
            "conditions": {
                "dark_zero": self.dark_zero,
                "point_isolated": self.point_isolated,
                "greatest_truncated": self.greatest_truncated,
            },
            "evidence": self.evidence,
            "window_artifact": self.window_artifact,
        }


def classify_unital(carrier: Carrier, window: int = 4, samples: int = 20, seed: int = 0) -> UnitalReport:
    """Decide unitality three ways and insist that they agree.

    The conditions are: some truncated a0 with a0 <| 1 = 0; the spectrum's
    point is isolated; the truncated part has a greatest element.
    """
    import random

    rng = random.Random(seed)
    bundle = kernel_frame(carrier, window=window)
    iso = spectrum(bundle).is_isolated()
    evidence = []
    if carrier.base.kind == "finvec":
        u = carrier.unit_element()
        dz = dark(u, 1).is_zero()
        # u bounds every truncated element
        greatest = all(random_truncated(carrier, rng) <= u for _ in range(samples))
        witness = u if dz else None
        artifact = None
    else:
        witness = None
        dz = False
        for T in _sample_supports(rng, samples):
            a = carrier.indicator(T)
            d = dark(a, 1)
            dz = dz or d.is_zero()
            evidence.append({"generator": a.to_list(), "dark": repr(d)})
        greatest = False
        for _ in range(samples):
            a = random_truncated(carrier, rng)
            bigger = a | carrier.basis(len(a.coords))
            if not (is_truncated(bigger) and a <= bigger and bigger != a):
                greatest = True
        artifact = (f"restricted to its first {window} coordinates the carrier is unital with "
                    f"witness the indicator of the window; the TAIL label keeps the point "
                    f"of the windowed spectrum from being isolated")
    if len({dz, iso, greatest}) != 1:
        raise ClassificationError(f"unital conditions disagree: dark_zero={dz}, "
                                  f"isolated={iso}, greatest={greatest}")
    return UnitalReport(dz, witness, dz, iso, greatest, evidence, artifact)


def _sample_supports(rng, n: int) -> Iterable[set]:
    for _ in range(n):
        yield {i for i in range(rng.randint(0, 6)) if rng.random() < 0.6}


# ---------------------------------------------------------------------------
# exports


def kernel_frame_to_dot(bundle: KernelFrameBundle, name: str = "kernel_frame") -> str:
    deco = {e: {"shape": "box"} for e in bundle.filter}
    return frame_to_dot(bundle.frame, name, deco)


def spectrum_to_dot(bundle: KernelFrameBundle, name: str = "spectrum") -> str:
    M = spectrum(bundle)
    return pointed_to_dot(M, name, (x for x in M.frame if M.at(x)))


def spectrum_to_dict(bundle: KernelFrameBundle) -> dict:
    M = spectrum(bundle)
    return {
        "carrier": repr(bundle.carrier),
        "size": len(M.frame),
        "elements": frame_listing(M.frame),
        "point_kernel": element_str(M.kernel),
        "isolated": M.is_isolated(),
        "regular": M.frame.is_regular(),
        "filter_proper": bundle.frame.bottom not in bundle.filter,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
