"""Text formats: trunc descriptions, posets and frame/filter bundles (JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .lattice import FiniteFrame, Poset, PosetError, build_frame
from .pointed import principal_filter
from .trunc import Carrier, DomainError, EvSeq, FinVec, TruncElement, q


class InputError(ValueError):
    """Malformed input; ``line`` and ``column`` are set for JSON syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: {e.msg}", e.lineno, e.colno) from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return parse_json(text, path)


def rational(x, where: str) -> Fraction:
    """``3``, ``"2/3"`` or ``[2, 3]``."""
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{where}: expected an integer, 'p/q' text or [p, q], got {x!r}")
    try:
        return q(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational: {x!r}") from None


def rationals(xs, where: str) -> list[Fraction]:
    if not isinstance(xs, list):
        raise InputError(f"{where}: expected a list")
    return [rational(x, f"{where}[{i}]") for i, x in enumerate(xs)]


@dataclass(frozen=True)
class TruncSpec:
    carrier: Carrier
    generators: tuple


def trunc_from_data(data) -> TruncSpec:
    """{"kind": "finvec", "unit": [...]} or {"kind": "evseq"}, plus optional "generators"."""
    if not isinstance(data, dict):
        raise InputError("trunc description must be a JSON object")
    kind = data.get("kind")
    if kind == "finvec":
        unit = rationals(data.get("unit"), "unit")
        try:
            carrier: Carrier = FinVec(unit)
        except DomainError as e:
            raise InputError(f"unit: {e}") from None
    elif kind == "evseq":
        carrier = EvSeq()
    else:
        raise InputError(f"kind: expected 'finvec' or 'evseq', got {kind!r}")
    gens = tuple(element_from_data(carrier, g, f"generators[{i}]")
                 for i, g in enumerate(data.get("generators", [])))
    return TruncSpec(carrier, gens)


def element_from_data(carrier: Carrier, data, where: str = "element") -> TruncElement:
    coords = rationals(data, where)
    if isinstance(carrier, FinVec) and len(coords) != carrier.dim:
        raise InputError(f"{where}: expected {carrier.dim} coordinates, got {len(coords)}")
    return carrier.element(coords)


def element_from_text(carrier: Carrier, text: str) -> TruncElement:
    """Comma-separated rationals, e.g. ``3,1/2``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return element_from_data(carrier, parts, "element")


def poset_from_data(data) -> Poset:
    """{"labels": [...], "covers": [[lower, upper], ...]}."""
    if not isinstance(data, dict) or not isinstance(data.get("labels"), list):
        raise InputError("poset must be an object with a 'labels' list")
    labels = [str(x) for x in data["labels"]]
    covers = data.get("covers", [])
    if not isinstance(covers, list) or any(not (isinstance(c, list) and len(c) == 2) for c in covers):
        raise InputError("covers must be a list of [lower, upper] pairs")
    covers = [(str(a), str(b)) for a, b in covers]
    unknown = {x for c in covers for x in c} - set(labels)
    if unknown:
        raise InputError(f"covers mention unknown labels {sorted(unknown)}")
    try:
        return Poset.from_covers(labels, covers)
    except PosetError as e:
        raise InputError(f"not a partial order: {e}") from None


def frame_bundle_from_data(data) -> tuple[FiniteFrame, frozenset | None]:
    """A poset plus an optional filter given by its generators (lists of labels)."""
    P = poset_from_data(data)
    L = build_frame(P)
    if "filter" not in data:
        return L, None
    gens = data["filter"]
    if not isinstance(gens, list):
        raise InputError("filter must be a list of elements (label lists)")
    els = []
    for i, g in enumerate(gens):
        e = frozenset(str(x) for x in g)
        if e not in L:
            raise InputError(f"filter[{i}] is not a downset of the poset")
        els.append(e)
    # a filter on a finite frame is principal on the meet of its generators
    return L, principal_filter(L, L.meet_all(els) if els else L.top)
